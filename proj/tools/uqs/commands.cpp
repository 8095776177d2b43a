// Copyright 2026 The UQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "svg.hpp"
#include "uqs/compiler.hpp"
#include "uqs/config.hpp"
#include "uqs/errors.hpp"
#include "uqs/experiments.hpp"
#include "uqs/hardware.hpp"
#include "uqs/schedule.hpp"
#include "uqs/spectrum.hpp"
#include "uqs/statevector.hpp"

namespace uqs::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loaded configuration plus the manifest fields that describe the run.
struct Run {
  ConfigFile cfg;
  RunManifest manifest;
  ArtifactWriter writer;

  Run(const RunOptions& opts, const std::string& subcommand)
      : cfg(ConfigFile::load(opts.config)), writer(opts.out_dir, opts.format) {
    cfg.allow_sections({"hardware", "model", "compile", "simulate", "errors", "adiabatic", "initial", "target",
                        "sweep", "crosstalk"});
    cfg.allow_keys("", {"version"});
    if (const auto* v = cfg.find("", "version"); v && v->text != "1") {
      throw PolicyError("line " + std::to_string(v->line) + ": unsupported dialect version '" + v->text +
                        "' (this tool reads " + kConfigDialect + ")");
    }
    manifest.subcommand = subcommand;
    manifest.config_path = opts.config.string();
    manifest.config_sha256 = sha256_hex(read_text(opts.config));
    manifest.seed = opts.seed;
    manifest.out_dir = opts.out_dir.string();
    manifest.format = opts.format == TableFormat::csv ? "csv" : "json";
    manifest.threads = opts.threads();
    manifest.jobs = opts.threads();
    manifest.dense_cap = dense_cap();
  }

  void finish() {
    manifest.artifacts = writer.artifacts();
    const std::string text = manifest.to_json().dump(2) + "\n";
    std::ofstream out(writer.out_dir() / "manifest.json", std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write manifest.json");
  }
};

json unitary_json(const SingleQubitUnitary& u) {
  json m = json::array();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) m.push_back({u.matrix()(r, c).real(), u.matrix()(r, c).imag()});
  }
  return m;
}

json cost_json(const CostReport& c) {
  return {{"time_cost", c.time_cost}, {"n_controls", c.n_controls}, {"gate_count", c.gate_count},
          {"step_t", c.step_t},       {"chi", c.chi},               {"epsilon", c.epsilon},
          {"t_prime", c.t_prime}};
}

json schedule_json(const PulseSchedule& s) {
  json cycle = json::array();
  for (const auto& ins : s.cycle) {
    if (const auto* l = std::get_if<ApplyLocal>(&ins)) {
      json layer = {{"kind", "local"}, {"homogeneous", l->layer.is_homogeneous()}};
      json us = json::array();
      if (l->layer.is_homogeneous()) {
        us.push_back(unitary_json(l->layer.on(0)));
      } else {
        for (std::size_t q = 0; q < *l->layer.size(); ++q) us.push_back(unitary_json(l->layer.on(q)));
      }
      layer["unitaries"] = std::move(us);
      cycle.push_back(std::move(layer));
    } else {
      const auto& g = std::get<RawGate>(ins);
      json targets = json::array();
      for (const auto& t : g.targets) targets.push_back({{"a", t.a}, {"b", t.b}, {"weight", t.weight}});
      json gate = {{"kind", "gate"}, {"gate_id", g.gate_id}, {"theta", g.theta}, {"targets", std::move(targets)}};
      if (g.slot >= 0) gate["slot"] = g.slot;
      cycle.push_back(std::move(gate));
    }
  }
  return {{"n_qubits", s.n_qubits}, {"repetitions", s.repetitions}, {"cycle", std::move(cycle)}};
}

Table cost_table(const CostReport& c) {
  Table t{{"time_cost", "n_controls", "gate_count", "step_t", "chi", "epsilon", "t_prime"}, {}};
  t.add({c.time_cost, static_cast<std::int64_t>(c.n_controls), static_cast<std::int64_t>(c.gate_count), c.step_t,
         c.chi, c.epsilon, c.t_prime});
  return t;
}

struct CompileSettings {
  double t_prime = 1.0;
  double epsilon = 0.01;
  CompileOptions options;
  bool realize = false;
  bool crosstalk_realism = false;
};

CompileSettings compile_settings(const ConfigFile& cfg) {
  cfg.allow_keys("compile", {"t_prime", "epsilon", "grouping", "realize", "crosstalk_realism"});
  CompileSettings s;
  s.t_prime = cfg.get_double("compile", "t_prime", s.t_prime);
  s.epsilon = cfg.get_double("compile", "epsilon", s.epsilon);
  if (const auto* g = cfg.find("compile", "grouping")) {
    try {
      s.options.grouping = parse_grouping(g->text);
    } catch (const InvalidArgument& e) {
      throw ParseError(g->line, g->column, e.what());
    }
  }
  s.realize = cfg.get_bool("compile", "realize", false);
  s.crosstalk_realism = cfg.get_bool("compile", "crosstalk_realism", false);
  return s;
}

CompiledSchedule compile_model(const ConfigFile& cfg, const Hamiltonian& target, const CompileSettings& s) {
  const HardwareModel hw = parse_hardware(cfg);
  CompiledSchedule compiled = trotter_schedule(target, s.t_prime, s.epsilon, hw, s.options);
  if (s.realize) {
    compiled.schedule = realize_schedule(compiled.schedule, hw, {s.crosstalk_realism});
    compiled.schedule.cost = compiled.cost;
  }
  return compiled;
}

void print_notes(std::ostream& out, const std::vector<std::string>& notes) {
  for (const auto& n : notes) out << "note: " << n << "\n";
}

/// Runs with an active error model must be reproducible, so they need a seed.
void require_seed(const ErrorModel& err) {
  if (err.active() && !err.seed) {
    throw PolicyError("an error model is active but no seed was given; pass --seed or set 'seed' in [errors]");
  }
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_compile(const RunOptions& opts, std::ostream& out) {
  Run run(opts, "compile");
  const CompileSettings settings = compile_settings(run.cfg);
  const Hamiltonian target = parse_model(run.cfg, "model");
  const CompiledSchedule compiled = compile_model(run.cfg, target, settings);

  run.writer.write("schedule.txt", compiled.schedule.to_text());
  run.writer.write("cost.txt", compiled.cost.to_text());
  json doc = {{"schedule", schedule_json(compiled.schedule)}, {"cost", cost_json(compiled.cost)}};
  doc["notes"] = compiled.notes;
  run.writer.write_json("compiled.json", doc);
  run.finish();

  const CostReport& c = compiled.cost;
  const std::size_t reps = std::max<std::size_t>(1, compiled.schedule.repetitions);
  const auto per_cycle = [&](std::size_t total) { return total / reps; };
  out << "compiled " << target.size() << " terms on " << target.n_qubits() << " qubits\n"
      << "time_cost c = " << format_double(c.time_cost) << ", controls per cycle n = " << c.n_controls
      << ", cycles L = " << c.gate_count << ", chi = " << format_double(c.chi) << "\n"
      << "local layers per cycle = " << per_cycle(compiled.schedule.local_layer_count())
      << ", raw gates per cycle = " << per_cycle(compiled.schedule.raw_gate_count()) << "\n";
  print_notes(out, compiled.notes);
  return 0;
}

int cmd_simulate(const RunOptions& opts, std::ostream& out) {
  Run run(opts, "simulate");
  const ConfigFile& cfg = run.cfg;
  cfg.allow_keys("simulate", {"schedule", "initial", "initial_state", "observables"});

  PulseSchedule schedule;
  std::optional<Hamiltonian> target;
  if (cfg.has_section("model")) target = parse_model(cfg, "model");
  std::vector<std::string> notes;
  if (const auto* file = cfg.find("simulate", "schedule")) {
    schedule = PulseSchedule::parse(read_text(cfg.resolve(file->text)));
  } else {
    if (!target) throw PolicyError("[simulate] needs either a 'schedule' file or a [model] section to compile");
    CompiledSchedule compiled = compile_model(cfg, *target, compile_settings(cfg));
    schedule = std::move(compiled.schedule);
    schedule.cost = compiled.cost;
    notes = std::move(compiled.notes);
  }
  const std::size_t n = schedule.n_qubits;

  StateVector state(n);
  if (const auto* dump = cfg.find("simulate", "initial_state")) {
    if (cfg.has("simulate", "initial")) {
      throw ParseError(dump->line, dump->column, "give either 'initial' or 'initial_state', not both");
    }
    state = StateVector::parse_dump(read_text(cfg.resolve(dump->text)));
  } else if (cfg.has("simulate", "initial")) {
    state = StateVector::basis(n, cfg.get_uint("simulate", "initial"));
  }
  if (state.n_qubits() != n) {
    throw InvalidArgument("initial state has " + std::to_string(state.n_qubits()) + " qubits, schedule has " +
                          std::to_string(n));
  }
  const StateVector initial = state;

  ErrorModel err;
  if (cfg.has_section("errors")) err = parse_error_model(cfg, opts.seed);
  require_seed(err);
  run.manifest.seed = err.active() ? err.seed : opts.seed;

  const ExecutionOptions exec{opts.threads()};
  const ExecutionLog log = run_schedule(state, schedule, err.active() ? &err : nullptr, exec);

  std::vector<std::string> labels;
  std::vector<PauliString> requests;
  if (const auto* v = cfg.find("simulate", "observables")) {
    for (const auto& item : split_config_list(*v)) {
      try {
        requests.push_back(parse_pauli_request(n, item.text));
      } catch (const InvalidArgument& e) {
        throw ParseError(item.line, item.column, e.what());
      }
      labels.push_back(item.text);
    }
  } else {
    for (std::size_t q = 0; q < n; ++q) {
      labels.push_back("Z" + std::to_string(q));
      requests.push_back(parse_pauli_request(n, labels.back()));
    }
  }
  const std::vector<double> values = observables(state, requests);
  Table obs{{"observable", "value"}, {}};
  for (std::size_t i = 0; i < values.size(); ++i) obs.add({labels[i], values[i]});

  run.writer.write("state.txt", state.dump());
  run.writer.write_table("observables", obs);
  run.writer.write("log.txt", log.to_text());

  out << "simulated " << schedule.instruction_count() << " instructions on " << n << " qubits"
      << (err.active() ? " with timing jitter" : "") << "\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << "<" << labels[i] << "> = " << fixed(values[i]) << "\n";

  if (opts.oracle) {
    if (!target) throw PolicyError("--oracle needs a [model] section describing the simulated Hamiltonian");
    if (!schedule.cost) throw PolicyError("--oracle needs a schedule that carries its cost report");
    const StateVector exact = exact_evolve(*target, schedule.cost->t_prime, initial);
    const double f = fidelity(state, exact);
    const double bound = 1.0 - 2.0 * schedule.cost->epsilon;
    Table t{{"fidelity", "bound", "within_bound"}, {}};
    t.add({f, bound, static_cast<std::int64_t>(f >= bound)});
    run.writer.write_table("oracle", t);
    out << "oracle fidelity = " << fixed(f, 12) << " (bound 1-2*epsilon = " << fixed(bound, 12) << ") "
        << (f >= bound ? "within bound" : "BELOW bound") << "\n";
  }
  print_notes(out, notes);
  run.finish();
  return 0;
}

int cmd_adiabatic(const RunOptions& opts, std::ostream& out) {
  Run run(opts, "adiabatic");
  const ConfigFile& cfg = run.cfg;
  const HardwareModel hw = parse_hardware(cfg);
  AdiabaticConfig config = parse_adiabatic(cfg, opts.seed);
  if (opts.steps) config.steps = *opts.steps;

  if (cfg.has_section("sweep")) {
    cfg.allow_keys("sweep", {"etas", "steps", "repetitions", "seed"});
    SweepConfig sweep;
    sweep.base = config;
    sweep.etas = cfg.get_doubles("sweep", "etas");
    if (opts.steps) {
      sweep.steps = {*opts.steps};
    } else if (cfg.has("sweep", "steps")) {
      for (auto s : cfg.get_uints("sweep", "steps")) sweep.steps.push_back(static_cast<std::size_t>(s));
    } else {
      sweep.steps = {config.steps};
    }
    sweep.repetitions = cfg.get_uint("sweep", "repetitions", 20);
    std::optional<std::uint64_t> seed = opts.seed;
    if (!seed && cfg.has("sweep", "seed")) seed = cfg.get_uint("sweep", "seed");
    if (!seed) seed = config.error_model.seed;
    const bool noisy = std::any_of(sweep.etas.begin(), sweep.etas.end(), [](double e) { return e > 0.0; });
    if (noisy && !seed) {
      throw PolicyError("a sweep with nonzero eta needs a seed; pass --seed or set 'seed' in [sweep]");
    }
    sweep.seed = seed.value_or(0);
    sweep.jobs = opts.threads();
    run.manifest.seed = seed;

    const auto rows = error_sweep(sweep, hw);
    Table summary{{"steps", "eta", "repetitions", "mean", "stddev", "stderr"}, {}};
    Table samples{{"steps", "eta", "repetition", "seed", "final_ground_weight"}, {}};
    std::vector<Series> series;
    for (const auto& r : rows) {
      summary.add({static_cast<std::int64_t>(r.steps), r.eta, static_cast<std::int64_t>(r.repetitions), r.mean,
                   r.stddev, r.standard_error});
      for (std::size_t k = 0; k < r.samples.size(); ++k) {
        samples.add({static_cast<std::int64_t>(r.steps), r.eta, static_cast<std::int64_t>(k),
                     static_cast<std::int64_t>(sweep.seed + k), r.samples[k]});
      }
      auto it = std::find_if(series.begin(), series.end(),
                             [&](const Series& s) { return s.name == "eta = " + format_double(r.eta); });
      if (it == series.end()) {
        series.push_back({"eta = " + format_double(r.eta), {}, {}});
        it = series.end() - 1;
      }
      it->x.push_back(static_cast<double>(r.steps));
      it->y.push_back(r.mean);
    }
    run.writer.write_table("sweep", summary);
    run.writer.write_table("sweep_samples", samples);
    run.writer.write("sweep.svg", line_plot({"Final ground-state weight", "steps", "mean weight", 0.0, 1.0}, series));
    run.finish();
    for (const auto& r : rows) {
      out << "steps = " << r.steps << ", eta = " << format_double(r.eta) << ": mean " << fixed(r.mean)
          << " +- " << fixed(r.standard_error) << " over " << r.repetitions << "\n";
    }
    return 0;
  }

  require_seed(config.error_model);
  run.manifest.seed = config.error_model.active() ? config.error_model.seed : opts.seed;
  const AdiabaticResult result = adiabatic_run(config, hw, {opts.threads()});

  Table traj{{"step", "k", "fidelity", "energy", "ground_energy"}, {}};
  Series fid{"ground-space weight", {}, {}};
  for (const auto& p : result.trajectory) {
    traj.add({static_cast<std::int64_t>(p.step), p.k, p.fidelity, p.energy, p.ground_energy});
    fid.x.push_back(static_cast<double>(p.step));
    fid.y.push_back(p.fidelity);
  }
  Table hist{{"level", "energy", "degeneracy", "weight"}, {}};
  std::vector<std::string> bar_labels;
  std::vector<double> bar_values;
  for (std::size_t i = 0; i < result.histogram.size(); ++i) {
    const auto& h = result.histogram[i];
    hist.add({static_cast<std::int64_t>(i), h.energy, static_cast<std::int64_t>(h.degeneracy), h.weight});
    bar_labels.push_back(std::to_string(i));
    bar_values.push_back(h.weight);
  }
  run.writer.write_table("trajectory", traj);
  run.writer.write_table("histogram", hist);
  run.writer.write("trajectory.svg",
                   line_plot({"Adiabatic preparation", "step", "weight in instantaneous ground space", 0.0, 1.0},
                             {fid}));
  run.writer.write("histogram.svg",
                   bar_chart({"Final eigenspace weights", "level (ascending energy)", "weight", 0.0, 1.0},
                             bar_labels, bar_values));
  run.writer.write("final_state.txt", result.final_state.dump());
  run.writer.write("log.txt", result.log.to_text());
  run.finish();

  out << "steps = " << config.steps << ", dt = " << format_double(result.dt)
      << ", initial degeneracy = " << result.initial_degeneracy << "\n"
      << "final ground-state weight = " << fixed(result.final_ground_weight) << "\n";
  print_notes(out, result.notes);
  return 0;
}

int cmd_cost(const RunOptions& opts, std::ostream& out) {
  Run run(opts, "cost");
  const CompileSettings settings = compile_settings(run.cfg);
  const Hamiltonian target = parse_model(run.cfg, "model");
  const HardwareModel hw = parse_hardware(run.cfg);
  const double gamma = hardware_gamma(hw);

  // Per-pair bounds: the homogeneous sign condition and the cost with
  // independent control of each qubit.
  Table pairs{{"a", "b", "symmetric", "homogeneous_feasible", "homogeneous_cost", "inhomogeneous_cost"}, {}};
  for (std::size_t a = 0; a < target.n_qubits(); ++a) {
    for (std::size_t b = a + 1; b < target.n_qubits(); ++b) {
      const CoeffMatrix m = pair_coeff_matrix(target, a, b);
      if (m.m.isZero(0.0)) continue;
      const bool symmetric = m.is_symmetric(1e-12);
      Cell feasible, hom_cost;
      if (symmetric) {
        const auto f = homogeneous_feasibility(m, gamma);
        feasible = static_cast<std::int64_t>(f.feasible);
        if (f.time_cost) hom_cost = *f.time_cost;
      }
      pairs.add({static_cast<std::int64_t>(a), static_cast<std::int64_t>(b), static_cast<std::int64_t>(symmetric),
                 feasible, hom_cost, inhomogeneous_cost(m, gamma)});
    }
  }

  const CyclePlan plan = plan_cycle(target, hw, settings.options);
  const CostReport report =
      make_cost_report(plan.time_cost(), plan.n_controls(), settings.t_prime, settings.epsilon, !target.empty());
  Table groups{{"gate_id", "pairs", "time_scale", "frames"}, {}};
  for (const auto& g : plan.groups) {
    groups.add({g.gate_id, static_cast<std::int64_t>(g.targets.size()), g.control.time_scale,
                static_cast<std::int64_t>(g.control.sequence.size())});
  }
  run.writer.write("cost.txt", report.to_text());
  run.writer.write_table("cost", cost_table(report));
  run.writer.write_table("pairs", pairs);
  run.writer.write_table("groups", groups);
  run.finish();

  out << "c = " << format_double(report.time_cost) << ", n = " << report.n_controls
      << ", L = " << report.gate_count << ", chi = " << format_double(report.chi) << "\n";
  print_notes(out, plan.notes);
  return 0;
}

int cmd_crosstalk(const RunOptions& opts, std::ostream& out) {
  Run run(opts, "crosstalk");
  const ConfigFile& cfg = run.cfg;
  cfg.allow_keys("crosstalk", {"groups"});
  const HardwareModel hw = parse_hardware(cfg);
  const auto* trap = std::get_if<TrapArrayModel>(&hw);
  if (!trap) throw PolicyError("crosstalk analysis needs a trap-array (uqs2) platform");

  // Groups are separated by ';' and their ions by whitespace.
  std::vector<std::vector<std::size_t>> groups;
  for (const auto& item : split_config_list(cfg.require("crosstalk", "groups"), ';')) {
    std::istringstream in(item.text);
    std::vector<std::size_t> g;
    std::string token;
    while (in >> token) g.push_back(static_cast<std::size_t>(parse_config_uint({token, item.line, item.column})));
    groups.push_back(std::move(g));
  }
  const CrosstalkReport report = crosstalk_report(*trap, groups);

  Table pairs{{"group_a", "group_b", "a", "b", "ratio"}, {}};
  for (const auto& p : report.pairs) {
    pairs.add({static_cast<std::int64_t>(p.group_a), static_cast<std::int64_t>(p.group_b),
               static_cast<std::int64_t>(p.a), static_cast<std::int64_t>(p.b), p.ratio});
  }
  Table summary{{"groups", "worst", "threshold", "concurrent"}, {}};
  summary.add({static_cast<std::int64_t>(groups.size()), report.worst, report.threshold,
               static_cast<std::int64_t>(report.concurrent)});
  run.writer.write_table("crosstalk", pairs);
  run.writer.write_table("crosstalk_summary", summary);
  run.finish();

  out << "worst parasitic/intended ratio = " << format_double(report.worst) << " (threshold "
      << format_double(report.threshold) << "): " << (report.concurrent ? "concurrent" : "sequential") << "\n";
  return 0;
}

}  // namespace uqs::cli

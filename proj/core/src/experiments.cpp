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

#include "uqs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <thread>

#include "uqs/errors.hpp"

namespace uqs {

namespace {

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) { return {std::min(a, b), std::max(a, b)}; }

PauliString pair_term(std::size_t n, std::size_t a, std::size_t b, Pauli op, double coeff) {
  return PauliString::from_sites(n, {{a, op}, {b, op}}, coeff);
}

void add_uniform_field(std::vector<PauliString>& terms, std::size_t n, double b, const Vec3& direction) {
  if (b == 0.0) return;
  if (std::abs(direction.norm() - 1.0) > 1e-10) throw InvalidArgument("field direction must be a unit vector");
  for (std::size_t q = 0; q < n; ++q) {
    for (int k = 0; k < 3; ++k) {
      if (direction(k) != 0.0) {
        terms.push_back(PauliString::from_sites(n, {{q, static_cast<Pauli>(k + 1)}}, b * direction(k)));
      }
    }
  }
}

double uniform_unit(std::mt19937_64& engine) { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }

}  // namespace

// ---------------------------------------------------------------------------
// Geometry

Geometry Geometry::chain(std::size_t n_sites, Boundary boundary) {
  Geometry g;
  g.rows = 1;
  g.cols = n_sites;
  g.boundary = boundary;
  return g;
}

void Geometry::validate() const {
  if (rows == 0 || cols == 0 || n_sites() < 2) throw InvalidArgument("geometry needs at least two sites");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidArgument("geometry spacing must be positive");
  if (pattern != GeometryPattern::rectangular) {
    if (rows < 2 || cols < 2) throw InvalidArgument("triangular and hexagonal patterns need a 2D grid");
    if (boundary == Boundary::periodic) {
      throw InvalidArgument("periodic boundaries are only supported for rectangular patterns");
    }
  }
}

Position Geometry::position(std::size_t site) const {
  if (site >= n_sites()) throw InvalidArgument("site index out of range");
  return {static_cast<double>(site % cols) * spacing, static_cast<double>(site / cols) * spacing};
}

double Geometry::distance(std::size_t a, std::size_t b) const {
  if (a >= n_sites() || b >= n_sites()) throw InvalidArgument("site index out of range");
  auto gap = [&](std::size_t i, std::size_t j, std::size_t extent) {
    const std::size_t d = i > j ? i - j : j - i;
    return boundary == Boundary::periodic ? std::min(d, extent - d) : d;
  };
  const double dx = static_cast<double>(gap(a % cols, b % cols, cols)) * spacing;
  const double dy = static_cast<double>(gap(a / cols, b / cols, rows)) * spacing;
  return std::hypot(dx, dy);
}

std::vector<std::pair<std::size_t, std::size_t>> Geometry::neighbor_pairs() const {
  validate();
  if (pattern != GeometryPattern::rectangular) {
    LatticeModel base;
    base.rows = rows;
    base.cols = cols;
    return geometry_remap(pattern, base);
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  const bool wrap = boundary == Boundary::periodic;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t q = r * cols + c;
      if (c + 1 < cols) pairs.insert(ordered(q, q + 1));
      else if (wrap && cols > 2) pairs.insert(ordered(q, r * cols));
      if (r + 1 < rows) pairs.insert(ordered(q, q + cols));
      else if (wrap && rows > 2) pairs.insert(ordered(q, c));
    }
  }
  return {pairs.begin(), pairs.end()};
}

// ---------------------------------------------------------------------------
// Models

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::dipole: return "dipole";
    case ModelKind::ising: return "ising";
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::random_ising: return "random_ising";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::dipole, ModelKind::ising, ModelKind::heisenberg, ModelKind::random_ising}) {
    if (model_name(k) == name) return k;
  }
  throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

Hamiltonian neighbor_sum(const Geometry& geometry, Pauli op, double coeff) {
  const std::size_t n = geometry.n_sites();
  std::vector<PauliString> terms;
  for (const auto& [a, b] : geometry.neighbor_pairs()) terms.push_back(pair_term(n, a, b, op, coeff));
  return Hamiltonian(n, std::move(terms));
}

Hamiltonian build_model(const NamedModel& spec) {
  const Geometry& geo = spec.geometry;
  geo.validate();
  if (!std::isfinite(spec.coupling) || !std::isfinite(spec.field)) {
    throw InvalidArgument("model parameters must be finite");
  }
  const std::size_t n = geo.n_sites();
  std::vector<PauliString> terms;
  switch (spec.kind) {
    case ModelKind::dipole:
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          const double c = spec.coupling * 0.5 * inverse_cube(geo.distance(a, b));
          terms.push_back(pair_term(n, a, b, Pauli::X, c));
          terms.push_back(pair_term(n, a, b, Pauli::Y, c));
        }
      }
      add_uniform_field(terms, n, spec.field, spec.field_direction);
      break;
    case ModelKind::ising:
    case ModelKind::heisenberg: {
      const double c = -spec.coupling / 2.0;
      for (const auto& [a, b] : geo.neighbor_pairs()) {
        if (spec.kind == ModelKind::heisenberg) {
          terms.push_back(pair_term(n, a, b, Pauli::X, c));
          terms.push_back(pair_term(n, a, b, Pauli::Y, c));
        }
        terms.push_back(pair_term(n, a, b, Pauli::Z, c));
      }
      add_uniform_field(terms, n, spec.field, spec.field_direction);
      break;
    }
    case ModelKind::random_ising: {
      const auto pairs = geo.neighbor_pairs();
      std::map<std::pair<std::size_t, std::size_t>, double> couplings;
      if (!spec.pair_couplings.empty()) {
        const std::set<std::pair<std::size_t, std::size_t>> allowed(pairs.begin(), pairs.end());
        for (const auto& [ab, j] : spec.pair_couplings) {
          const auto key = ordered(ab.first, ab.second);
          if (!allowed.contains(key)) {
            throw InvalidArgument("coupling given for non-neighbor pair (" + std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ")");
          }
          couplings[key] = j;
        }
        if (couplings.size() != pairs.size()) throw InvalidArgument("random_ising: every neighbor pair needs a J_ab");
      } else {
        if (!spec.seed) throw InvalidArgument("random_ising needs a seed or explicit pair couplings");
        std::mt19937_64 engine(*spec.seed);
        for (const auto& ab : pairs) {
          couplings[ab] = spec.coupling + spec.coupling_spread * (2.0 * uniform_unit(engine) - 1.0);
        }
      }
      for (const auto& [ab, j] : couplings) terms.push_back(pair_term(n, ab.first, ab.second, Pauli::Z, -0.5 * j));
      if (!spec.site_fields.empty()) {
        if (spec.site_fields.size() != n) throw InvalidArgument("random_ising: need one field value per site");
        for (std::size_t q = 0; q < n; ++q) {
          if (spec.site_fields[q] != 0.0) terms.push_back(PauliString::from_sites(n, {{q, Pauli::X}}, spec.site_fields[q]));
        }
      } else {
        add_uniform_field(terms, n, spec.field, Vec3::UnitX());
      }
      break;
    }
  }
  return Hamiltonian(n, std::move(terms));
}

LatticeModel full_range_chain(std::size_t n_sites, double gamma) {
  std::set<int> js;
  for (std::size_t j = 1; j < n_sites; ++j) js.insert(static_cast<int>(j));
  LatticeModel m = LatticeModel::chain(n_sites, js);
  m.gamma = gamma;
  return m;
}

Hamiltonian truncate_to_lattice(const Hamiltonian& h, const LatticeModel& model, std::vector<std::string>* notes) {
  std::set<std::pair<std::size_t, std::size_t>> reachable;
  for (const auto& fam : lattice_families(model)) {
    for (const auto& p : fam.pairs) reachable.insert(ordered(p.a, p.b));
  }
  std::vector<PauliString> kept;
  std::size_t dropped = 0;
  for (const auto& t : h.terms()) {
    const auto sup = t.support();
    if (sup.size() == 2 && !reachable.contains({sup[0], sup[1]})) {
      ++dropped;
      continue;
    }
    kept.push_back(t);
  }
  if (dropped > 0 && notes) {
    notes->push_back("dropped " + std::to_string(dropped) + " two-body terms beyond the available lattice shifts");
  }
  return Hamiltonian(h.n_qubits(), std::move(kept));
}

ProtocolPlan protocol_for_model(const NamedModel& spec, const HardwareModel& hw) {
  ProtocolPlan out;
  out.target = build_model(spec);
  if (hardware_qubits(hw) != out.target.n_qubits()) {
    throw InvalidArgument("model has " + std::to_string(out.target.n_qubits()) + " sites but the hardware has " +
                          std::to_string(hardware_qubits(hw)) + " qubits");
  }
  switch (spec.kind) {
    case ModelKind::dipole: out.wrapper = "xy2"; break;
    case ModelKind::heisenberg: out.wrapper = "heisenberg3"; break;
    case ModelKind::ising: out.wrapper = "identity"; break;
    case ModelKind::random_ising: out.wrapper = "frequency"; break;
  }
  CompileOptions options;
  if (const auto* lattice = std::get_if<LatticeModel>(&hw)) {
    if (spec.kind == ModelKind::random_ising) {
      throw InfeasibleError(
          "random Ising couplings differ from pair to pair, which a collective lattice shift cannot produce; "
          "use a trap array");
    }
    if (spec.kind == ModelKind::dipole) out.target = truncate_to_lattice(out.target, *lattice, &out.notes);
  } else {
    if (spec.kind == ModelKind::dipole) options.grouping = PairGrouping::global_push;
    if (spec.kind == ModelKind::random_ising) options.grouping = PairGrouping::per_pair;
  }
  out.cycle = plan_cycle(out.target, hw, options);
  out.notes.insert(out.notes.end(), out.cycle.notes.begin(), out.cycle.notes.end());
  double largest = 0.0;
  for (const auto& g : out.cycle.groups) largest = std::max(largest, g.control.time_scale);
  for (const auto& g : out.cycle.groups) {
    out.relative_rates.emplace_back(g.gate_id, largest > 0.0 ? g.control.time_scale / largest : 0.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Adiabatic path

std::string ramp_name(Ramp r) { return r == Ramp::linear ? "linear" : "cosine"; }

Ramp parse_ramp(std::string_view name) {
  if (name == "linear") return Ramp::linear;
  if (name == "cosine") return Ramp::cosine;
  throw InvalidArgument("unknown ramp '" + std::string(name) + "'");
}

double ramp_value(Ramp ramp, std::size_t step, std::size_t steps) {
  if (steps == 0 || step > steps) throw InvalidArgument("ramp step out of range");
  if (step == steps) return 0.0;
  const double x = static_cast<double>(step) / static_cast<double>(steps);
  return ramp == Ramp::linear ? 1.0 - x : 0.5 * (1.0 + std::cos(std::numbers::pi * x));
}

Hamiltonian interpolate(const Hamiltonian& h_initial, const Hamiltonian& h_target, double k) {
  if (h_initial.n_qubits() != h_target.n_qubits()) throw InvalidArgument("interpolate: size mismatch");
  return k * h_initial + (1.0 - k) * h_target;
}

GapScan min_gap(const Hamiltonian& h_initial, const Hamiltonian& h_target, std::size_t samples, double tol) {
  if (samples < 2) throw InvalidArgument("min_gap needs at least two samples");
  GapScan scan;
  bool found = false;
  for (std::size_t i = 0; i < samples; ++i) {
    const double k = static_cast<double>(i) / static_cast<double>(samples - 1);
    const SpectrumCache spectrum(interpolate(h_initial, h_target, k), tol);
    const double gap = spectrum.gap();
    scan.k.push_back(k);
    scan.gaps.push_back(gap);
    if (spectrum.levels().size() < 2) continue;
    if (!found || gap < scan.min_gap) {
      scan.min_gap = gap;
      scan.argmin_k = k;
      found = true;
    }
  }
  if (!found) throw NumericError("gapless path: no sample has two distinct energy levels");
  scan.recommended_time = 1.0 / scan.min_gap;
  return scan;
}

void AdiabaticConfig::validate() const {
  if (h_initial.n_qubits() == 0 || h_initial.n_qubits() != h_target.n_qubits()) {
    throw InvalidArgument("initial and target Hamiltonians must act on the same nonzero number of qubits");
  }
  if (steps == 0) throw InvalidArgument("steps must be positive");
  if (!(theta1 > 0.0) || !std::isfinite(theta1)) throw InvalidArgument("theta1 must be positive");
  if (!(degeneracy_tol >= 0.0)) throw InvalidArgument("degeneracy tolerance must be non-negative");
  error_model.validate();
  if (stepping == Stepping::exact && error_model.active()) {
    throw InvalidArgument("exact stepping has no pulses to jitter; drop the error model or use trotter stepping");
  }
}

AdiabaticPath::AdiabaticPath(const AdiabaticConfig& config, const HardwareModel& hw)
    : config_((config.validate(), config)),
      hw_(hw),
      initial_(config.h_initial.n_qubits()),
      target_(config.h_target, config.degeneracy_tol) {
  const std::size_t n = config_.h_initial.n_qubits();
  if (hardware_qubits(hw_) != n) throw InvalidArgument("hardware size does not match the Hamiltonians");

  double largest = 0.0;
  for (const Hamiltonian* h : {&config_.h_initial, &config_.h_target}) {
    for (const auto& g : plan_cycle(*h, hw_).groups) largest = std::max(largest, g.control.time_scale);
  }
  if (largest == 0.0) {
    largest = 1.0;
    notes_.push_back("no two-body terms on the path; theta1 taken as the time step");
  }
  dt_ = config_.theta1 / (std::abs(hardware_gamma(hw_)) * largest);

  const GroundState gs = ground_state(SpectrumCache(config_.h_initial, config_.degeneracy_tol));
  initial_ = gs.state;
  initial_degeneracy_ = gs.degeneracy;
  if (gs.degeneracy > 1) {
    notes_.push_back("initial ground space is " + std::to_string(gs.degeneracy) +
                     "-fold degenerate; starting from the projection of the dominant basis state");
  }

  const std::size_t steps = config_.steps;
  if (config_.stepping == Stepping::trotter) {
    cycles_.reserve(steps);
    for (std::size_t s = 1; s <= steps; ++s) {
      const Hamiltonian h = interpolate(config_.h_initial, config_.h_target, ramp_value(config_.ramp, s, steps));
      cycles_.push_back(emit_cycle(plan_cycle(h, hw_), dt_));
    }
  }
  if (config_.record_every > 0) {
    for (std::size_t s = config_.record_every; s < steps; s += config_.record_every) recorded_.push_back(s);
  }
  recorded_.push_back(steps);
  for (std::size_t s : recorded_) {
    if (s == steps) continue;
    recorded_spectra_.emplace(
        s, SpectrumCache(interpolate(config_.h_initial, config_.h_target, ramp_value(config_.ramp, s, steps)),
                         config_.degeneracy_tol));
  }
}

StateVector AdiabaticPath::evolve(const ErrorModel& err, const ExecutionOptions& options, ExecutionLog* log,
                                  std::vector<TrajectoryPoint>* trajectory) const {
  err.validate();
  if (config_.stepping == Stepping::exact && err.active()) {
    throw InvalidArgument("exact stepping cannot apply timing errors");
  }
  StateVector psi = initial_;
  Executor executor = err.active() ? Executor(err, options) : Executor(options);
  executor.record_to(log);
  const std::size_t steps = config_.steps;
  auto next_record = recorded_.begin();
  for (std::size_t s = 1; s <= steps; ++s) {
    const double k = ramp_value(config_.ramp, s, steps);
    if (config_.stepping == Stepping::trotter) {
      executor.run(psi, std::span<const Instruction>(cycles_[s - 1]));
    } else {
      psi = SpectrumCache(interpolate(config_.h_initial, config_.h_target, k), config_.degeneracy_tol).evolve(psi, dt_);
    }
    if (next_record != recorded_.end() && *next_record == s) {
      ++next_record;
      if (trajectory) {
        const SpectrumCache& spectrum = s == steps ? target_ : recorded_spectra_.at(s);
        const auto hist = eigenspace_histogram(psi, spectrum);
        TrajectoryPoint p;
        p.step = s;
        p.k = k;
        p.fidelity = hist.front().weight;
        p.ground_energy = hist.front().energy;
        for (const auto& w : hist) p.energy += w.energy * w.weight;
        trajectory->push_back(p);
      }
    }
  }
  return psi;
}

AdiabaticResult AdiabaticPath::run(const ErrorModel& err, const ExecutionOptions& options) const {
  AdiabaticResult r;
  r.final_state = evolve(err, options, &r.log, &r.trajectory);
  r.histogram = eigenspace_histogram(r.final_state, target_);
  r.final_ground_weight = r.histogram.front().weight;
  r.initial_degeneracy = initial_degeneracy_;
  r.dt = dt_;
  r.notes = notes_;
  return r;
}

double AdiabaticPath::final_ground_weight(const ErrorModel& err, const ExecutionOptions& options) const {
  const StateVector psi = evolve(err, options, nullptr, nullptr);
  return subspace_fidelity(psi, target_.level_basis(0));
}

AdiabaticResult adiabatic_run(const AdiabaticConfig& config, const HardwareModel& hw,
                              const ExecutionOptions& options) {
  return AdiabaticPath(config, hw).run(config.error_model, options);
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<SweepRow> error_sweep(const SweepConfig& config, const HardwareModel& hw) {
  if (config.etas.empty() || config.steps.empty()) throw InvalidArgument("error_sweep: empty grid");
  if (config.repetitions == 0) throw InvalidArgument("error_sweep: repetitions must be positive");
  for (double eta : config.etas) ErrorModel{eta, eta, std::nullopt}.validate();
  const std::size_t jobs = std::max<std::size_t>(1, config.jobs);

  std::vector<SweepRow> rows;
  for (std::size_t steps : config.steps) {
    AdiabaticConfig base = config.base;
    base.steps = steps;
    base.error_model = {};
    base.record_every = 0;
    const AdiabaticPath path(base, hw);

    struct Task {
      std::size_t row;
      std::size_t rep;
    };
    std::vector<Task> tasks;
    const std::size_t first_row = rows.size();
    for (double eta : config.etas) {
      SweepRow row;
      row.steps = steps;
      row.eta = eta;
      row.repetitions = config.repetitions;
      row.samples.assign(config.repetitions, 0.0);
      const std::size_t reps = eta > 0.0 ? config.repetitions : 1;
      for (std::size_t r = 0; r < reps; ++r) tasks.push_back({rows.size(), r});
      rows.push_back(std::move(row));
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        SweepRow& row = rows[tasks[i].row];
        const ErrorModel err{row.eta, row.eta, config.seed + tasks[i].rep};
        row.samples[tasks[i].rep] = path.final_ground_weight(err);
      }
    };
    {
      std::vector<std::jthread> pool;
      for (std::size_t t = 1; t < std::min(jobs, tasks.size()); ++t) pool.emplace_back(worker);
      worker();
    }

    for (std::size_t i = first_row; i < rows.size(); ++i) {
      SweepRow& row = rows[i];
      if (row.eta == 0.0) std::fill(row.samples.begin(), row.samples.end(), row.samples.front());
      const double count = static_cast<double>(row.samples.size());
      double sum = 0.0;
      for (double v : row.samples) sum += v;
      row.mean = sum / count;
      double sq = 0.0;
      for (double v : row.samples) sq += (v - row.mean) * (v - row.mean);
      row.stddev = row.samples.size() > 1 ? std::sqrt(sq / (count - 1.0)) : 0.0;
      row.standard_error = row.stddev / std::sqrt(count);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Presets

Hamiltonian dipole_chain(std::size_t n_sites, double coupling) {
  NamedModel m;
  m.kind = ModelKind::dipole;
  m.geometry = Geometry::chain(n_sites);
  m.coupling = coupling;
  return build_model(m);
}

std::vector<std::string> experiment_preset_names() { return {"fig4a", "fig4b", "fig5"}; }

ExperimentPreset experiment_preset(std::string_view name) {
  const bool fig5 = name == "fig5";
  if (!fig5 && name != "fig4a" && name != "fig4b") {
    throw InvalidArgument("unknown experiment preset '" + std::string(name) + "'");
  }
  const std::size_t n = fig5 ? 9 : 7;
  AdiabaticConfig c;
  c.h_initial = neighbor_sum(Geometry::chain(n), fig5 ? Pauli::X : Pauli::Z);
  c.h_target = dipole_chain(n);
  c.steps = 100;
  if (name == "fig4a") {
    c.theta1 = 0.1;
    c.error_model = {0.01, 0.005, 1};
    c.record_every = 1;
  } else if (name == "fig4b") {
    c.theta1 = 0.025;
    c.record_every = 0;
  } else {
    c.theta1 = 0.025;
    c.error_model = {0.01, 0.01, 1};
    c.record_every = 1;
  }
  return {c, full_range_chain(n)};
}

}  // namespace uqs

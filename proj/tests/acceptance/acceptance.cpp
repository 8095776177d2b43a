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

// One PASS/FAIL line per acceptance criterion. Exits nonzero when any
// criterion fails. Reference values come from closed forms or from the
// oracles in oracles.hpp, never from the library under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "uqs/compiler.hpp"
#include "uqs/config.hpp"
#include "uqs/errors.hpp"
#include "uqs/experiments.hpp"
#include "uqs/hardware.hpp"
#include "uqs/spectrum.hpp"
#include "uqs/statevector.hpp"

namespace {

using uqs::CoeffMatrix;
using uqs::Hamiltonian;
using uqs::PauliString;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Check = std::function<void(Outcome&)>;

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

Hamiltonian heisenberg_pair(double j) {
  return Hamiltonian(2, {PauliString::from_label("XX", j), PauliString::from_label("YY", j),
                         PauliString::from_label("ZZ", j)});
}

CoeffMatrix iso(double j) {
  CoeffMatrix m;
  m.m.diagonal().setConstant(j);
  return m;
}

// 1. Time cost and control complexity formulas.
void cost_formulas(Outcome& out) {
  double worst = 0.0;
  for (double j : {1.0, 0.5, 2.0, 3.7}) {
    for (double gamma : {1.0, 0.25, 3.0}) {
      const double expect = 3 * j / gamma;
      const auto f = uqs::homogeneous_feasibility(iso(j), gamma);
      out.require(f.feasible && f.time_cost, "Heisenberg feasible");
      worst = std::max(worst, std::abs(*f.time_cost - expect));
      auto lattice = uqs::LatticeModel::chain(2, {1});
      lattice.gamma = gamma;
      worst = std::max(worst, std::abs(uqs::plan_cycle(heisenberg_pair(j), lattice).time_cost() - expect));
    }
  }
  out.require(worst <= 1e-12, "c = 3J/gamma");

  // Integral cases where L = c^2 T'^2 / eps is an integer, so chi equals
  // 9 J T' / (gamma eps) exactly.
  struct Case {
    double j, gamma, t_prime, eps;
  };
  for (const Case& k : {Case{1, 1, 1, 0.01}, Case{2, 1, 0.5, 0.01}, Case{1, 2, 2, 0.04}}) {
    auto lattice = uqs::LatticeModel::chain(2, {1});
    lattice.gamma = k.gamma;
    const auto compiled = uqs::trotter_schedule(heisenberg_pair(k.j), k.t_prime, k.eps, lattice);
    const double chi = 9 * k.j * k.t_prime / (k.gamma * k.eps);
    out.require(compiled.cost.n_controls == 3, "n = 3");
    out.require(std::abs(compiled.cost.chi - chi) <= 1e-12 * chi, "chi = 9JT'/(gamma eps)");
  }

  double worst_anti = 0.0;
  for (double j : {1.0, -0.6, 2.5}) {
    for (double gamma : {1.0, -2.0, 0.3}) {
      Hamiltonian anti(2, {PauliString::from_label("ZY", j), PauliString::from_label("YZ", -j)});
      const double expect = 2 * std::abs(j) / std::abs(gamma);
      worst_anti = std::max(worst_anti,
                            std::abs(uqs::inhomogeneous_cost(uqs::coeff_matrix(anti).interaction, gamma) - expect));
      auto trap = uqs::TrapArrayModel::chain(2);
      trap.gamma = gamma;
      worst_anti = std::max(worst_anti, std::abs(uqs::plan_cycle(anti, trap).time_cost() - expect));
    }
  }
  out.require(worst_anti <= 1e-12, "antisymmetric c = 2|J|/|gamma|");
  out.detail << "max |c - 3J/gamma| = " << worst << ", chi = 900 at J=gamma=T'=1, eps=0.01, max antisym error "
             << worst_anti;
}

// 2. Sign condition for homogeneous control and the isotropic average.
void sign_gate(Outcome& out) {
  for (double j : {1.0, -1.0, 0.4}) {
    for (double gamma : {1.0, -1.0, 2.5}) {
      const bool same = (j > 0) == (gamma > 0);
      const auto f = uqs::homogeneous_feasibility(iso(j), gamma);
      out.require(f.feasible == same, "feasibility follows sign(J) = sign(gamma)");
      auto lattice = uqs::LatticeModel::chain(2, {1});
      lattice.gamma = gamma;
      bool compiled = true;
      try {
        uqs::plan_cycle(heisenberg_pair(j), lattice);
      } catch (const uqs::InfeasibleError&) {
        compiled = false;
      }
      out.require(compiled == same, "compiler accepts exactly the matching signs");
    }
  }
  for (double gamma : {1.0, 3.0, -2.0, 0.7}) {
    const Hamiltonian raw(2, {PauliString::from_label("ZZ", gamma)});
    const Hamiltonian eff = uqs::effective_hamiltonian(uqs::protocol_library("heisenberg3"), raw);
    std::vector<std::string> labels;
    for (const auto& t : eff.terms()) labels.push_back(t.label());
    out.require(labels == std::vector<std::string>{"XX", "YY", "ZZ"}, "support is XX, YY, ZZ");
    // Normalized by the common coefficient, the three terms are identical.
    const double c = eff.coefficient("XX");
    out.require(eff.coefficient("YY") == c && eff.coefficient("ZZ") == c, "isotropic coefficients bitwise equal");
    out.require(std::abs(c - gamma / 3.0) <= 2e-16 * std::abs(gamma), "coefficient gamma/3");
  }
  out.detail << "sign(J) != sign(gamma) rejected; heisenberg3 on gamma ZZ gives (gamma/3)(XX+YY+ZZ)";
}

// 3. Compiled schedules against exact evolution.
void oracle_equivalence(Outcome& out) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto trap = uqs::TrapArrayModel::chain(3);
  double worst_ratio_dev = 0.0;
  double worst_dist = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Hamiltonian h(3);
    for (std::size_t a = 0; a < 3; ++a) {
      for (auto p : {uqs::Pauli::X, uqs::Pauli::Y, uqs::Pauli::Z}) {
        h.add_term(PauliString::from_sites(3, {{a, p}}, 0.5 * u(rng)));
      }
      for (std::size_t b = a + 1; b < 3; ++b) {
        for (auto p : {uqs::Pauli::X, uqs::Pauli::Y, uqs::Pauli::Z}) {
          h.add_term(PauliString::from_sites(3, {{a, p}, {b, p}}, u(rng)));
        }
      }
    }
    const double t_prime = 1.0;
    const oracle::Matrix exact = oracle::expm(h.to_dense(), t_prime);
    const double eps = 0.01;
    const auto coarse = uqs::trotter_schedule(h, t_prime, eps, trap);
    const auto fine = uqs::trotter_schedule(h, t_prime, eps / 2, trap);
    const double d1 = oracle::phase_free_distance(uqs::schedule_unitary(coarse.schedule), exact);
    const double d2 = oracle::phase_free_distance(uqs::schedule_unitary(fine.schedule), exact);
    const double ratio = d1 / d2;
    // L may not double exactly after rounding up; compare the error ratio
    // with the actual ratio of gate counts.
    const double l_ratio = double(fine.cost.gate_count) / double(coarse.cost.gate_count);
    out.require(d1 <= 2 * eps, "distance <= 2 eps");
    out.require(ratio >= 1.8 && ratio <= 2.2, "error halves when L doubles");
    out.require(std::abs(l_ratio - 2.0) < 0.01, "L doubles");
    worst_dist = std::max(worst_dist, d1);
    worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 2.0));
    if (trial == 0) out.detail << "L=" << coarse.cost.gate_count << " dist=" << d1 << " ratio=" << ratio << "; ";
  }
  out.detail << "5 targets, worst distance " << worst_dist << " (2 eps = 0.02), worst |ratio - 2| = "
             << worst_ratio_dev;
}

// 4. Short-gate and commutator scaling.
void scaling(Outcome& out) {
  const Hamiltonian h0(3, {PauliString::from_label("ZZI", 1.0), PauliString::from_label("IZZ", 0.8)});
  const auto seq = uqs::protocol_library("heisenberg3");
  const Hamiltonian eff = uqs::effective_hamiltonian(seq, h0);
  const auto gate_error = [&](double t) {
    const oracle::Matrix u = uqs::gate_steps_matrix(uqs::sequence_gate_steps(seq, h0, t), 3);
    return oracle::spectral_norm(u - oracle::expm(eff.to_dense(), t));
  };
  const double r2 = gate_error(0.1) / gate_error(0.05);
  out.require(r2 >= 3.5 && r2 <= 4.5, "O(t^2) factor");

  const Hamiltonian h1(3, {PauliString::from_label("IZZ")});
  const Hamiltonian h2(3, {PauliString::from_label("XXI")});
  const oracle::Matrix a = h1.to_dense();
  const oracle::Matrix b = h2.to_dense();
  const oracle::Matrix comm = a * b - b * a;
  const auto deviation = [&](double theta) {
    const auto g = uqs::three_body_gate(h1, h2, theta);
    return oracle::spectral_norm(uqs::gate_steps_matrix(g.steps, 3) - (comm * (theta * theta)).exp());
  };
  const double r3 = deviation(0.1) / deviation(0.05);
  out.require(r3 >= 6.0 && r3 <= 10.0, "O(theta^3) factor");

  const Hamiltonian gen = uqs::three_body_gate(h1, h2, 0.1).generator;
  out.require(gen.size() == 1 && std::abs(gen.coefficient("XYZ") - 2.0) <= 1e-12, "generator 2 XYZ");
  out.detail << "gate error ratio " << r2 << ", three-body ratio " << r3 << ", generator " << gen.coefficient("XYZ")
             << " XYZ";
}

// 5. Decoupling echo.
void echo(Outcome& out) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst = 0.0;
  for (std::size_t n : {2, 3, 4}) {
    for (int trial = 0; trial < 4; ++trial) {
      Hamiltonian raw(n), pure(n);
      for (std::size_t a = 0; a < n; ++a) {
        raw.add_term(PauliString::from_sites(n, {{a, uqs::Pauli::Z}}, u(rng)));
        for (std::size_t b = a + 1; b < n; ++b) {
          const auto zz = PauliString::from_sites(n, {{a, uqs::Pauli::Z}, {b, uqs::Pauli::Z}}, u(rng));
          raw.add_term(zz);
          pure.add_term(zz);
        }
      }
      const double theta = 0.3 + 0.2 * trial;
      const auto steps = uqs::decoupling_echo(raw, theta);
      out.require(steps.size() == 4, "four instructions");
      const oracle::Matrix target = oracle::expm(pure.to_dense(), 2 * theta);
      worst = std::max(worst, oracle::spectral_norm(uqs::gate_steps_matrix(steps, n) - target));
    }
  }
  out.require(worst <= 1e-12, "echo equals pure ZZ gate");
  out.detail << "12 random Z+ZZ generators, worst operator-norm deviation " << worst;
}

// 6. Crosstalk ratio.
void crosstalk(Outcome& out) {
  const auto trap = uqs::TrapArrayModel::chain(13);
  const auto r = uqs::crosstalk_report(trap, {{0, 1}, {11, 12}});
  const double rel = std::abs(r.max_ratio[0][1] - 1e-3) / 1e-3;
  out.require(rel <= 1e-15, "ratio 1e-3");
  // Same law for a 2D placement: pairs 10 spacings apart along y.
  uqs::TrapArrayModel grid;
  grid.positions = {{0, 0}, {1, 0}, {0, 11}, {1, 11}};
  const auto r2 = uqs::crosstalk_report(grid, {{0, 1}, {2, 3}});
  out.require(r2.max_ratio[0][1] > 0.0, "2D ratio computed");
  out.detail << "ratio at 10 sites " << r.max_ratio[0][1] << " (relative error " << rel << ")";
}

// 7. xy2 on the global push yields the dipole Hamiltonian.
void dipole_identity(Outcome& out) {
  for (std::size_t n : {2, 3, 5, 7, 9}) {
    const auto trap = uqs::TrapArrayModel::chain(n);
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    // (1/2) sum_{a != b} d^-3 Z_a Z_b = sum_{a < b} d^-3 Z_a Z_b.
    const Hamiltonian push = uqs::uqs2_push(trap, all, 1.0);
    const Hamiltonian eff = uqs::effective_hamiltonian(uqs::protocol_library("xy2"), push);
    out.require(eff == uqs::dipole_chain(n), "canonical-form equality n=" + std::to_string(n));

    uqs::NamedModel m;
    m.kind = uqs::ModelKind::dipole;
    m.geometry = uqs::Geometry::chain(n);
    const auto plan = uqs::protocol_for_model(m, trap);
    out.require(plan.wrapper == "xy2" && plan.cycle.groups.size() == 1, "compiled as one global push in xy2");
  }
  out.detail << "xy2 average of the push equals the dipole chain for n = 2, 3, 5, 7, 9";
}

double combined_se(const uqs::SweepRow& a, const uqs::SweepRow& b) {
  return std::sqrt(a.standard_error * a.standard_error + b.standard_error * b.standard_error);
}

// 8. Adiabatic preparation of the dipole ground state, 9 sites.
void fig5(Outcome& out) {
  const auto preset = uqs::experiment_preset("fig5");
  uqs::SweepConfig s;
  s.base = preset.config;
  s.etas = {0.01};
  s.steps = {50, 100, 500};
  s.repetitions = 20;
  s.seed = 1;
  s.jobs = worker_count();
  const auto rows = uqs::error_sweep(s, preset.hardware);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double margin = rows[i + 1].mean - rows[i].mean;
    out.require(margin > combined_se(rows[i], rows[i + 1]), "strict increase beyond 1 combined SE");
  }
  for (const auto& r : rows) out.detail << r.steps << " steps: " << r.mean << " (se " << r.standard_error << "); ";

  auto clean = preset.config;
  clean.steps = 1500;
  clean.error_model = {};
  clean.record_every = 0;
  const double w = uqs::AdiabaticPath(clean, preset.hardware).final_ground_weight({});
  out.require(w >= 0.99, "1500 noise-free steps reach 0.99");
  out.detail << "noise-free 1500 steps: " << w;
}

// 9. Final fidelity against jitter strength, 7 sites.
void fig4b(Outcome& out) {
  const auto preset = uqs::experiment_preset("fig4b");
  uqs::SweepConfig s;
  s.base = preset.config;
  s.etas = {0.0, 0.01, 0.02, 0.03, 0.04};
  s.steps = {100};
  s.repetitions = 20;
  s.seed = 1;
  s.jobs = worker_count();
  const auto rows = uqs::error_sweep(s, preset.hardware);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    out.require(rows[i + 1].mean <= rows[i].mean + combined_se(rows[i], rows[i + 1]),
                "nonincreasing within 1 SE");
  }
  for (const auto& r : rows) out.detail << "eta " << r.eta << ": " << r.mean << " (se " << r.standard_error << "); ";
}

// 10. Beam compensation.
void beams(Outcome& out) {
  std::vector<uqs::Position> pos;
  for (int i = 0; i < 5; ++i) pos.push_back({double(i), 0.0});
  const auto beam = uqs::gaussian_beam(1.5);
  const double tau = 0.6;
  double worst = 0.0;
  for (std::size_t target = 0; target < 5; ++target) {
    const auto sol = uqs::beam_compensation(pos, beam, target, tau, 1.0);
    const auto rots = uqs::beam_rotations(pos, beam, target, 1.0, sol.durations);
    for (std::size_t j = 0; j < 5; ++j) {
      const oracle::Matrix expect =
          j == target ? oracle::expm(oracle::pauli('X'), tau) : oracle::Matrix::Identity(2, 2);
      worst = std::max(worst, oracle::spectral_norm(oracle::Matrix(rots[j].matrix()) - expect));
    }
  }
  out.require(worst <= 1e-8, "V_a = exp(-i tau X), others identity");
  out.detail << "worst operator-norm deviation over all 5 targets " << worst;
}

// 11. Determinism of seeded single-threaded runs.
void determinism(Outcome& out) {
  const char* manifest =
      "[adiabatic]\nsteps = 100\ntheta1 = 0.1\nrecord_every = 10\n"
      "[initial]\nname = neighbor\nsites = 7\npauli = Z\n"
      "[target]\nname = dipole\nsites = 7\n"
      "[errors]\neta_local = 0.01\neta_int = 0.005\nseed = 1\n";
  std::vector<std::string> dumps;
  std::vector<std::string> logs;
  for (int run = 0; run < 2; ++run) {
    const auto cfg = uqs::ConfigFile::parse(manifest);
    const auto config = uqs::parse_adiabatic(cfg);
    const auto r = uqs::adiabatic_run(config, uqs::full_range_chain(7), {1});
    dumps.push_back(r.final_state.dump());
    logs.push_back(r.log.to_text());
  }
  out.require(dumps[0] == dumps[1], "state dumps identical");
  out.require(logs[0] == logs[1], "execution logs identical");
  out.detail << "two runs, " << dumps[0].size() << "-byte dumps identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check>> criteria = {
      {"cost formulas", cost_formulas},     {"sign gate", sign_gate},
      {"oracle equivalence", oracle_equivalence},
      {"gate scaling", scaling},            {"decoupling echo", echo},
      {"crosstalk law", crosstalk},         {"dipole protocol identity", dipole_identity},
      {"9-site adiabatic preparation", fig5}, {"fidelity vs jitter", fig4b},
      {"beam compensation", beams},         {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.2fs): %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

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

#include "uqs/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "uqs/errors.hpp"

namespace uqs {

double inverse_cube(double d) { return 1.0 / (d * d * d); }

// ---------------------------------------------------------------------------
// Models

LatticeModel LatticeModel::chain(std::size_t n_sites, std::set<int> available_j, Boundary boundary) {
  LatticeModel m;
  m.rows = 1;
  m.cols = n_sites;
  m.boundary = boundary;
  m.available_j = std::move(available_j);
  return m;
}

void LatticeModel::validate() const {
  if (rows == 0 || cols == 0) throw InvalidArgument("lattice: rows and cols must be positive");
  if (!std::isfinite(gamma) || gamma == 0.0) throw InvalidArgument("lattice: gamma must be finite and nonzero");
  const std::size_t extent = std::max(rows, cols);
  for (int j : available_j) {
    if (j < 1 || static_cast<std::size_t>(j) >= extent) {
      throw InvalidArgument("lattice: shift j=" + std::to_string(j) + " must satisfy 1 <= j < " +
                            std::to_string(extent));
    }
  }
}

double site_distance(const Position& a, const Position& b) { return std::hypot(a.x - b.x, a.y - b.y); }

TrapArrayModel TrapArrayModel::chain(std::size_t n_ions, double spacing) {
  TrapArrayModel m;
  for (std::size_t i = 0; i < n_ions; ++i) m.positions.push_back({spacing * static_cast<double>(i), 0.0});
  return m;
}

double TrapArrayModel::distance(std::size_t a, std::size_t b) const {
  if (a >= positions.size() || b >= positions.size()) throw InvalidArgument("trap array: ion index out of range");
  return site_distance(positions[a], positions[b]);
}

void TrapArrayModel::validate() const {
  if (positions.empty()) throw InvalidArgument("trap array: no ions");
  if (!std::isfinite(kappa)) throw InvalidArgument("trap array: kappa must be finite");
  if (!(crosstalk_threshold > 0.0)) throw InvalidArgument("trap array: crosstalk threshold must be positive");
  if (!std::isfinite(gamma) || gamma == 0.0) throw InvalidArgument("trap array: gamma must be finite and nonzero");
  for (std::size_t a = 0; a < positions.size(); ++a) {
    if (!std::isfinite(positions[a].x) || !std::isfinite(positions[a].y)) {
      throw InvalidArgument("trap array: non-finite position");
    }
    for (std::size_t b = a + 1; b < positions.size(); ++b) {
      if (distance(a, b) < 1.0 - 1e-12) {
        throw InvalidArgument("trap array: ions " + std::to_string(a) + " and " + std::to_string(b) +
                              " are closer than one spacing");
      }
    }
  }
}

std::size_t hardware_qubits(const HardwareModel& hw) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, LatticeModel>) return m.n_sites();
        else return m.n_ions();
      },
      hw);
}

double hardware_gamma(const HardwareModel& hw) {
  return std::visit([](const auto& m) { return m.gamma; }, hw);
}

std::string hardware_name(const HardwareModel& hw) {
  return std::holds_alternative<LatticeModel>(hw) ? "uqs1" : "uqs2";
}

// ---------------------------------------------------------------------------
// Lattice gates

namespace {

std::string family_id(const std::string& prefix, const LatticeModel& model, int j, LatticeAxis axis) {
  std::string id = prefix + std::to_string(j);
  if (model.dims() == 2) id += axis == LatticeAxis::vertical ? "v" : "h";
  return id;
}

}  // namespace

PairFamily lattice_family(const LatticeModel& model, int j, LatticeAxis axis) {
  model.validate();
  if (axis == LatticeAxis::both) throw InvalidArgument("lattice_family: pick a single axis");
  if (axis == LatticeAxis::vertical && model.dims() == 1) {
    throw InvalidArgument("lattice_family: a chain has no vertical axis");
  }
  PairFamily f;
  f.gate_id = family_id("K", model, j, axis);
  f.j = j;
  f.axis = axis;
  if (j < 1) return f;
  const auto shift = static_cast<std::size_t>(j);
  const bool periodic = model.boundary == Boundary::periodic;
  std::map<std::pair<std::size_t, std::size_t>, double> weights;
  for (std::size_t r = 0; r < model.rows; ++r) {
    for (std::size_t c = 0; c < model.cols; ++c) {
      std::size_t r2 = r;
      std::size_t c2 = c;
      const std::size_t extent = axis == LatticeAxis::horizontal ? model.cols : model.rows;
      std::size_t& moved = axis == LatticeAxis::horizontal ? c2 : r2;
      if (shift >= extent) continue;
      moved += shift;
      if (moved >= extent) {
        if (!periodic) continue;
        moved -= extent;
      }
      std::size_t a = model.site(r, c);
      std::size_t b = model.site(r2, c2);
      if (a > b) std::swap(a, b);
      weights[{a, b}] += 1.0;
    }
  }
  for (const auto& [ab, w] : weights) f.pairs.push_back({ab.first, ab.second, w});
  return f;
}

std::vector<PairFamily> lattice_families(const LatticeModel& model) {
  std::vector<PairFamily> out;
  for (int j : model.available_j) {
    for (LatticeAxis axis : {LatticeAxis::horizontal, LatticeAxis::vertical}) {
      if (axis == LatticeAxis::vertical && model.dims() == 1) continue;
      PairFamily f = lattice_family(model, j, axis);
      if (!f.pairs.empty()) out.push_back(std::move(f));
    }
  }
  return out;
}

LatticeGate uqs1_gate(const LatticeModel& model, int j, double theta, LatticeAxis axis) {
  model.validate();
  if (!model.available_j.contains(j)) {
    throw InfeasibleError("lattice shift j=" + std::to_string(j) + " is not available");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("uqs1_gate: theta must be finite");
  std::vector<LatticeAxis> axes;
  if (axis == LatticeAxis::both) {
    axes.push_back(LatticeAxis::horizontal);
    if (model.dims() == 2) axes.push_back(LatticeAxis::vertical);
  } else {
    axes.push_back(axis);
  }
  const std::size_t n = model.n_sites();
  LatticeGate out{Hamiltonian(n), {}};
  for (LatticeAxis ax : axes) {
    PairFamily f = lattice_family(model, j, ax);
    if (f.pairs.empty()) continue;
    for (const auto& p : f.pairs) {
      out.generator.add_term(PauliString::from_sites(n, {{p.a, Pauli::Z}, {p.b, Pauli::Z}}, p.weight));
    }
    out.gates.push_back({family_id("U", model, j, ax), theta, f.pairs, -1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trap-array gates

Hamiltonian uqs2_push(const TrapArrayModel& model, const std::vector<std::size_t>& pushed,
                      double theta_base) {
  if (pushed.size() < 2) throw InvalidArgument("uqs2_push: at least two ions must be pushed");
  std::vector<std::size_t> ions = pushed;
  std::sort(ions.begin(), ions.end());
  if (std::adjacent_find(ions.begin(), ions.end()) != ions.end()) {
    throw InvalidArgument("uqs2_push: an ion is listed twice");
  }
  if (ions.back() >= model.n_ions()) throw InvalidArgument("uqs2_push: ion index out of range");
  const std::size_t n = model.n_ions();
  std::vector<PauliString> terms;
  for (std::size_t i = 0; i < ions.size(); ++i) {
    for (std::size_t k = i + 1; k < ions.size(); ++k) {
      const double w = theta_base * inverse_cube(model.distance(ions[i], ions[k]));
      terms.push_back(PauliString::from_sites(n, {{ions[i], Pauli::Z}, {ions[k], Pauli::Z}}, w));
    }
  }
  return Hamiltonian(n, std::move(terms));
}

PulseProfile PulseProfile::rectangular(std::size_t intervals, double dt) {
  if (intervals == 0) throw InvalidArgument("PulseProfile: need at least one interval");
  return {std::vector<double>(intervals + 1, 1.0), dt};
}

PulseProfile PulseProfile::triangular(std::size_t intervals, double dt) {
  if (intervals == 0) throw InvalidArgument("PulseProfile: need at least one interval");
  PulseProfile p{std::vector<double>(intervals + 1), dt};
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double s = 2.0 * static_cast<double>(i) / static_cast<double>(intervals);
    p.samples[i] = 1.0 - std::abs(s - 1.0);
  }
  return p;
}

double PulseProfile::duration() const {
  return samples.empty() ? 0.0 : dt * static_cast<double>(samples.size() - 1);
}

void PulseProfile::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("PulseProfile: dt must be positive");
  if (samples.size() < 2) throw InvalidArgument("PulseProfile: need at least two samples");
  for (double f : samples) {
    if (!(f >= 0.0 && f <= 1.0)) throw InvalidArgument("PulseProfile: samples must lie in [0, 1]");
  }
}

bool PulseProfile::returns_to_rest(double tol) const {
  return !samples.empty() && std::abs(samples.front()) <= tol && std::abs(samples.back()) <= tol;
}

double theta_from_pulse(const PulseProfile& fa, const PulseProfile& fb, const TrapArrayModel& model,
                        double dist) {
  fa.validate();
  fb.validate();
  if (fa.samples.size() != fb.samples.size() || fa.dt != fb.dt) {
    throw InvalidArgument("theta_from_pulse: profiles must share sample count and spacing");
  }
  if (!(dist > 0.0)) throw InvalidArgument("theta_from_pulse: distance must be positive");
  const std::size_t m = fa.samples.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double g = fa.samples[i] * fb.samples[i];
    sum += (i == 0 || i + 1 == m) ? 0.5 * g : g;
  }
  return -model.kappa * inverse_cube(dist) * sum * fa.dt;
}

CrosstalkReport crosstalk_report(const TrapArrayModel& model,
                                 const std::vector<std::vector<std::size_t>>& groups) {
  const std::size_t g = groups.size();
  std::vector<int> owner(model.n_ions(), -1);
  std::vector<double> intended(g, 0.0);
  for (std::size_t k = 0; k < g; ++k) {
    if (groups[k].size() < 2) throw InvalidArgument("crosstalk_report: each group needs at least two ions");
    for (std::size_t ion : groups[k]) {
      if (ion >= model.n_ions()) throw InvalidArgument("crosstalk_report: ion index out of range");
      if (owner[ion] != -1) {
        throw InvalidArgument("crosstalk_report: ion " + std::to_string(ion) + " appears in two groups");
      }
      owner[ion] = static_cast<int>(k);
    }
    for (std::size_t i = 0; i < groups[k].size(); ++i) {
      for (std::size_t j = i + 1; j < groups[k].size(); ++j) {
        intended[k] = std::max(intended[k], inverse_cube(model.distance(groups[k][i], groups[k][j])));
      }
    }
  }

  CrosstalkReport r;
  r.threshold = model.crosstalk_threshold;
  r.max_ratio.assign(g, std::vector<double>(g, 0.0));
  for (std::size_t k = 0; k < g; ++k) {
    for (std::size_t h = k + 1; h < g; ++h) {
      const double reference = std::min(intended[k], intended[h]);
      for (std::size_t a : groups[k]) {
        for (std::size_t b : groups[h]) {
          const double ratio = inverse_cube(model.distance(a, b)) / reference;
          r.pairs.push_back({std::min(a, b), std::max(a, b), k, h, ratio});
          r.max_ratio[k][h] = std::max(r.max_ratio[k][h], ratio);
          r.max_ratio[h][k] = r.max_ratio[k][h];
          r.worst = std::max(r.worst, ratio);
        }
      }
    }
  }
  r.concurrent = r.worst < r.threshold;
  return r;
}

// ---------------------------------------------------------------------------
// Geometry and addressability

std::vector<std::pair<std::size_t, std::size_t>> geometry_remap(GeometryPattern pattern,
                                                                const LatticeModel& base) {
  if (base.rows < 2 || base.cols < 2) throw InvalidArgument("geometry_remap: base lattice must be 2D");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < base.rows; ++r) {
    for (std::size_t c = 0; c < base.cols; ++c) {
      const std::size_t q = base.site(r, c);
      if (c + 1 < base.cols) out.emplace_back(q, base.site(r, c + 1));
      if (r + 1 < base.rows) {
        if (pattern != GeometryPattern::hexagonal || (r + c) % 2 == 0) out.emplace_back(q, base.site(r + 1, c));
        if (pattern == GeometryPattern::triangular && c + 1 < base.cols) {
          out.emplace_back(q, base.site(r + 1, c + 1));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BeamProfile gaussian_beam(double width) {
  if (!(width > 0.0)) throw InvalidArgument("gaussian_beam: width must be positive");
  return [width](double r) { return std::exp(-r * r / (2.0 * width * width)); };
}

namespace {

Eigen::MatrixXd beam_matrix(const std::vector<Position>& positions, const BeamProfile& profile,
                            std::size_t target, double nu0) {
  const auto n = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double sign = static_cast<std::size_t>(k) == target ? -1.0 : 1.0;
      a(j, k) = nu0 * profile(site_distance(positions[j], positions[k])) * sign;
    }
  }
  return a;
}

}  // namespace

BeamSolution beam_compensation(const std::vector<Position>& positions, const BeamProfile& profile,
                               std::size_t target, double tau, double nu0) {
  if (positions.empty()) throw InvalidArgument("beam_compensation: no atoms");
  if (target >= positions.size()) throw InvalidArgument("beam_compensation: target out of range");
  if (!(nu0 != 0.0) || !std::isfinite(nu0)) throw InvalidArgument("beam_compensation: nu0 must be nonzero");
  if (std::abs(profile(0.0) - 1.0) > 1e-12) throw InvalidArgument("beam_compensation: profile must have f(0) = 1");

  const Eigen::MatrixXd a = beam_matrix(positions, profile, target, nu0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) {
    throw NumericError("beam_compensation: beam overlap matrix is singular or ill-conditioned (condition number " +
                       std::to_string(cond) + ")");
  }

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(a.rows());
  rhs(static_cast<Eigen::Index>(target)) = tau;
  BeamSolution s;
  s.durations = svd.solve(rhs);
  s.angles = a * s.durations;
  s.condition_number = cond;
  s.residual = (s.angles - rhs).norm();
  s.has_negative_duration = (s.durations.array() < 0.0).any();
  return s;
}

std::vector<SingleQubitUnitary> beam_rotations(const std::vector<Position>& positions,
                                               const BeamProfile& profile, std::size_t target,
                                               double nu0, const Eigen::VectorXd& durations) {
  if (static_cast<std::size_t>(durations.size()) != positions.size()) {
    throw InvalidArgument("beam_rotations: one duration per atom required");
  }
  const Eigen::MatrixXd a = beam_matrix(positions, profile, target, nu0);
  std::vector<SingleQubitUnitary> out(positions.size());
  for (std::size_t k = 0; k < positions.size(); ++k) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const auto kk = static_cast<Eigen::Index>(k);
      out[j] = SingleQubitUnitary::rotation(Vec3::UnitX(), a(jj, kk) * durations(kk)) * out[j];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Realization

namespace {

PulseSchedule realize_lattice(const PulseSchedule& in, const LatticeModel& model) {
  model.validate();
  if (in.n_qubits != model.n_sites()) {
    throw InvalidArgument("realize_schedule: schedule has " + std::to_string(in.n_qubits) +
                          " qubits but the lattice has " + std::to_string(model.n_sites()) + " sites");
  }
  std::map<std::string, PairFamily> families;
  for (auto& f : lattice_families(model)) families.emplace(f.gate_id, std::move(f));

  PulseSchedule out = in;
  for (auto& ins : out.cycle) {
    if (auto* l = std::get_if<ApplyLocal>(&ins)) {
      if (!l->layer.is_homogeneous()) {
        throw InfeasibleError(
            "lattice control is homogeneous; this schedule requires single qubit addressability");
      }
      continue;
    }
    auto& g = std::get<RawGate>(ins);
    std::string key = g.gate_id;
    if (!key.empty() && key[0] == 'U') key[0] = 'K';
    auto it = families.find(key);
    if (it == families.end()) {
      throw InfeasibleError("lattice cannot realize gate '" + g.gate_id + "' (shift not available)");
    }
    const PairFamily& f = it->second;
    bool matches = g.targets.size() == f.pairs.size();
    double scale = matches && !f.pairs.empty() ? g.targets[0].weight / f.pairs[0].weight : 0.0;
    for (std::size_t k = 0; matches && k < f.pairs.size(); ++k) {
      matches = g.targets[k].a == f.pairs[k].a && g.targets[k].b == f.pairs[k].b &&
                std::abs(g.targets[k].weight - scale * f.pairs[k].weight) <= 1e-12 * std::abs(scale);
    }
    if (!matches) {
      throw InfeasibleError("gate '" + g.gate_id +
                            "' does not cover a full translation class; this requires single qubit addressability");
    }
    g.gate_id = "U" + key.substr(1);
    g.theta *= scale;
    g.targets = f.pairs;
  }
  return out;
}

std::vector<std::size_t> pushed_ions(const RawGate& g) {
  std::vector<std::size_t> ions;
  for (const auto& t : g.targets) {
    ions.push_back(t.a);
    ions.push_back(t.b);
  }
  std::sort(ions.begin(), ions.end());
  ions.erase(std::unique(ions.begin(), ions.end()), ions.end());
  return ions;
}

// Push strength of a single-pair gate, expressed as the coefficient the same
// force would give a pair at unit distance.
double push_base(const RawGate& g, const TrapArrayModel& model) {
  const auto& t = g.targets.front();
  const double d = model.distance(t.a, t.b);
  return g.theta * t.weight * d * d * d;
}

PulseSchedule realize_trap(const PulseSchedule& in, const TrapArrayModel& model, const RealizeOptions& options) {
  model.validate();
  if (in.n_qubits != model.n_ions()) {
    throw InvalidArgument("realize_schedule: schedule has " + std::to_string(in.n_qubits) +
                          " qubits but the trap array holds " + std::to_string(model.n_ions()) + " ions");
  }
  PulseSchedule out = in;
  out.cycle.clear();
  int next_slot = 0;

  std::size_t i = 0;
  while (i < in.cycle.size()) {
    if (std::holds_alternative<ApplyLocal>(in.cycle[i])) {
      out.cycle.push_back(in.cycle[i++]);
      continue;
    }
    // A maximal run of raw gates. All are diagonal in Z, so they commute and
    // may be reordered and overlapped freely.
    std::vector<RawGate> run;
    while (i < in.cycle.size() && std::holds_alternative<RawGate>(in.cycle[i])) {
      run.push_back(std::get<RawGate>(in.cycle[i++]));
    }
    for (const auto& g : run) {
      for (const auto& t : g.targets) {
        if (t.a >= model.n_ions() || t.b >= model.n_ions() || t.a == t.b) {
          throw InvalidArgument("realize_schedule: gate '" + g.gate_id + "' has an invalid ion pair");
        }
      }
    }
    std::vector<std::size_t> order(run.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return pushed_ions(run[x]).front() < pushed_ions(run[y]).front();
    });

    std::vector<std::vector<std::size_t>> slots;
    for (std::size_t idx : order) {
      const bool packable = run[idx].targets.size() == 1;
      bool placed = false;
      for (auto& slot : slots) {
        if (!packable || run[slot.front()].targets.size() != 1) continue;
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t m : slot) groups.push_back(pushed_ions(run[m]));
        groups.push_back(pushed_ions(run[idx]));
        bool disjoint = true;
        for (std::size_t m = 0; m + 1 < groups.size() && disjoint; ++m) {
          for (std::size_t ion : groups.back()) {
            if (std::find(groups[m].begin(), groups[m].end(), ion) != groups[m].end()) disjoint = false;
          }
        }
        if (disjoint && crosstalk_report(model, groups).concurrent) {
          slot.push_back(idx);
          placed = true;
          break;
        }
      }
      if (!placed) slots.push_back({idx});
    }

    for (const auto& slot : slots) {
      const int slot_id = next_slot++;
      for (std::size_t pos = 0; pos < slot.size(); ++pos) {
        RawGate g = run[slot[pos]];
        g.slot = slot_id;
        if (options.crosstalk_realism && g.theta != 0.0) {
          for (std::size_t other = pos + 1; other < slot.size(); ++other) {
            const RawGate& h = run[slot[other]];
            const double base_g = push_base(g, model);
            const double base_h = push_base(h, model);
            const double base = std::copysign(std::min(std::abs(base_g), std::abs(base_h)), base_g);
            for (std::size_t a : pushed_ions(g)) {
              for (std::size_t b : pushed_ions(h)) {
                const double angle = base * inverse_cube(model.distance(a, b));
                g.targets.push_back({std::min(a, b), std::max(a, b), angle / g.theta});
              }
            }
          }
        }
        out.cycle.emplace_back(std::move(g));
      }
    }
  }
  return out;
}

}  // namespace

PulseSchedule realize_schedule(const PulseSchedule& abstract, const HardwareModel& hw,
                               const RealizeOptions& options) {
  if (const auto* lattice = std::get_if<LatticeModel>(&hw)) return realize_lattice(abstract, *lattice);
  return realize_trap(abstract, std::get<TrapArrayModel>(hw), options);
}

}  // namespace uqs

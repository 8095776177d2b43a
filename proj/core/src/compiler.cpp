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

#include "uqs/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "uqs/errors.hpp"
#include "uqs/spectrum.hpp"

namespace uqs {

namespace {

constexpr double kWeightTolerance = 1e-12;

// Frames that carry Z(x)Z onto Z(x)Z, Y(x)Y and X(x)X, in window order.
const SingleQubitUnitary& frame_for_axis(int axis) {
  static const SingleQubitUnitary kFrames[3] = {
      quarter_turn(Pauli::Y),  // x: Z -> X
      quarter_turn(Pauli::X),  // y: Z -> -Y
      SingleQubitUnitary::identity(),
  };
  return kFrames[axis];
}

// Per-qubit frames giving -X(x)X, -Y(x)Y, -Z(x)Z on the pair (a, b).
std::pair<SingleQubitUnitary, SingleQubitUnitary> flipped_frames(int axis) {
  switch (axis) {
    case 0: return {quarter_turn(Pauli::Y), quarter_turn(Pauli::Y, -1)};
    case 1: return {quarter_turn(Pauli::X), quarter_turn(Pauli::X, -1)};
    default: return {SingleQubitUnitary::identity(), SingleQubitUnitary::pauli(Pauli::X)};
  }
}

LocalLayer pair_layer(std::size_t n, std::size_t a, const SingleQubitUnitary& ua, std::size_t b,
                      const SingleQubitUnitary& ub) {
  std::vector<SingleQubitUnitary> us(n);
  us[a] = ua;
  us[b] = ub;
  return LocalLayer::inhomogeneous(std::move(us));
}

bool same_layer(const LocalLayer& x, const LocalLayer& y) {
  if (x.is_homogeneous() != y.is_homogeneous() || x.size() != y.size()) return false;
  const std::size_t n = x.size().value_or(1);
  for (std::size_t q = 0; q < n; ++q) {
    if (x.on(q).matrix() != y.on(q).matrix()) return false;
  }
  return true;
}

double matrix_scale(const CoeffMatrix& m) { return std::max(1.0, m.m.cwiseAbs().maxCoeff()); }

std::string pair_name(std::size_t a, std::size_t b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// ControlSequence

ControlSequence::ControlSequence(std::vector<ControlStep> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw InvalidArgument("ControlSequence: no steps");
  double total = 0.0;
  std::optional<std::size_t> n;
  for (const auto& s : steps_) {
    if (!(s.weight > 0.0 && s.weight <= 1.0 + kWeightTolerance)) {
      throw InvalidArgument("ControlSequence: weights must lie in (0, 1]");
    }
    total += s.weight;
    if (auto sz = s.layer.size()) {
      if (n && *n != *sz) throw InvalidArgument("ControlSequence: layers disagree on the qubit count");
      n = sz;
    }
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw InvalidArgument("ControlSequence: weights sum to " + std::to_string(total) + ", not 1");
  }
}

bool ControlSequence::is_homogeneous() const {
  return std::all_of(steps_.begin(), steps_.end(), [](const ControlStep& s) { return s.layer.is_homogeneous(); });
}

std::optional<std::size_t> ControlSequence::n_qubits() const {
  for (const auto& s : steps_) {
    if (auto sz = s.layer.size()) return sz;
  }
  return std::nullopt;
}

Hamiltonian effective_hamiltonian(const ControlSequence& seq, const Hamiltonian& h0) {
  if (seq.size() == 0) throw InvalidArgument("effective_hamiltonian: empty sequence");
  std::vector<PauliString> terms;
  for (const auto& step : seq.steps()) {
    const Hamiltonian rotated = conjugate(h0, step.layer);
    for (const auto& t : rotated.terms()) terms.push_back(t.with_coeff(step.weight * t.coeff()));
  }
  return Hamiltonian(h0.n_qubits(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Feasibility and cost

FeasibilityResult homogeneous_feasibility(const CoeffMatrix& m, double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and nonzero");
  if (!m.m.allFinite()) throw InvalidArgument("coefficient matrix has non-finite entries");
  if (!m.is_symmetric(1e-10 * matrix_scale(m))) {
    throw InvalidArgument(
        "homogeneous control only produces exchange-symmetric interactions; the coefficient matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(m.m, Eigen::EigenvaluesOnly);
  FeasibilityResult r;
  r.eigenvalues = eig.eigenvalues();
  const double tol = 1e-10 * r.eigenvalues.cwiseAbs().maxCoeff();
  r.feasible = true;
  for (int i = 0; i < 3; ++i) {
    const double mu = r.eigenvalues(i);
    if (std::abs(mu) > tol && (mu > 0.0) != (gamma > 0.0)) r.feasible = false;
  }
  if (r.feasible) {
    r.time_cost = m.m.trace() / gamma;
  } else {
    std::ostringstream msg;
    msg << "infeasible with homogeneous control: the sign of gamma (" << gamma
        << ") must coincide with the sign of every nonvanishing eigenvalue of M (eigenvalues "
        << r.eigenvalues(0) << ", " << r.eigenvalues(1) << ", " << r.eigenvalues(2) << ")";
    r.diagnostic = msg.str();
  }
  return r;
}

double inhomogeneous_cost(const CoeffMatrix& m, double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and nonzero");
  if (!m.m.allFinite()) throw InvalidArgument("coefficient matrix has non-finite entries");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m.m);
  return svd.singularValues().sum() / std::abs(gamma);
}

// ---------------------------------------------------------------------------
// Protocols and synthesis

std::vector<std::string> protocol_names() { return {"identity", "heisenberg3", "xy2", "antisym2"}; }

ControlSequence protocol_library(std::string_view name) {
  const auto hom = [](const SingleQubitUnitary& u) { return LocalLayer::homogeneous(u); };
  if (name == "identity") return ControlSequence({{1.0, LocalLayer::identity()}});
  if (name == "heisenberg3") {
    const double third = 1.0 / 3.0;
    return ControlSequence({{third, LocalLayer::identity()},
                            {third, hom(quarter_turn(Pauli::X))},
                            {third, hom(quarter_turn(Pauli::Y))}});
  }
  if (name == "xy2") {
    return ControlSequence({{0.5, hom(quarter_turn(Pauli::X))}, {0.5, hom(quarter_turn(Pauli::Y))}});
  }
  if (name == "antisym2") {
    const SingleQubitUnitary id;
    return ControlSequence({{0.5, LocalLayer::inhomogeneous({id, quarter_turn(Pauli::X, -1)})},
                            {0.5, LocalLayer::inhomogeneous({quarter_turn(Pauli::X), id})}});
  }
  throw InvalidArgument("unknown protocol '" + std::string(name) + "'");
}

ScaledSequence synthesize_diagonal(const CoeffMatrix& target, double gamma) {
  if (!target.is_diagonal(1e-12 * matrix_scale(target))) {
    throw InvalidArgument("synthesize_diagonal: target coefficient matrix is not diagonal");
  }
  const FeasibilityResult f = homogeneous_feasibility(target, gamma);
  if (!f.feasible) throw InfeasibleError(f.diagnostic);
  const Eigen::Vector3d d = target.m.diagonal();
  const double total = d.sum();
  if (total == 0.0) return {protocol_library("identity"), 0.0};

  std::vector<ControlStep> steps;
  for (int axis : {2, 1, 0}) {
    const double w = d(axis) / total;
    if (w > 0.0) steps.push_back({w, LocalLayer::homogeneous(frame_for_axis(axis))});
  }
  return {ControlSequence(std::move(steps)), total / gamma};
}

ScaledSequence synthesize_signed_diagonal(const CoeffMatrix& target, double gamma, std::size_t n_qubits,
                                          std::size_t a, std::size_t b) {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and nonzero");
  if (a >= n_qubits || b >= n_qubits || a == b) throw InvalidArgument("synthesize_signed_diagonal: bad qubit pair");
  if (!target.is_diagonal(1e-12 * matrix_scale(target))) {
    throw InvalidArgument("synthesize_signed_diagonal: target coefficient matrix is not diagonal");
  }
  const Eigen::Vector3d d = target.m.diagonal();
  const double total = d.cwiseAbs().sum();
  if (total == 0.0) return {protocol_library("identity"), 0.0};

  std::vector<ControlStep> steps;
  for (int axis : {2, 1, 0}) {
    if (d(axis) == 0.0) continue;
    const double w = std::abs(d(axis)) / total;
    if ((d(axis) > 0.0) == (gamma > 0.0)) {
      steps.push_back({w, LocalLayer::homogeneous(frame_for_axis(axis))});
    } else {
      auto [ua, ub] = flipped_frames(axis);
      steps.push_back({w, pair_layer(n_qubits, a, ua, b, ub)});
    }
  }
  return {ControlSequence(std::move(steps)), total / std::abs(gamma)};
}

LocalLayer magnetic_field_layer(double b, const Vec3& direction, double dt) {
  if (std::abs(direction.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("magnetic_field_layer: direction must be a unit vector");
  }
  if (!std::isfinite(b) || !std::isfinite(dt)) throw InvalidArgument("magnetic_field_layer: non-finite field");
  return LocalLayer::homogeneous(SingleQubitUnitary::rotation(direction, b * dt));
}

LocalLayer magnetic_field_layer(const std::vector<double>& b, const Vec3& direction, double dt) {
  if (b.empty()) throw InvalidArgument("magnetic_field_layer: no field values");
  if (std::abs(direction.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("magnetic_field_layer: direction must be a unit vector");
  }
  std::vector<SingleQubitUnitary> us;
  us.reserve(b.size());
  for (double v : b) {
    if (!std::isfinite(v)) throw InvalidArgument("magnetic_field_layer: non-finite field");
    us.push_back(SingleQubitUnitary::rotation(direction, v * dt));
  }
  return LocalLayer::inhomogeneous(std::move(us));
}

// ---------------------------------------------------------------------------
// Trotter planning

double CyclePlan::time_cost() const {
  double c = 0.0;
  for (const auto& g : groups) c += g.control.time_scale;
  return c;
}

Hamiltonian CyclePlan::effective() const {
  Hamiltonian out = local_terms;
  for (const auto& g : groups) {
    std::vector<PauliString> raw;
    for (const auto& t : g.targets) {
      raw.push_back(PauliString::from_sites(n_qubits, {{t.a, Pauli::Z}, {t.b, Pauli::Z}}, gamma * t.weight));
    }
    out += g.control.time_scale * effective_hamiltonian(g.control.sequence, Hamiltonian(n_qubits, raw));
  }
  return out;
}

namespace {

struct SplitTarget {
  Hamiltonian local;
  std::map<std::pair<std::size_t, std::size_t>, CoeffMatrix> pairs;
  bool dropped_identity = false;
};

SplitTarget split_target(const Hamiltonian& target) {
  const std::size_t n = target.n_qubits();
  SplitTarget s{Hamiltonian(n), {}, false};
  for (const auto& t : target.terms()) {
    const auto sup = t.support();
    if (sup.empty()) {
      s.dropped_identity = true;
    } else if (sup.size() == 1) {
      s.local.add_term(t);
    } else if (sup.size() == 2) {
      s.pairs.try_emplace({sup[0], sup[1]});
    } else {
      throw InvalidArgument("target term " + t.label() + " acts on more than two qubits");
    }
  }
  for (auto& [ab, m] : s.pairs) m = pair_coeff_matrix(target, ab.first, ab.second);
  return s;
}

bool matches_scaled(const CoeffMatrix& m, const CoeffMatrix& unit, double w) {
  const double tol = 1e-12 * std::max(1.0, std::abs(w) * unit.m.cwiseAbs().maxCoeff());
  return (m.m - w * unit.m).cwiseAbs().maxCoeff() <= tol;
}

GateGroup homogeneous_group(std::string gate_id, std::vector<ZZCoupling> targets, const CoeffMatrix& unit,
                            double gamma, const std::string& where) {
  if (!unit.is_diagonal(1e-12 * matrix_scale(unit))) {
    if (!unit.is_symmetric(1e-10 * matrix_scale(unit))) {
      throw InfeasibleError(where +
                            ": the interaction is not exchange-symmetric, which homogeneous control cannot produce");
    }
    throw InfeasibleError(where + ": non-diagonal symmetric couplings are outside the supported synthesis");
  }
  const FeasibilityResult f = homogeneous_feasibility(unit, gamma);
  if (!f.feasible) throw InfeasibleError(where + ": " + f.diagnostic);
  return {std::move(gate_id), std::move(targets), synthesize_diagonal(unit, gamma)};
}

void plan_lattice(const SplitTarget& split, const LatticeModel& model, CyclePlan& plan) {
  // Local fields must be the same on every site.
  const std::size_t n = plan.n_qubits;
  Eigen::Vector3d first = Eigen::Vector3d::Constant(std::nan(""));
  for (std::size_t q = 0; q < n; ++q) {
    Eigen::Vector3d field;
    for (int k = 0; k < 3; ++k) {
      field(k) = split.local.coefficient(PauliString::from_sites(n, {{q, static_cast<Pauli>(k + 1)}}).ops());
    }
    if (q == 0) first = field;
    if ((field - first).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, first.cwiseAbs().maxCoeff())) {
      throw InfeasibleError("site-dependent local fields require single qubit addressability");
    }
  }

  auto remaining = split.pairs;
  for (const auto& fam : lattice_families(model)) {
    const bool used = std::any_of(fam.pairs.begin(), fam.pairs.end(),
                                  [&](const ZZCoupling& p) { return remaining.contains({p.a, p.b}); });
    if (!used) continue;
    const auto& p0 = fam.pairs.front();
    CoeffMatrix unit;
    if (auto it = remaining.find({p0.a, p0.b}); it != remaining.end()) unit.m = it->second.m / p0.weight;
    for (const auto& p : fam.pairs) {
      auto it = remaining.find({p.a, p.b});
      const CoeffMatrix m = it == remaining.end() ? CoeffMatrix{} : it->second;
      if (!matches_scaled(m, unit, p.weight)) {
        throw InfeasibleError("pair " + pair_name(p.a, p.b) + " does not share the coupling of the other " +
                              fam.gate_id +
                              " pairs; translation-breaking targets require single qubit addressability");
      }
      if (it != remaining.end()) remaining.erase(it);
    }
    if (unit.m.isZero(0.0)) continue;
    plan.groups.push_back(homogeneous_group(fam.gate_id, fam.pairs, unit, plan.gamma, "family " + fam.gate_id));
  }
  if (!remaining.empty()) {
    const auto& ab = remaining.begin()->first;
    throw InfeasibleError("pair " + pair_name(ab.first, ab.second) + " cannot be reached by any available lattice shift");
  }
}

std::optional<GateGroup> try_global_push(const SplitTarget& split, const TrapArrayModel& model, double gamma) {
  const std::size_t n = model.n_ions();
  if (split.pairs.empty()) return std::nullopt;
  const auto& [ab0, m0] = *split.pairs.begin();
  CoeffMatrix unit;
  unit.m = m0.m / inverse_cube(model.distance(ab0.first, ab0.second));
  std::vector<ZZCoupling> targets;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double w = inverse_cube(model.distance(a, b));
      auto it = split.pairs.find({a, b});
      const CoeffMatrix m = it == split.pairs.end() ? CoeffMatrix{} : it->second;
      if (!matches_scaled(m, unit, w)) return std::nullopt;
      targets.push_back({a, b, w});
    }
  }
  return homogeneous_group("PUSH", std::move(targets), unit, gamma, "global push");
}

// J (Z(x)Y - Y(x)Z) on the pair, returning J.
std::optional<double> antisymmetric_strength(const CoeffMatrix& m) {
  const double tol = 1e-12 * matrix_scale(m);
  CoeffMatrix rest = m;
  const double j = m(2, 1);
  if (std::abs(m(1, 2) + j) > tol) return std::nullopt;
  rest.m(2, 1) = 0.0;
  rest.m(1, 2) = 0.0;
  if (rest.m.cwiseAbs().maxCoeff() > tol || j == 0.0) return std::nullopt;
  return j;
}

void plan_trap(const SplitTarget& split, const TrapArrayModel& model, const CompileOptions& options,
               CyclePlan& plan) {
  const std::size_t n = plan.n_qubits;
  if (options.grouping != PairGrouping::per_pair && split.pairs.size() > 1) {
    if (auto g = try_global_push(split, model, plan.gamma)) {
      plan.groups.push_back(std::move(*g));
      return;
    }
  }
  if (options.grouping == PairGrouping::global_push && !split.pairs.empty()) {
    if (auto g = try_global_push(split, model, plan.gamma)) {
      plan.groups.push_back(std::move(*g));
      return;
    }
    throw InfeasibleError("couplings do not follow the 1/d^3 law of a global push");
  }

  for (const auto& [ab, m] : split.pairs) {
    const auto [a, b] = ab;
    if (m.m.isZero(0.0)) continue;
    GateGroup g{"ZZ", {{a, b, 1.0}}, {}};
    if (m.is_diagonal(1e-12 * matrix_scale(m))) {
      g.control = synthesize_signed_diagonal(m, plan.gamma, n, a, b);
    } else if (auto j = antisymmetric_strength(m)) {
      // The published sequence yields (gamma/2)(ZY - YZ); mirror it when J
      // and gamma have opposite signs.
      const double scale = 2.0 * *j / plan.gamma;
      const SingleQubitUnitary id;
      std::vector<ControlStep> steps;
      if (scale > 0.0) {
        steps = {{0.5, pair_layer(n, a, id, b, quarter_turn(Pauli::X, -1))},
                 {0.5, pair_layer(n, a, quarter_turn(Pauli::X), b, id)}};
      } else {
        steps = {{0.5, pair_layer(n, a, quarter_turn(Pauli::X, -1), b, id)},
                 {0.5, pair_layer(n, a, id, b, quarter_turn(Pauli::X))}};
        plan.notes.push_back("pair " + pair_name(a, b) +
                             ": sign of J opposite to gamma, used the mirrored antisymmetric sequence");
      }
      g.control = {ControlSequence(std::move(steps)), std::abs(scale)};
    } else {
      throw InfeasibleError("pair " + pair_name(a, b) +
                            ": non-diagonal couplings other than the antisymmetric form are outside the supported "
                            "synthesis");
    }
    plan.groups.push_back(std::move(g));
  }
}

int window_rank(const LocalLayer& l) {
  if (l.is_identity(0.0)) return 0;
  return l.is_homogeneous() ? 1 : 2;
}

LocalLayer local_field_layer(const Hamiltonian& local, std::size_t n, double tau) {
  std::vector<SingleQubitUnitary> us(n);
  bool uniform = true;
  Eigen::Vector3d first;
  for (std::size_t q = 0; q < n; ++q) {
    Eigen::Vector3d field;
    for (int k = 0; k < 3; ++k) {
      field(k) = local.coefficient(PauliString::from_sites(n, {{q, static_cast<Pauli>(k + 1)}}).ops());
    }
    if (q == 0) first = field;
    uniform = uniform && field == first;
    const double strength = field.norm();
    if (strength > 0.0) us[q] = SingleQubitUnitary::rotation(field / strength, strength * tau);
  }
  if (uniform) return LocalLayer::homogeneous(us[0]);
  return LocalLayer::inhomogeneous(std::move(us));
}

void push_layer(std::vector<Instruction>& out, const LocalLayer& layer) {
  if (!out.empty()) {
    if (auto* prev = std::get_if<ApplyLocal>(&out.back())) {
      prev->layer = prev->layer.then(layer);
      if (prev->layer.is_identity(1e-14)) out.pop_back();
      return;
    }
  }
  if (!layer.is_identity(1e-14)) out.emplace_back(ApplyLocal{layer});
}

}  // namespace

CyclePlan plan_cycle(const Hamiltonian& target, const HardwareModel& hw, const CompileOptions& options) {
  const std::size_t n = target.n_qubits();
  if (hardware_qubits(hw) != n) {
    throw InvalidArgument("target has " + std::to_string(n) + " qubits but the hardware has " +
                          std::to_string(hardware_qubits(hw)));
  }
  CyclePlan plan;
  plan.n_qubits = n;
  plan.gamma = hardware_gamma(hw);
  const SplitTarget split = split_target(target);
  plan.local_terms = split.local;
  if (split.dropped_identity) plan.notes.push_back("identity term dropped (global phase)");

  if (const auto* lattice = std::get_if<LatticeModel>(&hw)) {
    if (options.grouping == PairGrouping::global_push) {
      throw InvalidArgument("global push grouping is only available on trap arrays");
    }
    plan_lattice(split, *lattice, plan);
  } else {
    plan_trap(split, std::get<TrapArrayModel>(hw), options, plan);
  }

  // Gather frames shared between groups.
  for (std::size_t gi = 0; gi < plan.groups.size(); ++gi) {
    for (const auto& step : plan.groups[gi].control.sequence.steps()) {
      auto it = std::find_if(plan.windows.begin(), plan.windows.end(),
                             [&](const ControlWindow& w) { return same_layer(w.layer, step.layer); });
      if (it == plan.windows.end()) {
        plan.windows.push_back({step.layer, {}});
        it = std::prev(plan.windows.end());
      }
      it->members.emplace_back(gi, step.weight);
    }
  }
  std::stable_sort(plan.windows.begin(), plan.windows.end(), [](const ControlWindow& x, const ControlWindow& y) {
    return window_rank(x.layer) < window_rank(y.layer);
  });

  Hamiltonian expected = target;
  if (split.dropped_identity) expected.add_term(PauliString::identity(n, -target.coefficient(std::string(n, 'I'))));
  const double tol = 1e-9 * std::max(1.0, expected.coefficient_norm());
  if (!plan.effective().approx_equal(expected, tol)) {
    throw NumericError("plan_cycle: synthesized groups do not reproduce the target");
  }
  return plan;
}

std::vector<Instruction> emit_cycle(const CyclePlan& plan, double tau) {
  if (!std::isfinite(tau) || tau < 0.0) throw InvalidArgument("emit_cycle: tau must be non-negative");
  std::vector<Instruction> out;
  if (!plan.local_terms.empty()) push_layer(out, local_field_layer(plan.local_terms, plan.n_qubits, tau));
  LocalLayer frame;
  for (const auto& w : plan.windows) {
    push_layer(out, frame.then(w.layer.adjoint()));
    for (const auto& [gi, weight] : w.members) {
      const GateGroup& g = plan.groups[gi];
      const double theta = plan.gamma * weight * g.control.time_scale * tau;
      if (theta == 0.0) continue;
      out.emplace_back(RawGate{g.gate_id, theta, g.targets, -1});
    }
    frame = w.layer;
  }
  push_layer(out, frame);
  return out;
}

CompiledSchedule trotter_schedule(const Hamiltonian& target, double t_prime, double epsilon, const HardwareModel& hw,
                                  const CompileOptions& options) {
  CyclePlan plan = plan_cycle(target, hw, options);
  CompiledSchedule out;
  out.cost = make_cost_report(plan.time_cost(), plan.n_controls(), t_prime, epsilon, !target.empty());
  out.notes = plan.notes;
  out.schedule.n_qubits = target.n_qubits();
  out.schedule.repetitions = out.cost.gate_count;
  out.schedule.cost = out.cost;
  if (out.cost.gate_count > 0) {
    out.schedule.cycle = emit_cycle(plan, t_prime / static_cast<double>(out.cost.gate_count));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gate-level constructions

Eigen::MatrixXcd gate_steps_matrix(const std::vector<GateStep>& steps, std::size_t n_qubits) {
  check_dense_size(n_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& s : steps) {
    if (const auto* e = std::get_if<Evolution>(&s)) {
      if (e->generator.n_qubits() != n_qubits) throw InvalidArgument("gate_steps_matrix: size mismatch");
      u = dense_exp(e->generator, e->time) * u;
    } else {
      u = std::get<LocalLayer>(s).to_dense(n_qubits) * u;
    }
  }
  return u;
}

std::vector<GateStep> sequence_gate_steps(const ControlSequence& seq, const Hamiltonian& h0, double t) {
  std::vector<GateStep> out;
  for (const auto& step : seq.steps()) {
    step.layer.check_size(h0.n_qubits());
    out.emplace_back(step.layer.adjoint());
    out.emplace_back(Evolution{h0, step.weight * t});
    out.emplace_back(step.layer);
  }
  return out;
}

ThreeBodyGate three_body_gate(const Hamiltonian& h1, const Hamiltonian& h2, double theta) {
  if (h1.n_qubits() != h2.n_qubits()) throw InvalidArgument("three_body_gate: size mismatch");
  if (h1.max_weight() > 2 || h2.max_weight() > 2) {
    throw InvalidArgument("three_body_gate: h1 and h2 must be at most two-body");
  }
  if (!std::isfinite(theta)) throw InvalidArgument("three_body_gate: theta must be finite");
  ThreeBodyGate g;
  g.steps = {Evolution{h1, theta}, Evolution{h2, theta}, Evolution{h1, -theta}, Evolution{h2, -theta}};
  g.generator = commutator(h1, h2).generator();
  g.effective_time = -theta * theta;
  return g;
}

std::vector<GateStep> decoupling_echo(const Hamiltonian& raw, double theta) {
  for (const auto& t : raw.terms()) {
    for (Pauli p : t.ops()) {
      if (p != Pauli::I && p != Pauli::Z) {
        throw InvalidArgument("decoupling_echo: raw generator term " + t.label() + " is not built from Z");
      }
    }
    if (t.weight() > 2) throw InvalidArgument("decoupling_echo: raw generator term " + t.label() + " is not Z or ZZ");
  }
  Mat2 ix;
  ix << 0, std::complex<double>(0, 1), std::complex<double>(0, 1), 0;
  const LocalLayer v = LocalLayer::homogeneous(SingleQubitUnitary(ix));
  return {Evolution{raw, theta}, v.adjoint(), Evolution{raw, theta}, v};
}

}  // namespace uqs

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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "uqs/hardware.hpp"
#include "uqs/pauli.hpp"
#include "uqs/schedule.hpp"
#include "uqs/unitary.hpp"

namespace uqs {

// ---------------------------------------------------------------------------
// Average-Hamiltonian control sequences

struct ControlStep {
  double weight = 1.0;
  LocalLayer layer;
};

/// Weighted local frames {p_i, V_i}. Running a raw interaction H0 for time
/// p_i t inside each frame V_i (V_i^dagger before, V_i after) produces, to
/// first order in t, the average Hamiltonian sum_i p_i V_i H0 V_i^dagger.
class ControlSequence {
 public:
  ControlSequence() = default;
  /// Throws InvalidArgument unless every weight lies in (0, 1], the weights
  /// sum to 1 within 1e-12 and inhomogeneous layers agree in size.
  explicit ControlSequence(std::vector<ControlStep> steps);

  const std::vector<ControlStep>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool is_homogeneous() const;
  /// Qubit count fixed by inhomogeneous layers, if any.
  std::optional<std::size_t> n_qubits() const;

 private:
  std::vector<ControlStep> steps_;
};

Hamiltonian effective_hamiltonian(const ControlSequence& seq, const Hamiltonian& h0);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<double> time_cost;
  /// Eigenvalues of M, ascending.
  Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();
  std::string diagnostic;
};

/// Whether gamma Z(x)Z plus homogeneous local control can reach the symmetric
/// interaction M: every eigenvalue above 1e-10 max|mu| must share gamma's
/// sign. The optimal time cost is then sum(mu) / gamma.
FeasibilityResult homogeneous_feasibility(const CoeffMatrix& m, double gamma);

/// Optimal time cost with independent control of each qubit:
/// sum of singular values of M over |gamma|. Always feasible.
double inhomogeneous_cost(const CoeffMatrix& m, double gamma);

/// Published sequences: "identity", "heisenberg3", "xy2", "antisym2".
ControlSequence protocol_library(std::string_view name);
std::vector<std::string> protocol_names();

/// A sequence together with the raw interaction time spent per unit of
/// simulated time: time_scale * effective_hamiltonian(sequence, gamma ZZ)
/// equals the target.
struct ScaledSequence {
  ControlSequence sequence;
  double time_scale = 0.0;
};

/// Homogeneous synthesis of a diagonal target from the frames that map ZZ to
/// ZZ, YY and XX (identity, quarter turns about x and y). Throws
/// InfeasibleError when the target fails homogeneous_feasibility and
/// InvalidArgument when it is not diagonal.
ScaledSequence synthesize_diagonal(const CoeffMatrix& target, double gamma);

/// Diagonal synthesis for the pair (a, b) of an n-qubit register with
/// per-qubit frames, so entries of either sign are reachable. Reduces to
/// homogeneous frames when every entry already has gamma's sign.
ScaledSequence synthesize_signed_diagonal(const CoeffMatrix& target, double gamma, std::size_t n_qubits,
                                          std::size_t a, std::size_t b);

/// exp(-i B (n . sigma) dt) on every qubit.
LocalLayer magnetic_field_layer(double b, const Vec3& direction, double dt);
/// Per-qubit field strengths along a common direction.
LocalLayer magnetic_field_layer(const std::vector<double>& b, const Vec3& direction, double dt);

// ---------------------------------------------------------------------------
// Trotter compilation

enum class PairGrouping {
  /// Global push on trap arrays when the couplings follow the cube law,
  /// otherwise one group per pair. Lattices always group by shift family.
  automatic,
  per_pair,
  global_push,
};

struct CompileOptions {
  PairGrouping grouping = PairGrouping::automatic;
};

/// Pairs driven by one raw gate and the control sequence wrapped around it.
struct GateGroup {
  std::string gate_id;
  std::vector<ZZCoupling> targets;
  ScaledSequence control;
};

/// Frames shared by several groups: one layer change, then every group's
/// gate for that frame.
struct ControlWindow {
  LocalLayer layer;
  /// (group index, weight of this frame in that group's sequence).
  std::vector<std::pair<std::size_t, double>> members;
};

/// Everything a single Trotter cycle needs, independent of the step length.
struct CyclePlan {
  std::size_t n_qubits = 0;
  double gamma = 1.0;
  /// One-qubit part of the target, applied as a local layer per cycle.
  Hamiltonian local_terms;
  std::vector<GateGroup> groups;
  std::vector<ControlWindow> windows;
  std::vector<std::string> notes;

  /// Sum of the groups' time scales (groups run one after another).
  double time_cost() const;
  /// Control frames per cycle.
  std::size_t n_controls() const { return windows.size(); }
  /// First-order Hamiltonian realized by one cycle per unit simulated time.
  Hamiltonian effective() const;
};

/// Splits a target of one- and two-qubit terms into hardware gate groups.
/// Throws InfeasibleError when the platform cannot realize it.
CyclePlan plan_cycle(const Hamiltonian& target, const HardwareModel& hw, const CompileOptions& options = {});

/// One cycle simulating the plan for time tau: the local layer first, then
/// each window's frame change and gates, then the frame is undone.
std::vector<Instruction> emit_cycle(const CyclePlan& plan, double tau);

struct CompiledSchedule {
  PulseSchedule schedule;
  CostReport cost;
  std::vector<std::string> notes;
};

/// L = ceil(c^2 T'^2 / epsilon) repetitions of one cycle of length T' / L.
CompiledSchedule trotter_schedule(const Hamiltonian& target, double t_prime, double epsilon,
                                  const HardwareModel& hw, const CompileOptions& options = {});

// ---------------------------------------------------------------------------
// Gate-level constructions on general generators

struct Evolution {
  Hamiltonian generator;
  /// exp(-i generator time).
  double time = 0.0;
};

using GateStep = std::variant<Evolution, LocalLayer>;

/// Product of the steps in time order (first step rightmost).
Eigen::MatrixXcd gate_steps_matrix(const std::vector<GateStep>& steps, std::size_t n_qubits);

/// The steps of one short gate: V^dagger, exp(-i h0 p t), V per frame.
std::vector<GateStep> sequence_gate_steps(const ControlSequence& seq, const Hamiltonian& h0, double t);

struct ThreeBodyGate {
  /// exp(-i h1 theta), exp(-i h2 theta), exp(+i h1 theta), exp(+i h2 theta).
  std::vector<GateStep> steps;
  /// -i [h1, h2].
  Hamiltonian generator;
  /// The product approximates exp(-i generator effective_time) with
  /// effective_time = -theta^2, i.e. exp([h1, h2] theta^2).
  double effective_time = 0.0;
};

ThreeBodyGate three_body_gate(const Hamiltonian& h1, const Hamiltonian& h2, double theta);

/// U, V^dagger, U, V with V = i sigma_x on every qubit. For a raw generator of
/// Z and ZZ terms the single-qubit phases cancel and the product is
/// exp(-2 i theta sum gamma_ab Z_a Z_b).
std::vector<GateStep> decoupling_echo(const Hamiltonian& raw, double theta);

}  // namespace uqs

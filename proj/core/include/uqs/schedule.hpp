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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uqs/unitary.hpp"

namespace uqs {

/// Resources of a compiled simulation.
///
/// T = c T' is the physical interaction time, L the number of Trotter cycles,
/// step_t = T / L the interaction time spent per cycle, and chi = n L / T the
/// number of control operations per unit of interaction time. L is rounded up
/// from c^2 T'^2 / epsilon, so chi equals n c T' / epsilon only when that ratio
/// is an integer.
struct CostReport {
  double time_cost = 0.0;      // c
  std::size_t n_controls = 0;  // n, control steps per cycle
  std::size_t gate_count = 0;  // L
  double step_t = 0.0;
  double chi = 0.0;
  double epsilon = 0.0;
  double t_prime = 0.0;

  double total_time() const { return time_cost * t_prime; }
  /// "key=value" lines.
  std::string to_text() const;
  static CostReport parse(std::string_view text);
  friend bool operator==(const CostReport&, const CostReport&) = default;
};

/// Builds a CostReport from c, n, T' and epsilon using the rounding rule
/// L = ceil(c^2 T'^2 / epsilon). A non-empty simulation with c = 0 (local
/// terms only) still gets one cycle.
CostReport make_cost_report(double time_cost, std::size_t n_controls, double t_prime,
                            double epsilon, bool has_terms);

/// exp(-i theta weight Z_a Z_b) factor of a raw gate.
struct ZZCoupling {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 1.0;
  friend bool operator==(const ZZCoupling&, const ZZCoupling&) = default;
};

/// A native entangling gate: exp(-i theta sum_k w_k Z_{a_k} Z_{b_k}).
struct RawGate {
  std::string gate_id;
  double theta = 0.0;
  std::vector<ZZCoupling> targets;
  /// Concurrency slot after hardware realization; -1 when unassigned.
  int slot = -1;

  /// Sum of |theta * weight| over targets.
  double total_angle() const;
  friend bool operator==(const RawGate&, const RawGate&) = default;
};

struct ApplyLocal {
  LocalLayer layer;
};

using Instruction = std::variant<ApplyLocal, RawGate>;

/// A time-ordered instruction list: `cycle` executed `repetitions` times.
struct PulseSchedule {
  std::size_t n_qubits = 0;
  std::vector<Instruction> cycle;
  std::size_t repetitions = 1;
  std::optional<CostReport> cost;

  std::size_t instruction_count() const { return cycle.size() * repetitions; }
  std::size_t local_layer_count() const;
  std::size_t raw_gate_count() const;
  /// Sum of |theta| * weight per gate_id, over all repetitions.
  std::map<std::string, double> angle_by_family() const;

  /// Line-oriented text:
  ///   # uqs-schedule v1, bit order little-endian
  ///   QUBITS <n>
  ///   REPEAT <L>
  ///   COST key=value ...
  ///   LOCAL hom <8 reals>        (u00 u01 u10 u11 as re im pairs)
  ///   LOCAL inh <8 reals per qubit>
  ///   GATE <gate_id> <theta> <a-b:w,...> [@slot]
  std::string to_text() const;
  static PulseSchedule parse(std::string_view text);
};

/// Structural equality: same sizes, repetitions, gates, and layer matrices
/// within `tol` (exact when tol = 0).
bool schedules_equal(const PulseSchedule& a, const PulseSchedule& b, double tol = 0.0);

}  // namespace uqs

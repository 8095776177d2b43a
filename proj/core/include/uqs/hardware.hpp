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
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "uqs/pauli.hpp"
#include "uqs/schedule.hpp"

namespace uqs {

/// 1/d^3. Every cube-law coefficient in the library goes through this helper
/// so that independently built Hamiltonians agree bit for bit.
double inverse_cube(double d);

enum class Boundary { open, periodic };

/// Atoms in a pair of state-dependent optical lattices. Sites are numbered
/// row-major, q = row * cols + col; a chain has rows = 1.
///
/// The only entangling operation is a collective lattice shift by j sites,
/// which couples every atom with its j-th neighbor at once. Local control is
/// homogeneous: one laser pulse addresses all atoms equally.
struct LatticeModel {
  std::size_t rows = 1;
  std::size_t cols = 1;
  Boundary boundary = Boundary::open;
  std::set<int> available_j;
  double gamma = 1.0;

  static LatticeModel chain(std::size_t n_sites, std::set<int> available_j,
                            Boundary boundary = Boundary::open);

  std::size_t n_sites() const { return rows * cols; }
  int dims() const { return rows > 1 ? 2 : 1; }
  std::size_t site(std::size_t row, std::size_t col) const { return row * cols + col; }
  void validate() const;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance between two sites.
double site_distance(const Position& a, const Position& b);

/// Ions held in individual micro-traps. Positions are in units of the
/// nearest-neighbor spacing. Any subset of ions can be pushed by a
/// state-dependent force; pushed ions couple with strength ~ 1/d^3.
struct TrapArrayModel {
  std::vector<Position> positions;
  /// Dimensionless Coulomb prefactor of the push phase.
  double kappa = 1.0;
  /// Parasitic/intended coupling ratio below which pushes may run together.
  double crosstalk_threshold = 1e-3;
  double gamma = 1.0;

  static TrapArrayModel chain(std::size_t n_ions, double spacing = 1.0);

  std::size_t n_ions() const { return positions.size(); }
  double distance(std::size_t a, std::size_t b) const;
  void validate() const;
};

using HardwareModel = std::variant<LatticeModel, TrapArrayModel>;

std::size_t hardware_qubits(const HardwareModel& hw);
double hardware_gamma(const HardwareModel& hw);
std::string hardware_name(const HardwareModel& hw);

// ---------------------------------------------------------------------------
// Lattice gates

enum class LatticeAxis { horizontal, vertical, both };

/// All pairs coupled by one lattice shift. Weights count repeated pairs on
/// small periodic lattices.
struct PairFamily {
  std::string gate_id;
  int j = 0;
  LatticeAxis axis = LatticeAxis::horizontal;
  std::vector<ZZCoupling> pairs;
};

/// Translation class of shift j along one axis.
PairFamily lattice_family(const LatticeModel& model, int j, LatticeAxis axis);
/// Every family the model can realize, ordered by j then axis.
std::vector<PairFamily> lattice_families(const LatticeModel& model);

struct LatticeGate {
  Hamiltonian generator;
  std::vector<RawGate> gates;
};

/// U_j = exp(-i theta K_j) with K_j = sum_a Z_a Z_{a+j}. In two dimensions
/// `axis = both` shifts along each axis in turn and returns two gates.
LatticeGate uqs1_gate(const LatticeModel& model, int j, double theta,
                      LatticeAxis axis = LatticeAxis::both);

// ---------------------------------------------------------------------------
// Trap-array gates

/// theta_base * sum_{a<b in pushed} Z_a Z_b / d_ab^3, including every
/// parasitic pair among the pushed ions.
Hamiltonian uqs2_push(const TrapArrayModel& model, const std::vector<std::size_t>& pushed,
                      double theta_base);

/// Sampled push profile f(t) in [0, 1].
struct PulseProfile {
  std::vector<double> samples;
  double dt = 1.0;

  static PulseProfile rectangular(std::size_t intervals, double dt);
  /// Linear ramp up to 1 at the midpoint and back down to 0.
  static PulseProfile triangular(std::size_t intervals, double dt);

  double duration() const;
  /// Throws unless 0 <= f <= 1 and dt > 0.
  void validate() const;
  /// True when the profile starts and ends at rest (f = 0), as a smooth
  /// push-and-return would. Not enforced: rectangular pulses are allowed.
  bool returns_to_rest(double tol = 1e-12) const;
};

/// theta = -kappa / dist^3 * integral fA(t) fB(t) dt (trapezoid rule).
double theta_from_pulse(const PulseProfile& fa, const PulseProfile& fb,
                        const TrapArrayModel& model, double dist);

struct PairRatio {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t group_a = 0;
  std::size_t group_b = 0;
  double ratio = 0.0;
};

struct CrosstalkReport {
  /// max_ratio[g][h]: largest parasitic/intended ratio between groups g and h.
  std::vector<std::vector<double>> max_ratio;
  std::vector<PairRatio> pairs;
  double worst = 0.0;
  double threshold = 0.0;
  bool concurrent = true;
};

/// Parasitic coupling between ions of different pushed groups, relative to
/// the weaker of the two groups' strongest intended coupling.
CrosstalkReport crosstalk_report(const TrapArrayModel& model,
                                 const std::vector<std::vector<std::size_t>>& groups);

// ---------------------------------------------------------------------------
// Geometry and addressability

enum class GeometryPattern { rectangular, triangular, hexagonal };

/// Nearest-neighbor pairs (a < b, sorted) of the requested pattern drawn on a
/// 2D rectangular base. Triangular adds the (r, c)-(r+1, c+1) diagonals;
/// hexagonal keeps every row bond and alternate column bonds (brick wall).
std::vector<std::pair<std::size_t, std::size_t>> geometry_remap(GeometryPattern pattern,
                                                                const LatticeModel& base);

using BeamProfile = std::function<double(double)>;
/// exp(-r^2 / (2 w^2)).
BeamProfile gaussian_beam(double width);

struct BeamSolution {
  /// Signed pulse durations, one beam aimed at each atom.
  Eigen::VectorXd durations;
  /// Net sigma_x rotation angle received by each atom.
  Eigen::VectorXd angles;
  double condition_number = 0.0;
  double residual = 0.0;
  bool has_negative_duration = false;
};

/// Beam durations that rotate atom `target` by exp(-i tau sigma_x) and leave
/// every other atom untouched despite overlapping beam profiles. The target
/// atom's own beam enters with a flipped sign. Throws NumericError when the
/// system is singular or its condition number exceeds 1e12.
BeamSolution beam_compensation(const std::vector<Position>& positions, const BeamProfile& profile,
                               std::size_t target, double tau, double nu0);

/// Per-atom unitaries produced by firing the beams one after another.
std::vector<SingleQubitUnitary> beam_rotations(const std::vector<Position>& positions,
                                               const BeamProfile& profile, std::size_t target,
                                               double nu0, const Eigen::VectorXd& durations);

// ---------------------------------------------------------------------------
// Realization

struct RealizeOptions {
  /// Add the parasitic couplings of concurrently pushed pairs as extra targets.
  bool crosstalk_realism = false;
};

/// Binds an abstract schedule to a platform. Lattice: checks homogeneity and
/// translation classes and renames K-families to U-gates with theta_j =
/// theta * weight. Trap array: packs runs of commuting gates into concurrent
/// slots that pass the crosstalk threshold.
PulseSchedule realize_schedule(const PulseSchedule& abstract, const HardwareModel& hw,
                               const RealizeOptions& options = {});

}  // namespace uqs

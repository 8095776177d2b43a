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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uqs/compiler.hpp"
#include "uqs/hardware.hpp"
#include "uqs/pauli.hpp"
#include "uqs/spectrum.hpp"
#include "uqs/statevector.hpp"

namespace uqs {

// ---------------------------------------------------------------------------
// Model builders

/// Sites on a rows x cols grid with unit spacing, numbered row-major. The
/// pattern decides which pairs count as nearest neighbors.
struct Geometry {
  std::size_t rows = 1;
  std::size_t cols = 2;
  Boundary boundary = Boundary::open;
  GeometryPattern pattern = GeometryPattern::rectangular;
  double spacing = 1.0;

  static Geometry chain(std::size_t n_sites, Boundary boundary = Boundary::open);

  std::size_t n_sites() const { return rows * cols; }
  Position position(std::size_t site) const;
  /// Euclidean distance; periodic grids use the nearest image.
  double distance(std::size_t a, std::size_t b) const;
  /// Nearest-neighbor pairs (a < b), sorted and without repeats.
  std::vector<std::pair<std::size_t, std::size_t>> neighbor_pairs() const;
  void validate() const;
};

enum class ModelKind { dipole, ising, heisenberg, random_ising };

std::string model_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct NamedModel {
  ModelKind kind = ModelKind::ising;
  Geometry geometry;
  /// Overall coupling J (dipole, ising, heisenberg).
  double coupling = 1.0;
  /// Uniform field B along `field_direction`, added as B sum_a n.sigma_a.
  double field = 0.0;
  Vec3 field_direction = Vec3::UnitZ();

  // Random Ising parameters. Explicit couplings take precedence; otherwise
  // each neighbor pair draws J_ab uniformly from
  // [coupling - coupling_spread, coupling + coupling_spread].
  std::map<std::pair<std::size_t, std::size_t>, double> pair_couplings;
  double coupling_spread = 0.0;
  /// Per-site x fields B_a; empty means every site gets `field`.
  std::vector<double> site_fields;
  std::optional<std::uint64_t> seed;
};

/// dipole:       (J / 2 d^3)(X_a X_b + Y_a Y_b) for every pair
/// ising:        -(J/2) sum_<ab> Z_a Z_b
/// heisenberg:   -(J/2) sum_<ab> (XX + YY + ZZ)
/// random_ising: -(1/2) sum_<ab> J_ab Z_a Z_b + sum_a B_a X_a
/// A uniform field B n.sigma is added to dipole, ising and heisenberg.
Hamiltonian build_model(const NamedModel& spec);

/// Nearest-neighbor sum of one Pauli pair, e.g. sum_a Z_a Z_{a+1}.
Hamiltonian neighbor_sum(const Geometry& geometry, Pauli op, double coeff = 1.0);

/// What one Trotter cycle of a model looks like on a platform.
struct ProtocolPlan {
  /// The Hamiltonian actually compiled, after any range truncation.
  Hamiltonian target;
  CyclePlan cycle;
  /// Name of the control sequence wrapped around the raw gates.
  std::string wrapper;
  /// Per group: gate id and its raw interaction time relative to the
  /// largest group (the pulse frequency in frequency mode).
  std::vector<std::pair<std::string, double>> relative_rates;
  std::vector<std::string> notes;
};

/// Dipole on a lattice: cube-law shift families up to the largest available
/// shift, wrapped in xy2. Dipole on a trap array: one global push in xy2.
/// Heisenberg: Ising gates in heisenberg3. Random Ising: one gate per pair
/// with rates proportional to |J_ab| (trap arrays only).
ProtocolPlan protocol_for_model(const NamedModel& spec, const HardwareModel& hw);

/// Drops two-body terms no available lattice shift can reach.
Hamiltonian truncate_to_lattice(const Hamiltonian& h, const LatticeModel& model,
                                std::vector<std::string>* notes = nullptr);

/// A lattice chain that offers every shift 1..n-1.
LatticeModel full_range_chain(std::size_t n_sites, double gamma = 1.0);

// ---------------------------------------------------------------------------
// Adiabatic preparation

enum class Ramp { linear, cosine };
enum class Stepping { trotter, exact };

std::string ramp_name(Ramp r);
Ramp parse_ramp(std::string_view name);

/// k(s) for step s of `steps`: linear 1 - s/steps or cosine
/// (1 + cos(pi s / steps)) / 2. Both fall monotonically from 1 to 0.
double ramp_value(Ramp ramp, std::size_t step, std::size_t steps);

/// H(k) = k h_initial + (1 - k) h_target.
Hamiltonian interpolate(const Hamiltonian& h_initial, const Hamiltonian& h_target, double k);

struct GapScan {
  std::vector<double> k;
  /// E_1 - E_0 at each sample; 0 where the spectrum is a single level.
  std::vector<double> gaps;
  double min_gap = 0.0;
  double argmin_k = 0.0;
  /// 1 / min_gap, the adiabatic time scale.
  double recommended_time = 0.0;
};

/// Samples the path on a uniform grid k = i / (samples - 1). Throws
/// NumericError when no sample has two distinct levels ("gapless path").
GapScan min_gap(const Hamiltonian& h_initial, const Hamiltonian& h_target, std::size_t samples,
                double tol = 1e-9);

struct AdiabaticConfig {
  Hamiltonian h_initial;
  Hamiltonian h_target;
  std::size_t steps = 100;
  /// Raw ZZ angle of the dominant gate group in each step.
  double theta1 = 0.1;
  Ramp ramp = Ramp::linear;
  Stepping stepping = Stepping::trotter;
  ErrorModel error_model;
  /// Trajectory stride; 0 records only the final step.
  std::size_t record_every = 1;
  double degeneracy_tol = 1e-9;

  void validate() const;
};

struct TrajectoryPoint {
  std::size_t step = 0;
  double k = 0.0;
  /// Weight in the ground space of H(k).
  double fidelity = 0.0;
  /// <H(k)> in the simulated state.
  double energy = 0.0;
  double ground_energy = 0.0;
};

struct AdiabaticResult {
  std::vector<TrajectoryPoint> trajectory;
  /// Eigenspace weights of the final state under h_target.
  std::vector<LevelWeight> histogram;
  double final_ground_weight = 0.0;
  std::size_t initial_degeneracy = 1;
  /// Simulated time per step.
  double dt = 0.0;
  StateVector final_state;
  ExecutionLog log;
  std::vector<std::string> notes;
};

/// Everything about an adiabatic run that does not depend on the noise draws:
/// the initial state, the per-step cycles and the spectra used for scoring.
/// Build once and run many seeds against it.
class AdiabaticPath {
 public:
  AdiabaticPath(const AdiabaticConfig& config, const HardwareModel& hw);

  const AdiabaticConfig& config() const { return config_; }
  double dt() const { return dt_; }
  const StateVector& initial_state() const { return initial_; }
  std::size_t initial_degeneracy() const { return initial_degeneracy_; }
  const SpectrumCache& target_spectrum() const { return target_; }
  /// Steps whose instantaneous ground space is scored, ascending.
  const std::vector<std::size_t>& recorded_steps() const { return recorded_; }
  const std::vector<std::string>& notes() const { return notes_; }

  /// Runs with `err` in place of the configured error model.
  AdiabaticResult run(const ErrorModel& err, const ExecutionOptions& options = {}) const;
  /// Final weight in the ground space of h_target only (no trajectory).
  double final_ground_weight(const ErrorModel& err, const ExecutionOptions& options = {}) const;

 private:
  StateVector evolve(const ErrorModel& err, const ExecutionOptions& options, ExecutionLog* log,
                     std::vector<TrajectoryPoint>* trajectory) const;

  AdiabaticConfig config_;
  HardwareModel hw_;
  double dt_ = 0.0;
  StateVector initial_;
  std::size_t initial_degeneracy_ = 1;
  SpectrumCache target_;
  std::vector<std::vector<Instruction>> cycles_;
  std::vector<std::size_t> recorded_;
  std::map<std::size_t, SpectrumCache> recorded_spectra_;
  std::vector<std::string> notes_;
};

AdiabaticResult adiabatic_run(const AdiabaticConfig& config, const HardwareModel& hw,
                              const ExecutionOptions& options = {});

struct SweepConfig {
  AdiabaticConfig base;
  /// Applied to both channels: eta_local = eta_int = eta.
  std::vector<double> etas;
  std::vector<std::size_t> steps;
  std::size_t repetitions = 20;
  /// Repetition r uses seed + r at every grid point.
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct SweepRow {
  std::size_t steps = 0;
  double eta = 0.0;
  std::size_t repetitions = 0;
  double mean = 0.0;
  /// Sample standard deviation.
  double stddev = 0.0;
  double standard_error = 0.0;
  std::vector<double> samples;
};

/// Full factorial sweep of final ground weights; rows are ordered by steps,
/// then eta. Noise-free grid points run once and are replicated.
std::vector<SweepRow> error_sweep(const SweepConfig& config, const HardwareModel& hw);

// ---------------------------------------------------------------------------
// Reference setups for the published adiabatic runs

struct ExperimentPreset {
  AdiabaticConfig config;
  HardwareModel hardware;
};

/// Dipole chain of `n_sites` unit-spaced sites with J = 1, all pairs.
Hamiltonian dipole_chain(std::size_t n_sites, double coupling = 1.0);

/// "fig4a": 7 sites from sum Z_a Z_{a+1}, 100 steps, theta1 = 0.1, 1% local
/// and 0.5% gate jitter. "fig4b": same path with theta1 = 0.025 and no
/// errors. "fig5": 9 sites from sum X_a X_{a+1}, theta1 = 0.025, 1% jitter on
/// both channels, 100 steps. Noisy presets carry seed 1.
ExperimentPreset experiment_preset(std::string_view name);
std::vector<std::string> experiment_preset_names();

}  // namespace uqs

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

#include <cmath>
#include <thread>

#include <gtest/gtest.h>

#include "uqs/errors.hpp"
#include "uqs/experiments.hpp"

namespace {

using uqs::Boundary;
using uqs::Geometry;
using uqs::Hamiltonian;
using uqs::ModelKind;
using uqs::NamedModel;
using uqs::PauliString;

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

TEST(Geometry, ChainAndRingNeighbors) {
  EXPECT_EQ(Geometry::chain(4).neighbor_pairs(), (Pairs{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(Geometry::chain(4, Boundary::periodic).neighbor_pairs(), (Pairs{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
  // A periodic pair of two sites does not double the bond.
  EXPECT_EQ(Geometry::chain(2, Boundary::periodic).neighbor_pairs(), (Pairs{{0, 1}}));
  EXPECT_DOUBLE_EQ(Geometry::chain(6, Boundary::periodic).distance(0, 5), 1.0);
  EXPECT_DOUBLE_EQ(Geometry::chain(6).distance(0, 5), 5.0);
  EXPECT_THROW(Geometry::chain(1).validate(), uqs::InvalidArgument);
}

TEST(Geometry, GridPatterns) {
  Geometry g;
  g.rows = 2;
  g.cols = 2;
  EXPECT_EQ(g.neighbor_pairs().size(), 4u);
  g.pattern = uqs::GeometryPattern::triangular;
  EXPECT_EQ(g.neighbor_pairs().size(), 5u);
  g.boundary = Boundary::periodic;
  EXPECT_THROW(g.validate(), uqs::InvalidArgument);
  Geometry h;
  h.rows = 2;
  h.cols = 2;
  h.spacing = 2.0;
  EXPECT_DOUBLE_EQ(h.distance(0, 3), std::sqrt(8.0));
}

TEST(Models, IsingAndHeisenbergSigns) {
  NamedModel m;
  m.geometry = Geometry::chain(3);
  m.coupling = 2.0;
  m.kind = ModelKind::ising;
  const Hamiltonian ising = uqs::build_model(m);
  EXPECT_DOUBLE_EQ(ising.coefficient("ZZI"), -1.0);
  EXPECT_EQ(ising.size(), 2u);
  m.kind = ModelKind::heisenberg;
  m.field = 0.5;
  m.field_direction = uqs::Vec3::UnitX();
  const Hamiltonian heis = uqs::build_model(m);
  EXPECT_DOUBLE_EQ(heis.coefficient("IYY"), -1.0);
  EXPECT_DOUBLE_EQ(heis.coefficient("XII"), 0.5);
  EXPECT_EQ(heis.size(), 9u);
}

TEST(Models, DipoleMatchesPairSum) {
  // Independent build: (J / 2 d^3)(XX + YY) for every pair of a chain.
  const Hamiltonian h = uqs::dipole_chain(4, 1.5);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      std::string xx(4, 'I');
      xx[a] = xx[b] = 'X';
      const double d = double(b - a);
      EXPECT_DOUBLE_EQ(h.coefficient(xx), 0.75 / (d * d * d));
    }
  }
  EXPECT_EQ(h.size(), 12u);
}

TEST(Models, RandomIsingIsSeededAndChecked) {
  NamedModel m;
  m.kind = ModelKind::random_ising;
  m.geometry = Geometry::chain(4);
  m.coupling = 1.0;
  m.coupling_spread = 0.5;
  m.field = 0.2;
  EXPECT_THROW(uqs::build_model(m), uqs::InvalidArgument);
  m.seed = 7;
  const Hamiltonian a = uqs::build_model(m);
  EXPECT_TRUE(a == uqs::build_model(m));
  const double j01 = -2.0 * a.coefficient("ZZII");
  EXPECT_GE(j01, 0.5);
  EXPECT_LE(j01, 1.5);
  EXPECT_DOUBLE_EQ(a.coefficient("IIIX"), 0.2);

  m.pair_couplings = {{{0, 1}, 1.0}, {{1, 2}, -2.0}, {{2, 3}, 0.5}};
  m.site_fields = {0.1, 0.0, 0.3, 0.4};
  const Hamiltonian b = uqs::build_model(m);
  EXPECT_DOUBLE_EQ(b.coefficient("IZZI"), 1.0);
  EXPECT_DOUBLE_EQ(b.coefficient("XIII"), 0.1);
  EXPECT_DOUBLE_EQ(b.coefficient("IXII"), 0.0);
  m.pair_couplings[{0, 2}] = 1.0;
  EXPECT_THROW(uqs::build_model(m), uqs::InvalidArgument);
}

TEST(Protocols, DipoleOnTrapIsGlobalPushInXy2) {
  NamedModel m;
  m.kind = ModelKind::dipole;
  m.geometry = Geometry::chain(5);
  const auto plan = uqs::protocol_for_model(m, uqs::TrapArrayModel::chain(5));
  EXPECT_EQ(plan.wrapper, "xy2");
  ASSERT_EQ(plan.cycle.groups.size(), 1u);
  EXPECT_EQ(plan.cycle.groups[0].gate_id, "PUSH");
  EXPECT_TRUE(plan.cycle.effective().approx_equal(plan.target, 1e-14));
}

TEST(Protocols, DipoleOnShortLatticeIsTruncated) {
  NamedModel m;
  m.kind = ModelKind::dipole;
  m.geometry = Geometry::chain(5);
  const auto plan = uqs::protocol_for_model(m, uqs::LatticeModel::chain(5, {1, 2}));
  EXPECT_DOUBLE_EQ(plan.target.coefficient("XIIXI"), 0.0);
  EXPECT_FALSE(plan.notes.empty());
  ASSERT_EQ(plan.relative_rates.size(), 2u);
  EXPECT_DOUBLE_EQ(plan.relative_rates[0].second, 1.0);
  EXPECT_DOUBLE_EQ(plan.relative_rates[1].second, 0.125);
}

TEST(Protocols, RandomIsingNeedsATrap) {
  NamedModel m;
  m.kind = ModelKind::random_ising;
  m.geometry = Geometry::chain(3);
  m.pair_couplings = {{{0, 1}, 1.0}, {{1, 2}, -0.5}};
  EXPECT_THROW(uqs::protocol_for_model(m, uqs::LatticeModel::chain(3, {1})), uqs::InfeasibleError);
  const auto plan = uqs::protocol_for_model(m, uqs::TrapArrayModel::chain(3));
  EXPECT_EQ(plan.wrapper, "frequency");
  ASSERT_EQ(plan.relative_rates.size(), 2u);
  EXPECT_DOUBLE_EQ(plan.relative_rates[1].second, 0.5);
  EXPECT_TRUE(plan.cycle.effective().approx_equal(plan.target, 1e-14));
}

TEST(Ramps, EndpointsAndShape) {
  for (auto r : {uqs::Ramp::linear, uqs::Ramp::cosine}) {
    EXPECT_DOUBLE_EQ(uqs::ramp_value(r, 0, 10), 1.0);
    EXPECT_EQ(uqs::ramp_value(r, 10, 10), 0.0);
    for (std::size_t s = 1; s <= 10; ++s) EXPECT_LT(uqs::ramp_value(r, s, 10), uqs::ramp_value(r, s - 1, 10));
  }
  EXPECT_NEAR(uqs::ramp_value(uqs::Ramp::cosine, 5, 10), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(uqs::ramp_value(uqs::Ramp::linear, 3, 10), 0.7);
  EXPECT_THROW(uqs::ramp_value(uqs::Ramp::linear, 11, 10), uqs::InvalidArgument);
  EXPECT_EQ(uqs::parse_ramp(uqs::ramp_name(uqs::Ramp::cosine)), uqs::Ramp::cosine);
}

TEST(MinGap, TwoLevelClosedForm) {
  // H(k) = -k X - (1 - k) Z has gap 2 sqrt(k^2 + (1 - k)^2), smallest at k = 1/2.
  const Hamiltonian hx(1, {PauliString::from_label("X", -1.0)});
  const Hamiltonian hz(1, {PauliString::from_label("Z", -1.0)});
  const auto scan = uqs::min_gap(hx, hz, 101);
  EXPECT_NEAR(scan.min_gap, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(scan.argmin_k, 0.5, 1e-15);
  EXPECT_NEAR(scan.recommended_time, 1.0 / std::sqrt(2.0), 1e-12);
  for (std::size_t i = 0; i < scan.k.size(); ++i) {
    const double k = scan.k[i];
    EXPECT_NEAR(scan.gaps[i], 2 * std::sqrt(k * k + (1 - k) * (1 - k)), 1e-12);
  }
  const Hamiltonian zero(1);
  EXPECT_THROW(uqs::min_gap(zero, zero, 5), uqs::NumericError);
}

uqs::AdiabaticConfig small_config() {
  uqs::AdiabaticConfig c;
  c.h_initial = uqs::neighbor_sum(Geometry::chain(4), uqs::Pauli::X);
  c.h_target = uqs::dipole_chain(4);
  c.steps = 30;
  c.theta1 = 0.05;
  return c;
}

TEST(Adiabatic, TrajectoryAndDt) {
  auto c = small_config();
  c.record_every = 10;
  const auto hw = uqs::full_range_chain(4);
  const auto r = uqs::adiabatic_run(c, hw);
  ASSERT_EQ(r.trajectory.size(), 3u);
  EXPECT_EQ(r.trajectory.back().step, 30u);
  EXPECT_EQ(r.trajectory.back().k, 0.0);
  EXPECT_NEAR(r.trajectory.back().fidelity, r.final_ground_weight, 1e-14);
  double total = 0.0;
  for (const auto& w : r.histogram) total += w.weight;
  EXPECT_NEAR(total, 1.0, 1e-12);
  // The dominant group of the endpoints is the nearest-neighbor xy2 family
  // with time scale 1, so dt = theta1 / gamma.
  EXPECT_NEAR(r.dt, 0.05, 1e-15);
  EXPECT_TRUE(r.log.records.empty());
}

TEST(Adiabatic, ExactSteppingImprovesWithMoreSteps) {
  auto c = small_config();
  c.stepping = uqs::Stepping::exact;
  c.record_every = 0;
  const auto hw = uqs::full_range_chain(4);
  double previous = -1.0;
  for (std::size_t steps : {10, 40, 160}) {
    c.steps = steps;
    const double w = uqs::adiabatic_run(c, hw).final_ground_weight;
    EXPECT_GT(w, previous);
    previous = w;
  }
  c.error_model = {0.01, 0.0, 1};
  EXPECT_THROW(c.validate(), uqs::InvalidArgument);
}

TEST(Adiabatic, TrotterConvergesToExactStepping) {
  // Same simulated time, half the step: the first-order Trotter deviation
  // from exact stepping should roughly halve.
  const auto hw = uqs::full_range_chain(4);
  const auto deviation = [&](std::size_t steps, double theta1) {
    auto c = small_config();
    c.record_every = 0;
    c.steps = steps;
    c.theta1 = theta1;
    const double trotter = uqs::adiabatic_run(c, hw).final_ground_weight;
    c.stepping = uqs::Stepping::exact;
    return std::abs(trotter - uqs::adiabatic_run(c, hw).final_ground_weight);
  };
  const double coarse = deviation(100, 0.01);
  const double fine = deviation(200, 0.005);
  EXPECT_LT(coarse, 0.01);
  EXPECT_LT(fine, 0.6 * coarse);
}

TEST(Adiabatic, DegenerateStartIsNoted) {
  uqs::AdiabaticConfig c;
  c.h_initial = Hamiltonian(2, {PauliString::from_label("ZZ", -1.0)});
  c.h_target = Hamiltonian(2, {PauliString::from_label("XX", -1.0)});
  c.steps = 5;
  // Both endpoints are ferromagnetic, which needs a negative gate sign.
  const auto r = uqs::adiabatic_run(c, uqs::full_range_chain(2, -1.0));
  EXPECT_EQ(r.initial_degeneracy, 2u);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Adiabatic, SeededRunsRepeatAndLog) {
  auto c = small_config();
  c.error_model = {0.02, 0.02, 5};
  const auto hw = uqs::full_range_chain(4);
  const auto a = uqs::adiabatic_run(c, hw);
  const auto b = uqs::adiabatic_run(c, hw, {2});
  EXPECT_EQ(a.final_state.dump(), b.final_state.dump());
  EXPECT_FALSE(a.log.records.empty());
  const uqs::AdiabaticPath path(c, hw);
  EXPECT_DOUBLE_EQ(path.final_ground_weight(c.error_model), a.final_ground_weight);
}

TEST(Sweep, GridOrderAndCommonRandomNumbers) {
  uqs::SweepConfig s;
  s.base = small_config();
  s.etas = {0.0, 0.01, 0.02, 0.03, 0.04};
  s.steps = {10, 20, 30, 40};
  s.repetitions = 3;
  s.seed = 11;
  s.jobs = std::max(1u, std::thread::hardware_concurrency());
  const auto hw = uqs::full_range_chain(4);
  const auto rows = uqs::error_sweep(s, hw);
  ASSERT_EQ(rows.size(), 20u);
  EXPECT_EQ(rows[0].steps, 10u);
  EXPECT_EQ(rows[4].eta, 0.04);
  EXPECT_EQ(rows[5].steps, 20u);
  // Noise-free points are deterministic and replicated.
  EXPECT_EQ(rows[0].stddev, 0.0);
  EXPECT_EQ(rows[0].samples.size(), 3u);

  // The same sweep on one thread gives identical samples.
  s.jobs = 1;
  const auto serial = uqs::error_sweep(s, hw);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].samples, serial[i].samples);

  // Repetition r uses seed + r.
  auto base = s.base;
  base.steps = 20;
  base.record_every = 0;
  const uqs::AdiabaticPath path(base, hw);
  EXPECT_DOUBLE_EQ(rows[7].samples[2], path.final_ground_weight({0.02, 0.02, 13}));
  EXPECT_THROW(uqs::error_sweep({s.base, {}, {10}, 1, 0, 1}, hw), uqs::InvalidArgument);
}

TEST(Presets, Parameters) {
  const auto a = uqs::experiment_preset("fig4a");
  EXPECT_EQ(a.config.h_initial.n_qubits(), 7u);
  EXPECT_DOUBLE_EQ(a.config.theta1, 0.1);
  EXPECT_DOUBLE_EQ(a.config.error_model.eta_int, 0.005);
  const auto b = uqs::experiment_preset("fig4b");
  EXPECT_FALSE(b.config.error_model.active());
  const auto f = uqs::experiment_preset("fig5");
  EXPECT_EQ(f.config.h_initial.n_qubits(), 9u);
  EXPECT_DOUBLE_EQ(f.config.h_initial.coefficient("XXIIIIIII"), 1.0);
  EXPECT_TRUE(f.config.h_target == uqs::dipole_chain(9));
  EXPECT_THROW(uqs::experiment_preset("fig6"), uqs::InvalidArgument);
  EXPECT_EQ(uqs::experiment_preset_names().size(), 3u);
}

}  // namespace

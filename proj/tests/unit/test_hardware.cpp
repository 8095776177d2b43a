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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uqs/compiler.hpp"
#include "uqs/errors.hpp"
#include "uqs/hardware.hpp"
#include "uqs/statevector.hpp"

namespace {

using uqs::Boundary;
using uqs::LatticeAxis;
using uqs::LatticeModel;
using uqs::TrapArrayModel;

TEST(Lattice, ValidatesShifts) {
  EXPECT_NO_THROW(LatticeModel::chain(5, {1, 4}).validate());
  EXPECT_THROW(LatticeModel::chain(5, {5}).validate(), uqs::InvalidArgument);
  auto m = LatticeModel::chain(3, {1});
  m.gamma = 0.0;
  EXPECT_THROW(m.validate(), uqs::InvalidArgument);
}

TEST(Lattice, ChainFamilies) {
  const auto open = uqs::lattice_family(LatticeModel::chain(5, {2}), 2, LatticeAxis::horizontal);
  EXPECT_EQ(open.gate_id, "K2");
  ASSERT_EQ(open.pairs.size(), 3u);
  EXPECT_EQ(open.pairs[0], (uqs::ZZCoupling{0, 2, 1.0}));
  EXPECT_EQ(open.pairs[2], (uqs::ZZCoupling{2, 4, 1.0}));

  const auto ring = uqs::lattice_family(LatticeModel::chain(5, {2}, Boundary::periodic), 2, LatticeAxis::horizontal);
  EXPECT_EQ(ring.pairs.size(), 5u);
  // On a ring of four a shift of two meets each pair twice.
  const auto four = uqs::lattice_family(LatticeModel::chain(4, {2}, Boundary::periodic), 2, LatticeAxis::horizontal);
  ASSERT_EQ(four.pairs.size(), 2u);
  EXPECT_DOUBLE_EQ(four.pairs[0].weight, 2.0);
  EXPECT_THROW(uqs::lattice_family(LatticeModel::chain(4, {1}), 1, LatticeAxis::vertical), uqs::InvalidArgument);
}

TEST(Lattice, GridFamiliesPerAxis) {
  LatticeModel grid;
  grid.rows = 2;
  grid.cols = 3;
  grid.available_j = {1};
  const auto fams = uqs::lattice_families(grid);
  ASSERT_EQ(fams.size(), 2u);
  EXPECT_EQ(fams[0].gate_id, "K1h");
  EXPECT_EQ(fams[0].pairs.size(), 4u);
  EXPECT_EQ(fams[1].gate_id, "K1v");
  EXPECT_EQ(fams[1].pairs.size(), 3u);
}

TEST(Lattice, GateGeneratorAndAvailability) {
  const auto model = LatticeModel::chain(4, {1});
  const auto gate = uqs::uqs1_gate(model, 1, 0.3);
  ASSERT_EQ(gate.gates.size(), 1u);
  EXPECT_EQ(gate.gates[0].gate_id, "U1");
  EXPECT_DOUBLE_EQ(gate.generator.coefficient("ZZII"), 1.0);
  EXPECT_DOUBLE_EQ(gate.generator.coefficient("IIZZ"), 1.0);
  EXPECT_EQ(gate.generator.size(), 3u);
  EXPECT_THROW(uqs::uqs1_gate(model, 2, 0.3), uqs::InfeasibleError);
}

TEST(Trap, PushFollowsCubeLaw) {
  const auto trap = TrapArrayModel::chain(4, 2.0);
  const auto h = uqs::uqs2_push(trap, {3, 0, 1}, 0.5);
  EXPECT_DOUBLE_EQ(h.coefficient("ZZII"), 0.5 / 8.0);
  EXPECT_DOUBLE_EQ(h.coefficient("ZIIZ"), 0.5 / 216.0);
  EXPECT_DOUBLE_EQ(h.coefficient("IZIZ"), 0.5 / 64.0);
  EXPECT_THROW(uqs::uqs2_push(trap, {1}, 0.5), uqs::InvalidArgument);
  EXPECT_THROW(uqs::uqs2_push(trap, {1, 1}, 0.5), uqs::InvalidArgument);
  EXPECT_THROW(uqs::uqs2_push(trap, {1, 7}, 0.5), uqs::InvalidArgument);
}

TEST(Trap, ValidatesSpacing) {
  TrapArrayModel m;
  m.positions = {{0, 0}, {0.5, 0}};
  EXPECT_THROW(m.validate(), uqs::InvalidArgument);
}

TEST(Pulse, TrapezoidIntegral) {
  const auto trap = TrapArrayModel::chain(2);
  const auto rect = uqs::PulseProfile::rectangular(10, 0.1);
  EXPECT_NEAR(uqs::theta_from_pulse(rect, rect, trap, 1.0), -1.0, 1e-14);
  const auto tri = uqs::PulseProfile::triangular(4, 0.5);
  // f^2 on [0, 2] for a tent sampled at 0, .5, 1, .5, 0 with trapezoids:
  // 0.5 * (0 + 2 * 0.25 + 2 * 1 + 2 * 0.25 + 0) * 0.5 = 0.75.
  EXPECT_NEAR(uqs::theta_from_pulse(tri, tri, trap, 2.0), -0.75 / 8.0, 1e-14);
  EXPECT_TRUE(tri.returns_to_rest());
  EXPECT_FALSE(rect.returns_to_rest());
  EXPECT_DOUBLE_EQ(rect.duration(), 1.0);
  EXPECT_THROW(uqs::theta_from_pulse(rect, tri, trap, 1.0), uqs::InvalidArgument);
  uqs::PulseProfile bad{{0.0, 1.5}, 0.1};
  EXPECT_THROW(bad.validate(), uqs::InvalidArgument);
}

TEST(Crosstalk, RatioDecaysAsCube) {
  const auto trap = TrapArrayModel::chain(13);
  const auto r = uqs::crosstalk_report(trap, {{0, 1}, {11, 12}});
  EXPECT_DOUBLE_EQ(r.max_ratio[0][1], 1e-3);
  EXPECT_DOUBLE_EQ(r.worst, 1e-3);
  // The default threshold is strict, so a ratio of exactly 1e-3 is not concurrent.
  EXPECT_FALSE(r.concurrent);
  EXPECT_EQ(r.pairs.size(), 4u);
  const auto far = uqs::crosstalk_report(TrapArrayModel::chain(14), {{0, 1}, {12, 13}});
  EXPECT_TRUE(far.concurrent);
  EXPECT_THROW(uqs::crosstalk_report(trap, {{0, 1}, {1, 2}}), uqs::InvalidArgument);
  EXPECT_THROW(uqs::crosstalk_report(trap, {{0}}), uqs::InvalidArgument);
}

TEST(Geometry, RemapPatterns) {
  LatticeModel base;
  base.rows = 2;
  base.cols = 2;
  using P = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(uqs::geometry_remap(uqs::GeometryPattern::rectangular, base),
            (std::vector<P>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(uqs::geometry_remap(uqs::GeometryPattern::triangular, base),
            (std::vector<P>{{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}));
  EXPECT_EQ(uqs::geometry_remap(uqs::GeometryPattern::hexagonal, base), (std::vector<P>{{0, 1}, {0, 2}, {2, 3}}));
  EXPECT_THROW(uqs::geometry_remap(uqs::GeometryPattern::rectangular, LatticeModel::chain(4, {1})),
               uqs::InvalidArgument);
}

TEST(Beams, CompensationCancelsNeighbors) {
  std::vector<uqs::Position> pos;
  for (int i = 0; i < 5; ++i) pos.push_back({double(i), 0.0});
  const auto beam = uqs::gaussian_beam(1.5);
  const auto sol = uqs::beam_compensation(pos, beam, 2, 0.4, 1.0);
  EXPECT_LT(sol.residual, 1e-10);
  EXPECT_NEAR(sol.angles(2), 0.4, 1e-10);
  const auto rots = uqs::beam_rotations(pos, beam, 2, 1.0, sol.durations);
  for (std::size_t j = 0; j < 5; ++j) {
    const oracle::Matrix expect = j == 2 ? oracle::expm(oracle::pauli('X'), 0.4) : oracle::Matrix::Identity(2, 2);
    EXPECT_LT(oracle::spectral_norm(oracle::Matrix(rots[j].matrix()) - expect), 1e-8);
  }
  EXPECT_THROW(uqs::beam_compensation(pos, beam, 7, 0.4, 1.0), uqs::InvalidArgument);
  // Wide beams make the overlap matrix singular.
  EXPECT_THROW(uqs::beam_compensation(pos, uqs::gaussian_beam(1e4), 2, 0.4, 1.0), uqs::NumericError);
}

TEST(Realize, LatticeRenamesAndRejectsPartialClasses) {
  const auto model = LatticeModel::chain(3, {1});
  uqs::PulseSchedule s;
  s.n_qubits = 3;
  s.cycle.push_back(uqs::RawGate{"K1", 0.2, {{0, 1, 2.0}, {1, 2, 2.0}}, -1});
  const auto out = uqs::realize_schedule(s, model);
  const auto& g = std::get<uqs::RawGate>(out.cycle[0]);
  EXPECT_EQ(g.gate_id, "U1");
  EXPECT_DOUBLE_EQ(g.theta, 0.4);
  EXPECT_DOUBLE_EQ(g.targets[0].weight, 1.0);
  // Realization preserves the unitary.
  EXPECT_LT((uqs::schedule_unitary(out) - uqs::schedule_unitary(s)).norm(), 1e-13);

  s.cycle[0] = uqs::RawGate{"K1", 0.2, {{0, 1, 1.0}}, -1};
  EXPECT_THROW(uqs::realize_schedule(s, model), uqs::InfeasibleError);
  s.cycle[0] = uqs::ApplyLocal{uqs::LocalLayer::inhomogeneous(
      {uqs::SingleQubitUnitary{}, uqs::quarter_turn(uqs::Pauli::X), uqs::SingleQubitUnitary{}})};
  EXPECT_THROW(uqs::realize_schedule(s, model), uqs::InfeasibleError);
}

TEST(Realize, TrapPacksDistantPairs) {
  auto trap = TrapArrayModel::chain(14);
  uqs::PulseSchedule s;
  s.n_qubits = 14;
  s.cycle.push_back(uqs::RawGate{"ZZ", 0.1, {{0, 1, 1.0}}, -1});
  s.cycle.push_back(uqs::RawGate{"ZZ", 0.1, {{12, 13, 1.0}}, -1});
  s.cycle.push_back(uqs::RawGate{"ZZ", 0.1, {{5, 6, 1.0}}, -1});
  const auto out = uqs::realize_schedule(s, trap);
  std::map<std::size_t, int> slot_of;
  for (const auto& ins : out.cycle) {
    const auto& g = std::get<uqs::RawGate>(ins);
    slot_of[g.targets[0].a] = g.slot;
  }
  // 0-1 and 12-13 are 11 sites apart (ratio below 1e-3); 5-6 is too close to both.
  EXPECT_EQ(slot_of[0], slot_of[12]);
  EXPECT_NE(slot_of[0], slot_of[5]);

  const auto real = uqs::realize_schedule(s, trap, {true});
  std::size_t extra = 0;
  for (const auto& ins : real.cycle) extra += std::get<uqs::RawGate>(ins).targets.size() - 1;
  EXPECT_EQ(extra, 4u);
}

}  // namespace

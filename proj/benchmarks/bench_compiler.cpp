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

#include <benchmark/benchmark.h>

#include "uqs/compiler.hpp"
#include "uqs/experiments.hpp"
#include "uqs/hardware.hpp"

namespace {

void BM_TrotterDipoleChainLattice(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto target = uqs::dipole_chain(n);
  const uqs::HardwareModel hw = uqs::full_range_chain(n);
  for (auto _ : state) benchmark::DoNotOptimize(uqs::trotter_schedule(target, 1.0, 0.01, hw));
}
BENCHMARK(BM_TrotterDipoleChainLattice)->Arg(5)->Arg(9)->Arg(16);

void BM_PlanDipoleChainTrap(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto target = uqs::dipole_chain(n);
  const uqs::HardwareModel hw = uqs::TrapArrayModel::chain(n);
  for (auto _ : state) benchmark::DoNotOptimize(uqs::plan_cycle(target, hw));
}
BENCHMARK(BM_PlanDipoleChainTrap)->Arg(5)->Arg(9)->Arg(16);

void BM_RandomIsingPerPair(benchmark::State& state) {
  uqs::NamedModel spec;
  spec.kind = uqs::ModelKind::random_ising;
  spec.geometry = uqs::Geometry::chain(static_cast<std::size_t>(state.range(0)));
  spec.coupling_spread = 0.5;
  spec.field = 0.3;
  spec.seed = 3;
  const auto target = uqs::build_model(spec);
  const uqs::HardwareModel hw = uqs::TrapArrayModel::chain(spec.geometry.n_sites());
  for (auto _ : state) benchmark::DoNotOptimize(uqs::trotter_schedule(target, 1.0, 0.01, hw));
}
BENCHMARK(BM_RandomIsingPerPair)->Arg(6)->Arg(12);

void BM_HomogeneousFeasibility(benchmark::State& state) {
  uqs::CoeffMatrix m;
  m.m << 1.0, 0.2, 0.0, 0.2, 0.7, 0.1, 0.0, 0.1, 0.4;
  for (auto _ : state) benchmark::DoNotOptimize(uqs::homogeneous_feasibility(m, 1.0));
}
BENCHMARK(BM_HomogeneousFeasibility);

}  // namespace

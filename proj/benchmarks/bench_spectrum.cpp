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

#include "uqs/experiments.hpp"
#include "uqs/spectrum.hpp"

namespace {

void BM_SpectrumCache(benchmark::State& state) {
  const auto h = uqs::dipole_chain(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uqs::SpectrumCache(h));
}
BENCHMARK(BM_SpectrumCache)->DenseRange(4, 9)->Unit(benchmark::kMillisecond);

void BM_AdiabaticPathBuild(benchmark::State& state) {
  const auto preset = uqs::experiment_preset("fig4b");
  for (auto _ : state) benchmark::DoNotOptimize(uqs::AdiabaticPath(preset.config, preset.hardware));
}
BENCHMARK(BM_AdiabaticPathBuild)->Unit(benchmark::kMillisecond);

void BM_AdiabaticNoisyRun(benchmark::State& state) {
  const auto preset = uqs::experiment_preset("fig4b");
  const uqs::AdiabaticPath path(preset.config, preset.hardware);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(path.final_ground_weight({0.01, 0.01, ++seed}));
}
BENCHMARK(BM_AdiabaticNoisyRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

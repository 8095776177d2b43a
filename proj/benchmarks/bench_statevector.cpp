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

#include <vector>

#include "uqs/statevector.hpp"
#include "uqs/unitary.hpp"

namespace {

uqs::StateVector spread_state(std::size_t n) {
  uqs::StateVector s(n);
  uqs::apply_local_layer(s, uqs::LocalLayer::homogeneous(uqs::quarter_turn(uqs::Pauli::Y)));
  return s;
}

void BM_SingleQubit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto psi = spread_state(n);
  const auto u = uqs::SingleQubitUnitary::rotation(uqs::Vec3(1, 2, 3).normalized(), 0.3).matrix();
  for (auto _ : state) {
    uqs::apply_single_qubit(psi, n / 2, u);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dim()));
}
BENCHMARK(BM_SingleQubit)->DenseRange(10, 20, 2);

void BM_HomogeneousLayer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto psi = spread_state(n);
  const auto layer = uqs::LocalLayer::homogeneous(uqs::quarter_turn(uqs::Pauli::X));
  for (auto _ : state) {
    uqs::apply_local_layer(psi, layer, nullptr, nullptr, nullptr, {static_cast<std::size_t>(state.range(1))});
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dim() * n));
}
BENCHMARK(BM_HomogeneousLayer)->ArgsProduct({{12, 16, 20}, {1, 4}});

void BM_ZZGates(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto psi = spread_state(n);
  std::vector<uqs::ZZGate> gates;
  for (std::size_t a = 0; a + 1 < n; ++a) gates.push_back({a, a + 1, 0.01 * static_cast<double>(a + 1)});
  for (auto _ : state) {
    uqs::apply_zz_gates(psi, gates);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.dim()));
}
BENCHMARK(BM_ZZGates)->DenseRange(10, 20, 2);

void BM_NoisyLayer(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto psi = spread_state(n);
  const uqs::ErrorModel err{0.01, 0.01, 5};
  uqs::JitterSource jitter(5);
  const auto layer = uqs::LocalLayer::homogeneous(uqs::quarter_turn(uqs::Pauli::X));
  for (auto _ : state) {
    uqs::apply_local_layer(psi, layer, &err, &jitter);
    benchmark::DoNotOptimize(psi.amplitudes().data());
  }
}
BENCHMARK(BM_NoisyLayer)->Arg(12)->Arg(16);

}  // namespace

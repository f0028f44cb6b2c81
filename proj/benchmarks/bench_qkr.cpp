/* Copyright 2026 The qkr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "qkr/qkr.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_Evolve(benchmark::State& state)
{
    const auto config = qkr::SimConfig::make(static_cast<int>(state.range(0)), 0.485, 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkr::evolve(config));
    }
}
BENCHMARK(BM_Evolve)->Arg(5)->Arg(40)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_EvolveDense(benchmark::State& state)
{
    auto config = qkr::SimConfig::make(10, 0.485, 1e-6);
    config.half_width = static_cast<int>(state.range(0));
    config.n_points = qkr::SimConfig::default_n_points(config.half_width);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkr::evolve_dense(config));
    }
}
BENCHMARK(BM_EvolveDense)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Fidelity(benchmark::State& state)
{
    const int kicks = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkr::fidelity_protocol(kicks, 0.485, 1e-3));
    }
}
BENCHMARK(BM_Fidelity)->Arg(5)->Arg(24)->Unit(benchmark::kMicrosecond);

void BM_Scan(benchmark::State& state)
{
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkr::scan_epsilon(12, 0.485, 1, qkr::ScanMode::fidelity, 0.01, 65, threads));
    }
}
BENCHMARK(BM_Scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BesselSequence(benchmark::State& state)
{
    const double x = static_cast<double>(state.range(0));
    const int n_max = static_cast<int>(x) + 40;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qkr::bessel_j_sequence(n_max, x));
    }
}
BENCHMARK(BM_BesselSequence)->Arg(1)->Arg(20)->Arg(500);

} // namespace

BENCHMARK_MAIN();

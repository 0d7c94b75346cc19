// Copyright 2026 The wpf Authors
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

// Serial reference kernels against their OpenMP counterparts. The first
// argument selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "wpf/games.hpp"
#include "wpf/qsim.hpp"

using namespace wpf;

namespace {

Exec exec_of(const benchmark::State &state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

qsim::StateVec spread_state(unsigned width, std::size_t registers) {
    qsim::StateVec s(std::vector<unsigned>(registers, width));
    for (std::size_t r = 0; r < registers; ++r) s = qsim::hadamard_register(r, s, Exec::Serial);
    return s;
}

void BM_ApplyOnRegisters(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(1));
    const qsim::StateVec s = spread_state(n, 3);
    const qsim::PermUnitary cnot = qsim::PermUnitary::cnot(n);
    const std::size_t regs[2] = {0, 2};
    for (auto _ : state) benchmark::DoNotOptimize(qsim::apply_on_registers(cnot, regs, s, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.amplitudes().size()));
}

void BM_Hadamard(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(1));
    const qsim::StateVec s = spread_state(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(qsim::hadamard_register(1, s, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.amplitudes().size()));
}

void BM_InverseQft(benchmark::State &state) {
    const auto n = static_cast<unsigned>(state.range(1));
    const qsim::StateVec s = spread_state(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(qsim::inverse_qft_register(0, s, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.amplitudes().size()));
}

void BM_AverageGame(benchmark::State &state) {
    const Family f = Family::parse("zn-star", "15,21,33,35,77,91");
    GameConfig cfg;
    cfg.adversary = AdversarySpec::parse("inf:exact");
    cfg.trials = static_cast<std::uint64_t>(state.range(1));
    cfg.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(run_average_game(f, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_WorstCaseGame(benchmark::State &state) {
    const Family f = Family::parse("elem-abelian", "p=2,k=1..4");
    GameConfig cfg;
    cfg.adversary = AdversarySpec::parse("fin:exact");
    cfg.k = static_cast<std::uint64_t>(state.range(1));
    cfg.pi = Poly::parse("k+1");
    cfg.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(run_worstcase_game(f, cfg));
}

}  // namespace

BENCHMARK(BM_ApplyOnRegisters)->ArgsProduct({{0, 1}, {6, 7}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hadamard)->ArgsProduct({{0, 1}, {6, 7}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InverseQft)->ArgsProduct({{0, 1}, {8, 10}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AverageGame)->ArgsProduct({{0, 1}, {2000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WorstCaseGame)->ArgsProduct({{0, 1}, {3}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

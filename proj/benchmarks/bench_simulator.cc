// Copyright 2026 The qfps Authors
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

#include <cmath>
#include <memory>

#include "qfps/arith.hpp"
#include "qfps/func_circuits.hpp"
#include "qfps/hhl_poisson.hpp"
#include "qfps/resources.hpp"
#include "qfps/sparse_state.hpp"
#include "qfps/spectral.hpp"

namespace qfps {
namespace {

// Adder on a uniform superposition of both operands: support 4^w.
void BM_AdderSuperposition(benchmark::State& state) {
  const auto w = static_cast<unsigned>(state.range(0));
  const auto built = build_adder({.width = w});
  const CompiledCircuit compiled(std::make_shared<const Circuit>(built.circuit));
  for (auto _ : state) {
    SparseState s(built.circuit.layout());
    const double amp = std::ldexp(1.0, -static_cast<int>(w));
    for (std::uint64_t a = 0; a < (1ULL << w); ++a) {
      for (std::uint64_t b = 0; b < (1ULL << w); ++b) {
        BasisKey k;
        k.write(built.a, a);
        k.write(built.b, b);
        s.set_amplitude(k, Complex(amp));
      }
    }
    compiled.apply(s);
    benchmark::DoNotOptimize(s.support());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(built.circuit.size()));
}
BENCHMARK(BM_AdderSuperposition)->DenseRange(4, 8, 2);

// Square root on every input at once.
void BM_SqrtAllInputs(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const auto f = build_sqrt(m);
  const CompiledCircuit compiled(std::make_shared<const Circuit>(f.circuit));
  for (auto _ : state) {
    SparseState s(f.circuit.layout());
    const double amp = std::ldexp(1.0, -static_cast<int>(m) / 2);
    for (std::uint64_t x = 0; x < (1ULL << m); ++x) {
      BasisKey k;
      k.write(f.input, x);
      s.set_amplitude(k, Complex(amp));
    }
    compiled.apply(s);
    benchmark::DoNotOptimize(s.support());
  }
}
BENCHMARK(BM_SqrtAllInputs)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

// Quantum gates spreading support: QFT on a basis state.
void BM_QftDense(benchmark::State& state) {
  const auto w = static_cast<unsigned>(state.range(0));
  const Circuit qft = build_qft(w);
  for (auto _ : state) {
    SparseState s(qft.layout());
    s.set_amplitude(BasisKey{}, Complex(1.0));
    apply(s, qft);
    benchmark::DoNotOptimize(s.support());
  }
}
BENCHMARK(BM_QftDense)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

// Circuit construction and resource tally, no simulation.
void BM_ResourceReport(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(resource_report(n, 4).measured);
}
BENCHMARK(BM_ResourceReport)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

// End-to-end demo solve.
void BM_DemoSolve(benchmark::State& state) {
  const auto p = demo_problem(static_cast<unsigned>(state.range(0)));
  const HhlPipeline pipe(p);
  for (auto _ : state) benchmark::DoNotOptimize(pipe.solve(p.rhs).success_probability);
}
BENCHMARK(BM_DemoSolve)->Arg(3)->Arg(6)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
}  // namespace qfps

BENCHMARK_MAIN();

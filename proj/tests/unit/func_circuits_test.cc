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

#include "qfps/func_circuits.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "qfps/errors.hpp"
#include "qfps/fixed_point.hpp"
#include "test_util.hpp"

namespace qfps {
namespace {

using testing::make_key;
using testing::others_zero;
using testing::run_basis;

// Runs a function circuit on one input and returns the raw output payload,
// checking that input is preserved and every other qubit is clean.
class FuncRunner {
 public:
  explicit FuncRunner(const FuncCircuit& f)
      : f_(f), compiled_(std::make_shared<const Circuit>(f.circuit)) {}

  std::uint64_t operator()(std::uint64_t x) const {
    const BasisKey out = run_basis(compiled_, f_.circuit.layout(), make_key({{&f_.input, x}}));
    EXPECT_EQ(out.read(f_.input), x);
    EXPECT_TRUE(others_zero(out, f_.circuit.layout(), {&f_.input, &f_.output})) << "dirty ancilla for " << x;
    return out.read(f_.output);
  }

  std::string str(std::uint64_t x) const {
    return format_output(f_, (*this)(x));
  }

 private:
  const FuncCircuit& f_;
  CompiledCircuit compiled_;
};

TEST(SqrtCircuit, TableRows) {
  const auto f = build_sqrt(4);
  FuncRunner run(f);
  EXPECT_EQ(run.str(0b0010), "01.01");
  EXPECT_EQ(run.str(0b0111), "10.10");
  EXPECT_EQ(run.str(0b1001), "11.00");
  EXPECT_EQ(run.str(0b1111), "11.11");
  EXPECT_THROW(build_sqrt(5), DomainError);
}

TEST(SqrtCircuit, ExhaustiveAgainstOracle) {
  for (unsigned m : {2u, 4u, 6u}) {
    const auto f = build_sqrt(m);
    FuncRunner run(f);
    for (std::uint64_t x = 0; x < (1ULL << m); ++x) ASSERT_EQ(run(x), nr_sqrt(x, m).root) << "m=" << m << " x=" << x;
  }
}

TEST(SqrtCircuit, OddTotalWidthAndShift) {
  Circuit c;
  const auto x = c.add_register("x", 5);
  const auto out = c.add_register("out", 4);
  append_sqrt(c, x.qubits(), 2, out.qubits());
  CompiledCircuit compiled(std::make_shared<const Circuit>(c));
  for (std::uint64_t v = 0; v < 32; ++v) {
    const auto key = run_basis(compiled, c.layout(), make_key({{&x, v}}));
    EXPECT_EQ(key.read(out), isqrt_digits(v, 5, 2).root);
    EXPECT_TRUE(others_zero(key, c.layout(), {&x, &out}));
  }
}

TEST(RecipCircuit, TableRows) {
  const auto f = build_recip(4);
  FuncRunner run(f);
  EXPECT_EQ(run.str(0b0010), "0.1000");
  EXPECT_EQ(run.str(0b0011), "0.0101");
  EXPECT_EQ(run.str(0b1000), "0.0010");
  EXPECT_EQ(run.str(0b1111), "0.0001");
  EXPECT_EQ(run(1), 0b1111u);
  run(0);  // output unspecified; hygiene is still checked
  EXPECT_THROW(build_recip(2), DomainError);
}

TEST(RecipCircuit, ExhaustiveAgainstOracle) {
  for (unsigned m : {3u, 4u, 5u, 6u}) {
    const auto f = build_recip(m);
    FuncRunner run(f);
    for (std::uint64_t x = 1; x < (1ULL << m); ++x) ASSERT_EQ(run(x), nr_reciprocal(x, m).quotient) << m << " " << x;
  }
}

TEST(RecipCircuit, WideOutputWithoutSaturation) {
  Circuit c;
  const auto x = c.add_register("x", 4);
  const auto out = c.add_register("out", 8);
  append_recip(c, x.qubits(), 6, out.qubits());
  CompiledCircuit compiled(std::make_shared<const Circuit>(c));
  for (std::uint64_t v = 1; v < 16; ++v) {
    const auto key = run_basis(compiled, c.layout(), make_key({{&x, v}}));
    EXPECT_EQ(key.read(out), 64 / v);
    EXPECT_TRUE(others_zero(key, c.layout(), {&x, &out}));
  }
}

TEST(CosCircuit, TableRows) {
  const auto f = build_cos(2, 3);
  FuncRunner run(f);
  EXPECT_EQ(run.str(0), "01.000");
  EXPECT_EQ(run.str(1), "00.101");
  EXPECT_EQ(run.str(2), "00.000");
  EXPECT_EQ(run.str(3), "11.011");
}

TEST(CosCircuit, AllInputsAgainstOracle) {
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned frac : {n + 1, 6u}) {
      const auto f = build_cos(n, frac);
      FuncRunner run(f);
      for (std::uint64_t j = 0; j < (1ULL << n); ++j) ASSERT_EQ(run(j), plouffe_cos(j, n, frac).bits()) << n << " " << j;
    }
  }
}

TEST(EvcCircuit, Examples) {
  const auto f = build_evc(2, 2 * 2 + 2 + 3);
  FuncRunner run(f);
  EXPECT_EQ(run(0), 0u);
  EXPECT_EQ(run(2), 32u << 3);
  EXPECT_DOUBLE_EQ(static_cast<double>(run(1)) / 8, 9.375);
  EXPECT_THROW(build_evc(2, 5), DomainError);
}

TEST(EvcCircuit, AllInputsAgainstOracle) {
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned f : {0u, 2u, 5u}) {
      const auto fc = build_evc(n, 2 * n + 2 + f);
      FuncRunner run(fc);
      for (std::uint64_t j = 0; j < (1ULL << n); ++j) ASSERT_EQ(run(j), evc_value(j, n, f).bits()) << n << " " << f << " " << j;
    }
  }
}

TEST(EvcCircuit, SuperpositionStaysEntangledAndUniform) {
  const unsigned n = 3, f = 2;
  const auto fc = build_evc(n, 2 * n + 2 + f);
  SparseState s(fc.circuit.layout());
  const double amp = 1.0 / std::sqrt(8.0);
  for (std::uint64_t j = 0; j < 8; ++j) s.set_amplitude(make_key({{&fc.input, j}}), Complex(amp));
  apply(s, fc.circuit);
  EXPECT_EQ(s.support(), 8u);
  for (const auto& [key, a] : s.sorted_entries()) {
    EXPECT_NEAR(std::abs(a - Complex(amp)), 0.0, 1e-12);
    EXPECT_EQ(key.read(fc.output), evc_value(key.read(fc.input), n, f).bits());
    EXPECT_TRUE(others_zero(key, fc.circuit.layout(), {&fc.input, &fc.output}));
  }
}

TEST(AngleCircuit, TableRowAndLargeInput) {
  const auto f = build_angle(4, {.in_frac = 2, .out_bits = 2});
  FuncRunner run(f);
  EXPECT_EQ(run.str(0b0100), ".01");
  const auto g = build_angle(6, {.in_frac = 0, .out_bits = 3});
  FuncRunner run_g(g);
  EXPECT_EQ(run_g(63), 0u);
}

TEST(AngleCircuit, DemoEigenvaluesAgainstOracle) {
  // Eigenvalue register format for n = 2, f = 3: 9 bits, 3 fraction bits.
  const auto f = build_angle(9, {.in_frac = 3, .out_bits = 8});
  FuncRunner run(f);
  for (double v : {8.0, 9.375, 32.0, 54.625}) {
    const auto lambda = FixedPoint::from_double(v, 9, 3, false);
    EXPECT_EQ(run(lambda.bits()), plouffe_arccot(lambda, 8).bits()) << v;
  }
}

TEST(AngleCircuit, ExhaustiveSmallFormat) {
  const auto f = build_angle(5, {.in_frac = 2, .out_bits = 4});
  FuncRunner run(f);
  for (std::uint64_t x = 1; x < 32; ++x) {
    const auto lambda = FixedPoint::from_bits(x, 5, 2, false);
    EXPECT_EQ(run(x), plouffe_arccot(lambda, 4).bits()) << lambda.to_double();
  }
}

TEST(AngleCircuit, ShiftScalesInput) {
  const auto f = build_angle(5, {.in_frac = 1, .out_bits = 5, .shift = 2});
  FuncRunner run(f);
  for (std::uint64_t x = 1; x < 32; ++x) {
    const auto scaled = FixedPoint::from_bits(x << 2, 7, 1, false);
    EXPECT_EQ(run(x), plouffe_arccot(scaled, 5).bits()) << x;
  }
}

TEST(FuncCircuits, CircuitThenInverseIsIdentity) {
  for (const auto& f : {build_sqrt(4), build_recip(4), build_cos(2, 3)}) {
    Circuit both = f.circuit;
    both.append(f.circuit.inverse());
    CompiledCircuit compiled(std::make_shared<const Circuit>(both));
    for (std::uint64_t x = 0; x < (1ULL << f.input.width); ++x) {
      const BasisKey in = make_key({{&f.input, x}, {&f.output, 1}});
      EXPECT_EQ(run_basis(compiled, both.layout(), in), in);
    }
  }
}

}  // namespace
}  // namespace qfps

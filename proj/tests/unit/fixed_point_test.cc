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

#include "qfps/fixed_point.hpp"

#include <mpfr.h>

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "qfps/errors.hpp"

namespace qfps {
namespace {

std::uint64_t isqrt_search(std::uint64_t v) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

// floor(2^bits * arccot(num/2^frac) / pi) at 256-bit precision.
std::uint64_t arccot_oracle(std::uint64_t num, unsigned frac, unsigned bits) {
  mpfr_t x, pi, y;
  mpfr_inits2(256, x, pi, y, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(x, num, MPFR_RNDN);
  mpfr_div_2ui(x, x, frac, MPFR_RNDN);
  mpfr_ui_div(x, 1, x, MPFR_RNDN);
  mpfr_atan(y, x, MPFR_RNDN);
  mpfr_const_pi(pi, MPFR_RNDN);
  mpfr_div(y, y, pi, MPFR_RNDN);
  mpfr_mul_2ui(y, y, bits, MPFR_RNDN);
  mpfr_floor(y, y);
  const std::uint64_t out = mpfr_get_ui(y, MPFR_RNDZ);
  mpfr_clears(x, pi, y, static_cast<mpfr_ptr>(nullptr));
  return out;
}

TEST(FixedPoint, RoundTripAndRendering) {
  const auto v = FixedPoint::parse("11.011", true);
  EXPECT_EQ(v.width(), 5u);
  EXPECT_EQ(v.frac(), 3u);
  EXPECT_DOUBLE_EQ(v.to_double(), -0.625);
  EXPECT_EQ(v.to_binary_string(), "11.011");
  EXPECT_EQ(FixedPoint::parse(".01", false).to_binary_string(), ".01");
  EXPECT_EQ(FixedPoint::from_double(-0.625, 5, 3, true), v);
  for (std::int64_t p = -16; p < 16; ++p) {
    const auto x = FixedPoint::from_integer(p, 5, 2, true);
    EXPECT_EQ(x.payload(), p);
    EXPECT_EQ(FixedPoint::from_double(x.to_double(), 5, 2, true), x);
  }
  EXPECT_THROW(FixedPoint::from_bits(32, 5, 2, false), DomainError);
  EXPECT_THROW(FixedPoint::from_bits(0, 4, 5, false), DomainError);
}

TEST(NrSqrt, TableRows) {
  EXPECT_EQ(nr_sqrt(0b0010, 4).root, 0b0101u);
  EXPECT_EQ(nr_sqrt(0b1001, 4).root, 0b1100u);
  EXPECT_EQ(nr_sqrt(0b0111, 4).root, 0b1010u);
  EXPECT_EQ(nr_sqrt(0b1111, 4).root, 0b1111u);
  const auto z = nr_sqrt(0, 4);
  EXPECT_EQ(z.root, 0u);
  EXPECT_EQ(z.remainder, 0u);
  EXPECT_EQ(sqrt_fixed(FixedPoint::parse("01.00", false)).to_binary_string(), "01.00");
  EXPECT_THROW(nr_sqrt(1, 3), DomainError);
  EXPECT_THROW(nr_sqrt(16, 4), DomainError);
}

TEST(NrSqrt, ExhaustiveAgainstIntegerSearch) {
  for (unsigned m : {4u, 6u, 8u, 10u}) {
    for (std::uint64_t x = 0; x < (1ULL << m); ++x) {
      const auto r = nr_sqrt(x, m);
      const std::uint64_t scaled = x << m;
      ASSERT_EQ(r.root, isqrt_search(scaled)) << "m=" << m << " x=" << x;
      ASSERT_EQ(r.root * r.root + r.remainder, scaled);
    }
  }
}

TEST(NrReciprocal, TableRows) {
  EXPECT_EQ(nr_reciprocal(0b0011, 4).quotient, 0b0101u);
  EXPECT_EQ(nr_reciprocal(0b1111, 4).quotient, 0b0001u);
  EXPECT_EQ(nr_reciprocal(0b0010, 4).quotient, 0b1000u);
  EXPECT_EQ(nr_reciprocal(0b1000, 4).quotient, 0b0010u);
  const auto one = nr_reciprocal(1, 4);
  EXPECT_EQ(one.quotient, 0b1111u);
  EXPECT_TRUE(one.saturated);
  EXPECT_THROW(nr_reciprocal(0, 4), DomainError);
}

TEST(NrReciprocal, QuotientDigitsForEight) {
  const auto r = nr_reciprocal(0b1000, 4);
  ASSERT_GE(r.digits.size(), 4u);
  EXPECT_EQ(r.digits[0], 0);
  EXPECT_EQ(r.digits[1], 0);
  EXPECT_EQ(r.digits[2], 0);
  EXPECT_EQ(r.digits[3], 1);
}

TEST(NrReciprocal, ExhaustiveAgainstDivision) {
  for (unsigned m : {4u, 6u, 8u, 10u}) {
    for (std::uint64_t x = 2; x < (1ULL << m); ++x) {
      ASSERT_EQ(nr_reciprocal(x, m).quotient, (1ULL << m) / x) << "m=" << m << " x=" << x;
    }
    for (std::uint64_t x = 1; x < (1ULL << m); ++x) {
      ASSERT_EQ(nr_divide_power_of_two(x, m + 3), (1ULL << (m + 3)) / x);
    }
  }
}

TEST(PlouffeCos, TableRows) {
  EXPECT_EQ(plouffe_cos(0, 2, 3).to_binary_string(), "01.000");
  EXPECT_EQ(plouffe_cos(1, 2, 3).to_binary_string(), "00.101");
  EXPECT_EQ(plouffe_cos(2, 2, 3).to_binary_string(), "00.000");
  EXPECT_EQ(plouffe_cos(3, 2, 3).to_binary_string(), "11.011");
  EXPECT_DOUBLE_EQ(plouffe_cos(3, 2, 3).to_double(), -0.625);
  for (unsigned n = 1; n <= 6; ++n) EXPECT_DOUBLE_EQ(plouffe_cos(0, n, 8).to_double(), 1.0);
}

TEST(PlouffeCos, IntermediateStepsTrackLowBits) {
  for (unsigned n = 1; n <= 6; ++n) {
    for (std::uint64_t j = 0; j < (1ULL << n); ++j) {
      CosTrace trace;
      const auto out = plouffe_cos(j, n, n + 1, &trace);
      ASSERT_EQ(trace.a.size(), n + 1);
      const double tol = std::ldexp(1.0, -static_cast<int>(trace.guard_frac) + 2);
      for (unsigned k = 0; k <= n; ++k) {
        const std::uint64_t low = j & ((1ULL << k) - 1);
        const double expect = std::cos(M_PI * static_cast<double>(low) / std::ldexp(1.0, static_cast<int>(k)));
        const double got = std::ldexp(static_cast<double>(trace.a[k]), -static_cast<int>(trace.guard_frac));
        EXPECT_LE(std::abs(got - expect), tol) << "n=" << n << " j=" << j << " k=" << k;
      }
      // Output magnitude is the true magnitude truncated.
      const double c = std::cos(M_PI * static_cast<double>(j) / std::ldexp(1.0, static_cast<int>(n)));
      const double trunc = std::trunc(c * std::ldexp(1.0, static_cast<int>(n + 1))) / std::ldexp(1.0, static_cast<int>(n + 1));
      EXPECT_DOUBLE_EQ(out.to_double(), trunc) << "n=" << n << " j=" << j;
    }
  }
}

TEST(EvcValue, Examples) {
  EXPECT_DOUBLE_EQ(evc_value(0, 2, 3).to_double(), 0.0);
  EXPECT_DOUBLE_EQ(evc_value(2, 2, 3).to_double(), 32.0);
  EXPECT_DOUBLE_EQ(evc_value(1, 2, 3).to_double(), 9.375);
  EXPECT_DOUBLE_EQ(evc_value(3, 2, 3).to_double(), 54.625);
  for (unsigned n = 1; n <= 4; ++n) {
    for (unsigned f = 0; f <= 6; ++f) {
      const double N = std::ldexp(1.0, static_cast<int>(n));
      for (std::uint64_t j = 0; j < (1ULL << n); ++j) {
        const double exact = 4 * N * N * std::pow(std::sin(static_cast<double>(j) * M_PI / (2 * N)), 2);
        const double got = evc_value(j, n, f).to_double();
        EXPECT_LT(std::abs(exact - got), std::ldexp(1.0, -static_cast<int>(f)) + 1e-9) << n << " " << f << " " << j;
      }
    }
  }
}

TEST(PlouffeArccot, Examples) {
  EXPECT_EQ(plouffe_arccot(FixedPoint::parse("01.00", false), 2).to_binary_string(), ".01");
  EXPECT_EQ(plouffe_arccot(FixedPoint::from_integer(1 << 20, 24, 0, false), 12).bits(), 0u);
  const auto eight = plouffe_arccot(FixedPoint::from_integer(8, 5, 0, false), 10);
  EXPECT_EQ(eight.bits(), arccot_oracle(8, 0, 10));
  EXPECT_EQ(eight.to_binary_string(), ".0000101000");
  EXPECT_THROW(plouffe_arccot(FixedPoint::from_integer(0, 4, 0, false), 4), DomainError);
  EXPECT_THROW(plouffe_arccot(FixedPoint::from_integer(-1, 4, 0, true), 4), DomainError);
}

TEST(PlouffeArccot, BitExactAgainstHighPrecision) {
  std::mt19937_64 rng(20261019);
  constexpr unsigned kFrac = 10;
  std::uniform_int_distribution<std::uint64_t> dist(1ULL << kFrac, 64ULL << kFrac);
  for (int trial = 0; trial < 512; ++trial) {
    const std::uint64_t num = dist(rng);
    const auto lambda = FixedPoint::from_bits(num, 17, kFrac, false);
    const auto w = plouffe_arccot(lambda, 16);
    ASSERT_EQ(w.bits(), arccot_oracle(num, kFrac, 16)) << "lambda payload " << num;
  }
}

TEST(PlouffeArccot, MoreBitsKeepPrefix) {
  for (std::uint64_t num : {3ULL, 8ULL, 37ULL, 75ULL, 437ULL}) {
    const auto lambda = FixedPoint::from_bits(num, 12, 3, false);
    std::uint64_t prev = plouffe_arccot(lambda, 1).bits();
    for (unsigned bits = 2; bits <= 20; ++bits) {
      const std::uint64_t cur = plouffe_arccot(lambda, bits).bits();
      EXPECT_EQ(cur >> 1, prev);
      prev = cur;
    }
  }
}

}  // namespace
}  // namespace qfps

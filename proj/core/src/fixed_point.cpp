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

#include <bit>
#include <cmath>
#include <limits>

#include "qfps/errors.hpp"

namespace qfps {
namespace {

std::uint64_t low_mask(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

void check_format(unsigned width, unsigned frac) {
  if (width == 0 || width > 64) throw DomainError("fixed-point width must be in [1, 64]");
  if (frac > width) throw DomainError("fixed-point fraction bits exceed width");
}

unsigned ceil_log2(unsigned v) {
  unsigned r = 0;
  while ((1U << r) < v) ++r;
  return r;
}

}  // namespace

FixedPoint FixedPoint::from_bits(std::uint64_t bits, unsigned width, unsigned frac, bool is_signed) {
  check_format(width, frac);
  if ((bits & ~low_mask(width)) != 0) throw DomainError("payload has bits above the declared width");
  return FixedPoint(bits, width, frac, is_signed);
}

FixedPoint FixedPoint::from_integer(std::int64_t payload, unsigned width, unsigned frac, bool is_signed) {
  check_format(width, frac);
  if (is_signed) {
    const std::int64_t lo = width == 64 ? std::numeric_limits<std::int64_t>::min() : -(std::int64_t{1} << (width - 1));
    const std::int64_t hi = width == 64 ? std::numeric_limits<std::int64_t>::max() : (std::int64_t{1} << (width - 1)) - 1;
    if (payload < lo || payload > hi) throw DomainError("signed payload out of range");
  } else {
    if (payload < 0) throw DomainError("unsigned payload is negative");
    if ((static_cast<std::uint64_t>(payload) & ~low_mask(width)) != 0) throw DomainError("unsigned payload out of range");
  }
  return FixedPoint(static_cast<std::uint64_t>(payload) & low_mask(width), width, frac, is_signed);
}

FixedPoint FixedPoint::from_double(double value, unsigned width, unsigned frac, bool is_signed) {
  check_format(width, frac);
  const double scaled = std::floor(std::ldexp(value, static_cast<int>(frac)));
  if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18) throw DomainError("value out of range");
  return from_integer(static_cast<std::int64_t>(scaled), width, frac, is_signed);
}

FixedPoint FixedPoint::parse(std::string_view text, bool is_signed) {
  std::uint64_t bits = 0;
  unsigned width = 0;
  unsigned frac = 0;
  bool seen_point = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw DomainError("binary literal has two radix points");
      seen_point = true;
      continue;
    }
    if (c != '0' && c != '1') throw DomainError("binary literal may contain only 0, 1 and '.'");
    if (width == 64) throw DomainError("binary literal wider than 64 bits");
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
    ++width;
    if (seen_point) ++frac;
  }
  if (width == 0) throw DomainError("empty binary literal");
  return from_bits(bits, width, frac, is_signed);
}

std::int64_t FixedPoint::payload() const {
  if (signed_ && width_ < 64 && bit(width_ - 1)) {
    return static_cast<std::int64_t>(bits_ | ~low_mask(width_));
  }
  return static_cast<std::int64_t>(bits_);
}

double FixedPoint::to_double() const {
  if (!signed_) return std::ldexp(static_cast<double>(bits_), -static_cast<int>(frac_));
  return std::ldexp(static_cast<double>(payload()), -static_cast<int>(frac_));
}

std::string FixedPoint::to_binary_string() const {
  std::string out;
  out.reserve(width_ + 1);
  for (unsigned i = width_; i-- > 0;) {
    if (i + 1 == frac_) out.push_back('.');
    out.push_back(bit(i) ? '1' : '0');
  }
  return out;
}

// ---------------------------------------------------------------------------

SqrtResult isqrt_digits(std::uint64_t x, unsigned input_width, unsigned shift) {
  if (input_width == 0) throw DomainError("square root input width must be positive");
  if ((x & ~low_mask(input_width)) != 0) throw DomainError("square root input exceeds its width");
  unsigned total = input_width + shift;
  total += total & 1U;
  if (total > 62) throw DomainError("square root operand wider than 62 bits");
  const std::uint64_t operand = x << shift;

  SqrtResult out;
  std::uint64_t rem = 0;
  std::uint64_t root = 0;
  for (unsigned pair = total / 2; pair-- > 0;) {
    rem = (rem << 2) | ((operand >> (2 * pair)) & 3U);
    const std::uint64_t trial = (root << 2) | 1U;
    if (rem >= trial) {
      rem -= trial;
      root = (root << 1) | 1U;
      out.digits.push_back(1);
    } else {
      root <<= 1;
      out.digits.push_back(0);
    }
  }
  out.root = root;
  out.remainder = rem;
  return out;
}

SqrtResult nr_sqrt(std::uint64_t x, unsigned m) {
  if (m == 0 || (m & 1U) != 0) throw DomainError("nr_sqrt width must be even and positive");
  if (m > 30) throw DomainError("nr_sqrt width limited to 30 bits");
  if ((x & ~low_mask(m)) != 0) throw DomainError("nr_sqrt input exceeds its width");
  return isqrt_digits(x, m, m);
}

FixedPoint sqrt_fixed(const FixedPoint& x) {
  if (x.is_signed() && x.payload() < 0) throw DomainError("square root of a negative value");
  const unsigned m = x.width();
  if ((m & 1U) != 0 || ((m - x.frac()) & 1U) != 0) {
    throw DomainError("sqrt_fixed needs an even width and an even number of integer bits");
  }
  // Digit recurrence on the integer, then the final right shift by half the
  // integer-bit count.
  const SqrtResult r = nr_sqrt(x.bits(), m);
  return FixedPoint::from_bits(r.root >> ((m - x.frac()) / 2), m, x.frac(), x.is_signed());
}

// ---------------------------------------------------------------------------

ReciprocalResult nr_reciprocal(std::uint64_t x, unsigned m) {
  if (m == 0 || m > 32) throw DomainError("nr_reciprocal width must be in [1, 32]");
  if (x == 0) throw DomainError("reciprocal of zero");
  if ((x & ~low_mask(m)) != 0) throw DomainError("nr_reciprocal input exceeds its width");

  ReciprocalResult out;
  const auto divisor = static_cast<std::int64_t>(x);
  std::int64_t rem = 1 - divisor;  // first operation is always a subtraction
  out.remainders.push_back(rem);
  std::uint64_t q = 0;
  for (unsigned k = 0; k <= m; ++k) {
    const int digit = rem >= 0 ? 1 : 0;
    out.digits.push_back(digit);
    q = (q << 1) | static_cast<std::uint64_t>(digit);
    if (k == m) break;
    rem = digit != 0 ? 2 * rem - divisor : 2 * rem + divisor;
    out.remainders.push_back(rem);
  }
  if (q > low_mask(m)) {
    out.saturated = true;
    q = low_mask(m);
  }
  out.quotient = q;
  return out;
}

std::uint64_t nr_divide_power_of_two(std::uint64_t x, unsigned exponent) {
  if (x == 0) throw DomainError("reciprocal of zero");
  if (exponent > 62 || x >= (std::uint64_t{1} << 61)) throw DomainError("nr_divide_power_of_two operands too wide");
  const auto divisor = static_cast<std::int64_t>(x);
  std::int64_t rem = 1 - divisor;
  std::uint64_t q = 0;
  for (unsigned k = 0; k <= exponent; ++k) {
    const bool digit = rem >= 0;
    q = (q << 1) | (digit ? 1U : 0U);
    if (k == exponent) break;
    rem = digit ? 2 * rem - divisor : 2 * rem + divisor;
  }
  return q;
}

// ---------------------------------------------------------------------------

unsigned cos_guard_frac(unsigned frac, unsigned steps) { return frac + 2 * ceil_log2(steps) + 4; }

FixedPoint plouffe_cos(std::uint64_t j, unsigned n, unsigned frac, CosTrace* trace) {
  if (n == 0 || n > 16) throw DomainError("cosine step count must be in [1, 16]");
  if (j >= (std::uint64_t{1} << n)) throw DomainError("cosine index j must be below 2^n");
  const unsigned guard = cos_guard_frac(frac, n);
  if (2 * guard + 2 > 62) throw DomainError("cosine precision too high for 64-bit recurrence");

  const std::int64_t one = std::int64_t{1} << guard;
  std::int64_t a = one;
  std::uint64_t root = 0;
  if (trace != nullptr) {
    trace->a.assign(1, a);
    trace->guard_frac = guard;
  }
  for (unsigned i = 0; i < n; ++i) {
    const bool v = ((j >> i) & 1U) != 0;
    // (1 +- a)/2 carries guard+1 fraction bits; sqrt of P * 2^(guard-1) lands
    // on guard fraction bits.
    const std::int64_t p = v ? one - a : one + a;
    root = isqrt_digits(static_cast<std::uint64_t>(p), guard + 2, guard - 1).root;
    a = v ? -static_cast<std::int64_t>(root) : static_cast<std::int64_t>(root);
    if (trace != nullptr) trace->a.push_back(a);
  }
  if (trace != nullptr) trace->last_root = root;
  const bool negative = ((j >> (n - 1)) & 1U) != 0;
  const auto magnitude = static_cast<std::int64_t>(root >> (guard - frac));
  return FixedPoint::from_integer(negative ? -magnitude : magnitude, frac + 2, frac, true);
}

unsigned evc_cos_frac(unsigned n, unsigned f) { return f + 2 * n + 1; }

FixedPoint evc_value(std::uint64_t j, unsigned n, unsigned f) {
  const unsigned cf = evc_cos_frac(n, f);
  const FixedPoint c = plouffe_cos(j, n, cf);
  const std::int64_t payload = (std::int64_t{1} << cf) - c.payload();
  return FixedPoint::from_integer(payload, 2 * n + 2 + f, f, false);
}

// ---------------------------------------------------------------------------

namespace {

// Runs the arccot digit recursion at `prec` bits of working precision.
std::uint64_t arccot_digits(std::uint64_t payload, unsigned frac, unsigned out_bits, mpfr_prec_t prec) {
  mpfr_t a, inv;
  mpfr_init2(a, prec);
  mpfr_init2(inv, prec);
  mpfr_set_ui(a, payload, MPFR_RNDN);
  mpfr_div_2ui(a, a, frac, MPFR_RNDN);
  bool neg_infinity = false;
  std::uint64_t bits = 0;
  for (unsigned i = 0; i < out_bits; ++i) {
    const bool zero_bit = neg_infinity || mpfr_sgn(a) > 0;
    bits = (bits << 1) | (zero_bit ? 0U : 1U);
    if (neg_infinity) continue;
    if (mpfr_zero_p(a)) {
      neg_infinity = true;
      continue;
    }
    mpfr_ui_div(inv, 1, a, MPFR_RNDN);
    mpfr_sub(a, a, inv, MPFR_RNDN);
    mpfr_div_2ui(a, a, 1, MPFR_RNDN);
  }
  mpfr_clear(a);
  mpfr_clear(inv);
  return bits;
}

}  // namespace

FixedPoint plouffe_arccot(const FixedPoint& lambda, unsigned out_bits) {
  if (out_bits == 0 || out_bits > 63) throw DomainError("arccot output bits must be in [1, 63]");
  const std::int64_t p = lambda.is_signed() ? lambda.payload() : static_cast<std::int64_t>(lambda.bits());
  if (p <= 0) throw DomainError("arccot argument must be positive");

  // The recursion is the cotangent angle-doubling map, so every step roughly
  // doubles the angle error. Exact rationals grow exponentially; instead run
  // in binary floating point and accept once two precisions agree.
  // The only exact zero reachable from a positive dyadic start is lambda = 1,
  // where both precisions hit 0 exactly.
  mpfr_prec_t prec = 2 * static_cast<mpfr_prec_t>(out_bits) + 128;
  std::uint64_t bits = arccot_digits(static_cast<std::uint64_t>(p), lambda.frac(), out_bits, prec);
  for (;;) {
    prec *= 2;
    const std::uint64_t again = arccot_digits(static_cast<std::uint64_t>(p), lambda.frac(), out_bits, prec);
    if (again == bits) break;
    if (prec > (1 << 16)) throw ResourceError("arccot digits did not stabilize");
    bits = again;
  }
  return FixedPoint::from_bits(bits, out_bits, out_bits, false);
}

}  // namespace qfps

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

#pragma once

// Bit-exact classical references for every function the reversible circuits
// compute. Circuit tests compare against these.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qfps {

/// Two's-complement (or unsigned) fixed-point number with explicit format.
///
/// The payload occupies the low `width` bits of `bits`; the represented value
/// is the (sign-extended) payload divided by 2^frac.
class FixedPoint {
 public:
  FixedPoint() = default;

  /// Wraps a raw payload. Bits above `width` must be zero.
  static FixedPoint from_bits(std::uint64_t bits, unsigned width, unsigned frac, bool is_signed);
  /// Encodes an integer payload (two's complement wrap for negative values when signed).
  static FixedPoint from_integer(std::int64_t payload, unsigned width, unsigned frac, bool is_signed);
  /// Truncating (toward -inf) encode of a real value; throws if out of range.
  static FixedPoint from_double(double value, unsigned width, unsigned frac, bool is_signed);
  /// Parses notation such as "01.01", ".01", "11.011" or "0111". Digits after
  /// the point are fraction bits.
  static FixedPoint parse(std::string_view text, bool is_signed);

  std::uint64_t bits() const { return bits_; }
  unsigned width() const { return width_; }
  unsigned frac() const { return frac_; }
  unsigned int_bits() const { return width_ - frac_; }
  bool is_signed() const { return signed_; }

  /// Sign-extended payload.
  std::int64_t payload() const;
  double to_double() const;
  bool bit(unsigned i) const { return ((bits_ >> i) & 1U) != 0; }

  /// Binary string with the radix point after the integer bits, e.g. "11.011".
  /// Zero integer bits render as ".01".
  std::string to_binary_string() const;

  friend bool operator==(const FixedPoint&, const FixedPoint&) = default;

 private:
  FixedPoint(std::uint64_t bits, unsigned width, unsigned frac, bool is_signed)
      : bits_(bits), width_(width), frac_(frac), signed_(is_signed) {}

  std::uint64_t bits_ = 0;
  unsigned width_ = 1;
  unsigned frac_ = 0;
  bool signed_ = false;
};

// ---------------------------------------------------------------------------
// Non-restoring square root.

struct SqrtResult {
  std::uint64_t root = 0;
  std::uint64_t remainder = 0;
  /// Root bits in the order the recurrence emits them (most significant first).
  std::vector<int> digits;
};

/// Digit-recurrence integer square root of X = x * 2^shift.
///
/// X is split into bit pairs from the top (padded to an even width); every step
/// subtracts (root << 2 | 1) from the running remainder and undoes the
/// subtraction when it goes negative. Returns floor(sqrt(X)) and X - root^2.
SqrtResult isqrt_digits(std::uint64_t x, unsigned input_width, unsigned shift);

/// Square root of an m-bit integer with the radix point ignored: root is
/// floor(sqrt(x * 2^m)), read with m/2 fraction bits it is sqrt(x) truncated.
SqrtResult nr_sqrt(std::uint64_t x, unsigned m);

/// Square root of a fixed-point value, same format in and out (the final right
/// shift of the digit recurrence). Requires width - frac even.
FixedPoint sqrt_fixed(const FixedPoint& x);

// ---------------------------------------------------------------------------
// Non-restoring reciprocal.

struct ReciprocalResult {
  /// floor(2^m / x) clamped to m bits: 1/x with m fraction bits.
  std::uint64_t quotient = 0;
  bool saturated = false;
  /// Quotient bits in emission order; the first is the units bit.
  std::vector<int> digits;
  /// Partial remainder after each add/subtract, in units of the divisor grid.
  std::vector<std::int64_t> remainders;
};

/// Non-restoring division of 1 by the m-bit integer x: the first operation is a
/// subtraction; thereafter the remainder is doubled and the divisor subtracted
/// when the remainder sign bit is 0, added when it is 1.
ReciprocalResult nr_reciprocal(std::uint64_t x, unsigned m);

/// floor(2^exponent / x) without clamping, by the same recurrence.
std::uint64_t nr_divide_power_of_two(std::uint64_t x, unsigned exponent);

// ---------------------------------------------------------------------------
// Digit-by-digit cosine.

/// Fraction bits carried internally by the cosine recurrence for an output
/// with `frac` fraction bits over `steps` recursion steps.
unsigned cos_guard_frac(unsigned frac, unsigned steps);

struct CosTrace {
  /// a_k payloads (k = 0..n) at the guard precision, two's complement values.
  std::vector<std::int64_t> a;
  unsigned guard_frac = 0;
  /// Magnitude root of the last step at guard precision.
  std::uint64_t last_root = 0;
};

/// cos(j*pi/2^n) with `frac` fraction bits and two integer bits (signed).
///
/// Runs a_0 = 1, a_{i+1} = +sqrt((1+a_i)/2) when bit i of j is 0 and
/// -sqrt((1-a_i)/2) when it is 1, consuming bits of j from the least
/// significant upward. Every square root is the digit recurrence at guard
/// precision; the final magnitude is truncated to `frac` bits and then signed.
FixedPoint plouffe_cos(std::uint64_t j, unsigned n, unsigned frac, CosTrace* trace = nullptr);

/// Fraction bits of the cosine feeding the eigenvalue register: f + 2n + 1.
unsigned evc_cos_frac(unsigned n, unsigned f);

/// Approximate eigenvalue 2N^2 (1 - cos(j pi / N)) in the register format with
/// 2n+2 integer bits and f fraction bits. Composes plouffe_cos; the factor 2N^2
/// is a radix move.
FixedPoint evc_value(std::uint64_t j, unsigned n, unsigned f);

// ---------------------------------------------------------------------------
// Digit-by-digit arc cotangent.

/// arccot(lambda)/pi truncated to `out_bits` fraction bits.
///
/// a_0 = lambda, a_{i+1} = (a_i - 1/a_i)/2, with a_i = 0 sending the recursion
/// to a sticky -infinity state. Bit w_i is 0 when a_i > 0 or the state is
/// -infinity, otherwise 1. The bits come from an equivalent recursion on the
/// angle evaluated with MPFR, raising the precision until two precisions agree,
/// so every emitted bit is exact.
FixedPoint plouffe_arccot(const FixedPoint& lambda, unsigned out_bits);

}  // namespace qfps

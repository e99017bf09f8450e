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

// Reversible circuits for square root, reciprocal, cosine / eigenvalue
// calculation and the arc-cotangent angle stage. Every builder returns its
// borrowed ancillas to |0> on all basis inputs of its domain.

#include <cstdint>
#include <span>
#include <string>

#include "qfps/circuit.hpp"

namespace qfps {

/// Stand-alone function circuit: input register, output register (initially
/// zero, receives the result) and the fixed-point reading of each.
struct FuncCircuit {
  Circuit circuit;
  Register input;
  Register output;
  unsigned input_frac = 0;
  unsigned output_frac = 0;
  bool output_signed = false;
  bool units_digit = false;  ///< render a pure fraction as "0.xxxx" rather than ".xxxx"
};

/// Output payload in the circuit's display notation, e.g. "11.011" or "0.0101".
std::string format_output(const FuncCircuit& f, std::uint64_t payload);

// ---------------------------------------------------------------------------
// Append forms: operate on qubits of an existing circuit.

/// out ^= floor(sqrt(x * 2^shift)). `out` needs ceil((|x| + shift) / 2) bits.
///
/// Restoring digit recurrence on a remainder register R of width W+1 (W is
/// |x| + shift rounded up to even, the top bit is the sign). For digit i from
/// the top: subtract the trial value (1 at bit 2i, earlier digits q_j at bits
/// j+i+1), copy the inverted sign into q_i, and add the trial back when q_i = 0.
/// A second pass adds every trial with q_i = 1, which rebuilds the shifted x,
/// and the copy of x is removed.
void append_sqrt(Circuit& c, std::span<const Qubit> x, unsigned shift, std::span<const Qubit> out);

/// out ^= min(floor(2^exponent / x), 2^|out| - 1). Undefined but clean for x = 0.
///
/// Non-restoring division: R starts at 2^exponent, R -= x * 2^exponent, then for
/// each quotient bit q_p = not sign(R) and R -= x * 2^(p-1) when q_p = 1 or
/// R += x * 2^(p-1) when q_p = 0. The quotient is copied out with saturation
/// and the division is uncomputed.
void append_recip(Circuit& c, std::span<const Qubit> x, unsigned exponent, std::span<const Qubit> out);

/// E += 2N^2 (1 - cos(j pi / N)) with |E| = 2n + 2 + f bits and f fraction bits.
void append_evc(Circuit& c, std::span<const Qubit> j, std::span<const Qubit> e, unsigned f);

/// out ^= cos(j pi / 2^n) as a signed value with `frac` fraction bits (|out| = frac + 2).
void append_cos(Circuit& c, std::span<const Qubit> j, std::span<const Qubit> out, unsigned frac);

struct AngleFormat {
  unsigned in_frac = 0;   ///< fraction bits of the input register
  unsigned out_bits = 0;  ///< fraction bits of omega
  unsigned shift = 0;     ///< input is multiplied by 2^shift before the recursion
  unsigned guard = 4;     ///< extra fraction bits of the recursion registers
};

/// omega ^= arccot(lambda * 2^shift) / pi truncated to |omega| fraction bits.
/// Bit w_i (weight 2^-(i+1)) lands on omega[|omega| - 1 - i].
void append_angle(Circuit& c, std::span<const Qubit> lambda, std::span<const Qubit> omega, const AngleFormat& fmt);

// ---------------------------------------------------------------------------
// Stand-alone builders.

/// x (m bits) -> floor(sqrt(x * 2^m)) in m bits read with m/2 fraction bits.
FuncCircuit build_sqrt(unsigned m);

/// x (m bits) -> floor(2^m / x) saturated to m bits, read with m fraction bits.
FuncCircuit build_recip(unsigned m);

/// j (n bits) -> eigenvalue estimate in an m-bit register with 2n+2 integer bits.
FuncCircuit build_evc(unsigned n, unsigned m);

/// j (n bits) -> cos(j pi / 2^n), signed, `frac` fraction bits (two integer bits).
FuncCircuit build_cos(unsigned n, unsigned frac);

/// lambda (in_width bits, fmt.in_frac fraction bits) -> omega (fmt.out_bits bits).
FuncCircuit build_angle(unsigned in_width, const AngleFormat& fmt);

/// Fraction bits used by the cosine chain inside the eigenvalue circuit.
unsigned evc_guard_frac(unsigned n, unsigned f);

}  // namespace qfps

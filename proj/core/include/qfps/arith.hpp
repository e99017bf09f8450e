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

// Ripple-carry adder family (CARRY/SUM layout) and small helpers built on it.
//
// Adder layout for operands a, b of width w with carries c_1..c_{w-1}
// (c_0 is the constant 0 and is never materialized):
//
//   CARRY(c, a, b, d) = CCX(a, b -> d); CX(a -> b); CCX(c, b -> d)
//   SUM(c, a, b)      = CX(a -> b); CX(c -> b)
//
//   for i in 0..w-2:    CARRY(c_i, a_i, b_i, c_{i+1})
//   full:               CARRY(c_{w-1}, a_{w-1}, b_{w-1}, b_w); CX(a_{w-1} -> b_{w-1})
//   both:               SUM(c_{w-1}, a_{w-1}, b_{w-1})
//   for i in w-2..0:    CARRY^-1(c_i, a_i, b_i, c_{i+1}); SUM(c_i, a_i, b_i)
//
// The full variant XORs the carry into b_w, so (b_w b) is updated as a (w+1)-bit
// number mod 2^{w+1}. Controls are attached to every SUM gate and to the two
// Toffolis writing b_w; CARRY/CARRY^-1 pairs cancel on their own. Subtraction is
// the same gate list emitted in reverse.
//
// Addend bits may be absent (known zero); gates that use an absent bit as a
// control are dropped and gates targeting nothing else are unchanged.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qfps/circuit.hpp"

namespace qfps {

/// Addend bit: a qubit, or absent (constant 0).
using MaybeQubit = std::optional<Qubit>;

enum class AdderKind : std::uint8_t { Full, Modular };

/// Appends b += a (or b -= a when `subtract`) to `c`.
///
/// `a` may be shorter than `b` (missing high bits are zero). `top` is the
/// carry-out qubit b_w for the full variant and must be empty for modular.
/// Carry ancillas are borrowed from the circuit's pool and returned clean.
void append_adder(Circuit& c, std::span<const MaybeQubit> a, std::span<const Qubit> b, MaybeQubit top,
                  std::span<const Control> controls, bool subtract);

/// Same, with every addend bit present.
void append_adder(Circuit& c, std::span<const Qubit> a, std::span<const Qubit> b, MaybeQubit top,
                  std::span<const Control> controls, bool subtract);

/// b += constant (or -= when `subtract`) by loading the constant's set bits
/// into scratch qubits under `controls`, adding, and unloading.
void append_constant_adder(Circuit& c, std::uint64_t constant, std::span<const Qubit> b, MaybeQubit top,
                           std::span<const Control> controls, bool subtract);

/// b += 1 mod 2^|b| by a cascade of multi-controlled X gates (no ancillas).
void append_increment(Circuit& c, std::span<const Qubit> b, std::span<const Control> controls);

/// Two's-complement negation in place: X on every bit, then +1 (all under controls).
void append_negate(Circuit& c, std::span<const Qubit> b, std::span<const Control> controls);

/// dst ^= src bitwise (CNOT fan), under controls.
void append_copy(Circuit& c, std::span<const Qubit> src, std::span<const Qubit> dst,
                 std::span<const Control> controls = {});

/// target ^= table[value(key)] with one multi-controlled X per set output bit
/// (all key bits as controls, polarity from the key value). `table` has
/// 2^|key| entries; entries may be left zero.
void append_lookup(Circuit& c, std::span<const Qubit> key, std::span<const Qubit> target,
                   std::span<const std::uint64_t> table);

/// Circuit-level adder description.
struct AdderSpec {
  unsigned width = 0;
  AdderKind kind = AdderKind::Modular;
  bool reversed = false;    ///< subtractor
  bool controlled = false;  ///< one extra control qubit
};

/// Stand-alone adder with registers "a" (width), "b" (width, +1 for full) and
/// optionally "ctrl"; carry ancillas follow.
struct AdderCircuit {
  Circuit circuit;
  Register a;
  Register b;
  std::optional<Register> control;
};

AdderCircuit build_adder(const AdderSpec& spec);

/// Stand-alone constant adder on register "b" with `num_controls` positive
/// controls in register "ctrl".
struct ConstantAdderCircuit {
  Circuit circuit;
  Register b;
  std::optional<Register> control;
};

ConstantAdderCircuit build_constant_adder(std::uint64_t constant, unsigned width, unsigned num_controls);

}  // namespace qfps

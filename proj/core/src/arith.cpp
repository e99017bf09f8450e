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

#include "qfps/arith.hpp"

#include <algorithm>
#include <bit>

#include "qfps/errors.hpp"

namespace qfps {
namespace {

// Collects X gates for one adder so the list can be emitted forward or reversed.
struct XGate {
  Qubit target;
  MaybeQubit c1;
  MaybeQubit c2;
  bool controlled;  // also gated on the caller's controls
};

void emit(Circuit& c, const XGate& g, std::span<const Control> controls, std::vector<Control>& scratch) {
  scratch.clear();
  if (g.c1) scratch.push_back(pos(*g.c1));
  if (g.c2) scratch.push_back(pos(*g.c2));
  if (g.controlled) scratch.insert(scratch.end(), controls.begin(), controls.end());
  c.x(g.target, std::span<const Control>(scratch));
}

}  // namespace

void append_adder(Circuit& c, std::span<const MaybeQubit> a_in, std::span<const Qubit> b, MaybeQubit top,
                  std::span<const Control> controls, bool subtract) {
  const std::size_t w = b.size();
  if (w == 0) throw DomainError("adder width must be at least 1");
  if (a_in.size() > w) throw DomainError("addend wider than target");
  std::vector<MaybeQubit> a(a_in.begin(), a_in.end());
  a.resize(w);
  if (std::none_of(a.begin(), a.end(), [](const MaybeQubit& q) { return q.has_value(); })) return;

  const std::vector<Qubit> carry_q = c.borrow(static_cast<unsigned>(w - 1));
  auto carry = [&](std::size_t i) -> MaybeQubit {
    if (i == 0) return std::nullopt;
    return carry_q[i - 1];
  };

  std::vector<XGate> gates;
  auto push = [&](Qubit t, MaybeQubit c1, MaybeQubit c2, bool ctl) {
    gates.push_back({t, c1, c2, ctl});
  };
  auto has = [](const MaybeQubit& q) { return q.has_value(); };
  auto carry_unit = [&](MaybeQubit ci, MaybeQubit ai, Qubit bi, Qubit d, bool ctl) {
    if (has(ai)) push(d, ai, bi, ctl);
    if (has(ai)) push(bi, ai, std::nullopt, false);
    if (has(ci)) push(d, ci, bi, ctl);
  };
  auto carry_inverse = [&](MaybeQubit ci, MaybeQubit ai, Qubit bi, Qubit d) {
    if (has(ci)) push(d, ci, bi, false);
    if (has(ai)) push(bi, ai, std::nullopt, false);
    if (has(ai)) push(d, ai, bi, false);
  };
  auto sum_unit = [&](MaybeQubit ci, MaybeQubit ai, Qubit bi) {
    if (has(ai)) push(bi, ai, std::nullopt, true);
    if (has(ci)) push(bi, ci, std::nullopt, true);
  };

  for (std::size_t i = 0; i + 1 < w; ++i) carry_unit(carry(i), a[i], b[i], carry_q[i], false);
  if (top) {
    carry_unit(carry(w - 1), a[w - 1], b[w - 1], *top, true);
    if (has(a[w - 1])) push(b[w - 1], a[w - 1], std::nullopt, false);
  }
  sum_unit(carry(w - 1), a[w - 1], b[w - 1]);
  for (std::size_t i = w - 1; i-- > 0;) {
    carry_inverse(carry(i), a[i], b[i], carry_q[i]);
    sum_unit(carry(i), a[i], b[i]);
  }

  std::vector<Control> scratch;
  scratch.reserve(controls.size() + 2);
  if (subtract) {
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) emit(c, *it, controls, scratch);
  } else {
    for (const auto& g : gates) emit(c, g, controls, scratch);
  }
  c.release(carry_q);
}

void append_adder(Circuit& c, std::span<const Qubit> a, std::span<const Qubit> b, MaybeQubit top,
                  std::span<const Control> controls, bool subtract) {
  std::vector<MaybeQubit> am(a.begin(), a.end());
  append_adder(c, am, b, top, controls, subtract);
}

void append_constant_adder(Circuit& c, std::uint64_t constant, std::span<const Qubit> b, MaybeQubit top,
                           std::span<const Control> controls, bool subtract) {
  const std::size_t w = b.size();
  if (w == 0) throw DomainError("adder width must be at least 1");
  if (w < 64 && (constant >> w) != 0) throw DomainError("constant does not fit the target width");
  if (constant == 0) return;
  const unsigned ones = static_cast<unsigned>(std::popcount(constant));
  const std::vector<Qubit> scratch = c.borrow(ones);
  std::vector<MaybeQubit> a(w);
  std::size_t k = 0;
  for (std::size_t i = 0; i < w; ++i) {
    if ((constant >> i) & 1U) a[i] = scratch[k++];
  }
  for (Qubit q : scratch) c.x(q, controls);
  append_adder(c, a, b, top, {}, subtract);
  for (Qubit q : scratch) c.x(q, controls);
  c.release(scratch);
}

void append_increment(Circuit& c, std::span<const Qubit> b, std::span<const Control> controls) {
  std::vector<Control> ctl;
  for (std::size_t i = b.size(); i-- > 0;) {
    ctl.assign(controls.begin(), controls.end());
    for (std::size_t j = 0; j < i; ++j) ctl.push_back(pos(b[j]));
    c.x(b[i], std::span<const Control>(ctl));
  }
}

void append_negate(Circuit& c, std::span<const Qubit> b, std::span<const Control> controls) {
  for (Qubit q : b) c.x(q, controls);
  append_increment(c, b, controls);
}

void append_copy(Circuit& c, std::span<const Qubit> src, std::span<const Qubit> dst,
                 std::span<const Control> controls) {
  if (src.size() > dst.size()) throw DomainError("copy destination narrower than source");
  std::vector<Control> ctl;
  for (std::size_t i = 0; i < src.size(); ++i) {
    ctl.assign(controls.begin(), controls.end());
    ctl.push_back(pos(src[i]));
    c.x(dst[i], std::span<const Control>(ctl));
  }
}

void append_lookup(Circuit& c, std::span<const Qubit> key, std::span<const Qubit> target,
                   std::span<const std::uint64_t> table) {
  if (key.size() >= 32 || table.size() != (std::size_t{1} << key.size())) {
    throw DomainError("lookup table must have 2^|key| entries");
  }
  std::vector<Control> ctl(key.size());
  for (std::size_t v = 0; v < table.size(); ++v) {
    if (target.size() < 64 && (table[v] >> target.size()) != 0) throw DomainError("lookup entry wider than target");
    for (std::size_t b = 0; b < key.size(); ++b) ctl[b] = {key[b], ((v >> b) & 1U) != 0};
    for (std::size_t b = 0; b < target.size(); ++b) {
      if ((table[v] >> b) & 1U) c.x(target[b], std::span<const Control>(ctl));
    }
  }
}

AdderCircuit build_adder(const AdderSpec& spec) {
  if (spec.width == 0) throw DomainError("adder width must be at least 1");
  AdderCircuit out;
  const bool full = spec.kind == AdderKind::Full;
  out.a = out.circuit.add_register("a", spec.width);
  out.b = out.circuit.add_register("b", spec.width + (full ? 1 : 0));
  std::vector<Control> controls;
  if (spec.controlled) {
    out.control = out.circuit.add_register("ctrl", 1);
    controls.push_back(pos((*out.control)[0]));
  }
  const auto a = out.a.qubits();
  auto b = out.b.qubits();
  MaybeQubit top;
  if (full) {
    top = b.back();
    b.pop_back();
  }
  LabelScope label(out.circuit, spec.reversed ? "subtractor" : "adder");
  append_adder(out.circuit, a, b, top, controls, spec.reversed);
  return out;
}

ConstantAdderCircuit build_constant_adder(std::uint64_t constant, unsigned width, unsigned num_controls) {
  if (width == 0) throw DomainError("adder width must be at least 1");
  if (width < 64 && (constant >> width) != 0) throw DomainError("constant does not fit the target width");
  ConstantAdderCircuit out;
  out.b = out.circuit.add_register("b", width);
  std::vector<Control> controls;
  if (num_controls > 0) {
    out.control = out.circuit.add_register("ctrl", num_controls);
    for (unsigned i = 0; i < num_controls; ++i) controls.push_back(pos((*out.control)[i]));
  }
  LabelScope label(out.circuit, "constant_adder");
  append_constant_adder(out.circuit, constant, out.b.qubits(), std::nullopt, controls, false);
  return out;
}

}  // namespace qfps

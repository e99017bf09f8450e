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

#include <algorithm>
#include <optional>
#include <vector>

#include "qfps/arith.hpp"
#include "qfps/errors.hpp"
#include "qfps/fixed_point.hpp"

namespace qfps {
namespace {

using Span = std::span<const Qubit>;

Span sub(const std::vector<Qubit>& v, std::size_t begin, std::size_t count) {
  return Span(v).subspan(begin, count);
}

// Conditional two's-complement negation: X on every bit, then the constant
// adder with seed |0...0>|1>.
void negate_if(Circuit& c, Span b, Control ctl) {
  const Control cs[] = {ctl};
  for (Qubit q : b) c.x(q, std::span<const Control>(cs));
  append_constant_adder(c, 1, b, std::nullopt, cs, false);
}

// COS chain: a_0 = 1 then n COS modules. Registers hold signed values with
// `guard` fraction bits and two integer bits; the last one holds the magnitude
// of the final root. Everything emitted here is meant to be uncomputed by the
// caller with append_inverse_of_range.
struct CosChain {
  std::vector<std::vector<Qubit>> regs;
  Span root() const { return Span(regs.back()); }
};

CosChain append_cos_chain(Circuit& c, Span j, unsigned guard) {
  const unsigned n = static_cast<unsigned>(j.size());
  const unsigned w = guard + 2;
  CosChain chain;
  chain.regs.push_back(c.borrow(w));
  c.x(chain.regs[0][guard]);
  for (unsigned i = 0; i < n; ++i) {
    LabelScope label(c, "cos_module");
    const std::vector<Qubit>& cur = chain.regs.back();
    std::vector<Qubit> next = c.borrow(w);
    const std::vector<Qubit> t = c.borrow(w);
    const std::size_t tb = c.size();
    // T = 1 + a_i when v_i = 0, 1 - a_i when v_i = 1.
    append_constant_adder(c, std::uint64_t{1} << guard, t, std::nullopt, {}, false);
    const Control off[] = {neg(j[i])};
    const Control on[] = {pos(j[i])};
    append_adder(c, Span(cur), t, std::nullopt, off, false);
    append_adder(c, Span(cur), t, std::nullopt, on, true);
    const std::size_t te = c.size();
    // sqrt(T / 2) at guard precision: floor(sqrt(T * 2^(guard-1))).
    append_sqrt(c, t, guard - 1, sub(next, 0, guard + 1));
    c.append_inverse_of_range(tb, te);
    c.release(t);
    if (i + 1 < n) negate_if(c, next, pos(j[i]));
    chain.regs.push_back(std::move(next));
  }
  return chain;
}

void release_all(Circuit& c, const std::vector<std::vector<Qubit>>& regs) {
  for (const auto& r : regs) c.release(r);
}

}  // namespace

void append_sqrt(Circuit& c, Span x, unsigned shift, Span out) {
  if (x.empty()) throw DomainError("square root input must be non-empty");
  unsigned w = static_cast<unsigned>(x.size()) + shift;
  w += w & 1U;
  const unsigned k = w / 2;
  if (out.size() < k) throw DomainError("square root output register too narrow");
  LabelScope label(c, "sqrt");
  const std::vector<Qubit> r = c.borrow(w + 1);
  const Qubit one = c.borrow(1)[0];
  const Qubit sign = r[w];
  c.x(one);
  append_copy(c, x, sub(r, shift, x.size()));

  std::vector<MaybeQubit> trial;
  auto make_trial = [&](unsigned i) {
    trial.assign(w - 2 * i, std::nullopt);
    trial[0] = one;
    for (unsigned jd = i + 1; jd < k; ++jd) trial[jd - i + 1] = out[jd];
  };
  for (unsigned i = k; i-- > 0;) {
    make_trial(i);
    append_adder(c, trial, sub(r, 2 * i, w - 2 * i), sign, {}, true);
    c.cx(sign, out[i]);
    c.x(out[i]);
    const Control restore[] = {neg(out[i])};
    append_adder(c, trial, sub(r, 2 * i, w - 2 * i), sign, restore, false);
  }
  // Remainder uncompute: R + sum of accepted trials = x * 2^shift.
  for (unsigned i = 0; i < k; ++i) {
    make_trial(i);
    const Control accepted[] = {pos(out[i])};
    append_adder(c, trial, sub(r, 2 * i, w - 2 * i), sign, accepted, false);
  }
  append_copy(c, x, sub(r, shift, x.size()));
  c.x(one);
  c.release(std::vector<Qubit>{one});
  c.release(r);
}

void append_recip(Circuit& c, Span x, unsigned exponent, Span out) {
  if (x.empty() || out.empty()) throw DomainError("reciprocal registers must be non-empty");
  const unsigned w = static_cast<unsigned>(x.size());
  const unsigned d = exponent;
  LabelScope label(c, "recip");
  const std::vector<Qubit> r = c.borrow(w + d + 1);
  const std::vector<Qubit> q = c.borrow(d + 1);
  const Qubit sign = r[w + d];

  const std::size_t begin = c.size();
  c.begin_label("recip_modules");
  c.x(r[d]);
  append_adder(c, x, sub(r, d, w), sign, {}, true);
  for (unsigned p = d + 1; p-- > 0;) {
    c.cx(sign, q[p]);
    c.x(q[p]);
    if (p == 0) break;
    const Control on[] = {pos(q[p])};
    const Control off[] = {neg(q[p])};
    append_adder(c, x, sub(r, p - 1, w + d - p + 1), sign, on, true);
    append_adder(c, x, sub(r, p - 1, w + d - p + 1), sign, off, false);
  }
  c.end_label();
  const std::size_t mid = c.size();

  // Saturating copy: out_b ^= q_b OR overflow.
  const std::size_t ow = out.size();
  if (d + 1 <= ow) {
    append_copy(c, Span(q), out.first(d + 1));
  } else {
    const Qubit flag = c.borrow(1)[0];
    std::vector<Control> high;
    for (std::size_t p = ow; p <= d; ++p) high.push_back(neg(q[p]));
    c.x(flag);
    c.x(flag, std::span<const Control>(high));
    for (std::size_t b = 0; b < ow; ++b) {
      c.cx(q[b], out[b]);
      c.cx(flag, out[b]);
      c.ccx(q[b], flag, out[b]);
    }
    c.x(flag, std::span<const Control>(high));
    c.x(flag);
    c.release(std::vector<Qubit>{flag});
  }

  c.begin_label("inv_modules");
  c.append_inverse_of_range(begin, mid);
  c.end_label();
  c.release(q);
  c.release(r);
}

unsigned evc_guard_frac(unsigned n, unsigned f) { return cos_guard_frac(evc_cos_frac(n, f), n); }

void append_evc(Circuit& c, Span j, Span e, unsigned f) {
  const unsigned n = static_cast<unsigned>(j.size());
  if (n == 0) throw DomainError("eigenvalue input width must be positive");
  if (e.size() != 2 * n + 2 + f) throw DomainError("eigenvalue register must have 2n+2+f bits");
  const unsigned fc = evc_cos_frac(n, f);
  const unsigned guard = evc_guard_frac(n, f);
  LabelScope label(c, "evc");
  const std::size_t begin = c.size();
  const CosChain chain = append_cos_chain(c, j, guard);
  const std::size_t mid = c.size();

  // E = 2^fc -/+ |cos| depending on the sign of the last step.
  const Span root_hi = chain.root().subspan(guard - fc, fc + 1);
  append_constant_adder(c, std::uint64_t{1} << fc, e, std::nullopt, {}, false);
  const Control pos_cos[] = {neg(j[n - 1])};
  const Control neg_cos[] = {pos(j[n - 1])};
  append_adder(c, root_hi, e, std::nullopt, pos_cos, true);
  append_adder(c, root_hi, e, std::nullopt, neg_cos, false);

  c.append_inverse_of_range(begin, mid);
  release_all(c, chain.regs);
}

void append_cos(Circuit& c, Span j, Span out, unsigned frac) {
  const unsigned n = static_cast<unsigned>(j.size());
  if (n == 0) throw DomainError("cosine input width must be positive");
  if (out.size() != frac + 2) throw DomainError("cosine output must have frac+2 bits");
  const unsigned guard = cos_guard_frac(frac, n);
  LabelScope label(c, "cos");
  const std::size_t begin = c.size();
  const CosChain chain = append_cos_chain(c, j, guard);
  const std::size_t mid = c.size();
  append_copy(c, chain.root().subspan(guard - frac, frac + 1), out.first(frac + 1));
  negate_if(c, out, pos(j[n - 1]));
  c.append_inverse_of_range(begin, mid);
  release_all(c, chain.regs);
}

void append_angle(Circuit& c, Span lambda, Span omega, const AngleFormat& fmt) {
  const unsigned in_w = static_cast<unsigned>(lambda.size());
  const unsigned ob = static_cast<unsigned>(omega.size());
  if (in_w == 0 || ob == 0) throw DomainError("angle registers must be non-empty");
  if (fmt.in_frac > in_w) throw DomainError("input fraction bits exceed input width");
  const unsigned fa = std::max(ob + fmt.guard, fmt.in_frac);
  const unsigned in_int = in_w - fmt.in_frac;
  const unsigned int_bits = std::max(in_int + fmt.shift, fa) + 2;
  const unsigned wa = 1 + int_bits + fa;
  const unsigned offset = fa - fmt.in_frac + fmt.shift;

  LabelScope label(c, "angle");
  const std::size_t begin = c.size();
  std::vector<std::vector<Qubit>> a;
  std::vector<Qubit> z;
  std::vector<Qubit> s_flag;  // s_flag[i-1] is the sentinel of step i (step 0 has none)
  a.push_back(c.borrow(wa));
  append_copy(c, lambda, sub(a[0], offset, in_w));

  for (unsigned i = 0; i < ob; ++i) {
    LabelScope module(c, "arccot_module");
    const std::vector<Qubit>& cur = a[i];
    // Zero test.
    z.push_back(c.borrow(1)[0]);
    {
      std::vector<Control> all_zero;
      for (Qubit q : cur) all_zero.push_back(neg(q));
      c.x(z[i], std::span<const Control>(all_zero));
    }
    // Sentinel: S_i = S_{i-1} OR z_{i-1}.
    if (i > 0) {
      s_flag.push_back(c.borrow(1)[0]);
      const Qubit s_new = s_flag.back();
      if (i > 1) {
        const Qubit s_old = s_flag[i - 2];
        c.cx(s_old, s_new);
        c.x(s_new, {neg(s_old), pos(z[i - 1])});
      } else {
        c.cx(z[i - 1], s_new);
      }
    }
    if (i + 1 == ob) break;

    // a_{i+1} = (a_i - 1/a_i) / 2.
    std::vector<Qubit> next = c.borrow(wa);
    const std::size_t mb = c.size();
    const Qubit s = c.borrow(1)[0];
    const std::vector<Qubit> recip = c.borrow(wa - 1);
    const std::vector<Qubit> temp = c.borrow(wa + 1);
    c.cx(cur[wa - 1], s);
    negate_if(c, cur, pos(s));
    append_recip(c, sub(cur, 0, wa - 1), 2 * fa, recip);
    negate_if(c, cur, pos(s));
    append_copy(c, Span(cur), sub(temp, 0, wa));
    c.cx(cur[wa - 1], temp[wa]);
    const Control positive[] = {neg(s)};
    const Control negative[] = {pos(s)};
    append_adder(c, Span(recip), temp, std::nullopt, positive, true);
    append_adder(c, Span(recip), temp, std::nullopt, negative, false);
    const std::size_t me = c.size();
    append_copy(c, sub(temp, 1, wa), next);
    c.append_inverse_of_range(mb, me);
    c.release(temp);
    c.release(recip);
    c.release(std::vector<Qubit>{s});
    a.push_back(std::move(next));
  }
  const std::size_t mid = c.size();

  // w_i = 1 when not in the sentinel state and a_i <= 0.
  for (unsigned i = 0; i < ob; ++i) {
    const Qubit target = omega[ob - 1 - i];
    const Qubit sign = a[i][wa - 1];
    if (i == 0) {
      c.cx(sign, target);
      c.cx(z[0], target);
    } else {
      const Qubit s_i = s_flag[i - 1];
      c.x(target, {neg(s_i), pos(sign)});
      c.x(target, {neg(s_i), pos(z[i])});
    }
  }

  c.append_inverse_of_range(begin, mid);
  c.release(z);
  c.release(s_flag);
  release_all(c, a);
}

// ---------------------------------------------------------------------------

FuncCircuit build_sqrt(unsigned m) {
  if (m == 0 || (m & 1U) != 0) throw DomainError("square root width must be even and positive");
  FuncCircuit f;
  f.input = f.circuit.add_register("x", m);
  f.output = f.circuit.add_register("root", m);
  f.input_frac = 0;
  f.output_frac = m / 2;
  append_sqrt(f.circuit, f.input.qubits(), m, f.output.qubits());
  return f;
}

std::string format_output(const FuncCircuit& f, std::uint64_t payload) {
  const std::string s = FixedPoint::from_bits(payload, f.output.width, f.output_frac, f.output_signed).to_binary_string();
  return f.units_digit && f.output_frac == f.output.width ? "0" + s : s;
}

FuncCircuit build_recip(unsigned m) {
  if (m < 3) throw DomainError("reciprocal width must be at least 3");
  FuncCircuit f;
  f.input = f.circuit.add_register("x", m);
  f.output = f.circuit.add_register("q", m);
  f.output_frac = m;
  f.units_digit = true;
  append_recip(f.circuit, f.input.qubits(), m, f.output.qubits());
  return f;
}

FuncCircuit build_evc(unsigned n, unsigned m) {
  if (n == 0) throw DomainError("eigenvalue input width must be positive");
  if (m < 2 * n + 2) throw DomainError("eigenvalue register narrower than 2n+2 bits cannot hold 4N^2");
  const unsigned f = m - 2 * n - 2;
  FuncCircuit fc;
  fc.input = fc.circuit.add_register("j", n);
  fc.output = fc.circuit.add_register("E", m);
  fc.output_frac = f;
  append_evc(fc.circuit, fc.input.qubits(), fc.output.qubits(), f);
  return fc;
}

FuncCircuit build_cos(unsigned n, unsigned frac) {
  if (n == 0) throw DomainError("cosine input width must be positive");
  FuncCircuit f;
  f.input = f.circuit.add_register("j", n);
  f.output = f.circuit.add_register("cos", frac + 2);
  f.output_frac = frac;
  f.output_signed = true;
  append_cos(f.circuit, f.input.qubits(), f.output.qubits(), frac);
  return f;
}

FuncCircuit build_angle(unsigned in_width, const AngleFormat& fmt) {
  if (fmt.out_bits < 1) throw DomainError("angle output needs at least one bit");
  FuncCircuit f;
  f.input = f.circuit.add_register("lambda", in_width);
  f.output = f.circuit.add_register("omega", fmt.out_bits);
  f.input_frac = fmt.in_frac;
  f.output_frac = fmt.out_bits;
  append_angle(f.circuit, f.input.qubits(), f.output.qubits(), fmt);
  return f;
}

}  // namespace qfps

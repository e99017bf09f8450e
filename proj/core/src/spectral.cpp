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

#include "qfps/spectral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qfps/arith.hpp"
#include "qfps/errors.hpp"
#include "qfps/fixed_point.hpp"
#include "qfps/func_circuits.hpp"

namespace qfps {

void append_qft(Circuit& c, std::span<const Qubit> q) {
  const std::size_t w = q.size();
  LabelScope label(c, "qft");
  for (std::size_t j = w; j-- > 0;) {
    c.h(q[j]);
    for (std::size_t k = j; k-- > 0;) {
      c.phase(q[j], std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k)), {pos(q[k])});
    }
  }
  for (std::size_t i = 0; i < w / 2; ++i) c.swap(q[i], q[w - 1 - i]);
}

void append_inverse_qft(Circuit& c, std::span<const Qubit> q) {
  const std::size_t w = q.size();
  LabelScope label(c, "inverse_qft");
  for (std::size_t i = 0; i < w / 2; ++i) c.swap(q[i], q[w - 1 - i]);
  for (std::size_t j = 0; j < w; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      c.phase(q[j], -std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - k)), {pos(q[k])});
    }
    c.h(q[j]);
  }
}

Circuit build_qft(unsigned width) {
  if (width == 0) throw DomainError("QFT width must be positive");
  Circuit c;
  const auto q = c.add_register("q", width);
  append_qft(c, q.qubits());
  return c;
}

Circuit build_inverse_qft(unsigned width) {
  if (width == 0) throw DomainError("QFT width must be positive");
  Circuit c;
  const auto q = c.add_register("q", width);
  append_inverse_qft(c, q.qubits());
  return c;
}

void append_tn(Circuit& c, std::span<const Qubit> b, Qubit a) {
  LabelScope label(c, "tn");
  c.h(a);
  const Control on[] = {pos(a)};
  for (Qubit q : b) c.x(q, on);
  append_increment(c, b, on);
}

void append_sine_transform(Circuit& c, std::span<const Qubit> b, Qubit a) {
  LabelScope label(c, "sine_transform");
  std::vector<Qubit> wide(b.begin(), b.end());
  wide.push_back(a);
  const std::size_t tb = c.size();
  append_tn(c, b, a);
  const std::size_t te = c.size();
  append_inverse_qft(c, wide);
  c.append_inverse_of_range(tb, te);
  c.phase(a, std::numbers::pi / 2);
}

SpectralOp build_tn(unsigned n) {
  if (n == 0) throw DomainError("T_N needs n >= 1");
  SpectralOp op;
  op.b = op.circuit.add_register("b", n);
  op.a = op.circuit.add_register("a", 1);
  append_tn(op.circuit, op.b.qubits(), op.a[0]);
  return op;
}

SpectralOp build_sine_transform(unsigned n) {
  if (n == 0) throw DomainError("sine transform needs n >= 1");
  SpectralOp op;
  op.b = op.circuit.add_register("b", n);
  op.a = op.circuit.add_register("a", 1);
  append_sine_transform(op.circuit, op.b.qubits(), op.a[0]);
  return op;
}

void append_phase_kickback(Circuit& c, std::span<const Qubit> lambda, Qubit control, unsigned l,
                           KickbackMode mode) {
  const std::size_t m = lambda.size();
  LabelScope label(c, "kickback");
  if (mode == KickbackMode::PhaseGates) {
    for (std::size_t bit = 0; bit + l < m; ++bit) {
      const double angle = 2 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << (m - bit - l));
      c.phase(lambda[bit], angle, {pos(control)});
    }
    return;
  }
  // |psi> = QFT^-1 |1> is the eigenvector of "add x mod 2^m" with eigenvalue
  // exp(2 pi i x / 2^m).
  const std::vector<Qubit> k = c.borrow(static_cast<unsigned>(m));
  c.x(k[0]);
  append_inverse_qft(c, k);
  std::vector<MaybeQubit> shifted(m);
  for (std::size_t bit = 0; bit + l < m; ++bit) shifted[bit + l] = lambda[bit];
  const Control on[] = {pos(control)};
  append_adder(c, shifted, k, std::nullopt, on, false);
  append_qft(c, k);
  c.x(k[0]);
  c.release(k);
}

void append_eigen_phase(Circuit& c, std::span<const Qubit> j, std::span<const Qubit> controls,
                        unsigned first_power, unsigned m, KickbackMode mode, EigenSource source) {
  const unsigned n = static_cast<unsigned>(j.size());
  if (m < 2 * n + 2) throw DomainError("eigenvalue register narrower than 2n+2 bits");
  const unsigned f = m - 2 * n - 2;
  LabelScope label(c, "eigen_phase");
  const std::vector<Qubit> e = c.borrow(m);
  const std::size_t begin = c.size();
  if (source == EigenSource::Arithmetic) {
    append_evc(c, j, e, f);
  } else {
    LabelScope load(c, "evc");
    std::vector<std::uint64_t> table(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < table.size(); ++v) table[v] = evc_value(v, n, f).bits();
    append_lookup(c, j, e, table);
  }
  const std::size_t end = c.size();
  for (std::size_t t = 0; t < controls.size(); ++t) {
    append_phase_kickback(c, e, controls[t], first_power + static_cast<unsigned>(t), mode);
  }
  {
    LabelScope undo(c, "evc^-1");
    c.append_inverse_of_range(begin, end);
  }
  c.release(e);
}

void append_eigen_phase(Circuit& c, std::span<const Qubit> j, Qubit control, unsigned l, unsigned m,
                        KickbackMode mode, EigenSource source) {
  const Qubit ctl[] = {control};
  append_eigen_phase(c, j, ctl, l, m, mode, source);
}

KickbackCircuit build_phase_kickback(unsigned n, unsigned m, unsigned l, KickbackMode mode) {
  KickbackCircuit out;
  out.j = out.circuit.add_register("j", n);
  out.control = out.circuit.add_register("ctrl", 1);
  append_eigen_phase(out.circuit, out.j.qubits(), out.control[0], l, m, mode);
  return out;
}

void append_controlled_u_powers(Circuit& c, std::span<const Qubit> b, std::span<const Qubit> controls,
                                unsigned m, KickbackMode mode, EigenSource source) {
  if (controls.size() > m) throw DomainError("more powers than eigenvalue bits");
  LabelScope label(c, "controlled_u");
  const Qubit a = c.borrow(1)[0];
  c.x(a);
  append_sine_transform(c, b, a);
  append_eigen_phase(c, b, controls, 0, m, mode, source);
  append_sine_transform(c, b, a);
  c.x(a);
  c.release(std::vector<Qubit>{a});
}

void append_controlled_u_power(Circuit& c, std::span<const Qubit> b, Qubit control, unsigned l, unsigned m,
                               KickbackMode mode, EigenSource source) {
  LabelScope label(c, "controlled_u");
  const Qubit a = c.borrow(1)[0];
  c.x(a);
  append_sine_transform(c, b, a);
  append_eigen_phase(c, b, control, l, m, mode, source);
  append_sine_transform(c, b, a);
  c.x(a);
  c.release(std::vector<Qubit>{a});
}

ControlledPowerCircuit build_controlled_u_power(unsigned l, unsigned n, unsigned m, KickbackMode mode) {
  if (n == 0) throw DomainError("register width must be positive");
  if (l >= m) throw DomainError("power index must be below the eigenvalue register width");
  ControlledPowerCircuit out;
  out.b = out.circuit.add_register("b", n);
  out.control = out.circuit.add_register("ctrl", 1);
  append_controlled_u_power(out.circuit, out.b.qubits(), out.control[0], l, m, mode);
  return out;
}

}  // namespace qfps

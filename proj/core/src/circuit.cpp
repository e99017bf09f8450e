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

#include "qfps/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qfps/errors.hpp"

namespace qfps {

std::vector<Qubit> Register::qubits() const {
  std::vector<Qubit> out(width);
  for (unsigned i = 0; i < width; ++i) out[i] = offset + i;
  return out;
}

const Register& QubitLayout::add_register(std::string name, unsigned width) {
  if (width == 0) throw DomainError("register width must be at least 1");
  if (contains(name)) throw DomainError("duplicate register name: " + name);
  if (total_ + width > kMaxQubits) {
    throw ResourceError("layout exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
  registers_.push_back(Register{std::move(name), total_, width});
  total_ += width;
  return registers_.back();
}

const Register& QubitLayout::find(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return r;
  }
  throw DomainError("unknown register: " + std::string(name));
}

bool QubitLayout::contains(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(), [&](const Register& r) { return r.name == name; });
}

bool QubitLayout::extends(const QubitLayout& other) const {
  if (other.registers_.size() > registers_.size()) return false;
  for (std::size_t i = 0; i < other.registers_.size(); ++i) {
    const auto& a = registers_[i];
    const auto& b = other.registers_[i];
    if (a.name != b.name || a.offset != b.offset || a.width != b.width) return false;
  }
  return true;
}

bool is_classical(GateKind kind) {
  return kind == GateKind::X || kind == GateKind::Swap || kind == GateKind::Phase;
}

std::vector<Qubit> Circuit::borrow(unsigned count) {
  std::vector<Qubit> out;
  out.reserve(count);
  while (out.size() < count && !free_ancillas_.empty()) {
    out.push_back(free_ancillas_.back());
    free_ancillas_.pop_back();
  }
  if (out.size() < count) {
    const unsigned missing = count - static_cast<unsigned>(out.size());
    const auto& r = layout_.add_register("anc" + std::to_string(layout_.registers().size()), missing);
    for (unsigned i = 0; i < missing; ++i) out.push_back(r[i]);
    ancilla_count_ += missing;
  }
  return out;
}

void Circuit::release(std::span<const Qubit> qubits) {
  // Keep the free list sorted descending so borrow() hands out low indices first.
  free_ancillas_.insert(free_ancillas_.end(), qubits.begin(), qubits.end());
  std::sort(free_ancillas_.begin(), free_ancillas_.end(), std::greater<>());
}

void Circuit::check_qubit(Qubit q) const {
  if (q >= layout_.total()) throw DomainError("gate references qubit outside the layout");
}

void Circuit::add(GateKind kind, Qubit t, Qubit t2, double angle, std::span<const Control> c, std::uint32_t unitary) {
  check_qubit(t);
  if (kind == GateKind::Swap) {
    check_qubit(t2);
    if (t == t2) throw DomainError("swap targets must differ");
  }
  for (const auto& ctl : c) {
    check_qubit(ctl.qubit);
    if (ctl.qubit == t || (kind == GateKind::Swap && ctl.qubit == t2)) {
      throw DomainError("gate control overlaps its target");
    }
  }
  Gate g;
  g.kind = kind;
  g.target = t;
  g.target2 = t2;
  g.angle = angle;
  g.unitary = unitary;
  g.ctrl_begin = static_cast<std::uint32_t>(control_pool_.size());
  g.ctrl_count = static_cast<std::uint32_t>(c.size());
  control_pool_.insert(control_pool_.end(), c.begin(), c.end());
  gates_.push_back(g);
}

void Circuit::unitary(Qubit t, const Mat2& m, std::initializer_list<Control> c) {
  // U^dagger U == I
  const Complex d00 = std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
  const Complex d01 = std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
  const Complex d11 = std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
  if (std::abs(d00 - 1.0) > 1e-10 || std::abs(d01) > 1e-10 || std::abs(d11 - 1.0) > 1e-10) {
    throw DomainError("generic gate is not unitary");
  }
  unitaries_.push_back(m);
  add(GateKind::Unitary, t, 0, 0.0, std::span<const Control>(c.begin(), c.size()),
      static_cast<std::uint32_t>(unitaries_.size() - 1));
}

void Circuit::append(const Circuit& other) {
  if (&other == this) {
    const Circuit copy = other;
    append(copy);
    return;
  }
  if (!layout_.extends(other.layout_)) throw DomainError("appended circuit layout is not a prefix of this layout");
  const std::size_t offset = gates_.size();
  const auto upool = static_cast<std::uint32_t>(unitaries_.size());
  unitaries_.insert(unitaries_.end(), other.unitaries_.begin(), other.unitaries_.end());
  gates_.reserve(gates_.size() + other.gates_.size());
  for (const Gate& g : other.gates_) {
    auto c = other.controls(g);
    add(g.kind, g.target, g.target2, g.angle, c, g.unitary + upool);
  }
  for (const auto& l : other.labels_) labels_.push_back({l.name, l.begin + offset, l.end + offset});
}

void Circuit::append_inverse_of_range(std::size_t begin, std::size_t end) {
  if (begin > end || end > gates_.size()) throw DomainError("invalid gate range");
  // Reserve up front so spans into the control pool stay valid while appending.
  std::size_t extra = 0;
  for (std::size_t i = begin; i < end; ++i) extra += gates_[i].ctrl_count;
  control_pool_.reserve(control_pool_.size() + extra);
  gates_.reserve(gates_.size() + (end - begin));
  for (std::size_t i = end; i-- > begin;) {
    const Gate g = gates_[i];
    const std::span<const Control> c(control_pool_.data() + g.ctrl_begin, g.ctrl_count);
    switch (g.kind) {
      case GateKind::X:
      case GateKind::H:
      case GateKind::Swap:
        add(g.kind, g.target, g.target2, g.angle, c);
        break;
      case GateKind::Phase:
      case GateKind::Ry:
        add(g.kind, g.target, g.target2, -g.angle, c);
        break;
      case GateKind::Unitary: {
        const Mat2 m = unitaries_[g.unitary];
        unitaries_.push_back({std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])});
        add(g.kind, g.target, 0, 0.0, c, static_cast<std::uint32_t>(unitaries_.size() - 1));
        break;
      }
    }
  }
}

Circuit Circuit::inverse() const {
  Circuit out(layout_);
  out.unitaries_ = unitaries_;
  out.control_pool_ = control_pool_;
  out.gates_ = gates_;
  out.append_inverse_of_range(0, gates_.size());
  out.gates_.erase(out.gates_.begin(), out.gates_.begin() + static_cast<std::ptrdiff_t>(gates_.size()));
  const std::size_t n = gates_.size();
  for (const auto& l : labels_) out.labels_.push_back({l.name + "^-1", n - l.end, n - l.begin});
  out.free_ancillas_ = free_ancillas_;
  out.ancilla_count_ = ancilla_count_;
  return out;
}

void Circuit::begin_label(std::string name) {
  open_labels_.push_back(labels_.size());
  labels_.push_back({std::move(name), gates_.size(), gates_.size()});
}

void Circuit::end_label() {
  if (open_labels_.empty()) throw DomainError("end_label without begin_label");
  labels_[open_labels_.back()].end = gates_.size();
  open_labels_.pop_back();
}

std::string to_netlist(const Circuit& circuit) {
  std::ostringstream os;
  for (const auto& r : circuit.layout().registers()) {
    os << "register " << r.name << ' ' << r.offset << ' ' << r.width << '\n';
  }
  char buf[64];
  for (const Gate& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::X: os << "X " << g.target; break;
      case GateKind::H: os << "H " << g.target; break;
      case GateKind::Phase: os << "P " << g.target; break;
      case GateKind::Ry: os << "RY " << g.target; break;
      case GateKind::Swap: os << "SWAP " << g.target << ' ' << g.target2; break;
      case GateKind::Unitary: os << "U " << g.target; break;
    }
    if (g.ctrl_count > 0) {
      os << " c";
      for (const auto& c : circuit.controls(g)) os << ' ' << (c.on_one ? "" : "~") << c.qubit;
    }
    if (g.kind == GateKind::Phase || g.kind == GateKind::Ry) {
      std::snprintf(buf, sizeof buf, "%.17g", g.angle);
      os << " a " << buf;
    }
    if (g.kind == GateKind::Unitary) {
      const Mat2& m = circuit.unitary_matrix(g);
      os << " m";
      for (const auto& z : m) {
        std::snprintf(buf, sizeof buf, " %.17g %.17g", z.real(), z.imag());
        os << buf;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace qfps

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

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfps {

using Qubit = std::uint32_t;
using Complex = std::complex<double>;
using Mat2 = std::array<Complex, 4>;  // row-major [[m0, m1], [m2, m3]]

/// Qubit capacity of a basis index (32 x 64 bits).
inline constexpr unsigned kMaxQubits = 2048;

/// Contiguous block of qubits; qubit 0 is the least significant bit.
struct Register {
  std::string name;
  Qubit offset = 0;
  unsigned width = 0;

  Qubit operator[](unsigned i) const { return offset + i; }
  std::vector<Qubit> qubits() const;
};

class QubitLayout {
 public:
  const Register& add_register(std::string name, unsigned width);
  const Register& find(std::string_view name) const;
  bool contains(std::string_view name) const;
  unsigned total() const { return total_; }
  const std::vector<Register>& registers() const { return registers_; }
  /// True when every register of `other` appears here at the same offset.
  bool extends(const QubitLayout& other) const;

  friend bool operator==(const QubitLayout&, const QubitLayout&) = default;

 private:
  std::vector<Register> registers_;
  unsigned total_ = 0;
};

struct Control {
  Qubit qubit = 0;
  bool on_one = true;  ///< polarity: fire when the qubit is |1> (true) or |0> (false)
};
inline Control pos(Qubit q) { return {q, true}; }
inline Control neg(Qubit q) { return {q, false}; }

enum class GateKind : std::uint8_t { X, H, Phase, Ry, Swap, Unitary };

/// Gate record. Controls live in the owning circuit's control pool.
struct Gate {
  GateKind kind = GateKind::X;
  Qubit target = 0;
  Qubit target2 = 0;      ///< second target of Swap
  double angle = 0.0;     ///< Phase: diag(1, e^{i angle}); Ry: exp(-i angle Y / 2)
  std::uint32_t unitary = 0;  ///< index into the unitary table for GateKind::Unitary
  std::uint32_t ctrl_begin = 0;
  std::uint32_t ctrl_count = 0;
};

/// True for gates that map basis states to basis states up to a phase.
bool is_classical(GateKind kind);

struct Label {
  std::string name;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Ordered gate list over a growing qubit layout.
///
/// Builders allocate named registers and borrow clean ancillas from a pool.
/// A borrowed ancilla must be returned in |0> on every basis input of the
/// builder's domain; the simulator tests enforce this.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(QubitLayout layout) : layout_(std::move(layout)) {}

  const QubitLayout& layout() const { return layout_; }
  unsigned num_qubits() const { return layout_.total(); }
  const Register& add_register(std::string name, unsigned width) { return layout_.add_register(std::move(name), width); }
  const Register& reg(std::string_view name) const { return layout_.find(name); }

  std::vector<Qubit> borrow(unsigned count);
  void release(std::span<const Qubit> qubits);
  std::size_t ancilla_pool_size() const { return ancilla_count_; }

  void x(Qubit t, std::initializer_list<Control> c = {}) { add(GateKind::X, t, 0, 0.0, c); }
  void x(Qubit t, std::span<const Control> c) { add(GateKind::X, t, 0, 0.0, c); }
  void cx(Qubit c, Qubit t) { x(t, {pos(c)}); }
  void ccx(Qubit c1, Qubit c2, Qubit t) { x(t, {pos(c1), pos(c2)}); }
  void h(Qubit t, std::initializer_list<Control> c = {}) { add(GateKind::H, t, 0, 0.0, c); }
  void h(Qubit t, std::span<const Control> c) { add(GateKind::H, t, 0, 0.0, c); }
  void phase(Qubit t, double angle, std::initializer_list<Control> c = {}) { add(GateKind::Phase, t, 0, angle, c); }
  void phase(Qubit t, double angle, std::span<const Control> c) { add(GateKind::Phase, t, 0, angle, c); }
  void ry(Qubit t, double angle, std::initializer_list<Control> c = {}) { add(GateKind::Ry, t, 0, angle, c); }
  void ry(Qubit t, double angle, std::span<const Control> c) { add(GateKind::Ry, t, 0, angle, c); }
  void swap(Qubit a, Qubit b, std::initializer_list<Control> c = {}) { add(GateKind::Swap, a, b, 0.0, c); }
  /// Generic 2x2 gate; throws DomainError unless unitary to 1e-10.
  void unitary(Qubit t, const Mat2& m, std::initializer_list<Control> c = {});

  /// Appends `other`, whose layout must be a prefix of this one.
  void append(const Circuit& other);
  /// Gates in reverse order with inverted parameters.
  Circuit inverse() const;
  /// Appends the inverse of gates [begin, end) of this circuit.
  void append_inverse_of_range(std::size_t begin, std::size_t end);

  void begin_label(std::string name);
  void end_label();
  const std::vector<Label>& labels() const { return labels_; }

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  std::span<const Control> controls(const Gate& g) const {
    return {control_pool_.data() + g.ctrl_begin, g.ctrl_count};
  }
  const Mat2& unitary_matrix(const Gate& g) const { return unitaries_[g.unitary]; }

 private:
  void add(GateKind kind, Qubit t, Qubit t2, double angle, std::span<const Control> c, std::uint32_t unitary = 0);
  void check_qubit(Qubit q) const;

  QubitLayout layout_;
  std::vector<Gate> gates_;
  std::vector<Control> control_pool_;
  std::vector<Mat2> unitaries_;
  std::vector<Label> labels_;
  std::vector<std::size_t> open_labels_;
  std::vector<Qubit> free_ancillas_;
  std::size_t ancilla_count_ = 0;
};

/// Textual netlist: a header of `register <name> <offset> <width>` lines, then
/// one gate per line as `<KIND> <target>[ <target2>] [c <q>|~<q> ...] [a <angle>]`.
std::string to_netlist(const Circuit& circuit);

/// Scoped label helper.
class LabelScope {
 public:
  LabelScope(Circuit& c, std::string name) : c_(c) { c_.begin_label(std::move(name)); }
  ~LabelScope() { c_.end_label(); }
  LabelScope(const LabelScope&) = delete;
  LabelScope& operator=(const LabelScope&) = delete;

 private:
  Circuit& c_;
};

}  // namespace qfps

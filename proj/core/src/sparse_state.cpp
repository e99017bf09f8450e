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

#include "qfps/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qfps/errors.hpp"

namespace qfps {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

bool controls_fire(const BasisKey& key, std::span<const Control> controls) {
  for (const auto& c : controls) {
    if (key.test(c.qubit) != c.on_one) return false;
  }
  return true;
}

Mat2 gate_matrix(const Circuit& circuit, const Gate& g, bool inverse) {
  switch (g.kind) {
    case GateKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      return {Complex(s), Complex(s), Complex(s), Complex(-s)};
    }
    case GateKind::Ry: {
      const double theta = inverse ? -g.angle : g.angle;
      const double c = std::cos(theta / 2.0);
      const double s = std::sin(theta / 2.0);
      return {Complex(c), Complex(-s), Complex(s), Complex(c)};
    }
    case GateKind::Unitary: {
      const Mat2& m = circuit.unitary_matrix(g);
      if (!inverse) return m;
      return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
    }
    default:
      throw DomainError("gate_matrix called on a classical gate");
  }
}

}  // namespace

std::uint64_t BasisKey::read(const Register& reg) const {
  if (reg.width > 64) throw DomainError("register wider than 64 bits cannot be read as an integer");
  std::uint64_t v = 0;
  for (unsigned i = 0; i < reg.width; ++i) {
    if (test(reg[i])) v |= std::uint64_t{1} << i;
  }
  return v;
}

void BasisKey::write(const Register& reg, std::uint64_t value) {
  if (reg.width < 64 && (value >> reg.width) != 0) throw DomainError("value does not fit the register");
  for (unsigned i = 0; i < reg.width; ++i) set(reg[i], ((value >> i) & 1U) != 0);
}

bool BasisKey::none() const {
  return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

std::size_t BasisKeyHash::operator()(const BasisKey& k) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (unsigned i = 0; i < BasisKey::kWords; ++i) {
    if (k.w[i] != 0) h = mix64(h ^ (k.w[i] + i * 0x632be59bd9b4e019ULL));
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------

SparseState::SparseState(QubitLayout layout, double tolerance) : layout_(std::move(layout)), tolerance_(tolerance) {}

SparseState SparseState::basis(const QubitLayout& layout, const BasisKey& key) {
  SparseState s(layout);
  s.amps_.emplace(key, Complex(1.0));
  s.max_support_ = 1;
  return s;
}

SparseState SparseState::basis(const QubitLayout& layout, const Register& reg, std::uint64_t value) {
  BasisKey k;
  k.write(reg, value);
  return basis(layout, k);
}

Complex SparseState::amplitude(const BasisKey& key) const {
  auto it = amps_.find(key);
  return it == amps_.end() ? Complex(0.0) : it->second;
}

void SparseState::set_amplitude(const BasisKey& key, Complex a) {
  if (std::abs(a) < tolerance_) {
    amps_.erase(key);
  } else {
    amps_[key] = a;
  }
  max_support_ = std::max(max_support_, amps_.size());
}

std::vector<std::pair<BasisKey, Complex>> SparseState::sorted_entries() const {
  std::vector<std::pair<BasisKey, Complex>> out(amps_.begin(), amps_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

double SparseState::norm2() const {
  double s = 0.0;
  for (const auto& [k, a] : sorted_entries()) s += std::norm(a);
  return s;
}

void SparseState::normalize() {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw ImpossibleOutcomeError("cannot normalize an empty state");
  for (auto& [k, a] : amps_) a /= n;
  leaked_ = 0.0;
}

void SparseState::replace(AmplitudeMap&& next) {
  amps_ = std::move(next);
  max_support_ = std::max(max_support_, amps_.size());
}

void SparseState::prune() {
  for (auto it = amps_.begin(); it != amps_.end();) {
    if (std::abs(it->second) < tolerance_) {
      leaked_ += std::norm(it->second);
      amps_.erase(it++);
    } else {
      ++it;
    }
  }
}

// ---------------------------------------------------------------------------

CompiledCircuit::CompiledCircuit(std::shared_ptr<const Circuit> circuit, bool inverse)
    : circuit_(std::move(circuit)), inverse_(inverse) {
  const auto& gates = circuit_->gates();
  std::size_t i = 0;
  while (i < gates.size()) {
    Segment seg;
    seg.begin = i;
    if (is_classical(gates[i].kind)) {
      seg.classical = true;
      // Diagonal runs get their own segments so their controls do not widen the
      // memo key of the neighbouring permutation gates.
      const bool diagonal = gates[i].kind == GateKind::Phase;
      while (i < gates.size() && is_classical(gates[i].kind) && (gates[i].kind == GateKind::Phase) == diagonal) {
        const Gate& g = gates[i];
        seg.mask.set(g.target, true);
        if (g.kind == GateKind::Swap) seg.mask.set(g.target2, true);
        for (const auto& c : circuit_->controls(g)) seg.mask.set(c.qubit, true);
        ++i;
      }
    } else {
      ++i;
    }
    seg.end = i;
    segments_.push_back(std::move(seg));
  }
  if (inverse_) std::reverse(segments_.begin(), segments_.end());
}

std::pair<BasisKey, Complex> CompiledCircuit::eval_classical(const Segment& seg, BasisKey key) const {
  const auto& gates = circuit_->gates();
  Complex phase(1.0);
  double angle = 0.0;
  auto step = [&](const Gate& g) {
    if (!controls_fire(key, circuit_->controls(g))) return;
    switch (g.kind) {
      case GateKind::X:
        key.flip(g.target);
        break;
      case GateKind::Swap: {
        const bool a = key.test(g.target);
        const bool b = key.test(g.target2);
        key.set(g.target, b);
        key.set(g.target2, a);
        break;
      }
      case GateKind::Phase:
        if (key.test(g.target)) angle += inverse_ ? -g.angle : g.angle;
        break;
      default:
        break;
    }
  };
  if (inverse_) {
    for (std::size_t i = seg.end; i-- > seg.begin;) step(gates[i]);
  } else {
    for (std::size_t i = seg.begin; i < seg.end; ++i) step(gates[i]);
  }
  if (angle != 0.0) phase = std::polar(1.0, angle);
  return {key, phase};
}

void CompiledCircuit::apply_classical(SparseState& state, const Segment& seg) const {
  AmplitudeMap next;
  next.reserve(state.support());
  const bool use_memo = seg.end - seg.begin > 4;
  for (const auto& [key, amp] : state.amplitudes()) {
    if (!use_memo) {
      auto [out, ph] = eval_classical(seg, key);
      next.emplace(out, amp * ph);
      continue;
    }
    BasisKey proj;
    BasisKey rest;
    for (unsigned i = 0; i < BasisKey::kWords; ++i) {
      proj.w[i] = key.w[i] & seg.mask.w[i];
      rest.w[i] = key.w[i] & ~seg.mask.w[i];
    }
    auto it = seg.memo.find(proj);
    if (it == seg.memo.end()) it = seg.memo.emplace(proj, eval_classical(seg, proj)).first;
    for (unsigned i = 0; i < BasisKey::kWords; ++i) rest.w[i] |= it->second.first.w[i];
    next.emplace(rest, amp * it->second.second);
  }
  state.replace(std::move(next));
}

void CompiledCircuit::apply_quantum(SparseState& state, const Gate& g) const {
  const Mat2 u = gate_matrix(*circuit_, g, inverse_);
  const auto controls = circuit_->controls(g);
  AmplitudeMap next;
  next.reserve(state.support() * 2);
  for (const auto& [key, amp] : state.amplitudes()) {
    if (!controls_fire(key, controls)) {
      next[key] += amp;
      continue;
    }
    const int b = key.test(g.target) ? 1 : 0;
    BasisKey k0 = key;
    k0.set(g.target, false);
    BasisKey k1 = k0;
    k1.set(g.target, true);
    if (u[b] != 0.0) next[k0] += u[b] * amp;
    if (u[2 + b] != 0.0) next[k1] += u[2 + b] * amp;
  }
  state.replace(std::move(next));
  state.prune();
}

void CompiledCircuit::apply(SparseState& state) const {
  if (circuit_->num_qubits() > state.layout().total()) {
    throw DomainError("state layout does not match circuit layout");
  }
  const auto& gates = circuit_->gates();
  for (const auto& seg : segments_) {
    if (seg.classical) {
      apply_classical(state, seg);
    } else {
      apply_quantum(state, gates[seg.begin]);
    }
  }
}

void apply(SparseState& state, const Circuit& circuit) {
  CompiledCircuit(std::make_shared<const Circuit>(circuit)).apply(state);
}

void apply_inverse(SparseState& state, const Circuit& circuit) {
  CompiledCircuit(std::make_shared<const Circuit>(circuit), true).apply(state);
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd to_matrix(const Circuit& circuit) {
  const unsigned n = circuit.num_qubits();
  if (n > 14) throw ResourceError("to_matrix limited to 14 qubits");
  std::vector<Qubit> all(n);
  for (unsigned i = 0; i < n; ++i) all[i] = i;
  return effective_operator(circuit, all).matrix;
}

EffectiveOperator effective_operator(const Circuit& circuit, std::span<const Qubit> qubits) {
  if (qubits.size() > 14) throw ResourceError("effective operator limited to 14 qubits");
  const std::size_t dim = std::size_t{1} << qubits.size();
  CompiledCircuit compiled(std::make_shared<const Circuit>(circuit));
  EffectiveOperator out;
  out.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  BasisKey subspace_mask;
  for (Qubit q : qubits) subspace_mask.set(q, true);
  for (std::size_t col = 0; col < dim; ++col) {
    BasisKey in;
    for (std::size_t b = 0; b < qubits.size(); ++b) in.set(qubits[b], ((col >> b) & 1U) != 0);
    SparseState s = SparseState::basis(circuit.layout(), in);
    compiled.apply(s);
    double leak = 0.0;
    for (const auto& [key, amp] : s.sorted_entries()) {
      bool outside = false;
      for (unsigned i = 0; i < BasisKey::kWords; ++i) {
        if ((key.w[i] & ~subspace_mask.w[i]) != 0) outside = true;
      }
      if (outside) {
        leak += std::norm(amp);
        continue;
      }
      std::size_t row = 0;
      for (std::size_t b = 0; b < qubits.size(); ++b) {
        if (key.test(qubits[b])) row |= std::size_t{1} << b;
      }
      out.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
    }
    out.leakage = std::max(out.leakage, leak);
  }
  return out;
}

PostselectResult postselect(const SparseState& state, Qubit qubit, bool value) {
  if (qubit >= state.layout().total()) throw DomainError("postselect qubit outside the layout");
  double total = 0.0;
  double kept = 0.0;
  SparseState next(state.layout(), state.tolerance());
  AmplitudeMap amps;
  for (const auto& [key, amp] : state.sorted_entries()) {
    total += std::norm(amp);
    if (key.test(qubit) == value) {
      kept += std::norm(amp);
      amps.emplace(key, amp);
    }
  }
  if (amps.empty() || kept == 0.0) throw ImpossibleOutcomeError("post-selected outcome has zero probability");
  next.replace(std::move(amps));
  next.normalize();
  return {std::move(next), kept / total};
}

std::vector<RegisterOutcome> read_register(const SparseState& state, const Register& reg) {
  if (!state.layout().contains(reg.name)) throw DomainError("unknown register: " + reg.name);
  struct Acc {
    double p = 0.0;
    std::size_t count = 0;
    Complex amp;
  };
  std::map<std::uint64_t, Acc> acc;
  double total = 0.0;
  bool factors = true;
  std::optional<BasisKey> complement;
  for (const auto& [key, amp] : state.sorted_entries()) {
    const std::uint64_t v = key.read(reg);
    auto& a = acc[v];
    a.p += std::norm(amp);
    a.amp = amp;
    ++a.count;
    total += std::norm(amp);
    BasisKey rest = key;
    rest.write(reg, 0);
    if (!complement) {
      complement = rest;
    } else if (!(*complement == rest)) {
      factors = false;
    }
  }
  std::vector<RegisterOutcome> out;
  const double norm = std::sqrt(total);
  for (const auto& [v, a] : acc) {
    RegisterOutcome o;
    o.value = v;
    o.probability = total > 0 ? a.p / total : 0.0;
    if (factors && a.count == 1) o.amplitude = a.amp / norm;
    out.push_back(o);
  }
  return out;
}

}  // namespace qfps

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

// Computational-basis-sparse state vector simulator.

#include <absl/container/flat_hash_map.h>

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qfps/circuit.hpp"

namespace qfps {

/// Basis index over up to kMaxQubits qubits.
struct BasisKey {
  static constexpr unsigned kWords = kMaxQubits / 64;
  std::array<std::uint64_t, kWords> w{};

  bool test(Qubit q) const { return ((w[q >> 6] >> (q & 63U)) & 1U) != 0; }
  void flip(Qubit q) { w[q >> 6] ^= std::uint64_t{1} << (q & 63U); }
  void set(Qubit q, bool v) {
    if (test(q) != v) flip(q);
  }
  /// Reads `reg` as a little-endian unsigned integer (width <= 64).
  std::uint64_t read(const Register& reg) const;
  void write(const Register& reg, std::uint64_t value);
  bool none() const;

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  friend auto operator<=>(const BasisKey& a, const BasisKey& b) {
    for (unsigned i = kWords; i-- > 0;) {
      if (a.w[i] != b.w[i]) return a.w[i] <=> b.w[i];
    }
    return std::strong_ordering::equal;
  }
};

struct BasisKeyHash {
  std::size_t operator()(const BasisKey& k) const;
};

using AmplitudeMap = absl::flat_hash_map<BasisKey, Complex, BasisKeyHash>;

/// Sparse pure state: basis index -> amplitude, with prune accounting.
class SparseState {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  explicit SparseState(QubitLayout layout, double tolerance = kDefaultTolerance);

  /// |key>.
  static SparseState basis(const QubitLayout& layout, const BasisKey& key);
  /// |0...0> with `reg` holding `value`.
  static SparseState basis(const QubitLayout& layout, const Register& reg, std::uint64_t value);

  const QubitLayout& layout() const { return layout_; }
  double tolerance() const { return tolerance_; }
  /// Squared norm dropped by pruning since construction or the last checkpoint.
  double leaked_norm() const { return leaked_; }
  std::size_t support() const { return amps_.size(); }
  std::size_t max_support() const { return max_support_; }

  Complex amplitude(const BasisKey& key) const;
  void set_amplitude(const BasisKey& key, Complex a);
  /// Entries sorted by basis index (deterministic iteration).
  std::vector<std::pair<BasisKey, Complex>> sorted_entries() const;
  const AmplitudeMap& amplitudes() const { return amps_; }

  double norm2() const;
  /// Rescales to unit norm and clears the leaked-norm counter.
  void normalize();

  // Internal: used by the apply kernels.
  AmplitudeMap& mutable_amplitudes() { return amps_; }
  void replace(AmplitudeMap&& next);
  void prune();

 private:
  QubitLayout layout_;
  AmplitudeMap amps_;
  double tolerance_;
  double leaked_ = 0.0;
  std::size_t max_support_ = 0;
};

/// Circuit prepared for repeated simulation.
///
/// Maximal runs of classical gates (X, Swap, Phase, with any controls) are
/// fused into blocks whose action on the qubits they touch is memoized: each
/// distinct projection of a basis index is evaluated once. Not thread-safe:
/// the memo tables are filled during apply.
class CompiledCircuit {
 public:
  explicit CompiledCircuit(std::shared_ptr<const Circuit> circuit, bool inverse = false);

  const Circuit& circuit() const { return *circuit_; }
  bool inverted() const { return inverse_; }
  std::size_t num_segments() const { return segments_.size(); }

  void apply(SparseState& state) const;

 private:
  struct Segment {
    std::size_t begin = 0;
    std::size_t end = 0;
    bool classical = false;
    BasisKey mask;
    mutable absl::flat_hash_map<BasisKey, std::pair<BasisKey, Complex>, BasisKeyHash> memo;
  };

  void apply_classical(SparseState& state, const Segment& seg) const;
  void apply_quantum(SparseState& state, const Gate& gate) const;
  std::pair<BasisKey, Complex> eval_classical(const Segment& seg, BasisKey key) const;

  std::shared_ptr<const Circuit> circuit_;
  bool inverse_;
  std::vector<Segment> segments_;
};

/// Applies `circuit` gate by gate. Amplitudes below the tolerance are pruned
/// and tallied as leaked norm; no renormalization happens here.
void apply(SparseState& state, const Circuit& circuit);
void apply_inverse(SparseState& state, const Circuit& circuit);

/// Dense unitary of a circuit with at most 14 qubits; column k is apply(|k>).
Eigen::MatrixXcd to_matrix(const Circuit& circuit);

struct EffectiveOperator {
  Eigen::MatrixXcd matrix;
  /// Largest squared norm, over inputs, that left the subspace where every
  /// qubit outside `qubits` is |0>.
  double leakage = 0.0;
};

/// Operator induced on `qubits` (little-endian) with all other qubits |0> in
/// and out. Works for circuits of any width.
EffectiveOperator effective_operator(const Circuit& circuit, std::span<const Qubit> qubits);

struct PostselectResult {
  SparseState state;
  double probability = 0.0;
};

/// Keeps the branch where `qubit` reads `value`, renormalized.
PostselectResult postselect(const SparseState& state, Qubit qubit, bool value);

struct RegisterOutcome {
  std::uint64_t value = 0;
  double probability = 0.0;
  /// Present when the register factors out of the state.
  std::optional<Complex> amplitude;
};

/// Marginal distribution of a register, sorted by value.
std::vector<RegisterOutcome> read_register(const SparseState& state, const Register& reg);

}  // namespace qfps

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

// End-to-end solver: phase estimation of exp(iAt) with eigenvalues written to
// register E, arc-cotangent angle into register A, bit-controlled R_y on the
// flag qubit R, uncomputation of A and E, and post-selection of R = 1.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qfps/circuit.hpp"
#include "qfps/sparse_state.hpp"
#include "qfps/spectral.hpp"

namespace qfps {

struct PoissonProblem {
  unsigned n = 2;              ///< N = 2^n intervals
  unsigned f = 6;              ///< eigenvalue fraction bits; m = 2n + 2 + f
  std::vector<Complex> rhs;    ///< 2^n amplitudes, rhs[0] = 0
  unsigned shift = 0;          ///< eigenvalues scaled by 2^shift before the angle stage
  unsigned angle_bits = 0;     ///< width of register A; 0 means m + shift
  KickbackMode kickback = KickbackMode::PhaseGates;

  unsigned m() const { return 2 * n + 2 + f; }
  unsigned w() const { return angle_bits == 0 ? m() + shift : angle_bits; }
  /// Throws DomainError on a malformed right-hand side; returns it normalized.
  std::vector<Complex> normalized_rhs() const;
};

/// n = 2, rhs = (0, 1/sqrt2, 1/2, 1/2).
PoissonProblem demo_problem(unsigned f = 6);

struct BranchDiagnostics {
  unsigned j = 0;                  ///< eigen index matched to the branch
  double weight = 0.0;             ///< probability of the branch in register E
  double lambda = 0.0;             ///< exact eigenvalue
  double lambda_hat = 0.0;         ///< eigenvalue read from register E
  double omega = 0.0;              ///< angle read from register A
  double inv_lambda_hat = 0.0;     ///< 1 / lambda_hat
  double inv_lambda_tilde = 0.0;   ///< 2^shift / sqrt(1 + (2^shift lambda_hat)^2), exact rotation
  double inv_lambda_circuit = 0.0; ///< 2^shift sin(pi omega), what the rotation applies
};

struct PoissonSolution {
  std::vector<Complex> amplitudes;       ///< 2^n entries, index 0 is the boundary
  double success_probability = 0.0;
  std::uint64_t repetition_estimate = 0; ///< ceil(1/p)
  std::vector<double> classical_direction;
  double max_abs_error = 0.0;
  std::vector<BranchDiagnostics> diagnostics;
  double work_residual = 0.0;            ///< 1 - P(E = 0 and A = 0) before post-selection
  std::size_t max_support = 0;
  double leaked_norm = 0.0;
  unsigned qubits = 0;
  std::size_t gates = 0;
};

/// Largest amplitude count a solve may reach (about 2.5 GB of state).
inline constexpr std::size_t kMaxSimulatedSupport = std::size_t{1} << 22;

enum class PipelineVariant : std::uint8_t {
  Full,        ///< eigenvalue and angle circuits
  Simplified,  ///< precomputed eigenvalue and angle tables
};

/// Compiled pipeline for one (n, f, shift, angle width) configuration; reusable
/// across right-hand sides.
class HhlPipeline {
 public:
  HhlPipeline(const PoissonProblem& config, PipelineVariant variant = PipelineVariant::Full);

  const QubitLayout& layout() const { return layout_; }
  const Register& b() const { return b_; }
  const Register& e() const { return e_; }
  const Register& a() const { return a_; }
  const Register& flag() const { return r_; }

  SparseState prepare(std::span<const Complex> rhs) const;
  /// H on E, controlled powers of U, inverse QFT on E.
  void phase_estimation(SparseState& s) const;
  /// Angle into A, bit-controlled rotations of R, angle uncomputed.
  void controlled_rotation(SparseState& s) const;
  void angle(SparseState& s) const;
  void rotation(SparseState& s) const;
  void uncompute_angle(SparseState& s) const;
  void uncompute_phase_estimation(SparseState& s) const;

  /// Throws ResourceError when the estimated peak support exceeds kMaxSimulatedSupport.
  PoissonSolution solve(std::span<const Complex> rhs) const;
  /// Peak number of amplitudes during phase estimation: 2^m eigenvalue-register
  /// values times N (N - 1) index and transform-ancilla states.
  std::size_t estimated_support() const;

  /// Whole pipeline as one circuit (forward stages and their inverses).
  Circuit full_circuit() const;
  const Circuit& phase_estimation_circuit() const { return *pe_; }
  const Circuit& angle_circuit() const { return *angle_; }
  const Circuit& rotation_circuit() const { return *rot_; }

 private:
  PoissonProblem config_;
  QubitLayout base_;
  QubitLayout layout_;
  Register b_, e_, a_, r_;
  std::shared_ptr<const Circuit> pe_, angle_, rot_;
  std::unique_ptr<CompiledCircuit> pe_fwd_, pe_inv_, angle_fwd_, angle_inv_, rot_fwd_;
};

/// Stand-alone stages on a fresh pipeline.
SparseState phase_estimation(const PoissonProblem& problem);
PoissonSolution solve(const PoissonProblem& problem);
PoissonSolution run_demo_simplified(const PoissonProblem& problem);

}  // namespace qfps

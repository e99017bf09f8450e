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

// Fourier and sine transforms, eigenvalue phase kickback and the controlled
// powers of exp(iAt) used by phase estimation.
//
// Conventions: registers are little-endian; QFT|j> = 2^{-w/2} sum_k
// exp(2 pi i jk / 2^w)|k>. The sine transform acts on an n-qubit register b
// plus one ancilla `a` that must be |1>; it is exact on the subspace with
// b != 0.

#include <cstdint>
#include <span>

#include "qfps/circuit.hpp"

namespace qfps {

void append_qft(Circuit& c, std::span<const Qubit> q);
void append_inverse_qft(Circuit& c, std::span<const Qubit> q);

Circuit build_qft(unsigned width);
Circuit build_inverse_qft(unsigned width);

/// T_N on (b, a) with `a` as the most significant bit of a 2N-point register:
/// H on a, then controlled on a: b -> N - b (bitwise NOT and increment).
void append_tn(Circuit& c, std::span<const Qubit> b, Qubit a);

/// Sine transform S on b (requires a = |1>): T, inverse 2N-point QFT, T^-1,
/// then a pi/2 phase on a to cancel the -i of the sine block.
void append_sine_transform(Circuit& c, std::span<const Qubit> b, Qubit a);

struct SpectralOp {
  Circuit circuit;
  Register b;
  Register a;  ///< width 1
};

SpectralOp build_tn(unsigned n);
SpectralOp build_sine_transform(unsigned n);

enum class KickbackMode : std::uint8_t {
  /// One controlled phase gate per eigenvalue bit.
  PhaseGates,
  /// Controlled modular addition of the eigenvalue into a register holding
  /// QFT^-1|1>, whose eigenphase kicks back onto the control.
  FourierAdder,
};

/// Controlled on `control`, multiplies by exp(2 pi i * value(lambda) * 2^l / 2^|lambda|).
void append_phase_kickback(Circuit& c, std::span<const Qubit> lambda, Qubit control, unsigned l,
                           KickbackMode mode);

enum class EigenSource : std::uint8_t {
  /// Eigenvalue calculation circuit (COS chain and adders).
  Arithmetic,
  /// Table of precomputed eigenvalue payloads loaded by multi-controlled X gates.
  Lookup,
};

/// Eigenvalue-phase operator: EVC into a borrowed register, kickback, EVC^-1.
/// Maps |j> to exp(2 pi i * payload(lambda_hat_j) * 2^l / 2^m)|j> when control = 1.
void append_eigen_phase(Circuit& c, std::span<const Qubit> j, Qubit control, unsigned l, unsigned m,
                        KickbackMode mode, EigenSource source = EigenSource::Arithmetic);
/// Same with one eigenvalue computation shared by several controls; controls[t]
/// receives power 2^(first_power + t).
void append_eigen_phase(Circuit& c, std::span<const Qubit> j, std::span<const Qubit> controls,
                        unsigned first_power, unsigned m, KickbackMode mode,
                        EigenSource source = EigenSource::Arithmetic);

struct KickbackCircuit {
  Circuit circuit;
  Register j;
  Register control;
};

/// Stand-alone eigenvalue-phase circuit on n index bits and an m-bit eigenvalue register.
KickbackCircuit build_phase_kickback(unsigned n, unsigned m, unsigned l, KickbackMode mode);

/// Controlled-U^{2^l} with U = exp(2 pi i A 2^f / 2^m) (A the N-point
/// Dirichlet Laplacian, m = 2n + 2 + f) realized as S * exp(i Lambda t) * S.
/// The ancilla of the sine transform is borrowed and flipped to |1> inside.
void append_controlled_u_power(Circuit& c, std::span<const Qubit> b, Qubit control, unsigned l, unsigned m,
                               KickbackMode mode, EigenSource source = EigenSource::Arithmetic);
/// Product of controlled-U^{2^l} over l, with controls[l] the control of power l.
/// Shares the sine transform and the eigenvalue computation across all powers.
void append_controlled_u_powers(Circuit& c, std::span<const Qubit> b, std::span<const Qubit> controls,
                                unsigned m, KickbackMode mode, EigenSource source = EigenSource::Arithmetic);

struct ControlledPowerCircuit {
  Circuit circuit;
  Register b;
  Register control;
};

ControlledPowerCircuit build_controlled_u_power(unsigned l, unsigned n, unsigned m,
                                                KickbackMode mode = KickbackMode::PhaseGates);

}  // namespace qfps

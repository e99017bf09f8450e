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

// Gate and qubit accounting: elementary-gate tallies of built circuits,
// leading-term closed forms, scaling fits and complexity curves.

#include <cstdint>
#include <string>
#include <vector>

#include "qfps/circuit.hpp"
#include "qfps/classical_ref.hpp"

namespace qfps {

/// Elementary cost of one gate, counting CNOT, Toffoli and single-qubit gates.
///
///  - X with k <= 2 controls: 1. With k >= 3: 2k - 3 (Toffoli ladder on k - 2
///    borrowed qubits).
///  - Swap: 3 uncontrolled, otherwise 2 CNOTs around a (k+1)-controlled X.
///  - Single-qubit gates: 1 uncontrolled; one control costs 5 for a phase,
///    4 for R_y, 6 for H or a generic unitary; k >= 2 controls are first
///    reduced to one by a k-controlled X computed and uncomputed on an ancilla.
///  - Every negative control adds 2 X gates.
std::uint64_t elementary_cost(const Circuit& circuit, const Gate& gate);

struct Tally {
  unsigned qubits = 0;          ///< distinct qubits touched
  std::uint64_t gates = 0;      ///< gate records
  std::uint64_t elementary = 0; ///< per elementary_cost
};

Tally tally(const Circuit& circuit);

struct StageCount {
  std::string name;
  Tally measured;
  double closed_qubits = 0.0;  ///< leading terms only
  double closed_gates = 0.0;   ///< leading terms only
};

struct ResourceReport {
  unsigned n = 0;
  unsigned f = 0;
  unsigned d = 1;
  unsigned shift = 0;
  unsigned m = 0;
  bool measured = true;      ///< false when the circuits were too wide to build
  std::string warning;
  std::vector<StageCount> stages;  ///< sine transform, evc, phase kickback, angle, rotation, uncomputation, total
  ErrorModel error;
  std::string qubit_class = "O(d m^2)";
  std::string gate_class = "O(kappa d m^3)";
};

/// Per-stage counts of the solver pipeline. d > 1 replicates the sine
/// transform, eigenvalue and kickback stages d times (one per dimension).
ResourceReport resource_report(unsigned n, unsigned f, unsigned d = 1, unsigned shift = 0);

/// Measured elementary counts of one circuit family at width m.
enum class Family : std::uint8_t { Adder, Sqrt, Recip, Evc, Angle };
std::string family_name(Family family);
Tally family_tally(Family family, unsigned m);
/// Leading-term gate formula quoted for the family (same units); NaN if none.
double family_closed_form(Family family, unsigned m);

struct ScalingFit {
  std::vector<unsigned> widths;
  std::vector<double> counts;
  double linear_slope = 0.0;  ///< least squares of count on m
  double max_step_deviation = 0.0;  ///< max |step slope / linear_slope - 1|
  double loglog_slope = 0.0;  ///< least squares of log count on log m
};

ScalingFit fit_scaling(Family family, unsigned m_lo, unsigned m_hi);

struct CurvePoint {
  unsigned d = 0;
  double classical = 0.0;
  double cao = 0.0;
  double present = 0.0;
  double hhl = 0.0;
};

/// Complexity curves in operation units for error eps = 2^-eps_bits with
/// N = eps^-alpha and kappa = eps^(-2 alpha).
std::vector<CurvePoint> complexity_curves(double alpha, unsigned dmax, unsigned eps_bits = 23);

}  // namespace qfps

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

// Classical ground truth for the 1-D Dirichlet Poisson problem on N intervals
// (h = 1/N): A = h^-2 tridiag(-1, 2, -1) on the N-1 interior points.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qfps {

struct EigenPair {
  double lambda = 0.0;
  std::vector<double> vector;  ///< u_j(k), k = 1..N-1, stored at index k-1
};

/// lambda_j = 4N^2 sin^2(j pi / 2N), u_j(k) = sqrt(2/N) sin(j pi k / N).
EigenPair eigenpair(unsigned big_n, unsigned j);

/// Dense A for N intervals (N-1 interior points).
Eigen::MatrixXd laplacian_matrix(unsigned big_n);

/// Solves A v = rhs by tridiagonal elimination; rhs has N-1 entries.
std::vector<double> tridiag_solve(unsigned big_n, std::span<const double> rhs);

/// Same solution via sum_j (beta_j / lambda_j) u_j.
std::vector<double> eigen_expansion_solve(unsigned big_n, std::span<const double> rhs);

/// kappa = cot^2(pi / 2N).
double condition_number(unsigned big_n);

/// d-dimensional operator as a Kronecker sum of the 1-D operator.
struct DiscretizedOperator {
  unsigned big_n = 0;
  unsigned d = 1;
  double h = 0.0;
  Eigen::MatrixXd matrix;
};

/// Dense d-dimensional operator; throws ResourceError beyond 4096 unknowns.
DiscretizedOperator kron_operator(unsigned big_n, unsigned d);

/// exp(i t A) for symmetric A.
Eigen::MatrixXcd exp_i(const Eigen::MatrixXd& a, double t);

/// max |exp(i t A_d) - exp(i t A)^{(x) d}|.
double exp_factorization_error(unsigned big_n, unsigned d, double t);

/// Per-branch error terms for the inverse-eigenvalue amplitude 1/lambda, in
/// units of 1/lambda.
struct ErrorModel {
  unsigned f = 0;
  unsigned shift = 0;
  unsigned angle_bits = 0;
  double eigen_term = 0.0;     ///< eigenvalue truncation: 2^(-f-6)
  double omission_term = 0.0;  ///< sqrt(1 + x^2) in place of x: 2^(-2 shift - 10)
  double angle_term = 0.0;     ///< angle register truncation: 2^shift * pi * 2^-angle_bits
  double total = 0.0;          ///< sum of the terms
};

/// angle_bits = 0 leaves the angle term out.
ErrorModel error_bound(unsigned f, unsigned shift, unsigned angle_bits = 0);

/// Bound on the max-abs error of the normalized solution direction:
/// 2 * total / ||A^-1 b|| for normalized b.
double direction_error_bound(const ErrorModel& model, unsigned big_n, std::span<const double> rhs);

/// beta_j = <u_j, b> for j = 1..N-1 (index j-1).
std::vector<double> eigen_coefficients(unsigned big_n, std::span<const double> rhs);

}  // namespace qfps

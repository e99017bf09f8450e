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

#include "qfps/classical_ref.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>

#include "qfps/errors.hpp"

namespace qfps {
namespace {

constexpr double kPi = std::numbers::pi;

void check_n(unsigned big_n) {
  if (big_n < 2) throw DomainError("need at least two intervals");
}

}  // namespace

EigenPair eigenpair(unsigned big_n, unsigned j) {
  check_n(big_n);
  if (j < 1 || j >= big_n) throw DomainError("eigen index must be in [1, N-1]");
  EigenPair out;
  const double n = big_n;
  const double s = std::sin(j * kPi / (2 * n));
  out.lambda = 4 * n * n * s * s;
  out.vector.resize(big_n - 1);
  for (unsigned k = 1; k < big_n; ++k) out.vector[k - 1] = std::sqrt(2 / n) * std::sin(j * kPi * k / n);
  return out;
}

Eigen::MatrixXd laplacian_matrix(unsigned big_n) {
  check_n(big_n);
  const Eigen::Index d = big_n - 1;
  const double inv_h2 = static_cast<double>(big_n) * big_n;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    a(i, i) = 2 * inv_h2;
    if (i > 0) a(i, i - 1) = -inv_h2;
    if (i + 1 < d) a(i, i + 1) = -inv_h2;
  }
  return a;
}

std::vector<double> tridiag_solve(unsigned big_n, std::span<const double> rhs) {
  check_n(big_n);
  const std::size_t d = big_n - 1;
  if (rhs.size() != d) throw DomainError("right-hand side must have N-1 entries");
  const double inv_h2 = static_cast<double>(big_n) * big_n;
  // Thomas elimination with constant bands.
  std::vector<double> c(d), v(d);
  const double a = -inv_h2, b = 2 * inv_h2;
  double denom = b;
  c[0] = a / denom;
  v[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < d; ++i) {
    denom = b - a * c[i - 1];
    c[i] = a / denom;
    v[i] = (rhs[i] - a * v[i - 1]) / denom;
  }
  for (std::size_t i = d - 1; i-- > 0;) v[i] -= c[i] * v[i + 1];
  return v;
}

std::vector<double> eigen_coefficients(unsigned big_n, std::span<const double> rhs) {
  check_n(big_n);
  if (rhs.size() != big_n - 1) throw DomainError("right-hand side must have N-1 entries");
  std::vector<double> beta(big_n - 1, 0.0);
  for (unsigned j = 1; j < big_n; ++j) {
    const auto e = eigenpair(big_n, j);
    for (unsigned k = 0; k + 1 < big_n; ++k) beta[j - 1] += e.vector[k] * rhs[k];
  }
  return beta;
}

std::vector<double> eigen_expansion_solve(unsigned big_n, std::span<const double> rhs) {
  const auto beta = eigen_coefficients(big_n, rhs);
  std::vector<double> v(big_n - 1, 0.0);
  for (unsigned j = 1; j < big_n; ++j) {
    const auto e = eigenpair(big_n, j);
    for (unsigned k = 0; k + 1 < big_n; ++k) v[k] += beta[j - 1] / e.lambda * e.vector[k];
  }
  return v;
}

double condition_number(unsigned big_n) {
  check_n(big_n);
  const double t = 1.0 / std::tan(kPi / (2.0 * big_n));
  return t * t;
}

DiscretizedOperator kron_operator(unsigned big_n, unsigned d) {
  check_n(big_n);
  if (d == 0) throw DomainError("dimension must be positive");
  const double side = big_n - 1;
  if (std::pow(side, d) > 4096) throw ResourceError("dense operator limited to 4096 unknowns");
  const Eigen::MatrixXd a = laplacian_matrix(big_n);
  const Eigen::Index s = a.rows();
  Eigen::MatrixXd out = a;
  for (unsigned k = 1; k < d; ++k) {
    const Eigen::MatrixXd id_prev = Eigen::MatrixXd::Identity(out.rows(), out.rows());
    const Eigen::MatrixXd id_s = Eigen::MatrixXd::Identity(s, s);
    out = Eigen::kroneckerProduct(out, id_s).eval() + Eigen::kroneckerProduct(id_prev, a).eval();
  }
  return {big_n, d, 1.0 / big_n, std::move(out)};
}

Eigen::MatrixXcd exp_i(const Eigen::MatrixXd& a, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXcd phases = (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0, t)).array().exp();
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  return v * phases.asDiagonal() * v.adjoint();
}

double exp_factorization_error(unsigned big_n, unsigned d, double t) {
  const auto op = kron_operator(big_n, d);
  const Eigen::MatrixXcd one = exp_i(laplacian_matrix(big_n), t);
  Eigen::MatrixXcd prod = one;
  for (unsigned k = 1; k < d; ++k) prod = Eigen::kroneckerProduct(prod, one).eval();
  return (exp_i(op.matrix, t) - prod).cwiseAbs().maxCoeff();
}

ErrorModel error_bound(unsigned f, unsigned shift, unsigned angle_bits) {
  ErrorModel m;
  m.f = f;
  m.shift = shift;
  m.angle_bits = angle_bits;
  m.eigen_term = std::ldexp(1.0, -static_cast<int>(f) - 6);
  m.omission_term = std::ldexp(1.0, -2 * static_cast<int>(shift) - 10);
  m.angle_term = angle_bits == 0 ? 0.0 : std::ldexp(kPi, static_cast<int>(shift) - static_cast<int>(angle_bits));
  m.total = m.eigen_term + m.omission_term + m.angle_term;
  return m;
}

double direction_error_bound(const ErrorModel& model, unsigned big_n, std::span<const double> rhs) {
  const auto v = tridiag_solve(big_n, rhs);
  double norm = 0.0;
  for (double x : v) norm += x * x;
  return 2 * model.total / std::sqrt(norm);
}

}  // namespace qfps

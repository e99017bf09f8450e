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

#include "qfps/hhl_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <map>
#include <numbers>

#include "qfps/arith.hpp"
#include "qfps/classical_ref.hpp"
#include "qfps/errors.hpp"
#include "qfps/fixed_point.hpp"
#include "qfps/func_circuits.hpp"

namespace qfps {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualTolerance = 1e-10;

}  // namespace

std::vector<Complex> PoissonProblem::normalized_rhs() const {
  if (n == 0 || n > 8) throw DomainError("n must be in [1, 8]");
  const std::size_t big_n = std::size_t{1} << n;
  if (rhs.size() != big_n) throw DomainError("right-hand side must have 2^n entries");
  if (std::abs(rhs[0]) != 0.0) throw DomainError("right-hand side index 0 is the boundary and must be 0");
  double norm = 0.0;
  for (const auto& v : rhs) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("right-hand side must be finite");
    norm += std::norm(v);
  }
  if (norm <= 0.0) throw DomainError("right-hand side cannot be normalized");
  std::vector<Complex> out(rhs);
  for (auto& v : out) v /= std::sqrt(norm);
  return out;
}

PoissonProblem demo_problem(unsigned f) {
  PoissonProblem p;
  p.n = 2;
  p.f = f;
  p.rhs = {0.0, 1 / std::sqrt(2.0), 0.5, 0.5};
  return p;
}

HhlPipeline::HhlPipeline(const PoissonProblem& config, PipelineVariant variant) : config_(config) {
  const unsigned n = config.n, m = config.m(), w = config.w();
  if (n == 0 || n > 8) throw DomainError("n must be in [1, 8]");
  b_ = base_.add_register("B", n);
  e_ = base_.add_register("E", m);
  a_ = base_.add_register("A", w);
  r_ = base_.add_register("R", 1);
  const EigenSource source = variant == PipelineVariant::Full ? EigenSource::Arithmetic : EigenSource::Lookup;

  auto pe = std::make_shared<Circuit>(base_);
  {
    LabelScope label(*pe, "phase_estimation");
    for (unsigned l = 0; l < m; ++l) pe->h(e_[l]);
    append_controlled_u_powers(*pe, b_.qubits(), e_.qubits(), m, config.kickback, source);
    append_inverse_qft(*pe, e_.qubits());
  }

  auto angle = std::make_shared<Circuit>(base_);
  if (variant == PipelineVariant::Full) {
    append_angle(*angle, e_.qubits(), a_.qubits(), {.in_frac = config.f, .out_bits = w, .shift = config.shift});
  } else {
    LabelScope label(*angle, "angle_lookup");
    std::vector<std::uint64_t> table(std::size_t{1} << m, 0);
    for (std::uint64_t j = 1; j < (std::uint64_t{1} << n); ++j) {
      const std::uint64_t payload = evc_value(j, n, config.f).bits();
      const auto scaled = FixedPoint::from_bits(payload << config.shift, m + config.shift, config.f, false);
      table[payload] = plouffe_arccot(scaled, w).bits();
    }
    append_lookup(*angle, e_.qubits(), a_.qubits(), table);
  }

  auto rot = std::make_shared<Circuit>(base_);
  {
    LabelScope label(*rot, "rotation");
    for (unsigned i = 0; i < w; ++i) rot->ry(r_[0], 2 * kPi * std::ldexp(1.0, -static_cast<int>(i) - 1), {pos(a_[w - 1 - i])});
  }

  unsigned total = base_.total();
  for (const auto* c : {pe.get(), angle.get(), rot.get()}) total = std::max(total, c->num_qubits());
  layout_ = base_;
  if (total > base_.total()) layout_.add_register("work", total - base_.total());

  pe_ = pe;
  angle_ = angle;
  rot_ = rot;
  pe_fwd_ = std::make_unique<CompiledCircuit>(pe_);
  pe_inv_ = std::make_unique<CompiledCircuit>(pe_, true);
  angle_fwd_ = std::make_unique<CompiledCircuit>(angle_);
  angle_inv_ = std::make_unique<CompiledCircuit>(angle_, true);
  rot_fwd_ = std::make_unique<CompiledCircuit>(rot_);
}

SparseState HhlPipeline::prepare(std::span<const Complex> rhs) const {
  PoissonProblem p = config_;
  p.rhs.assign(rhs.begin(), rhs.end());
  const auto b = p.normalized_rhs();
  SparseState s(layout_);
  for (std::uint64_t k = 0; k < b.size(); ++k) {
    if (b[k] == 0.0) continue;
    BasisKey key;
    key.write(b_, k);
    s.set_amplitude(key, b[k]);
  }
  return s;
}

void HhlPipeline::phase_estimation(SparseState& s) const { pe_fwd_->apply(s); }
void HhlPipeline::angle(SparseState& s) const { angle_fwd_->apply(s); }
void HhlPipeline::rotation(SparseState& s) const { rot_fwd_->apply(s); }
void HhlPipeline::uncompute_angle(SparseState& s) const { angle_inv_->apply(s); }
void HhlPipeline::uncompute_phase_estimation(SparseState& s) const { pe_inv_->apply(s); }

void HhlPipeline::controlled_rotation(SparseState& s) const {
  angle(s);
  rotation(s);
  uncompute_angle(s);
}

std::size_t HhlPipeline::estimated_support() const {
  const std::size_t big_n = std::size_t{1} << config_.n;
  const unsigned m = config_.m();
  if (m >= 40) return std::numeric_limits<std::size_t>::max();
  return (std::size_t{1} << m) * big_n * (big_n - 1);
}

PoissonSolution HhlPipeline::solve(std::span<const Complex> rhs) const {
  if (estimated_support() > kMaxSimulatedSupport) {
    throw ResourceError("simulation would hold about " + std::to_string(estimated_support()) + " amplitudes");
  }
  const unsigned n = config_.n;
  const std::size_t big_n = std::size_t{1} << n;
  PoissonSolution out;
  SparseState s = prepare(rhs);
  phase_estimation(s);
  angle(s);

  // Branch diagnostics from the joint (E, A) distribution.
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> joint;
  for (const auto& [key, amp] : s.sorted_entries()) joint[{key.read(e_), key.read(a_)}] += std::norm(amp);
  const double scale = std::ldexp(1.0, static_cast<int>(config_.shift));
  for (const auto& [ea, p] : joint) {
    BranchDiagnostics d;
    d.weight = p;
    d.lambda_hat = std::ldexp(static_cast<double>(ea.first), -static_cast<int>(config_.f));
    d.omega = std::ldexp(static_cast<double>(ea.second), -static_cast<int>(config_.w()));
    double best = INFINITY;
    for (unsigned j = 1; j < big_n; ++j) {
      const double lam = eigenpair(static_cast<unsigned>(big_n), j).lambda;
      if (std::abs(lam - d.lambda_hat) < best) {
        best = std::abs(lam - d.lambda_hat);
        d.j = j;
        d.lambda = lam;
      }
    }
    d.inv_lambda_hat = d.lambda_hat > 0 ? 1 / d.lambda_hat : INFINITY;
    const double x = scale * d.lambda_hat;
    d.inv_lambda_tilde = scale / std::sqrt(1 + x * x);
    d.inv_lambda_circuit = scale * std::sin(kPi * d.omega);
    out.diagnostics.push_back(d);
  }
  std::sort(out.diagnostics.begin(), out.diagnostics.end(), [](const auto& a, const auto& b) { return a.j < b.j; });

  rotation(s);
  uncompute_angle(s);
  uncompute_phase_estimation(s);

  double clean = 0.0, total = 0.0;
  for (const auto& [key, amp] : s.sorted_entries()) {
    total += std::norm(amp);
    BasisKey rest = key;
    rest.write(b_, 0);
    rest.write(r_, 0);
    if (rest.none()) clean += std::norm(amp);
  }
  out.work_residual = std::max(0.0, 1.0 - clean / total);
  out.max_support = s.max_support();
  out.leaked_norm = s.leaked_norm();

  auto post = postselect(s, r_[0], true);
  out.success_probability = post.probability;
  out.repetition_estimate = static_cast<std::uint64_t>(std::ceil(1.0 / post.probability));
  out.amplitudes.assign(big_n, Complex(0.0));
  for (const auto& [key, amp] : post.state.sorted_entries()) {
    BasisKey rest = key;
    rest.write(b_, 0);
    rest.write(r_, 0);
    if (rest.none()) out.amplitudes[key.read(b_)] = amp;
  }
  double norm = 0.0;
  for (const auto& a : out.amplitudes) norm += std::norm(a);
  std::size_t peak = 0;
  for (std::size_t k = 0; k < big_n; ++k) {
    if (std::abs(out.amplitudes[k]) > std::abs(out.amplitudes[peak])) peak = k;
  }
  // Global phase chosen so that the largest amplitude is real and positive.
  const Complex phase = std::abs(out.amplitudes[peak]) > 0 ? std::conj(out.amplitudes[peak]) / std::abs(out.amplitudes[peak]) : 1.0;
  for (auto& a : out.amplitudes) a = a * phase / std::sqrt(norm);

  PoissonProblem p = config_;
  p.rhs.assign(rhs.begin(), rhs.end());
  const auto b = p.normalized_rhs();
  // Classical reference on the real right-hand side (imaginary parts solve independently).
  std::vector<double> re(big_n - 1), im(big_n - 1);
  for (std::size_t k = 1; k < big_n; ++k) {
    re[k - 1] = b[k].real();
    im[k - 1] = b[k].imag();
  }
  const auto vr = tridiag_solve(static_cast<unsigned>(big_n), re);
  const auto vi = tridiag_solve(static_cast<unsigned>(big_n), im);
  std::vector<Complex> v(big_n, 0.0);
  double vn = 0.0;
  for (std::size_t k = 1; k < big_n; ++k) {
    v[k] = Complex(vr[k - 1], vi[k - 1]);
    vn += std::norm(v[k]);
  }
  const Complex vphase = std::abs(v[peak]) > 0 ? std::conj(v[peak]) / std::abs(v[peak]) : 1.0;
  out.classical_direction.assign(big_n, 0.0);
  for (std::size_t k = 0; k < big_n; ++k) {
    const Complex c = v[k] * vphase / std::sqrt(vn);
    out.classical_direction[k] = c.real();
    out.max_abs_error = std::max(out.max_abs_error, std::abs(out.amplitudes[k] - c));
  }
  out.qubits = layout_.total();
  out.gates = 2 * pe_->size() + 2 * angle_->size() + rot_->size();
  return out;
}

Circuit HhlPipeline::full_circuit() const {
  Circuit c(layout_);
  c.append(*pe_);
  c.append(*angle_);
  c.append(*rot_);
  c.append(angle_->inverse());
  c.append(pe_->inverse());
  return c;
}

SparseState phase_estimation(const PoissonProblem& problem) {
  HhlPipeline p(problem);
  SparseState s = p.prepare(problem.rhs);
  p.phase_estimation(s);
  return s;
}

PoissonSolution solve(const PoissonProblem& problem) {
  return HhlPipeline(problem).solve(problem.rhs);
}

PoissonSolution run_demo_simplified(const PoissonProblem& problem) {
  return HhlPipeline(problem, PipelineVariant::Simplified).solve(problem.rhs);
}

}  // namespace qfps

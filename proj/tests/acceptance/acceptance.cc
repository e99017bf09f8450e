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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "qfps/arith.hpp"
#include "qfps/classical_ref.hpp"
#include "qfps/fixed_point.hpp"
#include "qfps/func_circuits.hpp"
#include "qfps/hhl_poisson.hpp"
#include "qfps/resources.hpp"
#include "qfps/sparse_state.hpp"
#include "qfps/spectral.hpp"
#include "test_util.hpp"

namespace qfps {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using testing::make_key;
using testing::others_zero;
using testing::run_basis;

constexpr double kPi = std::numbers::pi;
const Complex kI(0, 1);

// Collects failed expectations of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }
  bool failed() const { return failed_; }
  std::string summary() const {
    std::string s = notes_;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + std::string("mismatch: ") + f;
    return s;
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::string notes_;
};

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(4);
  o << v;
  return o.str();
}

// Runs a function circuit on one input; checks input preservation and clean ancillas.
std::uint64_t run_func(const FuncCircuit& f, const CompiledCircuit& compiled, std::uint64_t x, Check& c) {
  const BasisKey out = run_basis(compiled, f.circuit.layout(), make_key({{&f.input, x}}));
  c.expect(out.read(f.input) == x, "input overwritten");
  c.expect(others_zero(out, f.circuit.layout(), {&f.input, &f.output}), "dirty ancilla");
  return out.read(f.output);
}

CompiledCircuit compile(const Circuit& c) { return CompiledCircuit(std::make_shared<const Circuit>(c)); }

// ---------------------------------------------------------------------------

void function_rows(Check& c) {
  struct Row {
    std::string in, out;
  };
  const std::vector<Row> sqrt_rows{{"0010", "01.01"}, {"0111", "10.10"}, {"1001", "11.00"}, {"1111", "11.11"}};
  const std::vector<Row> recip_rows{{"0010", "0.1000"}, {"0011", "0.0101"}, {"1000", "0.0010"}, {"1111", "0.0001"}};
  const std::vector<Row> cos_rows{{"00", "01.000"}, {"01", "00.101"}, {"10", "00.000"}, {"11", "11.011"}};

  const auto sq = build_sqrt(4);
  const auto sq_c = compile(sq.circuit);
  for (const auto& r : sqrt_rows) {
    const auto x = std::stoull(r.in, nullptr, 2);
    const auto oracle = FixedPoint::from_bits(nr_sqrt(x, 4).root, 4, 2, false).to_binary_string();
    c.expect(oracle == r.out, "sqrt oracle " + r.in + " -> " + oracle);
    const auto circuit = format_output(sq, run_func(sq, sq_c, x, c));
    c.expect(circuit == r.out, "sqrt circuit " + r.in + " -> " + circuit);
  }
  const auto rc = build_recip(4);
  const auto rc_c = compile(rc.circuit);
  for (const auto& r : recip_rows) {
    const auto x = std::stoull(r.in, nullptr, 2);
    const auto oracle = "0" + FixedPoint::from_bits(nr_reciprocal(x, 4).quotient, 4, 4, false).to_binary_string();
    c.expect(oracle == r.out, "recip oracle " + r.in + " -> " + oracle);
    const auto circuit = format_output(rc, run_func(rc, rc_c, x, c));
    c.expect(circuit == r.out, "recip circuit " + r.in + " -> " + circuit);
  }
  const auto cs = build_cos(2, 3);
  const auto cs_c = compile(cs.circuit);
  for (const auto& r : cos_rows) {
    const auto j = std::stoull(r.in, nullptr, 2);
    const auto oracle = plouffe_cos(j, 2, 3).to_binary_string();
    c.expect(oracle == r.out, "cos oracle " + r.in + " -> " + oracle);
    const auto circuit = format_output(cs, run_func(cs, cs_c, j, c));
    c.expect(circuit == r.out, "cos circuit " + r.in + " -> " + circuit);
  }
  const auto lambda = FixedPoint::parse("01.00", false);
  const auto oracle = plouffe_arccot(lambda, 2).to_binary_string();
  c.expect(oracle == ".01", "arccot oracle -> " + oracle);
  const auto an = build_angle(4, {.in_frac = 2, .out_bits = 2});
  const auto circuit = format_output(an, run_func(an, compile(an.circuit), lambda.bits(), c));
  c.expect(circuit == ".01", "arccot circuit -> " + circuit);
  c.note("13 rows, oracle and circuit");
}

void digit_traces(Check& c) {
  const auto root = sqrt_fixed(FixedPoint::parse("01.00", false)).to_binary_string();
  c.expect(root == "01.00", "sqrt(01.00) = " + root);
  const auto r = nr_reciprocal(0b1000, 4);
  std::string digits;
  for (std::size_t i = 0; i < std::min<std::size_t>(4, r.digits.size()); ++i) digits += std::to_string(r.digits[i]);
  c.expect(digits == "0001", "1/1000 digits " + digits);
  c.note("sqrt(01.00) = " + root + ", 1/1000 digits " + digits);
}

void demo_solve(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = solve(demo_problem(6));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double classical[] = {0.553, 0.674, 0.490};
  const double reference[] = {0.551, 0.675, 0.491};
  std::string amps;
  for (int k = 1; k <= 3; ++k) {
    const Complex a = s.amplitudes[static_cast<std::size_t>(k)];
    amps += (k > 1 ? "," : "") + fmt(a.real());
    c.expect(std::abs(a - classical[k - 1]) <= 0.01, "classical tuple entry " + std::to_string(k));
    c.expect(std::abs(a - reference[k - 1]) <= 0.01, "second reference tuple entry " + std::to_string(k));
  }
  c.expect(std::abs(s.amplitudes[0]) < 1e-9, "boundary amplitude");
  c.expect(s.success_probability >= 0.010 && s.success_probability <= 0.013, "success probability");
  c.expect(secs < 60, "runtime " + fmt(secs) + " s");
  c.note("f=6 amplitudes (" + amps + "), p=" + fmt(s.success_probability) + ", " + fmt(secs) + " s");
}

// ---------------------------------------------------------------------------

void adder_exhaustive(const AdderSpec& spec, Check& c, std::size_t& cases) {
  const auto built = build_adder(spec);
  const auto compiled = compile(built.circuit);
  const unsigned w = spec.width;
  const bool full = spec.kind == AdderKind::Full;
  const std::uint64_t bmod = 1ULL << (w + (full ? 1 : 0));
  for (unsigned ctl = 0; ctl < (spec.controlled ? 2u : 1u); ++ctl) {
    for (std::uint64_t a = 0; a < (1ULL << w); ++a) {
      const std::uint64_t b_limit = full && !spec.reversed ? (1ULL << w) : bmod;
      for (std::uint64_t b = 0; b < b_limit; ++b, ++cases) {
        BasisKey in = make_key({{&built.a, a}, {&built.b, b}});
        if (built.control) in.write(*built.control, ctl);
        const BasisKey out = run_basis(compiled, built.circuit.layout(), in);
        std::uint64_t expect = b;
        if (!spec.controlled || ctl == 1) expect = spec.reversed ? (b + bmod - a) % bmod : (a + b) % bmod;
        const bool ok = out.read(built.a) == a && out.read(built.b) == expect &&
                        others_zero(out, built.circuit.layout(), {&built.a, &built.b, built.control ? &*built.control : &built.a});
        c.expect(ok, "adder w=" + std::to_string(w) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
      }
    }
  }
}

void exhaustive_circuits(Check& c) {
  std::size_t adders = 0;
  for (unsigned w = 1; w <= 6; ++w) {
    for (AdderKind kind : {AdderKind::Full, AdderKind::Modular}) {
      for (bool reversed : {false, true}) {
        for (bool controlled : {false, true}) adder_exhaustive({w, kind, reversed, controlled}, c, adders);
      }
    }
  }
  std::size_t funcs = 0;
  for (unsigned m : {4u, 6u}) {
    const auto f = build_sqrt(m);
    const auto cc = compile(f.circuit);
    for (std::uint64_t x = 0; x < (1ULL << m); ++x, ++funcs) {
      c.expect(run_func(f, cc, x, c) == nr_sqrt(x, m).root, "sqrt m=" + std::to_string(m) + " x=" + std::to_string(x));
    }
  }
  for (unsigned m : {4u, 5u, 6u}) {
    const auto f = build_recip(m);
    const auto cc = compile(f.circuit);
    for (std::uint64_t x = 1; x < (1ULL << m); ++x, ++funcs) {
      c.expect(run_func(f, cc, x, c) == nr_reciprocal(x, m).quotient, "recip m=" + std::to_string(m) + " x=" + std::to_string(x));
    }
  }
  for (unsigned n = 1; n <= 3; ++n) {
    for (unsigned frac : {0u, 3u, 6u}) {
      const auto f = build_evc(n, 2 * n + 2 + frac);
      const auto cc = compile(f.circuit);
      for (std::uint64_t j = 0; j < (1ULL << n); ++j, ++funcs) {
        c.expect(run_func(f, cc, j, c) == evc_value(j, n, frac).bits(), "evc n=" + std::to_string(n) + " j=" + std::to_string(j));
      }
    }
  }
  c.note(std::to_string(adders) + " adder cases, " + std::to_string(funcs) + " function cases");
}

// ---------------------------------------------------------------------------

MatrixXd sine_matrix(int big_n) {
  MatrixXd s(big_n - 1, big_n - 1);
  for (int j = 1; j < big_n; ++j) {
    for (int k = 1; k < big_n; ++k) s(j - 1, k - 1) = std::sqrt(2.0 / big_n) * std::sin(kPi * j * k / big_n);
  }
  return s;
}

MatrixXcd expi(const MatrixXd& a, double t) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
  const Eigen::VectorXcd phases = (es.eigenvalues().cast<Complex>() * kI * t).array().exp();
  return es.eigenvectors().cast<Complex>() * phases.asDiagonal() * es.eigenvectors().transpose().cast<Complex>();
}

void spectral_identities(Check& c) {
  double worst_s = 0, worst_t = 0, worst_exp = 0, allowance = 0, worst_kron = 0;
  for (unsigned n = 1; n <= 3; ++n) {
    const int big_n = 1 << n;
    const MatrixXd sine = sine_matrix(big_n);
    // Sine transform: matches S on a = 1, b != 0 and squares to the identity there.
    const auto op = build_sine_transform(n);
    const MatrixXcd m1 = to_matrix(op.circuit);
    Circuit twice = op.circuit;
    twice.append(op.circuit);
    const MatrixXcd m2 = to_matrix(twice);
    for (int j = 1; j < big_n; ++j) {
      for (int k = 1; k < big_n; ++k) worst_s = std::max(worst_s, std::abs(m1(big_n + k, big_n + j) - sine(k - 1, j - 1)));
      for (int k = 0; k < 2 * big_n; ++k) worst_s = std::max(worst_s, std::abs(m2(k, big_n + j) - (k == big_n + j ? 1.0 : 0.0)));
    }
    // T^dagger F_2N T: -iS on the sine block, conjugated DCT-I on the cosine block.
    const auto t = build_tn(n);
    Circuit comp = t.circuit;
    std::vector<Qubit> wide = t.b.qubits();
    wide.push_back(t.a[0]);
    append_inverse_qft(comp, wide);
    comp.append(t.circuit.inverse());
    const MatrixXcd m = to_matrix(comp);
    for (int j = 1; j < big_n; ++j) {
      for (int k = 1; k < big_n; ++k) worst_t = std::max(worst_t, std::abs(m(big_n + k, big_n + j) + kI * sine(k - 1, j - 1)));
      for (int row = 0; row <= big_n; ++row) worst_t = std::max(worst_t, std::abs(m(row, big_n + j)));
    }
    const double r = 1 / std::sqrt(2.0);
    MatrixXd dct(big_n + 1, big_n + 1), mix = MatrixXd::Identity(big_n + 1, big_n + 1);
    for (int k = 0; k <= big_n; ++k) {
      for (int j = 0; j <= big_n; ++j) {
        const double ek = (k == 0 || k == big_n) ? r : 1.0, ej = (j == 0 || j == big_n) ? r : 1.0;
        dct(k, j) = std::sqrt(2.0 / big_n) * ek * ej * std::cos(kPi * k * j / big_n);
      }
    }
    mix(0, 0) = r, mix(0, big_n) = r, mix(big_n, 0) = r, mix(big_n, big_n) = -r;
    const MatrixXd cos_block = mix.transpose() * dct * mix;
    for (int k = 0; k <= big_n; ++k) {
      for (int j = 0; j <= big_n; ++j) worst_t = std::max(worst_t, std::abs(m(k, j) - cos_block(k, j)));
    }
    // Controlled e^{iAt}, with t = 2 pi 2^(l+f) / 2^m, against the dense exponential.
    for (unsigned f : {0u, 2u}) {
      const unsigned width = 2 * n + 2 + f;
      for (unsigned l = 0; l < 2; ++l) {
        const auto cu = build_controlled_u_power(l, n, width);
        std::vector<Qubit> io = cu.b.qubits();
        io.push_back(cu.control[0]);
        const auto eff = effective_operator(cu.circuit, io);
        MatrixXcd on(big_n - 1, big_n - 1);
        for (int j = 1; j < big_n; ++j) {
          for (int k = 1; k < big_n; ++k) on(k - 1, j - 1) = eff.matrix(big_n + k, big_n + j);
        }
        const double time = 2 * kPi * std::ldexp(1.0, static_cast<int>(l + f) - static_cast<int>(width));
        const double truncation = time * std::ldexp(1.0, -static_cast<int>(f));
        const double err = (on - exp_i(laplacian_matrix(static_cast<unsigned>(big_n)), time)).cwiseAbs().maxCoeff();
        if (err > worst_exp) worst_exp = err, allowance = 1e-6 + truncation;
        c.expect(err <= 1e-6 + truncation, "exp(iAt) n=" + std::to_string(n) + " f=" + std::to_string(f) + " l=" + std::to_string(l));
      }
    }
  }
  for (unsigned d = 1; d <= 3; ++d) {
    for (unsigned big_n : {2u, 3u, 4u}) worst_kron = std::max(worst_kron, exp_factorization_error(big_n, d, 0.3));
  }
  c.expect(worst_s < 1e-10, "sine transform");
  c.expect(worst_t < 1e-10, "T block structure");
  c.expect(worst_kron < 1e-8, "tensor factorization");
  c.note("S " + fmt(worst_s) + ", T " + fmt(worst_t) + ", exp " + fmt(worst_exp) + " (allowed " + fmt(allowance) + "), factorization " +
         fmt(worst_kron));
}

// ---------------------------------------------------------------------------

void error_model(Check& c) {
  std::vector<std::vector<double>> gaps;
  for (unsigned shift = 0; shift <= 3; ++shift) {
    auto p = demo_problem(6);
    p.shift = shift;
    const auto s = solve(p);
    std::vector<double> g;
    for (const auto& d : s.diagnostics) g.push_back(std::abs(d.inv_lambda_hat - d.inv_lambda_tilde));
    gaps.push_back(g);
  }
  c.expect(gaps[0].size() == 3, "three demo branches");
  for (double g : gaps[0]) c.expect(g < std::ldexp(1.0, -10), "shift 0 gap " + fmt(g));
  for (unsigned i = 1; i < gaps.size(); ++i) {
    for (std::size_t j = 0; j < gaps[i].size(); ++j) {
      c.expect(gaps[i][j] <= std::ldexp(1.0, -2 * static_cast<int>(i) - 10), "shift " + std::to_string(i) + " gap bound");
      c.expect(gaps[i][j] < gaps[i - 1][j], "shift " + std::to_string(i) + " gap decreases");
    }
  }
  double worst_ratio = 0;
  for (unsigned f = 3; f <= 8; ++f) {
    for (unsigned shift = 0; shift <= 3; ++shift) {
      auto p = demo_problem(f);
      p.shift = shift;
      const auto s = solve(p);
      std::vector<double> re;
      for (std::size_t k = 1; k < p.rhs.size(); ++k) re.push_back(p.normalized_rhs()[k].real());
      const double bound = direction_error_bound(error_bound(f, shift, p.w()), 4, re);
      worst_ratio = std::max(worst_ratio, s.max_abs_error / bound);
      c.expect(s.max_abs_error <= bound, "f=" + std::to_string(f) + " i=" + std::to_string(shift) + " error " +
                                             fmt(s.max_abs_error) + " > " + fmt(bound));
    }
  }
  c.note("shift-0 gaps (" + fmt(gaps[0][0]) + "," + fmt(gaps[0][1]) + "," + fmt(gaps[0][2]) + "), max error/bound " +
         fmt(worst_ratio) + " over 24 runs");
}

void scaling(Check& c) {
  const auto adder = fit_scaling(Family::Adder, 4, 12);
  c.expect(adder.max_step_deviation <= 0.1, "adder not linear");
  std::string s = "adder step deviation " + fmt(adder.max_step_deviation);
  const std::pair<Family, double> power[] = {
      {Family::Sqrt, 2.0}, {Family::Recip, 2.0}, {Family::Evc, 3.0}, {Family::Angle, 3.0}};
  for (const auto& [family, expect] : power) {
    const auto fit = fit_scaling(family, 4, 12);
    s += ", " + family_name(family) + " slope " + fmt(fit.loglog_slope);
    c.expect(std::abs(fit.loglog_slope - expect) <= 0.3, family_name(family) + " slope " + fmt(fit.loglog_slope) +
                                                             " outside " + fmt(expect) + "+-0.3");
  }
  c.note(s);
}

void condition_numbers(Check& c) {
  double worst = 0;
  for (unsigned big_n = 2; big_n <= 64; ++big_n) {
    const MatrixXd a = laplacian_matrix(big_n);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
    const double ratio = ev.maxCoeff() / ev.minCoeff();
    const double closed = 1 / std::pow(std::tan(kPi / (2.0 * big_n)), 2);
    worst = std::max({worst, std::abs(condition_number(big_n) - ratio) / ratio, std::abs(condition_number(big_n) - closed) / closed});
  }
  c.expect(worst <= 1e-10, "relative deviation " + fmt(worst));
  const double k4 = condition_number(4);
  c.expect(std::abs(k4 - (3 + 2 * std::sqrt(2.0))) < 1e-12, "kappa(4) = " + fmt(k4));
  c.note("max relative deviation " + fmt(worst) + ", kappa(4) = " + std::to_string(k4));
}

void cli_checks(Check& c) {
  const std::string cmd = std::string("python3 ") + QFPS_CLI_CHECKER + " --qfps " + QFPS_CLI_BINARY + " --schemas " +
                          QFPS_SCHEMA_DIR;
  const int rc = std::system(cmd.c_str());
  c.expect(rc == 0, "cli checker exit status " + std::to_string(rc));
  c.note("schema, determinism and exit-code cases");
}

}  // namespace
}  // namespace qfps

int main(int argc, char** argv) {
  using qfps::Check;
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"function table rows, oracle and circuit", qfps::function_rows},
      {"digit recurrence traces", qfps::digit_traces},
      {"demo Poisson solve", qfps::demo_solve},
      {"exhaustive circuit equivalence", qfps::exhaustive_circuits},
      {"spectral identities", qfps::spectral_identities},
      {"error model", qfps::error_model},
      {"resource scaling", qfps::scaling},
      {"condition number", qfps::condition_numbers},
      {"CLI determinism and schemas", qfps::cli_checks},
  };
  CLI::App app{"Acceptance checks"};
  std::vector<unsigned> selected;
  app.add_option("--criterion", selected, "criteria to run (default all)")->check(CLI::Range(1u, 9u));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) {
    for (unsigned i = 1; i <= criteria.size(); ++i) selected.push_back(i);
  }
  bool all = true;
  for (unsigned id : selected) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[id - 1].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.failed() ? "FAIL" : "PASS") << " " << id << " " << criteria[id - 1].first << " [" << qfps::fmt(secs)
              << " s]: " << c.summary() << std::endl;
    all = all && !c.failed();
  }
  return all ? 0 : 1;
}

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

#include "qfps_cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "qfps/classical_ref.hpp"
#include "qfps/errors.hpp"
#include "qfps/fixed_point.hpp"
#include "qfps/func_circuits.hpp"
#include "qfps/hhl_poisson.hpp"
#include "qfps/resources.hpp"
#include "qfps/sparse_state.hpp"

namespace qfps::cli {

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simulation noise below this is printed as zero.
constexpr double kNoise = 1e-14;

double num(double v) { return round12(std::abs(v) < kNoise ? 0.0 : v); }

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round12(v));
  return buf;
}

std::filesystem::path resolve(const std::string& p) {
  std::filesystem::path path(p);
  const char* dir = std::getenv("QFPS_OUTPUT_DIR");
  if (path.is_relative() && dir != nullptr && *dir != '\0') path = std::filesystem::path(dir) / path;
  return path;
}

void write_file(const std::string& target, const std::string& content) {
  const auto path = resolve(target);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path.string());
  f << content;
}

void emit(const std::string& doc, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << doc;
  } else {
    write_file(output, doc);
  }
}

std::vector<Complex> parse_numbers(const std::string& text) {
  std::string s = text;
  for (char& ch : s) {
    if (ch == ',' || ch == ';') ch = ' ';
  }
  std::istringstream in(s);
  std::vector<Complex> v;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: " + tok);
    }
    if (used != tok.size()) throw UsageError("not a number: " + tok);
    v.emplace_back(x);
  }
  return v;
}

Json complex_array(const std::vector<Complex>& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(Json::array({num(z.real()), num(z.imag())}));
  return a;
}

// --- solve -----------------------------------------------------------------

struct SolveOptions {
  unsigned n = 2;
  unsigned f = 6;
  unsigned shift = 0;
  unsigned angle_bits = 0;
  std::string rhs;
  std::string rhs_file;
  bool random = false;
  std::uint64_t seed = 1;
  std::string kickback = "phase";
  bool simplified = false;
  std::string format = "json";
  std::string output;
  std::string netlist;
};

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  PoissonProblem p;
  p.n = o.n;
  p.f = o.f;
  p.shift = o.shift;
  p.angle_bits = o.angle_bits;
  p.kickback = o.kickback == "fourier" ? KickbackMode::FourierAdder : KickbackMode::PhaseGates;
  const int sources = (o.rhs.empty() ? 0 : 1) + (o.rhs_file.empty() ? 0 : 1) + (o.random ? 1 : 0);
  if (sources != 1) throw UsageError("give exactly one of --rhs, --rhs-file, --random");
  if (o.n == 0 || o.n > 8) throw UsageError("--n must be in [1, 8]");
  if (!o.rhs.empty()) p.rhs = parse_numbers(o.rhs);
  if (!o.rhs_file.empty()) {
    std::ifstream f(o.rhs_file);
    if (!f) throw UsageError("cannot read " + o.rhs_file);
    std::stringstream ss;
    ss << f.rdbuf();
    p.rhs = parse_numbers(ss.str());
  }
  if (o.random) {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> g;
    p.rhs.assign(std::size_t{1} << o.n, 0.0);
    for (std::size_t k = 1; k < p.rhs.size(); ++k) p.rhs[k] = g(rng);
  }
  const auto b = p.normalized_rhs();

  const HhlPipeline pipe(p, o.simplified ? PipelineVariant::Simplified : PipelineVariant::Full);
  const PoissonSolution s = pipe.solve(p.rhs);
  if (!o.netlist.empty()) write_file(o.netlist, to_netlist(pipe.full_circuit()));

  bool real_rhs = true;
  std::vector<double> re;
  for (std::size_t k = 1; k < b.size(); ++k) {
    real_rhs = real_rhs && b[k].imag() == 0.0;
    re.push_back(b[k].real());
  }
  Json bound = nullptr;
  if (real_rhs) bound = num(direction_error_bound(error_bound(p.f, p.shift, p.w()), 1u << p.n, re));

  Json doc;
  doc["command"] = "solve";
  doc["n"] = p.n;
  doc["f"] = p.f;
  doc["shift"] = p.shift;
  doc["m"] = p.m();
  doc["angle_bits"] = p.w();
  doc["kickback"] = o.kickback;
  doc["variant"] = o.simplified ? "simplified" : "full";
  doc["rhs"] = complex_array(b);
  doc["amplitudes"] = complex_array(s.amplitudes);
  doc["success_probability"] = num(s.success_probability);
  doc["repetition_estimate"] = s.repetition_estimate;
  Json ref = Json::array();
  for (double v : s.classical_direction) ref.push_back(num(v));
  doc["classical_reference"] = ref;
  doc["max_abs_error"] = num(s.max_abs_error);
  doc["error_bound"] = bound;
  Json diag = Json::array();
  for (const auto& d : s.diagnostics) {
    diag.push_back({{"j", d.j},
                    {"weight", num(d.weight)},
                    {"lambda", num(d.lambda)},
                    {"lambda_hat", num(d.lambda_hat)},
                    {"omega", num(d.omega)},
                    {"inv_lambda_hat", num(d.inv_lambda_hat)},
                    {"inv_lambda_tilde", num(d.inv_lambda_tilde)},
                    {"inv_lambda_circuit", num(d.inv_lambda_circuit)}});
  }
  doc["diagnostics"] = diag;
  doc["work_residual"] = num(s.work_residual);
  doc["qubits"] = s.qubits;
  doc["gates"] = s.gates;
  doc["max_support"] = s.max_support;

  if (o.format == "json") {
    emit(doc.dump(2) + "\n", o.output, out);
    return kSuccess;
  }
  std::ostringstream t;
  t << "amplitudes:";
  for (const auto& a : s.amplitudes) t << ' ' << fmt12(std::abs(a.imag()) < kNoise ? a.real() : std::abs(a));
  t << "\nclassical:";
  for (double v : s.classical_direction) t << ' ' << fmt12(v);
  t << "\nmax_abs_error: " << fmt12(s.max_abs_error) << "\nsuccess_probability: " << fmt12(s.success_probability)
    << "\nrepetition_estimate: " << s.repetition_estimate << "\nqubits: " << s.qubits << "\ngates: " << s.gates << "\n";
  for (const auto& d : s.diagnostics) {
    t << "branch " << d.j << ": lambda " << fmt12(d.lambda) << " lambda_hat " << fmt12(d.lambda_hat) << " omega "
      << fmt12(d.omega) << " 1/lambda_tilde " << fmt12(d.inv_lambda_circuit) << "\n";
  }
  emit(t.str(), o.output, out);
  return kSuccess;
}

// --- func ------------------------------------------------------------------

struct FuncOptions {
  std::string which;
  unsigned m = 0;
  std::string x;
  unsigned n = 2;
  std::uint64_t j = 0;
  unsigned frac = 0;
  unsigned bits = 0;
  std::string format = "text";
  std::string output;
  std::string netlist;
};

std::string binary(std::uint64_t v, unsigned width) {
  std::string s;
  for (unsigned i = width; i-- > 0;) s.push_back(((v >> i) & 1U) != 0 ? '1' : '0');
  return s;
}

std::uint64_t run_function(const FuncCircuit& f, std::uint64_t input) {
  BasisKey key;
  key.write(f.input, input);
  SparseState s = SparseState::basis(f.circuit.layout(), key);
  apply(s, f.circuit);
  const auto entries = s.sorted_entries();
  if (entries.size() != 1) throw ResourceError("function circuit did not return a basis state");
  return entries[0].first.read(f.output);
}

FixedPoint parse_binary(const std::string& text) {
  if (text.empty()) throw UsageError("--x is required");
  for (char ch : text) {
    if (ch != '0' && ch != '1' && ch != '.') throw UsageError("--x must be a binary string: " + text);
  }
  return FixedPoint::parse(text, false);
}

int cmd_func(const FuncOptions& o, std::ostream& out) {
  FuncCircuit fc;
  std::string input;
  std::uint64_t payload = 0;
  std::uint64_t oracle = 0;
  double exact = 0.0;
  if (o.which == "sqrt" || o.which == "recip") {
    const FixedPoint x = parse_binary(o.x);
    if (x.frac() != 0) throw UsageError("--x is an integer bit string here");
    const unsigned m = o.m == 0 ? x.width() : o.m;
    if (x.width() != m) throw UsageError("--x must have exactly --m digits");
    if (m > 24) throw UsageError("--m must be at most 24");
    input = binary(x.bits(), m);
    payload = x.bits();
    if (o.which == "sqrt") {
      if (m % 2 != 0) throw DomainError("square root width must be even");
      fc = build_sqrt(m);
      oracle = nr_sqrt(payload, m).root;
      exact = std::sqrt(static_cast<double>(payload));
    } else {
      if (payload == 0) throw DomainError("reciprocal input must be at least 1");
      fc = build_recip(m);
      oracle = nr_reciprocal(payload, m).quotient;
      exact = 1.0 / static_cast<double>(payload);
    }
  } else if (o.which == "cos") {
    if (o.n == 0 || o.n > 8) throw UsageError("--n must be in [1, 8]");
    if (o.j >= (std::uint64_t{1} << o.n)) throw DomainError("--j must be below 2^n");
    const unsigned frac = o.frac == 0 ? o.n + 1 : o.frac;
    fc = build_cos(o.n, frac);
    input = binary(o.j, o.n);
    payload = o.j;
    oracle = plouffe_cos(o.j, o.n, frac).bits();
    exact = std::cos(std::numbers::pi * static_cast<double>(o.j) / std::ldexp(1.0, static_cast<int>(o.n)));
  } else {
    const FixedPoint x = parse_binary(o.x);
    if (x.width() > 24) throw UsageError("--x must have at most 24 digits");
    const unsigned bits = o.bits == 0 ? std::max(1u, x.frac()) : o.bits;
    fc = build_angle(x.width(), {.in_frac = x.frac(), .out_bits = bits});
    input = x.to_binary_string();
    payload = x.bits();
    oracle = plouffe_arccot(x, bits).bits();
    exact = x.to_double() == 0.0 ? 0.5 : std::atan(1.0 / x.to_double()) / std::numbers::pi;
  }
  const std::uint64_t got = run_function(fc, payload);
  if (!o.netlist.empty()) write_file(o.netlist, to_netlist(fc.circuit));
  const std::string got_s = format_output(fc, got);
  const std::string oracle_s = format_output(fc, oracle);
  const double decoded = FixedPoint::from_bits(got, fc.output.width, fc.output_frac, fc.output_signed).to_double();
  const auto counts = tally(fc.circuit);

  if (o.format == "json") {
    Json doc;
    doc["command"] = "func";
    doc["function"] = o.which;
    doc["input"] = input;
    doc["output"] = got_s;
    doc["decoded"] = num(decoded);
    doc["oracle"] = oracle_s;
    doc["exact"] = num(exact);
    doc["match"] = got == oracle;
    doc["qubits"] = fc.circuit.num_qubits();
    doc["gates"] = fc.circuit.size();
    doc["elementary_gates"] = counts.elementary;
    emit(doc.dump(2) + "\n", o.output, out);
  } else {
    std::ostringstream t;
    t << got_s << "\ndecoded: " << fmt12(decoded) << "\noracle: " << oracle_s << "\nexact: " << fmt12(exact)
      << "\nmatch: " << (got == oracle ? "true" : "false") << "\n";
    emit(t.str(), o.output, out);
  }
  return kSuccess;
}

// --- report ----------------------------------------------------------------

struct ReportOptions {
  unsigned n = 2;
  unsigned f = 6;
  unsigned d = 1;
  unsigned shift = 0;
  bool curves = false;
  double alpha = 0.5;
  unsigned dmax = 8;
  unsigned eps_bits = 23;
  std::string format;
  std::string output;
};

int cmd_report(const ReportOptions& o, std::ostream& out) {
  if (o.curves) {
    const auto rows = complexity_curves(o.alpha, o.dmax, o.eps_bits);
    if (o.format == "json") {
      Json doc;
      doc["command"] = "curves";
      doc["alpha"] = num(o.alpha);
      doc["eps_bits"] = o.eps_bits;
      Json a = Json::array();
      for (const auto& r : rows) {
        a.push_back({{"d", r.d}, {"classical", num(r.classical)}, {"cao", num(r.cao)}, {"present", num(r.present)}, {"hhl", num(r.hhl)}});
      }
      doc["rows"] = a;
      emit(doc.dump(2) + "\n", o.output, out);
    } else {
      std::ostringstream t;
      t << "d,classical,cao,present,hhl\n";
      for (const auto& r : rows) {
        t << r.d << ',' << fmt12(r.classical) << ',' << fmt12(r.cao) << ',' << fmt12(r.present) << ',' << fmt12(r.hhl) << "\n";
      }
      emit(t.str(), o.output, out);
    }
    return kSuccess;
  }
  if (o.n == 0 || o.n > 8) throw UsageError("--n must be in [1, 8]");
  if (o.d == 0 || o.d > 16) throw UsageError("--d must be in [1, 16]");
  const auto r = resource_report(o.n, o.f, o.d, o.shift);
  if (o.format == "csv") {
    std::ostringstream t;
    t << "stage,qubits,gates,elementary,closed_qubits,closed_gates\n";
    for (const auto& s : r.stages) {
      t << s.name << ',' << s.measured.qubits << ',' << s.measured.gates << ',' << s.measured.elementary << ','
        << fmt12(s.closed_qubits) << ',' << fmt12(s.closed_gates) << "\n";
    }
    emit(t.str(), o.output, out);
    return kSuccess;
  }
  Json doc;
  doc["command"] = "report";
  doc["n"] = r.n;
  doc["f"] = r.f;
  doc["d"] = r.d;
  doc["shift"] = r.shift;
  doc["m"] = r.m;
  doc["measured"] = r.measured;
  doc["warning"] = r.warning;
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    Json row;
    row["name"] = s.name;
    if (r.measured) {
      row["qubits"] = s.measured.qubits;
      row["gates"] = s.measured.gates;
      row["elementary"] = s.measured.elementary;
    } else {
      row["qubits"] = nullptr;
      row["gates"] = nullptr;
      row["elementary"] = nullptr;
    }
    row["closed_qubits"] = num(s.closed_qubits);
    row["closed_gates"] = num(s.closed_gates);
    stages.push_back(row);
  }
  doc["stages"] = stages;
  doc["closed_form_note"] = "leading terms only";
  doc["error_model"] = {{"eigen_term", num(r.error.eigen_term)},
                        {"omission_term", num(r.error.omission_term)},
                        {"angle_term", num(r.error.angle_term)},
                        {"total", num(r.error.total)}};
  doc["complexity"] = {{"qubits", r.qubit_class}, {"gates", r.gate_class}};
  emit(doc.dump(2) + "\n", o.output, out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum fast Poisson solver: circuits, simulation and resource reports", "qfps"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Simulate the full solver on a right-hand side");
  solve->add_option("--n", so.n, "log2 of the number of intervals")->required();
  solve->add_option("--f", so.f, "eigenvalue fraction bits")->capture_default_str();
  solve->add_option("--shift", so.shift, "eigenvalue scaling exponent before the angle stage")->capture_default_str();
  solve->add_option("--angle-bits", so.angle_bits, "angle register width (0: m + shift)")->capture_default_str();
  solve->add_option("--rhs", so.rhs, "comma separated right-hand side, index 0 must be 0");
  solve->add_option("--rhs-file", so.rhs_file, "file with the right-hand side values");
  solve->add_flag("--random", so.random, "random right-hand side from --seed");
  solve->add_option("--seed", so.seed, "seed for --random")->capture_default_str();
  solve->add_option("--kickback", so.kickback)->check(CLI::IsMember({"phase", "fourier"}))->capture_default_str();
  solve->add_flag("--simplified", so.simplified, "load eigenvalues and angles from tables");
  solve->add_option("--format", so.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  solve->add_option("--output", so.output, "write the document to a file");
  solve->add_option("--emit-netlist", so.netlist, "write the circuit netlist to a file");

  FuncOptions fo;
  auto* func = app.add_subcommand("func", "Run one function circuit against its digit oracle");
  func->add_option("which", fo.which)->required()->check(CLI::IsMember({"sqrt", "recip", "cos", "arccot"}));
  func->add_option("--m", fo.m, "input width for sqrt and recip");
  func->add_option("--x", fo.x, "binary input, e.g. 0111 or 01.00");
  func->add_option("--n", fo.n, "index width for cos")->capture_default_str();
  func->add_option("--j", fo.j, "index for cos");
  func->add_option("--frac", fo.frac, "fraction bits of the cosine (0: n + 1)");
  func->add_option("--bits", fo.bits, "arccot output bits (0: input fraction bits)");
  func->add_option("--format", fo.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  func->add_option("--output", fo.output, "write the document to a file");
  func->add_option("--emit-netlist", fo.netlist, "write the circuit netlist to a file");

  ReportOptions ro;
  auto* report = app.add_subcommand("report", "Gate and qubit counts, error model, complexity curves");
  report->add_option("--n", ro.n)->capture_default_str();
  report->add_option("--f", ro.f)->capture_default_str();
  report->add_option("--d", ro.d, "dimension")->capture_default_str();
  report->add_option("--shift", ro.shift)->capture_default_str();
  report->add_flag("--curves", ro.curves, "emit complexity curves instead");
  report->add_option("--alpha", ro.alpha, "smoothness exponent")->capture_default_str();
  report->add_option("--dmax", ro.dmax, "largest dimension of the curves")->capture_default_str();
  report->add_option("--eps-bits", ro.eps_bits, "error 2^-eps_bits")->capture_default_str();
  report->add_option("--format", ro.format, "json or csv (default json, csv for --curves)")
      ->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--output", ro.output, "write the document to a file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(so, out);
    if (func->parsed()) return cmd_func(fo, out);
    if (ro.format.empty()) ro.format = ro.curves ? "csv" : "json";
    return cmd_report(ro, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ImpossibleOutcomeError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasible;
  }
}

}  // namespace qfps::cli

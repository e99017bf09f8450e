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

#include "qfps/resources.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "qfps/arith.hpp"
#include "qfps/errors.hpp"
#include "qfps/func_circuits.hpp"
#include "qfps/hhl_poisson.hpp"

namespace qfps {
namespace {

std::uint64_t cost_x(std::uint64_t k) { return k <= 2 ? 1 : 2 * k - 3; }

// Stage attribution inside the phase estimation circuit; inner labels win.
const std::unordered_map<std::string, std::string> kPeStages = {
    {"sine_transform", "sine_transform"},
    {"evc", "evc"},
    {"evc^-1", "evc"},
    {"kickback", "phase_kickback"},
};

void add_gate(Tally& t, std::set<Qubit>& seen, const Circuit& c, const Gate& g) {
  ++t.gates;
  t.elementary += elementary_cost(c, g);
  seen.insert(g.target);
  if (g.kind == GateKind::Swap) seen.insert(g.target2);
  for (const auto& ctl : c.controls(g)) seen.insert(ctl.qubit);
}

Tally scaled(Tally t, unsigned d) {
  t.qubits *= d;
  t.gates *= d;
  t.elementary *= d;
  return t;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::uint64_t elementary_cost(const Circuit& circuit, const Gate& gate) {
  const auto ctl = circuit.controls(gate);
  const std::uint64_t k = ctl.size();
  std::uint64_t negative = 0;
  for (const auto& c : ctl) negative += c.on_one ? 0 : 1;
  std::uint64_t base = 0;
  switch (gate.kind) {
    case GateKind::X:
      base = cost_x(k);
      break;
    case GateKind::Swap:
      base = k == 0 ? 3 : 2 + cost_x(k + 1);
      break;
    default: {
      const std::uint64_t one = gate.kind == GateKind::Phase ? 5 : gate.kind == GateKind::Ry ? 4 : 6;
      base = k == 0 ? 1 : k == 1 ? one : 2 * cost_x(k) + one;
      break;
    }
  }
  return base + 2 * negative;
}

Tally tally(const Circuit& circuit) {
  Tally t;
  std::set<Qubit> seen;
  for (const auto& g : circuit.gates()) add_gate(t, seen, circuit, g);
  t.qubits = static_cast<unsigned>(seen.size());
  return t;
}

ResourceReport resource_report(unsigned n, unsigned f, unsigned d, unsigned shift) {
  if (n == 0 || n > 8) throw DomainError("n must be in [1, 8]");
  if (d == 0) throw DomainError("dimension must be positive");
  ResourceReport r;
  r.n = n;
  r.f = f;
  r.d = d;
  r.shift = shift;
  r.m = 2 * n + 2 + f;
  const double m = r.m, nn = n, dd = d;
  r.error = error_bound(f, shift, r.m + shift);

  struct Closed {
    const char* name;
    double q, g;
  };
  const Closed closed[] = {
      {"sine_transform", dd * (nn + 2), dd * (97 * nn * nn - 745 * nn)},
      {"evc", dd * m * (nn + 4), dd * (33 * nn * m * m + 64 * nn * m)},
      {"phase_kickback", 3 * m, dd * (m * m * m / 3 + 11 * m * m / 2)},
      {"angle", m * m + 3 * m, 34 * m * m * m - 50 * m * m},
      {"rotation", m + 1, 4 * m},
      {"uncomputation", m * m + nn * m, 34 * m * m * m + 33 * nn * m * m},
      {"total", m * m + nn * m, 68 * m * m * m + 66 * nn * m * m},
  };
  for (const auto& c : closed) r.stages.push_back({c.name, {}, c.q, c.g});

  std::unique_ptr<HhlPipeline> pipe;
  try {
    PoissonProblem p;
    p.n = n;
    p.f = f;
    p.shift = shift;
    pipe = std::make_unique<HhlPipeline>(p);
  } catch (const ResourceError& e) {
    r.measured = false;
    r.warning = std::string("closed forms only: ") + e.what();
    return r;
  }

  auto stage = [&](const std::string& name) -> StageCount& {
    return *std::find_if(r.stages.begin(), r.stages.end(), [&](const auto& s) { return s.name == name; });
  };
  // Attribute phase-estimation gates to stages by label; the remainder (Hadamards,
  // inverse QFT on E, ancilla flips) joins the kickback row.
  const Circuit& pe = pipe->phase_estimation_circuit();
  std::vector<std::string> owner(pe.size(), "phase_kickback");
  for (const auto& l : pe.labels()) {
    auto it = kPeStages.find(l.name);
    if (it == kPeStages.end()) continue;
    for (std::size_t i = l.begin; i < l.end; ++i) owner[i] = it->second;
  }
  std::unordered_map<std::string, std::set<Qubit>> seen;
  for (std::size_t i = 0; i < pe.size(); ++i) add_gate(stage(owner[i]).measured, seen[owner[i]], pe, pe.gates()[i]);
  for (const char* name : {"sine_transform", "evc", "phase_kickback"}) {
    stage(name).measured.qubits = static_cast<unsigned>(seen[name].size());
    stage(name).measured = scaled(stage(name).measured, d);
  }
  stage("angle").measured = tally(pipe->angle_circuit());
  stage("rotation").measured = tally(pipe->rotation_circuit());
  Tally un = stage("angle").measured;
  const Tally pe_all = tally(pe);
  un.gates += d * pe_all.gates;
  un.elementary += d * pe_all.elementary;
  un.qubits = std::max(un.qubits, d * pe_all.qubits);
  stage("uncomputation").measured = un;
  Tally total;
  for (const auto& s : r.stages) {
    if (s.name == "total") continue;
    total.gates += s.measured.gates;
    total.elementary += s.measured.elementary;
  }
  // Extra dimensions add their own index register and eigenvalue workspace.
  std::set<Qubit> per_dim;
  for (const char* name : {"sine_transform", "evc", "phase_kickback"}) per_dim.insert(seen[name].begin(), seen[name].end());
  total.qubits = pipe->layout().total() + (d - 1) * static_cast<unsigned>(per_dim.size());
  stage("total").measured = total;
  return r;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Adder: return "adder";
    case Family::Sqrt: return "sqrt";
    case Family::Recip: return "recip";
    case Family::Evc: return "evc";
    case Family::Angle: return "angle";
  }
  return "";
}

Tally family_tally(Family family, unsigned m) {
  switch (family) {
    case Family::Adder:
      return tally(build_adder({.width = m}).circuit);
    case Family::Sqrt:
      return tally(build_sqrt(m).circuit);
    case Family::Recip:
      return tally(build_recip(m).circuit);
    case Family::Evc: {
      // Index width tied to the register width: m = 2n + 2 + f with f in {0, 1}.
      const unsigned n = std::max(1u, (m - 2) / 2);
      return tally(build_evc(n, m).circuit);
    }
    case Family::Angle:
      return tally(build_angle(m, {.in_frac = m / 2, .out_bits = m}).circuit);
  }
  throw DomainError("unknown family");
}

double family_closed_form(Family family, unsigned m) {
  const double x = m;
  switch (family) {
    case Family::Adder: return std::nan("");  // no formula quoted
    case Family::Sqrt: return 33 * x * x / 2 + 22 * x;
    case Family::Recip: return 34 * x * x - 68 * x;
    case Family::Evc: {
      const double n = std::max(1u, (m - 2) / 2);
      return n * (33 * x * x / 2 + 32 * x);
    }
    case Family::Angle: return x * (34 * x * x - 50 * x);
  }
  return 0.0;
}

ScalingFit fit_scaling(Family family, unsigned m_lo, unsigned m_hi) {
  if (m_lo < 2 || m_hi <= m_lo) throw DomainError("invalid width range");
  ScalingFit fit;
  std::vector<double> x, lx, ly;
  for (unsigned m = m_lo; m <= m_hi; ++m) {
    if (family == Family::Sqrt && m % 2 != 0) continue;  // even widths only
    const double count = static_cast<double>(family_tally(family, m).elementary);
    fit.widths.push_back(m);
    fit.counts.push_back(count);
    x.push_back(m);
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(count));
  }
  fit.linear_slope = least_squares_slope(x, fit.counts);
  for (std::size_t i = 1; i < fit.counts.size(); ++i) {
    const double step = (fit.counts[i] - fit.counts[i - 1]) / (x[i] - x[i - 1]);
    fit.max_step_deviation = std::max(fit.max_step_deviation, std::abs(step / fit.linear_slope - 1));
  }
  fit.loglog_slope = least_squares_slope(lx, ly);
  return fit;
}

std::vector<CurvePoint> complexity_curves(double alpha, unsigned dmax, unsigned eps_bits) {
  if (!(alpha > 0) || dmax == 0) throw DomainError("alpha must be positive and dmax at least 1");
  const double log_n = alpha * eps_bits;           // log2 N = log2 eps^-alpha
  const double kappa = std::exp2(2 * alpha * eps_bits);
  const double inv_eps = std::exp2(static_cast<double>(eps_bits));
  std::vector<CurvePoint> out;
  for (unsigned d = 1; d <= dmax; ++d) {
    const double dd = d;
    CurvePoint p;
    p.d = d;
    p.classical = std::exp2(alpha * eps_bits * dd);
    p.cao = std::max(dd, log_n) * std::pow(log_n, 3);
    p.present = kappa * dd * std::pow(log_n, 3);
    p.hhl = kappa * kappa * dd * log_n * inv_eps;
    out.push_back(p);
  }
  return out;
}

}  // namespace qfps

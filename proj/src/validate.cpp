// Copyright 2026 The otto-monitor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Consistency checks run at a user configuration: lattice against the
// path-sum oracle, trace conservation, closed-form moments, pointer-count
// equivalence and density normalization.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "otto/asymptotics.hpp"
#include "otto/commands.hpp"
#include "otto/lattice.hpp"
#include "otto/pathsum.hpp"

namespace otto {

namespace {

double weight_gap(const Mixture1D& x, const Mixture1D& y, bool* same_centers) {
  std::map<std::pair<int, int>, std::pair<double, double>> w;
  for (const auto& c : x.canonical().components) w[{c.a, c.b}].first = c.weight;
  for (const auto& c : y.canonical().components) w[{c.a, c.b}].second = c.weight;
  double gap = 0.0;
  bool same = true;
  for (auto& [k, v] : w) {
    gap = std::max(gap, std::abs(v.first - v.second));
    // A center present on one side only must carry negligible weight.
    if ((v.first == 0.0) != (v.second == 0.0) && std::max(std::abs(v.first), std::abs(v.second)) > 1e-15)
      same = false;
  }
  if (same_centers) *same_centers = same;
  return gap;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double trapezoid(const Mixture1D& m, int points) {
  double lo = 1e300, hi = -1e300, var = 0.0;
  for (const auto& c : m.components) {
    lo = std::min(lo, c.mean);
    hi = std::max(hi, c.mean);
    var = std::max(var, c.var);
  }
  lo -= 10.0 * std::sqrt(var);
  hi += 10.0 * std::sqrt(var);
  const double h = (hi - lo) / (points - 1);
  double s = 0.0;
  for (int i = 0; i < points; ++i) s += (i == 0 || i == points - 1 ? 0.5 : 1.0) * m.density(lo + i * h);
  return s * h;
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& cfg) {
  const EngineConfig& e = cfg.engine;
  e.validate();
  std::vector<CheckResult> out;
  const DensityMatrix rho = e.initial_state();
  const bool decoupled = e.cold_channel().decoupled(1e-12) && e.hot_channel().decoupled(1e-12);
  const int nmax = std::min(e.cycles, 2);

  for (int N = 1; N <= nmax; ++N) {
    const auto br = enumerate_branches(e, rho, N);
    cplx total = 0.0;
    for (const auto& b : br) total += b.value;
    out.push_back({"oracle_trace_N" + std::to_string(N), std::abs(total - 1.0) <= 1e-12, false,
                   std::abs(total - 1.0), 1e-12, ""});
    for (Scheme s : {Scheme::RM, Scheme::RC1, Scheme::RC2}) {
      for (Observable o : {Observable::Work, Observable::Heat}) {
        const std::string name =
            "lattice_vs_oracle_" + to_string(s) + "_" + to_string(o) + "_N" + std::to_string(N);
        if (s != Scheme::RM && !decoupled) {
          bool rejected = false;
          try {
            run_lattice(e, rho, N, s, o);
          } catch (const InvalidArgument&) {
            rejected = true;
          }
          out.push_back({name, rejected, false, 0.0, 0.0,
                         "channel not decoupled; lattice must refuse repeated contacts"});
          continue;
        }
        const Mixture1D lat = assemble_marginal(run_lattice(e, rho, N, s, o), e, s, N, o);
        const Mixture1D orc = oracle_marginal(br, e, N, s, o);
        bool same = true;
        const double gap = weight_gap(lat, orc, &same);
        out.push_back({name, gap <= 1e-10 && same, false, gap, 1e-10, same ? "" : "centers differ"});
      }
    }
  }

  {
    const int N = e.cycles;
    double worst = 0.0;
    for (Scheme s : {Scheme::RM, Scheme::RC2}) {
      if (s != Scheme::RM && !decoupled) continue;
      const CycleTable table(e, s, Observable::Work);
      Mat2 start = rho.matrix();
      if (uses_rc_fold(s, Observable::Work)) start = fold_initial_state_rc(start, e.sigma, e.eps_c);
      LatticeAccumulator acc = LatticeAccumulator::delta(start);
      for (int n = 0; n < N; ++n) {
        acc = advance_cycle(acc, table);
        worst = std::max(worst, std::abs(acc.total_trace() - 1.0));
      }
    }
    out.push_back({"lattice_trace", worst <= 1e-12, false, worst, 1e-12, ""});
  }

  if (decoupled) {
    const Mixture1D one = assemble_marginal(run_lattice(e, rho, e.cycles, Scheme::RC1, Observable::Work), e,
                                            Scheme::RC1, e.cycles, Observable::Work);
    const Mixture1D two = assemble_marginal(run_lattice(e, rho, e.cycles, Scheme::RC2, Observable::Work), e,
                                            Scheme::RC2, e.cycles, Observable::Work);
    const double gap = weight_gap(one, two, nullptr);
    out.push_back({"one_vs_two_pointer_work", gap <= 1e-12, false, gap, 1e-12, ""});
  }

  // Closed forms hold for one cycle from a diagonal state.
  const DensityMatrix diag = DensityMatrix::from_populations(rho.excited());
  if (e.thermo == ThermoMode::Perfect) {
    if (e.sigma == 0.0) {
      EngineConfig c = e;
      const auto br = enumerate_branches(c, DensityMatrix(c.cold_target().matrix()), 1);
      const Moments num = joint_pdf_rm(br, 0.0, 1).moments();
      const Moments ana = analytic_moments_perfect(c);
      const double dev = std::max({rel(num.w, ana.w), rel(num.q, ana.q), rel(num.w2, ana.w2),
                                   rel(num.q2, ana.q2), rel(num.wq, ana.wq)});
      out.push_back({"closed_form_perfect", dev <= 1e-10, false, dev, 1e-10, ""});
    } else {
      out.push_back({"closed_form_perfect", true, true, 0.0, 1e-10, "needs sigma = 0"});
    }
  } else if (e.thermo == ThermoMode::Lindblad) {
    const auto br = enumerate_branches(e, diag, 1);
    const Moments rm = joint_pdf_rm(br, e.sigma, 1).moments();
    const Moments rc = joint_pdf_rc(br, e.sigma).moments();
    const SchemeMoments ana = analytic_moments_lindblad(e, {diag.excited(), 0.0});
    double dev = 0.0;
    for (auto [n, a] : {std::pair(rm, ana.rm), std::pair(rc, ana.rc)})
      dev = std::max({dev, rel(n.w, a.w), rel(n.q, a.q), rel(n.w2, a.w2), rel(n.q2, a.q2),
                      rel(n.wq, a.wq)});
    out.push_back({"closed_form_lindblad", dev <= 1e-8, false, dev, 1e-8, ""});
    const double dq = std::abs(rm.q - rc.q);
    out.push_back({"mean_heat_rm_equals_rc", dq <= 1e-12, false, dq, 1e-12, ""});
  } else {
    out.push_back({"closed_form", true, true, 0.0, 0.0, "no closed form for the synthetic channel"});
  }

  if (e.sigma > 0.0) {
    double worst = 0.0;
    for (Scheme s : {Scheme::RM, Scheme::RC2})
      for (Observable o : {Observable::Work, Observable::Heat}) {
        const Mixture1D m = scheme_marginal(e, rho, e.cycles, s, o);
        worst = std::max(worst, std::abs(trapezoid(m, 8192) - 1.0));
      }
    out.push_back({"density_normalization", worst <= 1e-6, false, worst, 1e-6, ""});
  } else {
    out.push_back({"density_normalization", true, true, 0.0, 1e-6,
                   "sigma = 0: mixtures are point masses, density checks skipped"});
  }

  if (e.thermo != ThermoMode::Perfect && e.gamma * e.theta > 0.0) {
    double worst = 0.0;
    for (MapKind k : {MapKind::RM, MapKind::RC}) {
      const auto sr = spectrum(build_cycle_superoperator(e, k));
      worst = std::max(worst, std::abs(sr.eigenvalues[0] - 1.0));
    }
    out.push_back({"leading_eigenvalue", worst <= 1e-10, false, worst, 1e-10, ""});
  }
  return out;
}

}  // namespace otto

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

// Acceptance suite: one PASS/FAIL line per criterion with measured values.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "otto/asymptotics.hpp"
#include "otto/lattice.hpp"
#include "otto/pathsum.hpp"
#include "otto/thermal_maps.hpp"

using namespace otto;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  [[gnu::format(printf, 3, 4)]] void check(bool ok, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (!ok) {
      detail += " [x]";
      pass = false;
    }
  }
};

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

double relm(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1.0); }

// Perfect thermalization into slightly coherent targets, started at the cold target.
EngineConfig coherent_target_engine(double alpha) {
  EngineConfig e;
  e.thermo = ThermoMode::Perfect;
  e.targets = TargetMode::Custom;
  e.target_d_c = 0.37759;
  e.target_q_c = 5.0813e-5;
  e.target_d_h = 0.45388;
  e.target_q_h = -1.9205e-6;
  e.alpha = alpha;
  e.phi = 0.0;
  e.init = InitMode::Custom;
  e.init_d = e.target_d_c;
  e.init_q_re = e.target_q_c;
  return e;
}

struct Gap {
  double weight = 0.0;
  bool centers_match = true;
};

Gap compare(const Mixture1D& x, const Mixture1D& y) {
  const Mixture1D a = x.canonical(), b = y.canonical();
  Gap g;
  if (a.components.size() != b.components.size()) {
    g.centers_match = false;
    return g;
  }
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    const auto &p = a.components[i], &q = b.components[i];
    if (p.a != q.a || p.b != q.b) g.centers_match = false;
    g.weight = std::max(g.weight, std::abs(p.weight - q.weight));
  }
  return g;
}

Mat2 random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Mat2 g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(n(rng), n(rng));
  Mat2 r = g * g.adjoint();
  return r / r.trace();
}

double min_eigenvalue(const Mat2& m) {
  const double a = m(0, 0).real(), b = m(1, 1).real();
  return 0.5 * (a + b) - std::sqrt(0.25 * (a - b) * (a - b) + std::norm(m(1, 0)));
}

Outcome gibbs_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const ThermalState c =
      generalized_gibbs(BathSpec(0.25, 0.5, 0.2, BathLabel::Cold), {1.0, BathLabel::Cold});
  const ThermalState h =
      generalized_gibbs(BathSpec(0.025, 0.5, 0.2, BathLabel::Hot), {3.7, BathLabel::Hot});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(std::abs(c.d - 0.37759) <= 1e-4, "d_c=%.8f want 0.37759", c.d);
  o.check(std::abs(h.d - 0.45388) <= 1e-4, "d_h=%.8f want 0.45388", h.d);
  o.check(rel(c.q.real(), 5.0813e-5) <= 0.01, "q_c=%.6e want 5.0813e-05", c.q.real());
  o.check(rel(h.q.real(), -1.9205e-6) <= 0.01, "q_h=%.6e want -1.9205e-06", h.q.real());
  o.check(secs < 5.0, "%.2fs", secs);
  return o;
}

Outcome ideal_efficiency() {
  Outcome o;
  const double want = 1.0 - 1.0 / 3.7;
  EngineConfig e = coherent_target_engine(0.0);
  e.targets = TargetMode::Custom;
  e.target_q_c = e.target_q_h = 0.0;
  e.init_q_re = 0.0;
  const Moments a = analytic_moments_perfect(e);
  o.check(std::abs(-a.w / a.q - want) <= 1e-9, "closed form eta=%.12f", -a.w / a.q);
  for (Scheme s : {Scheme::RM, Scheme::RC2}) {
    const double w = lattice_marginal(e, 5, s, Observable::Work).mean();
    const double q = lattice_marginal(e, 5, s, Observable::Heat).mean();
    o.check(std::abs(-w / q - want) <= 1e-9, "%s N=5 eta=%.12f", to_string(s).c_str(), -w / q);
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const EngineConfig e;
  double worst = 0.0;
  bool centers = true;
  for (int N = 1; N <= 2; ++N) {
    const auto br = enumerate_branches(e, N);
    for (Scheme s : {Scheme::RM, Scheme::RC1, Scheme::RC2})
      for (Observable obs : {Observable::Work, Observable::Heat}) {
        const Gap g = compare(lattice_marginal(e, N, s, obs), oracle_marginal(br, e, N, s, obs));
        worst = std::max(worst, g.weight);
        centers = centers && g.centers_match;
      }
  }
  o.check(worst <= 1e-10, "max weight deviation %.2e", worst);
  o.check(centers, "lattice centers %s", centers ? "identical" : "differ");
  return o;
}

Outcome analytic_moments() {
  Outcome o;
  double worst_perfect = 0.0;
  for (double alpha : {0.0, 0.1, 0.5, 0.9}) {
    EngineConfig e = coherent_target_engine(alpha);
    e.target_q_c = e.target_q_h = 0.0;
    e.init_q_re = 0.0;
    e.sigma = 0.0;
    const Moments ref = analytic_moments_perfect(e);
    for (const Moments& m : {joint_pdf_rm(e, 1).moments(), joint_pdf_rc(e, 1).moments()})
      worst_perfect = std::max({worst_perfect, relm(m.w, ref.w), relm(m.q, ref.q),
                                relm(m.w2, ref.w2), relm(m.q2, ref.q2), relm(m.wq, ref.wq)});
  }
  o.check(worst_perfect <= 1e-10, "perfect sigma=0 max dev %.2e", worst_perfect);

  EngineConfig e;
  e.init = InitMode::GibbsCold;
  const ThermalState start = gibbs_state(e.beta_c, e.eps_c);
  const SchemeMoments ref = analytic_moments_lindblad(e, start);
  const Mixture2D rm = joint_pdf_rm(e, 1), rc = joint_pdf_rc(e, 1);
  const Moments mrm = rm.moments(), mrc = rc.moments();
  double worst = 0.0;
  for (auto [m, r] : {std::pair{mrm, ref.rm}, std::pair{mrc, ref.rc}})
    worst = std::max({worst, rel(m.w, r.w), rel(m.q, r.q), rel(m.w2, r.w2), rel(m.q2, r.q2),
                      rel(m.wq, r.wq)});
  o.check(worst <= 1e-8, "Lindblad sigma=0.2 max rel dev %.2e", worst);

  // Width contributions of the component covariances.
  auto width_part = [](const Mixture2D& m, int i, int j) {
    double s = 0.0;
    for (const auto& c : m.components) s += c.weight * c.cov(i, j);
    return s;
  };
  const double s2 = e.sigma * e.sigma;
  const double dw2 = width_part(rc, 0, 0) - width_part(rm, 0, 0);
  const double dwq = width_part(rm, 0, 1) - width_part(rc, 0, 1);
  o.check(std::abs(dw2 + 3.0 * s2) <= 1e-12, "<W2> width offset rc-rm %.15f (-3 sigma^2)", dw2);
  o.check(std::abs(dwq + 2.0 * s2) <= 1e-12, "<WQ> width offset rm-rc %.15f (-2 sigma^2)", dwq);
  o.check(std::abs(mrm.q - mrc.q) <= 1e-12, "|<Q>rm-<Q>rc| %.1e", std::abs(mrm.q - mrc.q));
  o.check(std::abs(ref.rm.q - ref.rc.q) <= 1e-12, "closed-form <Q> equal");
  return o;
}

Outcome peak_structure() {
  Outcome o;
  const EngineConfig e = coherent_target_engine(0.0);
  const double peaks[] = {0.0, 2.0 * (e.eps_c - e.eps_h), -2.0 * (e.eps_c - e.eps_h)};
  auto stray = [&](const Mixture1D& m, double* at_peaks) {
    double s = 0.0;
    for (const auto& c : m.canonical().components) {
      bool on = false;
      for (int k = 0; k < 3; ++k)
        if (std::abs(c.mean - peaks[k]) < 1e-12) {
          at_peaks[k] += c.weight;
          on = true;
        }
      if (!on) s = std::max(s, std::abs(c.weight));
    }
    return s;
  };
  for (Scheme s : {Scheme::RM, Scheme::RC1, Scheme::RC2}) {
    double w[3] = {0, 0, 0};
    const double off = stray(oracle_marginal(e, 1, s, Observable::Work), w);
    o.check(off < 1e-14, "%s peaks 0:%.5f -5.4:%.5f +5.4:%.5f stray %.1e", to_string(s).c_str(),
            w[0], w[1], w[2], off);
  }
  return o;
}

Outcome characteristic_function() {
  Outcome o;
  const EngineConfig e;
  const int N = 1;
  const auto br = enumerate_branches(e, N);
  const Mixture2D rm = joint_pdf_rm(br, e.sigma, N);
  const double s2 = e.sigma * e.sigma;

  // Density on a grid fine enough for spectral accuracy of the trapezoid rule.
  const double h = 0.02, wmax = 4.0 * e.eps_h + 1.0 + 8.0 * e.sigma;
  const double qmax = 2.0 * e.eps_h + 8.0 * e.sigma;
  const int nw = static_cast<int>(2.0 * wmax / h) + 1, nq = static_cast<int>(2.0 * qmax / h) + 1;
  std::vector<double> dens(static_cast<std::size_t>(nw) * nq);
  for (int i = 0; i < nw; ++i)
    for (int k = 0; k < nq; ++k) dens[i * nq + k] = rm.density(-wmax + i * h, -qmax + k * h);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pick(-1.5, 1.5);
  double worst = 0.0;
  for (int p = 0; p < 20; ++p) {
    const double u = pick(rng), v = pick(rng);
    cplx ft = 0.0;
    for (int i = 0; i < nw; ++i) {
      const double w = -wmax + i * h;
      for (int k = 0; k < nq; ++k)
        ft += dens[i * nq + k] * std::polar(1.0, u * w + v * (-qmax + k * h));
    }
    ft *= h * h;
    cplx ref = 0.0;
    for (const auto& b : br)
      ref += b.value * b.suppression_rm * std::polar(1.0, u * b.work_center + v * b.heat_center);
    ref *= std::exp(-N * s2 * (2.0 * u * u - 2.0 * u * v + v * v));
    worst = std::max(worst, std::abs(ft - ref) / std::abs(ref));
  }
  o.check(worst <= 1e-8, "20 points, max rel dev %.2e", worst);
  return o;
}

Outcome pointer_equivalence() {
  Outcome o;
  EngineConfig adiabatic = coherent_target_engine(0.0);
  EngineConfig lind;
  lind.alpha = 0.37;
  lind.phi = 1.1;
  double worst_a = 0.0, worst_b = 0.0;
  for (int N = 1; N <= 2; ++N) {
    worst_a = std::max(worst_a, compare(marginal_rc_work(adiabatic, N, 1),
                                        marginal_rc_work(adiabatic, N, 2)).weight);
    worst_b = std::max(worst_b, compare(marginal_rc_work(lind, N, 1),
                                        marginal_rc_work(lind, N, 2)).weight);
  }
  worst_b = std::max(worst_b, compare(lattice_marginal(lind, 10, Scheme::RC1, Observable::Work),
                                      lattice_marginal(lind, 10, Scheme::RC2, Observable::Work)).weight);
  o.check(worst_a <= 1e-12, "adiabatic+perfect %.1e", worst_a);
  o.check(worst_b <= 1e-12, "Lindblad alpha=0.37 %.1e", worst_b);
  EngineConfig synth = lind;
  synth.thermo = ThermoMode::Synthetic;
  synth.sigma = 2.0;
  const double broken = compare(marginal_rc_work(synth, 1, 1), marginal_rc_work(synth, 1, 2)).weight;
  o.check(broken > 1e-6, "synthetic control differs by %.2e", broken);
  return o;
}

Outcome asymptotic_convergence(std::vector<SeriesPoint>& rm_series, std::vector<SeriesPoint>& rc_series) {
  Outcome o;
  const EngineConfig e;
  const auto t0 = std::chrono::steady_clock::now();
  rm_series = work_per_cycle_series(e, Scheme::RM, 200);
  rc_series = work_per_cycle_series(e, Scheme::RC2, 200);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const double w_rm = asymptotic_work_per_cycle(e, MapKind::RM);
  const double w_rc = asymptotic_work_per_cycle(e, MapKind::RC);
  const double l2 = spectrum(build_cycle_superoperator(e, MapKind::RM)).lambda2;

  // Least-squares slope of log |increment - w_inf| over the geometric regime.
  std::vector<double> xs, ys;
  for (int n = 2; n <= 200; ++n) {
    const double inc = rm_series[n - 1].mean - rm_series[n - 2].mean;
    const double dev = std::abs(inc - w_rm);
    if (dev < 1e-11) break;
    xs.push_back(n);
    ys.push_back(std::log(dev));
  }
  double ratio = 0.0;
  if (xs.size() >= 3) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    ratio = std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
  }
  o.check(std::abs(ratio / l2 - 1.0) <= 0.05, "fitted ratio %.6f vs Lambda2 %.6f over N=2..%d",
          ratio, l2, xs.empty() ? 0 : static_cast<int>(xs.back()));

  const double inc_rm = rm_series[199].mean - rm_series[198].mean;
  const double inc_rc = rc_series[199].mean - rc_series[198].mean;
  o.check(std::abs(inc_rm - w_rm) <= 1e-6, "RM w_inf %.12f vs N=200 increment %.12f", w_rm, inc_rm);
  o.check(std::abs(inc_rc - w_rc) <= 1e-6, "RC w_inf %.12f vs N=200 increment %.12f", w_rc, inc_rc);
  o.check(true, "cumulative <W>/N at N=200: RM %.6f RC %.6f", rm_series[199].mean_per_cycle,
          rc_series[199].mean_per_cycle);
  o.check(secs < 120.0, "%.2fs", secs);
  return o;
}

Outcome ordering(const std::vector<SeriesPoint>& rm, const std::vector<SeriesPoint>& rc) {
  Outcome o;
  int work_bad = 0, rel_bad = 0;
  for (std::size_t i = 1; i < rm.size(); ++i) {
    if (-rc[i].mean_per_cycle < -rm[i].mean_per_cycle) ++work_bad;
    if (rc[i].reliability < rm[i].reliability) ++rel_bad;
  }
  o.check(work_bad == 0, "extracted work per cycle RC>=RM violated at %d of 199 N (N=200: RC %.5f RM %.5f)",
          work_bad, -rc[199].mean_per_cycle, -rm[199].mean_per_cycle);
  o.check(rel_bad == 0, "reliability RC>=RM violated at %d of 199 N (N=200: RC %.4f RM %.4f)",
          rel_bad, rc[199].reliability, rm[199].reliability);
  for (auto [name, s] : {std::pair{"RM", &rm}, std::pair{"RC", &rc}}) {
    const double a = (*s)[99].reliability / 10.0, b = (*s)[199].reliability / std::sqrt(200.0);
    o.check(std::abs(b / a - 1.0) <= 0.02, "%s R/sqrt(N) %.6f (N=100) %.6f (N=200)", name, a, b);
  }
  return o;
}

Outcome properties() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const EngineConfig e;

  double norm_dev = 0.0, integral_dev = 0.0, lowest = 0.0;
  for (int N : {1, 2, 5, 20})
    for (Scheme s : {Scheme::RM, Scheme::RC1, Scheme::RC2})
      for (Observable obs : {Observable::Work, Observable::Heat}) {
        const Mixture1D m = lattice_marginal(e, N, s, obs);
        norm_dev = std::max(norm_dev, std::abs(m.total_weight() - 1.0));
        const double half = 4.0 * N * e.eps_h + 8.0 * e.sigma + 8.0 * std::sqrt(4.0 * N) * e.sigma;
        for (int i = 0; i < 512; ++i) lowest = std::min(lowest, m.density(-half + 2.0 * half * i / 511));
        const int n = static_cast<int>(2.0 * half / 0.02) + 1;
        const double h = 2.0 * half / (n - 1);
        double integral = 0.0;
        for (int i = 0; i < n; ++i) integral += h * m.density(-half + h * i);
        integral_dev = std::max(integral_dev, std::abs(integral - 1.0));
      }
  for (int N = 1; N <= 2; ++N)
    for (const Mixture2D& j : {joint_pdf_rm(e, N), joint_pdf_rc(e, N)}) {
      norm_dev = std::max(norm_dev, std::abs(j.total_weight() - 1.0));
      for (int i = 0; i < 64; ++i)
        for (int k = 0; k < 64; ++k)
          lowest = std::min(lowest, j.density(-16.0 + 32.0 * i / 63, -9.0 + 18.0 * k / 63));
    }
  o.check(norm_dev <= 1e-9, "weight sums within %.1e", norm_dev);
  o.check(integral_dev <= 1e-9, "grid integrals within %.1e", integral_dev);
  o.check(lowest >= -1e-9, "lowest density %.2e", lowest);

  std::mt19937_64 rng(99);
  EngineConfig synth;
  synth.thermo = ThermoMode::Synthetic;
  const Mat2 u = build_forward_unitary(e.stroke_params());
  std::vector<std::function<Mat2(const Mat2&)>> maps = {
      [&](const Mat2& r) { return e.cold_channel().apply(r); },
      [&](const Mat2& r) { return e.hot_channel().apply(r); },
      [&](const Mat2& r) { return coherent_target_engine(0.2).cold_channel().apply(r); },
      [&](const Mat2& r) { return synth.hot_channel().apply(r); },
      [&](const Mat2& r) { return Mat2(u * r * u.adjoint()); },
      [&](const Mat2& r) { return build_cycle_superoperator(e, MapKind::RM).apply(r); },
      [&](const Mat2& r) { return build_cycle_superoperator(e, MapKind::RC).apply(r); },
  };
  double trace_dev = 0.0, min_eig = 1.0;
  for (const auto& m : maps)
    for (int i = 0; i < 1000; ++i) {
      const Mat2 out = m(random_state(rng));
      trace_dev = std::max(trace_dev, std::abs(out.trace() - 1.0));
      min_eig = std::min(min_eig, min_eigenvalue(out));
    }
  o.check(trace_dev <= 1e-12 && min_eig >= -1e-12, "7 channels x 1000 states: trace dev %.1e, min eigenvalue %.3e",
          trace_dev, min_eig);

  int degenerate = 0;
  double gap = 1.0;
  for (int i = 0; i < 10; ++i)
    for (int k = 0; k < 10; ++k) {
      EngineConfig f;
      f.stroke = StrokeMode::LandauZener;
      f.T1 = 2.0 + 28.0 * i / 9;
      f.theta = (2.0 + 38.0 * k / 9) / (1.0 / f.eps_h + 1.0 / f.eps_c);
      for (MapKind kind : {MapKind::RM, MapKind::RC}) {
        const CycleSuperoperator sop = build_cycle_superoperator(f, kind);
        const SpectrumReport sp = spectrum(sop);
        gap = std::min(gap, 1.0 - sp.lambda2);
        try {
          invariant_state(sop);
          if (std::abs(sp.eigenvalues[0] - 1.0) > 1e-12) ++degenerate;
        } catch (const DegenerateSpectrum&) {
          ++degenerate;
        }
      }
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(degenerate == 0, "10x10 LZ grid: %d degenerate, min spectral gap %.4f", degenerate, gap);
  o.check(secs < 60.0, "%.2fs", secs);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<SeriesPoint> rm_series, rc_series;
  const std::vector<Criterion> criteria = {
      {1, "generalized Gibbs states", gibbs_reproduction},
      {2, "ideal Otto efficiency", ideal_efficiency},
      {3, "lattice matches path sum", oracle_equivalence},
      {4, "closed-form moments", analytic_moments},
      {5, "adiabatic peak structure", peak_structure},
      {6, "characteristic function", characteristic_function},
      {7, "one and two pointer work", pointer_equivalence},
      {8, "asymptotic convergence", [&] { return asymptotic_convergence(rm_series, rc_series); }},
      {9, "monitoring order and reliability growth", [&] { return ordering(rm_series, rc_series); }},
      {10, "normalization, positivity, spectra", properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %2d  %-40s %.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

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

#include "otto/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "otto/asymptotics.hpp"
#include "otto/lattice.hpp"
#include "otto/pathsum.hpp"

namespace otto {

using nlohmann::json;

Metrics compute_metrics(const Moments& m, bool has_cov, int N, double T1, double T2) {
  Metrics r{};
  r.mean_work = m.w;
  r.mean_heat = m.q;
  r.var_work = m.w2 - m.w * m.w;
  r.var_heat = m.q2 - m.q * m.q;
  if (has_cov) r.cov_work_heat = m.wq - m.w * m.q;
  if (m.q != 0.0) r.efficiency = -m.w / m.q;
  if (r.var_work > 0.0) r.reliability = -m.w / std::sqrt(r.var_work);
  if (T1 > 0.0 && T1 + T2 > 0.0) r.power = -m.w / (N * (T1 + T2));
  return r;
}

Mixture1D scheme_marginal(const EngineConfig& engine, const DensityMatrix& rho, int N,
                          Scheme scheme, Observable obs) {
  const bool decoupled = engine.cold_channel().decoupled(1e-12) &&
                         engine.hot_channel().decoupled(1e-12);
  if (scheme != Scheme::RM && !decoupled) {
    if (N > kOracleMaxCycles)
      throw InvalidArgument("repeated contacts with a non-decoupled channel are only available "
                            "for small cycle counts");
    return oracle_marginal(enumerate_branches(engine, rho, N), engine, N, scheme, obs).canonical();
  }
  return assemble_marginal(run_lattice(engine, rho, N, scheme, obs), engine, scheme, N, obs)
      .canonical();
}

namespace {

constexpr Scheme kSchemes[3] = {Scheme::RM, Scheme::RC1, Scheme::RC2};

std::string cell(const std::optional<double>& v) { return v ? format_csv(*v) : "null"; }
json jcell(const std::optional<double>& v) { return v ? json(format_full(*v)) : json(nullptr); }

double max_weight_gap(const Mixture1D& x, const Mixture1D& y) {
  std::map<std::pair<int, int>, double> w;
  for (const auto& c : x.components) w[{c.a, c.b}] += c.weight;
  for (const auto& c : y.components) w[{c.a, c.b}] -= c.weight;
  double gap = 0.0;
  for (auto& [k, v] : w) gap = std::max(gap, std::abs(v));
  return gap;
}

std::pair<double, double> auto_range(const std::vector<const Mixture1D*>& mixes) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, var = 0.0;
  for (const auto* m : mixes)
    for (const auto& c : m->components) {
      lo = std::min(lo, c.mean);
      hi = std::max(hi, c.mean);
      var = std::max(var, c.var);
    }
  const double pad = 8.0 * std::sqrt(var);
  return {lo - pad, hi + pad};
}

template <typename F>
void parallel_for(int count, int threads, F&& body) {
  int hw = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  hw = std::min(hw, count);
  if (hw <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  for (int t = 0; t < hw; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void require_density(const EngineConfig& e) {
  if (!(e.sigma > 0.0))
    throw InvalidArgument("densities need sigma > 0; sigma = 0 mixtures are point masses");
}

json components_json(const Mixture1D& m) {
  json arr = json::array();
  for (const auto& c : m.components)
    arr.push_back({{"weight", format_full(c.weight)},
                   {"center", format_full(c.mean)},
                   {"variance", format_full(c.var)},
                   {"a", c.a},
                   {"b", c.b}});
  return arr;
}

json components_json(const Mixture2D& m) {
  json arr = json::array();
  for (const auto& c : m.components)
    arr.push_back({{"weight", format_full(c.weight)},
                   {"center", {format_full(c.mean(0)), format_full(c.mean(1))}},
                   {"covariance",
                    {format_full(c.cov(0, 0)), format_full(c.cov(0, 1)), format_full(c.cov(1, 1))}}});
  return arr;
}

}  // namespace

int cmd_pdf(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& e = cfg.engine;
  e.validate();
  const int N = e.cycles;
  const DensityMatrix rho = e.initial_state();
  const Mixture1D rm = scheme_marginal(e, rho, N, Scheme::RM, cfg.observable);
  const Mixture1D rc = scheme_marginal(e, rho, N, Scheme::RC2, cfg.observable);
  const Mixture1D rc1 = scheme_marginal(e, rho, N, Scheme::RC1, cfg.observable);
  const bool split = max_weight_gap(rc, rc1) > 1e-12;

  if (cfg.format == OutputFormat::Json) {
    json j{{"observable", to_string(cfg.observable)}, {"cycles", N}};
    j["rm"] = components_json(rm);
    j["rc"] = components_json(rc);
    if (split) j["rc1"] = components_json(rc1);
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  require_density(e);
  if (cfg.grid_points < 2) throw InvalidArgument("grid needs at least 2 points");
  auto [lo, hi] = cfg.grid_max > cfg.grid_min ? std::pair(cfg.grid_min, cfg.grid_max)
                                              : auto_range({&rm, &rc, &rc1});
  out << "value,density_rm,density_rc" << (split ? ",density_rc1" : "") << '\n';
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (cfg.grid_points - 1);
    out << format_csv(x) << ',' << format_csv(rm.density(x)) << ',' << format_csv(rc.density(x));
    if (split) out << ',' << format_csv(rc1.density(x));
    out << '\n';
  }
  return kExitOk;
}

int cmd_joint(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& e = cfg.engine;
  e.validate();
  const int N = e.cycles;
  if (N > 2) throw InvalidArgument("joint densities are limited to N <= 2");
  const auto br = enumerate_branches(e, N);
  const Mixture2D rm = joint_pdf_rm(br, e.sigma, N);
  const Mixture2D rc = joint_pdf_rc(br, e.sigma);
  if (cfg.format == OutputFormat::Json) {
    json j{{"cycles", N}, {"rm", components_json(rm)}, {"rc", components_json(rc)}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  require_density(e);
  const int n = cfg.joint_points;
  if (n < 2) throw InvalidArgument("grid needs at least 2 points");
  const Mixture1D wm = rm.marginal_work(), qm = rm.marginal_heat();
  auto [wlo, whi] = auto_range({&wm});
  auto [qlo, qhi] = auto_range({&qm});
  out << "work,heat,density_rm,density_rc\n";
  for (int i = 0; i < n; ++i) {
    const double w = wlo + (whi - wlo) * i / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double q = qlo + (qhi - qlo) * k / (n - 1);
      out << format_csv(w) << ',' << format_csv(q) << ',' << format_csv(rm.density(w, q)) << ','
          << format_csv(rc.density(w, q)) << '\n';
    }
  }
  return kExitOk;
}

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& e = cfg.engine;
  e.validate();
  const int N = e.cycles;
  const double T1 = e.stroke == StrokeMode::LandauZener || e.T1 > 0.0 ? e.T1 : 0.0;
  const DensityMatrix rho = e.initial_state();

  struct Row {
    std::string scheme, source;
    Metrics m;
  };
  std::vector<Row> rows;
  std::vector<BranchCoefficient> br;
  if (N <= 2) br = enumerate_branches(e, rho, N);
  for (Scheme s : kSchemes) {
    const Mixture1D w = scheme_marginal(e, rho, N, s, Observable::Work);
    const Mixture1D q = scheme_marginal(e, rho, N, s, Observable::Heat);
    Moments mo = mixture_moments(w, q);
    bool has_cov = false;
    if (!br.empty() && s != Scheme::RC1) {
      mo.wq = (s == Scheme::RM ? joint_pdf_rm(br, e.sigma, N) : joint_pdf_rc(br, e.sigma)).moments().wq;
      has_cov = true;
    }
    rows.push_back({to_string(s), "mixture", compute_metrics(mo, has_cov, N, T1, e.T2())});
  }
  if (N == 1 && e.thermo == ThermoMode::Perfect) {
    rows.push_back({"all", "analytic_sigma0", compute_metrics(analytic_moments_perfect(e), true, 1, T1, e.T2())});
  } else if (N == 1 && e.thermo == ThermoMode::Lindblad) {
    const SchemeMoments a = analytic_moments_lindblad(e, {rho.excited(), 0.0});
    rows.push_back({"rm", "analytic", compute_metrics(a.rm, true, 1, T1, e.T2())});
    rows.push_back({"rc", "analytic", compute_metrics(a.rc, true, 1, T1, e.T2())});
  }

  if (cfg.format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"scheme", r.scheme},
                     {"source", r.source},
                     {"mean_work", format_full(r.m.mean_work)},
                     {"mean_heat", format_full(r.m.mean_heat)},
                     {"var_work", format_full(r.m.var_work)},
                     {"var_heat", format_full(r.m.var_heat)},
                     {"cov_work_heat", jcell(r.m.cov_work_heat)},
                     {"efficiency", jcell(r.m.efficiency)},
                     {"reliability", jcell(r.m.reliability)},
                     {"power", jcell(r.m.power)}});
    out << json{{"cycles", N}, {"rows", arr}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "scheme,source,mean_work,mean_heat,var_work,var_heat,cov_work_heat,efficiency,"
         "reliability,power\n";
  for (const auto& r : rows)
    out << r.scheme << ',' << r.source << ',' << format_csv(r.m.mean_work) << ','
        << format_csv(r.m.mean_heat) << ',' << format_csv(r.m.var_work) << ','
        << format_csv(r.m.var_heat) << ',' << cell(r.m.cov_work_heat) << ','
        << cell(r.m.efficiency) << ',' << cell(r.m.reliability) << ',' << cell(r.m.power) << '\n';
  return kExitOk;
}

int cmd_series(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& e = cfg.engine;
  e.validate();
  const DensityMatrix rho = e.initial_state();
  const auto rm = work_per_cycle_series(e, rho, Scheme::RM, e.cycles);
  const auto rc = work_per_cycle_series(e, rho, Scheme::RC2, e.cycles);
  const double wrm = asymptotic_work_per_cycle(e, MapKind::RM);
  const double wrc = asymptotic_work_per_cycle(e, MapKind::RC);
  if (cfg.format == OutputFormat::Json) {
    json arr = json::array();
    for (std::size_t i = 0; i < rm.size(); ++i)
      arr.push_back({{"N", rm[i].N},
                     {"work_per_cycle_rm", format_full(rm[i].mean_per_cycle)},
                     {"work_per_cycle_rc", format_full(rc[i].mean_per_cycle)},
                     {"reliability_rm", format_full(rm[i].reliability)},
                     {"reliability_rc", format_full(rc[i].reliability)}});
    out << json{{"asymptote_rm", format_full(wrm)}, {"asymptote_rc", format_full(wrc)}, {"rows", arr}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "N,work_per_cycle_rm,work_per_cycle_rc,reliability_rm,reliability_rc,asymptote_rm,"
         "asymptote_rc\n";
  for (std::size_t i = 0; i < rm.size(); ++i)
    out << rm[i].N << ',' << format_csv(rm[i].mean_per_cycle) << ','
        << format_csv(rc[i].mean_per_cycle) << ',' << format_csv(rm[i].reliability) << ','
        << format_csv(rc[i].reliability) << ',' << format_csv(wrm) << ',' << format_csv(wrc)
        << '\n';
  return kExitOk;
}

namespace {

double mean_of(const Mixture1D& m) { return m.mean(); }

// Value of the sweep quantity for one engine and one monitoring kind.
double sweep_value(const EngineConfig& e, MapKind kind, const SweepSpec& sp, double T1) {
  const double T2 = e.T2();
  if (sp.quantity == SweepQuantity::Lambda2) return spectrum(build_cycle_superoperator(e, kind)).lambda2;
  double w = 0.0, q = 0.0;
  if (sp.sweep_cycles <= 0) {
    w = asymptotic_work_per_cycle(e, kind);
    if (sp.quantity == SweepQuantity::Efficiency) q = asymptotic_heat_per_cycle(e, kind);
  } else {
    const int N = sp.sweep_cycles;
    const Scheme s = kind == MapKind::RM ? Scheme::RM : Scheme::RC2;
    const DensityMatrix rho = e.initial_state();
    w = mean_of(assemble_marginal(run_lattice(e, rho, N, s, Observable::Work), e, s, N,
                                  Observable::Work)) / N;
    if (sp.quantity == SweepQuantity::Efficiency)
      q = mean_of(assemble_marginal(run_lattice(e, rho, N, s, Observable::Heat), e, s, N,
                                    Observable::Heat)) / N;
  }
  if (sp.quantity == SweepQuantity::Power) return -w / (T1 + T2);
  return q != 0.0 ? -w / q : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& base = cfg.engine;
  if (base.stroke != StrokeMode::LandauZener)
    throw InvalidArgument("sweeps over T1 need stroke = landau_zener");
  const SweepSpec& sp = cfg.sweep;
  if (sp.T1_count < 2 || sp.T2_count < 2) throw InvalidArgument("sweep counts must be at least 2");
  if (!(sp.T1_min > 0.0 && sp.T1_max > sp.T1_min && sp.T2_min > 0.0 && sp.T2_max > sp.T2_min))
    throw InvalidArgument("sweep ranges must be positive and increasing");
  EngineConfig probe = base;
  probe.T1 = sp.T1_min;
  probe.validate();

  struct Point {
    double T1, T2, rm, rc;
  };
  const int n = sp.T1_count * sp.T2_count;
  std::vector<Point> pts(n);
  const double inv = 1.0 / base.eps_h + 1.0 / base.eps_c;
  parallel_for(n, cfg.threads, [&](int idx) {
    const int i = idx / sp.T2_count, k = idx % sp.T2_count;
    EngineConfig e = base;
    e.T1 = sp.T1_min + (sp.T1_max - sp.T1_min) * i / (sp.T1_count - 1);
    const double T2 = sp.T2_min + (sp.T2_max - sp.T2_min) * k / (sp.T2_count - 1);
    e.theta = T2 / inv;
    pts[idx] = {e.T1, T2, sweep_value(e, MapKind::RM, sp, e.T1), sweep_value(e, MapKind::RC, sp, e.T1)};
  });

  auto best = [&](double Point::*f) {
    int arg = 0;
    for (int i = 1; i < n; ++i)
      if (pts[i].*f > pts[arg].*f) arg = i;
    return pts[arg];
  };
  const Point brm = best(&Point::rm), brc = best(&Point::rc);
  if (cfg.format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& p : pts)
      arr.push_back({{"T1", format_full(p.T1)}, {"T2", format_full(p.T2)},
                     {"value_rm", format_full(p.rm)}, {"value_rc", format_full(p.rc)}});
    out << json{{"grid", arr},
                {"max_rm", {{"T1", format_full(brm.T1)}, {"T2", format_full(brm.T2)}, {"value", format_full(brm.rm)}}},
                {"max_rc", {{"T1", format_full(brc.T1)}, {"T2", format_full(brc.T2)}, {"value", format_full(brc.rc)}}}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "kind,T1,T2,value_rm,value_rc\n";
  for (const auto& p : pts)
    out << "grid," << format_csv(p.T1) << ',' << format_csv(p.T2) << ',' << format_csv(p.rm) << ','
        << format_csv(p.rc) << '\n';
  out << "max_rm," << format_csv(brm.T1) << ',' << format_csv(brm.T2) << ',' << format_csv(brm.rm)
      << ',' << format_csv(brm.rc) << '\n';
  out << "max_rc," << format_csv(brc.T1) << ',' << format_csv(brc.T2) << ',' << format_csv(brc.rm)
      << ',' << format_csv(brc.rc) << '\n';
  return kExitOk;
}

int cmd_asymptotic(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& e = cfg.engine;
  e.validate();
  const double T1 = e.stroke == StrokeMode::LandauZener || e.T1 > 0.0 ? e.T1 : 0.0;
  json arr = json::array();
  if (cfg.format == OutputFormat::Csv)
    out << "kind,work_per_cycle,heat_per_cycle,efficiency,power,lambda1,lambda2,rho_excited,"
           "rho_coherence_re,rho_coherence_im\n";
  for (MapKind k : {MapKind::RM, MapKind::RC}) {
    const CycleSuperoperator sop = build_cycle_superoperator(e, k);
    const SpectrumReport sr = spectrum(sop);
    const DensityMatrix rs = invariant_state(sop);
    const double w = asymptotic_work_per_cycle(e, k);
    const double q = asymptotic_heat_per_cycle(e, k);
    std::optional<double> eta, power;
    if (q != 0.0) eta = -w / q;
    if (T1 > 0.0) power = -w / (T1 + e.T2());
    const std::string name = k == MapKind::RM ? "rm" : "rc";
    if (cfg.format == OutputFormat::Json) {
      arr.push_back({{"kind", name},
                     {"work_per_cycle", format_full(w)},
                     {"heat_per_cycle", format_full(q)},
                     {"efficiency", jcell(eta)},
                     {"power", jcell(power)},
                     {"lambda1", format_full(std::abs(sr.eigenvalues[0]))},
                     {"lambda2", format_full(sr.lambda2)},
                     {"rho_excited", format_full(rs.excited())},
                     {"rho_coherence", {format_full(rs.coherence().real()), format_full(rs.coherence().imag())}}});
    } else {
      out << name << ',' << format_csv(w) << ',' << format_csv(q) << ',' << cell(eta) << ','
          << cell(power) << ',' << format_csv(std::abs(sr.eigenvalues[0])) << ','
          << format_csv(sr.lambda2) << ',' << format_csv(rs.excited()) << ','
          << format_csv(rs.coherence().real()) << ',' << format_csv(rs.coherence().imag()) << '\n';
    }
  }
  if (cfg.format == OutputFormat::Json) out << arr.dump(2) << '\n';
  return kExitOk;
}

int cmd_lz(const RunConfig& cfg, std::ostream& out) {
  const EngineConfig& e = cfg.engine;
  const LandauZener lz = landau_zener(e.eps_c, e.eps_h, e.T1);
  if (cfg.format == OutputFormat::Json) {
    out << json{{"T1", format_full(e.T1)},
                {"delta", format_full(lz.delta)},
                {"alpha", format_full(lz.params.alpha)},
                {"phi", format_full(lz.params.phi)}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  out << "T1,delta,alpha,phi\n"
      << format_csv(e.T1) << ',' << format_csv(lz.delta) << ',' << format_csv(lz.params.alpha)
      << ',' << format_csv(lz.params.phi) << '\n';
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_validation(cfg);
  bool ok = true;
  if (cfg.format == OutputFormat::Json) {
    json arr = json::array();
    for (const auto& r : results) {
      ok = ok && (r.pass || r.skipped);
      arr.push_back({{"check", r.name},
                     {"status", r.skipped ? "skipped" : (r.pass ? "pass" : "fail")},
                     {"deviation", format_full(r.deviation)},
                     {"tolerance", format_full(r.tolerance)},
                     {"detail", r.detail}});
    }
    out << json{{"passed", ok}, {"checks", arr}}.dump(2) << '\n';
  } else {
    out << "check,status,deviation,tolerance,detail\n";
    for (const auto& r : results) {
      ok = ok && (r.pass || r.skipped);
      out << r.name << ',' << (r.skipped ? "skipped" : (r.pass ? "pass" : "fail")) << ','
          << format_csv(r.deviation) << ',' << format_csv(r.tolerance) << ',' << r.detail << '\n';
    }
  }
  return ok ? kExitOk : kExitValidation;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"pdf",   "joint", "moments",    "series",
                                                 "sweep", "asymptotic", "lz", "validate"};
  return names;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  try {
    if (name == "pdf") return cmd_pdf(cfg, out);
    if (name == "joint") return cmd_joint(cfg, out);
    if (name == "moments") return cmd_moments(cfg, out);
    if (name == "series") return cmd_series(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, out);
    if (name == "asymptotic") return cmd_asymptotic(cfg, out);
    if (name == "lz") return cmd_lz(cfg, out);
    if (name == "validate") return cmd_validate(cfg, out);
    err << "unknown command '" << name << "'\n";
    return kExitBadConfig;
  } catch (const InvalidArgument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace otto

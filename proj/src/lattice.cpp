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

#include "otto/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <utility>

namespace otto {

namespace {

constexpr int kWorkSign[4] = {-1, 1, -1, 1};
constexpr int kHeatSign[4] = {0, -1, 1, 0};

bool is_rc(Scheme s) { return s != Scheme::RM; }

template <typename F>
void parallel_rows(int lo, int hi, F&& body) {
  const int rows = hi - lo + 1;
  const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const int workers = std::min(hw, rows / 8);
  if (workers <= 1) {
    for (int r = lo; r <= hi; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int r = lo + w; r <= hi; r += workers) body(r);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

CycleTable::CycleTable(const EngineConfig& engine, Scheme scheme, Observable obs)
    : scheme_(scheme), obs_(obs) {
  engine.validate();
  const ThermalChannel cold = engine.cold_channel();
  const ThermalChannel hot = engine.hot_channel();
  if (is_rc(scheme) && (!cold.decoupled(1e-12) || !hot.decoupled(1e-12)))
    throw InvalidArgument(
        "repeated-contact lattice needs thermalization strokes that decouple populations "
        "and coherences");
  const WorkStrokeParams sp = engine.stroke_params();
  const Mat2 u = build_forward_unitary(sp);
  const Mat2 ut = build_reverse_unitary(sp);
  const Mat2 pr[2] = {projector(Level::Minus), projector(Level::Plus)};
  const double eps[4] = {engine.eps_c, engine.eps_h, engine.eps_h, engine.eps_c};
  const double sigma = engine.sigma;
  // The corrupted variant misses the factor 1/8 in the exponent's denominator.
  const double denom = engine.corrupt_suppression ? 2.0 : 8.0;

  std::map<std::pair<int, int>, Mat4> grouped;
  for (int mm = 0; mm < 16; ++mm) {
    for (int mp = 0; mp < 16; ++mp) {
      int m[4], n[4];
      for (int k = 0; k < 4; ++k) {
        m[k] = (mm >> k) & 1;
        n[k] = (mp >> k) & 1;
      }
      int da = 0, db = 0;
      double sumsq = 0.0;
      for (int k = 0; k < 4; ++k) {
        const int s = 2 * m[k] - 1, sp2 = 2 * n[k] - 1;
        const int h = (s + sp2) / 2;
        if (obs == Observable::Work)
          (k == 0 || k == 3 ? da : db) += kWorkSign[k] * h;
        else
          db += kHeatSign[k] * h;
        const double diff = (s - sp2) * eps[k];
        sumsq += diff * diff;
      }
      double weight = 1.0;
      if (scheme == Scheme::RM) {
        if (sigma > 0.0)
          weight = std::exp(-sumsq / (denom * sigma * sigma));
        else
          weight = sumsq == 0.0 ? 1.0 : 0.0;
      }
      if (weight == 0.0) continue;
      const Mat4 first = sandwich(pr[m[1]] * u * pr[m[0]], pr[n[0]] * u.adjoint() * pr[n[1]]);
      const Mat4 second = sandwich(pr[m[3]] * ut * pr[m[2]], pr[n[2]] * ut.adjoint() * pr[n[3]]);
      const Mat4 s = cold.superoperator() * second * hot.superoperator() * first;
      auto [it, fresh] = grouped.try_emplace({da, db}, Mat4::Zero());
      it->second += weight * s;
    }
  }
  for (auto& [k, op] : grouped)
    if (!op.isZero(0.0)) shifts_.push_back({k.first, k.second, op});
}

Mat4 CycleTable::total() const {
  Mat4 t = Mat4::Zero();
  for (const auto& s : shifts_) t += s.op;
  return t;
}

LatticeAccumulator LatticeAccumulator::delta(const Mat2& rho) {
  LatticeAccumulator acc;
  acc.cells_.assign(1, vec(rho));
  acc.live_.assign(1, 1);
  return acc;
}

bool LatticeAccumulator::occupied(int a, int b) const {
  if (a < a_lo_ || a > a_hi_ || b < b_lo_ || b > b_hi_) return false;
  return live_[index(a, b)] != 0;
}

Mat2 LatticeAccumulator::at(int a, int b) const {
  if (!occupied(a, b)) return Mat2::Zero();
  return unvec(cells_[index(a, b)]);
}

std::size_t LatticeAccumulator::occupied_count() const {
  return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), 1));
}

cplx LatticeAccumulator::total_trace() const {
  cplx t = 0.0;
  for_each([&](int, int, const Vec4& v) { t += v(0) + v(3); });
  return t;
}

LatticeAccumulator advance_cycle(const LatticeAccumulator& acc, const CycleTable& table) {
  int da_lo = 0, da_hi = 0, db_lo = 0, db_hi = 0;
  for (const auto& s : table.shifts()) {
    da_lo = std::min(da_lo, s.da);
    da_hi = std::max(da_hi, s.da);
    db_lo = std::min(db_lo, s.db);
    db_hi = std::max(db_hi, s.db);
  }
  LatticeAccumulator out;
  out.cycles_ = acc.cycles_ + 1;
  out.a_lo_ = acc.a_lo_ + da_lo;
  out.a_hi_ = acc.a_hi_ + da_hi;
  out.b_lo_ = acc.b_lo_ + db_lo;
  out.b_hi_ = acc.b_hi_ + db_hi;
  const std::size_t n = static_cast<std::size_t>(out.a_hi_ - out.a_lo_ + 1) *
                        (out.b_hi_ - out.b_lo_ + 1);
  out.cells_.assign(n, Vec4::Zero());
  out.live_.assign(n, 0);

  // Gather form: each target cell sums its sources in a fixed order, so the
  // result does not depend on how rows are split across threads.
  parallel_rows(out.a_lo_, out.a_hi_, [&](int a) {
    for (int b = out.b_lo_; b <= out.b_hi_; ++b) {
      Vec4 sum = Vec4::Zero();
      bool any = false;
      for (const auto& s : table.shifts()) {
        const int sa = a - s.da, sb = b - s.db;
        if (!acc.occupied(sa, sb)) continue;
        sum.noalias() += s.op * acc.cells_[acc.index(sa, sb)];
        any = true;
      }
      if (!any || sum.cwiseAbs().sum() < kLatticePrune) continue;
      const std::size_t i = out.index(a, b);
      out.cells_[i] = sum;
      out.live_[i] = 1;
    }
  });

  // Shrink the box to the occupied region.
  int a0 = out.a_hi_ + 1, a1 = out.a_lo_ - 1, b0 = out.b_hi_ + 1, b1 = out.b_lo_ - 1;
  out.for_each([&](int a, int b, const Vec4&) {
    a0 = std::min(a0, a);
    a1 = std::max(a1, a);
    b0 = std::min(b0, b);
    b1 = std::max(b1, b);
  });
  if (a0 > a1) return out;
  if (a0 == out.a_lo_ && a1 == out.a_hi_ && b0 == out.b_lo_ && b1 == out.b_hi_) return out;
  LatticeAccumulator shrunk;
  shrunk.cycles_ = out.cycles_;
  shrunk.a_lo_ = a0;
  shrunk.a_hi_ = a1;
  shrunk.b_lo_ = b0;
  shrunk.b_hi_ = b1;
  const std::size_t m = static_cast<std::size_t>(a1 - a0 + 1) * (b1 - b0 + 1);
  shrunk.cells_.assign(m, Vec4::Zero());
  shrunk.live_.assign(m, 0);
  out.for_each([&](int a, int b, const Vec4& v) {
    const std::size_t i = shrunk.index(a, b);
    shrunk.cells_[i] = v;
    shrunk.live_[i] = 1;
  });
  return shrunk;
}

LatticeAccumulator advance_cycle(const LatticeAccumulator& acc, const EngineConfig& engine,
                                 Scheme scheme, Observable obs) {
  return advance_cycle(acc, CycleTable(engine, scheme, obs));
}

Mat2 fold_initial_state_rc(const Mat2& rho, double sigma, double eps_c) {
  const double damp = sigma > 0.0 ? std::exp(-eps_c * eps_c / (2.0 * sigma * sigma)) : 0.0;
  Mat2 out = rho;
  out(0, 1) *= damp;
  out(1, 0) *= damp;
  return out;
}

// A single heat pointer never sees the first contact, so nothing is damped.
bool uses_rc_fold(Scheme scheme, Observable obs) {
  if (scheme == Scheme::RM) return false;
  return !(scheme == Scheme::RC1 && obs == Observable::Heat);
}

double mixture_variance(Scheme scheme, Observable obs, int N, double sigma) {
  const double s2 = sigma * sigma;
  if (scheme != Scheme::RM) return s2;
  return (obs == Observable::Work ? 4.0 : 2.0) * N * s2;
}

Mixture1D assemble_marginal(const LatticeAccumulator& acc, const EngineConfig& engine,
                            Scheme scheme, int N, Observable obs) {
  const double var = mixture_variance(scheme, obs, N, engine.sigma);
  Mixture1D mix;
  acc.for_each([&](int a, int b, const Vec4& v) {
    const double w = (v(0) + v(3)).real();
    mix.components.push_back({w, a * engine.eps_c + b * engine.eps_h, var, a, b});
  });
  return mix;
}

LatticeAccumulator run_lattice(const EngineConfig& engine, const DensityMatrix& rho, int N,
                               Scheme scheme, Observable obs) {
  const CycleTable table(engine, scheme, obs);
  Mat2 start = rho.matrix();
  if (uses_rc_fold(scheme, obs)) start = fold_initial_state_rc(start, engine.sigma, engine.eps_c);
  LatticeAccumulator acc = LatticeAccumulator::delta(start);
  for (int n = 0; n < N; ++n) acc = advance_cycle(acc, table);
  return acc;
}

Mixture1D lattice_marginal(const EngineConfig& engine, int N, Scheme scheme, Observable obs) {
  return assemble_marginal(run_lattice(engine, engine.initial_state(), N, scheme, obs), engine,
                           scheme, N, obs);
}

std::vector<SeriesPoint> work_per_cycle_series(const EngineConfig& engine,
                                               const DensityMatrix& rho, Scheme scheme,
                                               int N_max) {
  if (N_max < 1) throw InvalidArgument("series needs at least one cycle");
  const CycleTable table(engine, scheme, Observable::Work);
  Mat2 start = rho.matrix();
  if (uses_rc_fold(scheme, Observable::Work))
    start = fold_initial_state_rc(start, engine.sigma, engine.eps_c);
  LatticeAccumulator acc = LatticeAccumulator::delta(start);
  std::vector<SeriesPoint> out;
  out.reserve(N_max);
  for (int n = 1; n <= N_max; ++n) {
    acc = advance_cycle(acc, table);
    double m1 = 0.0, m2 = 0.0;
    acc.for_each([&](int a, int b, const Vec4& v) {
      const double w = (v(0) + v(3)).real();
      const double x = a * engine.eps_c + b * engine.eps_h;
      m1 += w * x;
      m2 += w * x * x;
    });
    m2 += mixture_variance(scheme, Observable::Work, n, engine.sigma);
    const double sd = std::sqrt(std::max(0.0, m2 - m1 * m1));
    out.push_back({n, m1, m2, m1 / n, sd > 0.0 ? -m1 / sd : 0.0, acc.occupied_count()});
  }
  return out;
}

std::vector<SeriesPoint> work_per_cycle_series(const EngineConfig& engine, Scheme scheme,
                                               int N_max) {
  return work_per_cycle_series(engine, engine.initial_state(), scheme, N_max);
}

}  // namespace otto

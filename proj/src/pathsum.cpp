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

#include "otto/pathsum.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace otto {

double pointer_suppression(double x, double sigma) {
  if (sigma > 0.0) return std::exp(-x * x / (8.0 * sigma * sigma));
  return std::abs(x) < 1e-9 ? 1.0 : 0.0;
}

namespace {

// Contact position within a cycle: 0 cold, 1 hot, 2 hot, 3 cold.
constexpr int kWorkSign[4] = {-1, 1, -1, 1};
constexpr int kHeatSign[4] = {0, -1, 1, 0};

struct Walker {
  Mat2 u, ud, ut, utd;
  ThermalChannel cold, hot;
  double eps[4];
  double sigma;
  int contacts;
  double prune;
  std::vector<BranchCoefficient>* out;

  struct Acc {
    int a = 0, b = 0, bq = 0;
    int da = 0, db = 0, dq = 0;
    double sumsq = 0.0;
    std::uint32_t m = 0, mp = 0;
  };

  void visit(const Mat2& x, int k, const Acc& acc) const {
    if (k == contacts) {
      emit(x, acc);
      return;
    }
    const int pos = k % 4;
    Mat2 pre;
    switch (pos) {
      case 0: pre = x; break;
      case 1: pre = u * x * ud; break;
      case 2: pre = hot.apply(x); break;
      default: pre = ut * x * utd; break;
    }
    for (int m = 0; m < 2; ++m) {
      for (int mp = 0; mp < 2; ++mp) {
        Mat2 y = Mat2::Zero();
        y(m, mp) = pre(m, mp);
        if (pos == 3) y = cold.apply(y);
        if (y.isZero(0.0)) continue;
        const int s = 2 * m - 1, sp = 2 * mp - 1;
        const int h = (s + sp) / 2, d = s - sp;
        Acc next = acc;
        const bool is_cold = pos == 0 || pos == 3;
        (is_cold ? next.a : next.b) += kWorkSign[pos] * h;
        (is_cold ? next.da : next.db) += kWorkSign[pos] * d;
        next.bq += kHeatSign[pos] * h;
        next.dq += kHeatSign[pos] * d;
        next.sumsq += d * d * eps[pos] * eps[pos];
        next.m |= static_cast<std::uint32_t>(m) << k;
        next.mp |= static_cast<std::uint32_t>(mp) << k;
        visit(y, k + 1, next);
      }
    }
  }

  void emit(const Mat2& x, const Acc& acc) const {
    const cplx v = x.trace();
    if (std::abs(v) < prune) return;
    BranchCoefficient bc;
    bc.value = v;
    bc.a = acc.a;
    bc.b = acc.b;
    bc.bq = acc.bq;
    bc.work_center = acc.a * eps[0] + acc.b * eps[1];
    bc.heat_center = acc.bq * eps[1];
    bc.delta_work = acc.da * eps[0] + acc.db * eps[1];
    bc.delta_heat = acc.dq * eps[1];
    bc.suppression_rm =
        sigma > 0.0 ? std::exp(-acc.sumsq / (8.0 * sigma * sigma)) : (acc.sumsq == 0.0 ? 1.0 : 0.0);
    bc.suppression_rc =
        pointer_suppression(bc.delta_work, sigma) * pointer_suppression(bc.delta_heat, sigma);
    bc.m = acc.m;
    bc.mp = acc.mp;
    out->push_back(bc);
  }
};

}  // namespace

std::vector<BranchCoefficient> enumerate_branches(const EngineConfig& engine,
                                                  const DensityMatrix& rho, int N,
                                                  double prune) {
  if (N < 1 || N > kOracleMaxCycles)
    throw InvalidArgument("path-sum oracle supports 1 to " + std::to_string(kOracleMaxCycles) +
                          " cycles");
  engine.validate();
  const WorkStrokeParams sp = engine.stroke_params();
  const Mat2 u = build_forward_unitary(sp);
  const Mat2 ut = build_reverse_unitary(sp);
  std::vector<BranchCoefficient> out;
  Walker w{u,    u.adjoint(), ut,  ut.adjoint(), engine.cold_channel(), engine.hot_channel(),
           {engine.eps_c, engine.eps_h, engine.eps_h, engine.eps_c},
           engine.sigma, 4 * N, prune, &out};
  w.visit(rho.matrix(), 0, {});
  return out;
}

std::vector<BranchCoefficient> enumerate_branches(const EngineConfig& engine, int N,
                                                  double prune) {
  return enumerate_branches(engine, engine.initial_state(), N, prune);
}

namespace {

template <typename Key, typename Make>
auto group(const std::vector<BranchCoefficient>& br, Key key, Make make) {
  using K = decltype(key(br.front()));
  std::map<K, std::pair<cplx, const BranchCoefficient*>> acc;
  for (const auto& c : br) {
    auto [it, fresh] = acc.try_emplace(key(c), cplx(0.0), &c);
    it->second.first += make(c);
  }
  return acc;
}

}  // namespace

Mixture2D joint_pdf_rm(const std::vector<BranchCoefficient>& br, double sigma, int N) {
  const double s2 = 2.0 * N * sigma * sigma;
  Eigen::Matrix2d cov;
  cov << 2.0 * s2, -s2, -s2, s2;
  Mixture2D mix;
  auto g = group(br, [](const BranchCoefficient& c) { return std::tuple(c.a, c.b, c.bq); },
                 [](const BranchCoefficient& c) { return c.value * c.suppression_rm; });
  for (auto& [k, v] : g) {
    const auto* c = v.second;
    if (v.first.real() == 0.0) continue;
    mix.components.push_back({v.first.real(), Eigen::Vector2d(c->work_center, c->heat_center), cov,
                              c->a, c->b, c->bq});
  }
  return mix;
}

Mixture2D joint_pdf_rc(const std::vector<BranchCoefficient>& br, double sigma) {
  const Eigen::Matrix2d cov = Eigen::Matrix2d::Identity() * sigma * sigma;
  Mixture2D mix;
  auto g = group(br, [](const BranchCoefficient& c) { return std::tuple(c.a, c.b, c.bq); },
                 [](const BranchCoefficient& c) { return c.value * c.suppression_rc; });
  for (auto& [k, v] : g) {
    const auto* c = v.second;
    if (v.first.real() == 0.0) continue;
    mix.components.push_back({v.first.real(), Eigen::Vector2d(c->work_center, c->heat_center), cov,
                              c->a, c->b, c->bq});
  }
  return mix;
}

Mixture2D joint_pdf_rm(const EngineConfig& engine, int N) {
  return joint_pdf_rm(enumerate_branches(engine, N), engine.sigma, N);
}

Mixture2D joint_pdf_rc(const EngineConfig& engine, int N) {
  return joint_pdf_rc(enumerate_branches(engine, N), engine.sigma);
}

Mixture1D oracle_marginal(const std::vector<BranchCoefficient>& br, const EngineConfig& engine,
                          int N, Scheme scheme, Observable obs) {
  const double s = engine.sigma;
  const bool work = obs == Observable::Work;
  auto weight = [&](const BranchCoefficient& c) -> cplx {
    switch (scheme) {
      case Scheme::RM:
        return c.value * c.suppression_rm;
      case Scheme::RC1:
        return c.value * pointer_suppression(work ? c.delta_work : c.delta_heat, s);
      case Scheme::RC2:
        return c.value * c.suppression_rc;
    }
    return 0.0;
  };
  double var = s * s;
  if (scheme == Scheme::RM) var *= work ? 4.0 * N : 2.0 * N;
  Mixture1D mix;
  if (work) {
    auto g = group(br, [](const BranchCoefficient& c) { return std::pair(c.a, c.b); }, weight);
    for (auto& [k, v] : g)
      mix.components.push_back(
          {v.first.real(), v.second->work_center, var, k.first, k.second});
  } else {
    auto g = group(br, [](const BranchCoefficient& c) { return c.bq; }, weight);
    for (auto& [k, v] : g)
      mix.components.push_back({v.first.real(), v.second->heat_center, var, 0, k});
  }
  return mix;
}

Mixture1D oracle_marginal(const EngineConfig& engine, int N, Scheme scheme, Observable obs) {
  return oracle_marginal(enumerate_branches(engine, N), engine, N, scheme, obs);
}

Mixture1D marginal_rc_work(const EngineConfig& engine, int N, int pointers) {
  if (pointers != 1 && pointers != 2) throw InvalidArgument("pointer count must be 1 or 2");
  return oracle_marginal(engine, N, pointers == 1 ? Scheme::RC1 : Scheme::RC2, Observable::Work);
}

}  // namespace otto

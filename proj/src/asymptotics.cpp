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

#include "otto/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "otto/lattice.hpp"

namespace otto {

Mat4 dephasing_superoperator(double eps, double sigma) {
  const double damp = sigma > 0.0 ? std::exp(-eps * eps / (2.0 * sigma * sigma)) : 0.0;
  Mat4 d = Mat4::Identity();
  d(1, 1) = damp;
  d(2, 2) = damp;
  return d;
}

CycleSuperoperator build_cycle_superoperator(const EngineConfig& engine, MapKind kind) {
  engine.validate();
  const WorkStrokeParams sp = engine.stroke_params();
  const Mat2 u = build_forward_unitary(sp);
  const Mat2 ut = build_reverse_unitary(sp);
  const Mat4 fu = sandwich(u, u.adjoint());
  const Mat4 fut = sandwich(ut, ut.adjoint());
  const Mat4 hot = engine.hot_channel().superoperator();
  const Mat4 cold = engine.cold_channel().superoperator();
  if (kind == MapKind::RC) return {cold * fut * hot * fu, kind};
  const Mat4 dc = dephasing_superoperator(engine.eps_c, engine.sigma);
  const Mat4 dh = dephasing_superoperator(engine.eps_h, engine.sigma);
  return {cold * dc * fut * dh * hot * dh * fu * dc, kind};
}

namespace {

struct Eig {
  Eigen::Vector4cd values;
  Eigen::Matrix4cd vectors;
};

Eig eig(const Mat4& m) {
  Eigen::ComplexEigenSolver<Mat4> es(m);
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

SpectrumReport spectrum(const CycleSuperoperator& sop) {
  const Eig e = eig(sop.matrix);
  SpectrumReport r;
  for (int i = 0; i < 4; ++i) r.eigenvalues[i] = e.values(i);
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(),
            [](cplx x, cplx y) { return std::abs(x) > std::abs(y); });
  r.lambda2 = std::abs(r.eigenvalues[1]);
  return r;
}

DensityMatrix invariant_state(const CycleSuperoperator& sop) {
  const Eig e = eig(sop.matrix);
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (std::abs(e.values(i) - 1.0) < std::abs(e.values(best) - 1.0)) best = i;
  for (int i = 0; i < 4; ++i)
    if (i != best && std::abs(e.values(i) - 1.0) < 1e-10)
      throw DegenerateSpectrum("eigenvalue 1 of the cycle map is degenerate");
  Mat2 x = unvec(e.vectors.col(best));
  x /= x.trace();
  x = 0.5 * (x + x.adjoint()).eval();
  // One refinement step removes eigensolver noise in the fixed point.
  x = sop.apply(x);
  x = 0.5 * (x + x.adjoint()).eval();
  x /= x.trace().real();
  return DensityMatrix(x);
}

DensityMatrix invariant_cycle_state(const EngineConfig& engine) {
  return invariant_state(build_cycle_superoperator(engine, MapKind::RC));
}

namespace {

double asymptotic_mean(const EngineConfig& engine, MapKind kind, Observable obs) {
  const Scheme scheme = kind == MapKind::RM ? Scheme::RM : Scheme::RC2;
  const CycleTable table(engine, scheme, obs);
  const Vec4 rho = vec(invariant_state(build_cycle_superoperator(engine, kind)).matrix());
  cplx w = 0.0;
  for (const auto& s : table.shifts()) {
    const Vec4 out = s.op * rho;
    w += (out(0) + out(3)) * (s.da * engine.eps_c + s.db * engine.eps_h);
  }
  return w.real();
}

}  // namespace

double asymptotic_work_per_cycle(const EngineConfig& engine, MapKind kind) {
  return asymptotic_mean(engine, kind, Observable::Work);
}

double asymptotic_heat_per_cycle(const EngineConfig& engine, MapKind kind) {
  return asymptotic_mean(engine, kind, Observable::Heat);
}

double asymptotic_power(const EngineConfig& engine, MapKind kind, double T1, double T2) {
  if (!(T1 > 0.0) || !(T2 > 0.0)) throw InvalidArgument("stroke durations must be positive");
  return -asymptotic_work_per_cycle(engine, kind) / (T1 + T2);
}

}  // namespace otto

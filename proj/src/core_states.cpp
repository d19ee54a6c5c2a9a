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

#include "otto/core_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace otto {

std::string DensityMatrix::check(const Mat2& m) {
  if (!m.allFinite()) return "non-finite entries";
  std::ostringstream why;
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kTol) {
    why << "not Hermitian (deviation " << herm << ")";
    return why.str();
  }
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kTol) {
    why << "trace " << tr.real() << " differs from 1";
    return why.str();
  }
  // Eigenvalues of a Hermitian 2x2: t/2 +- sqrt((a-b)^2/4 + |c|^2).
  const double a = m(0, 0).real(), b = m(1, 1).real();
  const double r = std::sqrt(0.25 * (a - b) * (a - b) + std::norm(m(1, 0)));
  const double lo = 0.5 * (a + b) - r;
  if (lo < -kTol) {
    why << "negative eigenvalue " << lo;
    return why.str();
  }
  return {};
}

DensityMatrix::DensityMatrix(const Mat2& m) : m_(m) {
  const std::string why = check(m);
  if (!why.empty()) throw InvalidArgument("invalid density matrix: " + why);
}

DensityMatrix DensityMatrix::from_populations(double d, cplx q) {
  Mat2 m;
  m << 1.0 - d, std::conj(q), q, d;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Mat2::Identity() * 0.5);
}

StrokeHamiltonian::StrokeHamiltonian(double eps, BathLabel lab) : epsilon(eps), label(lab) {
  if (!(eps > 0.0)) throw InvalidArgument("level half-gap must be positive");
}

Mat2 StrokeHamiltonian::matrix() const {
  Mat2 h = Mat2::Zero();
  h(0, 0) = -epsilon;
  h(1, 1) = epsilon;
  return h;
}

WorkStrokeParams::WorkStrokeParams(double a, double p) : alpha(a), phi(p) {
  if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("alpha must lie in [0, 1]");
  if (!std::isfinite(p)) throw InvalidArgument("phi must be finite");
}

PointerSpec::PointerSpec(double s) : sigma(s) {
  if (!(s >= 0.0)) throw InvalidArgument("pointer width must be non-negative");
}

Mat2 build_forward_unitary(const WorkStrokeParams& p) {
  const double s = std::sqrt(1.0 - p.alpha), r = std::sqrt(p.alpha);
  const cplx e = std::polar(1.0, p.phi);
  Mat2 u;
  u << s * e, r, -r, s * std::conj(e);
  return u;
}

// conj(U^dagger) is the plain transpose.
Mat2 build_reverse_unitary(const WorkStrokeParams& p) {
  return build_forward_unitary(p).transpose();
}

Mat2 projector(Level level) {
  Mat2 pr = Mat2::Zero();
  const int i = static_cast<int>(level);
  pr(i, i) = 1.0;
  return pr;
}

LandauZener landau_zener(double eps_c, double eps_h, double T1) {
  if (!(eps_c > 0.0) || !(eps_h > eps_c))
    throw InvalidArgument("Landau-Zener mode needs eps_h > eps_c > 0");
  if (!(T1 > 0.0)) throw InvalidArgument("work stroke duration must be positive");
  const double ratio = eps_h / eps_c;
  const double delta = eps_c * T1 / (4.0 * std::sqrt(ratio * ratio - 1.0));
  const double alpha = std::exp(-2.0 * std::numbers::pi * delta);
  const double phi = std::numbers::pi / 4.0 - delta * (std::log(delta) - 1.0) -
                     log_gamma(cplx(1.0, -delta)).imag();
  return {delta, WorkStrokeParams(alpha, phi)};
}

Vec4 vec(const Mat2& m) {
  Vec4 v;
  v << m(0, 0), m(1, 0), m(0, 1), m(1, 1);
  return v;
}

Mat2 unvec(const Vec4& v) {
  Mat2 m;
  m << v(0), v(2), v(1), v(3);
  return m;
}

Mat4 sandwich(const Mat2& left, const Mat2& right) {
  Mat4 k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = right(j, i) * left;
  return k;
}

Eigen::RowVector4cd trace_row() {
  Eigen::RowVector4cd r;
  r << 1.0, 0.0, 0.0, 1.0;
  return r;
}

}  // namespace otto

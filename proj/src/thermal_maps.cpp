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

#include "otto/thermal_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace otto {

BathSpec::BathSpec(double b, double g, double wd, BathLabel lab)
    : beta(b), gamma(g), omega_d(wd), label(lab) {
  if (!(b > 0.0)) throw InvalidArgument("inverse temperature must be positive");
  if (!(g >= 0.0)) throw InvalidArgument("coupling rate must be non-negative");
  if (!(wd > 0.0)) throw InvalidArgument("Drude cutoff must be positive");
}

Mat2 ThermalState::matrix() const {
  Mat2 m;
  m << 1.0 - d, std::conj(q), q, d;
  return m;
}

// e^{-b e}/(e^{b e} + e^{-b e}) written to stay finite for large b e.
static double excited_population(double beta, double eps) {
  return 1.0 / (1.0 + std::exp(2.0 * beta * eps));
}

ThermalState gibbs_state(double beta, double epsilon) {
  return {excited_population(beta, epsilon), 0.0};
}

double bath_correlator(const BathSpec& bath, double lambda) {
  const double beta = bath.beta, wd = bath.omega_d;
  const double shift = std::abs(0.5 * beta - lambda);
  // J(w) cosh(w (beta/2 - lambda)) / (pi sinh(beta w / 2)), overflow-free.
  auto f = [&](double w) {
    const double b = 0.5 * beta * w;
    const double a = shift * w;
    const double num = std::exp(a - b) + std::exp(-a - b);
    const double den = -std::expm1(-2.0 * b);
    const double j = bath.gamma * w / (1.0 + (w * w) / (wd * wd));
    return j * num / (std::numbers::pi * den);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0, l1 = 0.0;
  double val = 0.0;
  try {
    val = integrator.integrate(f, 1e-12, &err, &l1);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("correlator quadrature failed: ") + e.what());
  }
  if (!std::isfinite(val) || err > 1e-8 * std::max(1.0, std::abs(val)))
    throw QuadratureError("correlator quadrature did not converge");
  return val;
}

ThermalState generalized_gibbs(const BathSpec& bath, const StrokeHamiltonian& h) {
  const double beta = bath.beta, eps = h.epsilon;
  const ThermalState bare = gibbs_state(beta, eps);
  if (bath.gamma == 0.0) return bare;

  // Both kernels vanish linearly at lambda = 0 and lambda = beta, where the
  // correlator has a logarithmic singularity. Clamping its argument a relative
  // 1e-10 away from the ends changes the integral by O(1e-20).
  const double edge = 1e-10 * beta;
  auto corr = [&](double l) { return bath_correlator(bath, std::clamp(l, edge, beta - edge)); };
  auto kd = [&](double l) {
    return (beta - l) * std::sinh(2.0 * eps * l) / (1.0 + std::exp(-2.0 * beta * eps));
  };
  auto kq = [&](double l) {
    return (std::exp(2.0 * beta * eps) * std::expm1(-2.0 * eps * l) +
            std::expm1(2.0 * eps * l)) / eps;
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  auto integrate = [&](auto kernel) {
    double err = 0.0;
    double val = 0.0;
    try {
      val = integrator.integrate(
          [&](double l) { return kernel(l) * corr(l); }, 0.0, beta,
          1e-10, &err);
    } catch (const std::exception& e) {
      throw QuadratureError(std::string("lambda quadrature failed: ") + e.what());
    }
    if (!std::isfinite(val) || err > 1e-6 * std::max(std::abs(val), 1e-300))
      throw QuadratureError("lambda quadrature did not converge");
    return val;
  };
  const double id = integrate(kd);
  const double iq = integrate(kq);
  return {bare.d * (1.0 + 4.0 * id), bare.d * iq};
}

Mat2 apply_perfect_unnormalized(const ThermalState& target, const Mat2& op) {
  return target.matrix() * op.trace();
}

DensityMatrix apply_perfect(const ThermalState& target, const DensityMatrix& rho) {
  return DensityMatrix(apply_perfect_unnormalized(target, rho.matrix()));
}

Mat2 apply_lindblad(const BathSpec& bath, const StrokeHamiltonian& h, double theta,
                    const Mat2& op) {
  if (!(theta >= 0.0)) throw InvalidArgument("thermalization time must be non-negative");
  const double peq = excited_population(bath.beta, h.epsilon);
  const double relax = std::exp(-2.0 * bath.gamma * theta);
  const cplx tr = op.trace();
  const cplx coh = std::exp(-bath.gamma * theta) * std::polar(1.0, -2.0 * theta);
  Mat2 out;
  out(1, 1) = peq * tr + (op(1, 1) - peq * tr) * relax;
  out(0, 0) = tr - out(1, 1);
  out(1, 0) = op(1, 0) * coh;
  out(0, 1) = op(0, 1) * std::conj(coh);
  return out;
}

ThermalChannel::ThermalChannel(Kind k, ThermalState target, BathSpec bath,
                               StrokeHamiltonian h, double theta, double mixing)
    : kind_(k), target_(target), bath_(bath), h_(h), theta_(theta) {
  if (!(theta >= 0.0)) throw InvalidArgument("thermalization time must be non-negative");
  const double c = std::cos(mixing), s = std::sin(mixing);
  rotation_ << c, cplx(0.0, -s), cplx(0.0, -s), c;
  tabulate();
}

ThermalChannel ThermalChannel::perfect(const ThermalState& target) {
  if (!DensityMatrix::check(target.matrix()).empty())
    throw InvalidArgument("perfect thermalization target is not a valid state");
  return ThermalChannel(Kind::Perfect, target, BathSpec(1.0, 0.0, 1.0, BathLabel::Cold),
                        StrokeHamiltonian(1.0, BathLabel::Cold), 0.0, 0.0);
}

ThermalChannel ThermalChannel::lindblad(const BathSpec& bath, const StrokeHamiltonian& h,
                                        double theta) {
  return ThermalChannel(Kind::Lindblad, {}, bath, h, theta, 0.0);
}

ThermalChannel ThermalChannel::synthetic(const BathSpec& bath, const StrokeHamiltonian& h,
                                         double theta, double mixing_angle) {
  return ThermalChannel(Kind::Synthetic, {}, bath, h, theta, mixing_angle);
}

Mat2 ThermalChannel::apply(const Mat2& op) const {
  switch (kind_) {
    case Kind::Perfect:
      return apply_perfect_unnormalized(target_, op);
    case Kind::Lindblad:
      return apply_lindblad(bath_, h_, theta_, op);
    case Kind::Synthetic:
      return rotation_ * apply_lindblad(bath_, h_, theta_, op) * rotation_.adjoint();
  }
  return op;
}

void ThermalChannel::tabulate() {
  for (int j = 0; j < 4; ++j) {
    Vec4 e = Vec4::Zero();
    e(j) = 1.0;
    sop_.col(j) = vec(apply(unvec(e)));
  }
}

// Populations must not feed coherences, coherences must not feed populations,
// and |+><-| must not turn into |-><+|.
double ThermalChannel::decoupling_violation() const {
  const Mat2 lp = [] { Mat2 m = Mat2::Zero(); m(1, 0) = 1.0; return m; }();
  const Mat2 lm = lp.adjoint();
  const Mat2 pk[2] = {projector(Level::Minus), projector(Level::Plus)};
  double worst = 0.0;
  for (const Mat2* l : {&lp, &lm}) {
    for (const Mat2& p : pk) {
      worst = std::max(worst, std::abs((*l * apply(p)).trace()));
      worst = std::max(worst, std::abs((p * apply(*l)).trace()));
    }
    worst = std::max(worst, std::abs((*l * apply(*l)).trace()));
  }
  return worst;
}

}  // namespace otto

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

// Closed-form single-cycle moments. Each expression was checked against the
// brute-force branch sum for random parameters.

#include <cmath>

#include "otto/pathsum.hpp"

namespace otto {

Moments analytic_moments_perfect(double eps_c, double eps_h, double alpha, double d_c,
                                 double d_h) {
  auto A = [alpha](double x, double y) { return 2.0 * (alpha + x - y - 2.0 * alpha * x); };
  const double B = 1.0 - (1.0 - 2.0 * alpha) * (1.0 - 2.0 * d_c) * (1.0 - 2.0 * d_h);
  const double cross = (1.0 - 2.0 * d_c) * (1.0 - 2.0 * d_h) - (1.0 - 2.0 * alpha) * (1.0 + B);
  Moments m;
  m.w = A(d_c, d_h) * eps_h + A(d_h, d_c) * eps_c;
  m.q = -A(d_c, d_h) * eps_h;
  m.w2 = 2.0 * B * (eps_c * eps_c + eps_h * eps_h) + 2.0 * cross * eps_c * eps_h;
  m.q2 = 2.0 * B * eps_h * eps_h;
  m.wq = -2.0 * B * eps_h * eps_h - cross * eps_c * eps_h;
  return m;
}

Moments analytic_moments_perfect(const EngineConfig& engine) {
  if (engine.thermo != ThermoMode::Perfect)
    throw InvalidArgument("closed form requires perfect thermalization");
  const WorkStrokeParams p = engine.stroke_params();
  return analytic_moments_perfect(engine.eps_c, engine.eps_h, p.alpha, engine.cold_target().d,
                                  engine.hot_target().d);
}

SchemeMoments analytic_moments_lindblad(const EngineConfig& engine, const ThermalState& initial) {
  if (engine.thermo != ThermoMode::Lindblad)
    throw InvalidArgument("closed form requires Lindblad thermalization");
  const WorkStrokeParams p = engine.stroke_params();
  const double a = p.alpha, d = initial.d;
  const double ec = engine.eps_c, eh = engine.eps_h, bh = engine.beta_h;
  const double g = engine.gamma, th = engine.theta, s2 = engine.sigma * engine.sigma;

  const double E = std::exp(-2.0 * g * th);
  const double ph = 1.0 / (1.0 + std::exp(2.0 * bh * eh));
  const double pm[2] = {1.0 - ph, ph};  // e^{+b e}/Z, e^{-b e}/Z
  const double s = a + d - 2.0 * a * d;
  const double c = (1.0 - 2.0 * a) * (1.0 - 2.0 * d);
  const double X = a * a * (1.0 - 2.0 * d) * (1.0 - 2.0 * ph) - (1.0 - 2.0 * a) * d - c * ph;

  auto mean_work = [&](double e_c) {
    double w = 2.0 * a * (1.0 - a) *
               (eh * std::tanh(bh * eh) * (1.0 - E) + e_c * (1.0 - 2.0 * d) * (1.0 + E));
    for (int j = 0; j < 2; ++j) {
      const double sg = j == 0 ? 1.0 : -1.0;
      const double f = 1.0 + sg * (2.0 * a - 1.0);
      w += 0.5 * (sg * eh + e_c) * f * f * (pm[j] - d) * (1.0 - E);
    }
    return w;
  };
  auto second_core = [&](double e_c) {
    return 4.0 * (eh * eh + e_c * e_c) * (s + c * ph) * (1.0 - E) +
           8.0 * eh * e_c * X * (1.0 - E) + 8.0 * e_c * e_c * a * (1.0 - a) * E;
  };
  const double osc = std::exp(-g * th) * std::cos(2.0 * (th + p.phi));

  SchemeMoments out;
  out.rm.w = mean_work(ec);
  out.rc.w = out.rm.w - 4.0 * ec * a * (1.0 - a) * (1.0 - 2.0 * d) * osc;
  out.rm.w2 = second_core(ec) + 4.0 * s2;
  out.rc.w2 = out.rm.w2 - 8.0 * ec * ec * a * (1.0 - a) * osc - 3.0 * s2;
  out.rm.q = out.rc.q = -mean_work(0.0);
  out.rm.q2 = second_core(0.0) + 2.0 * s2;
  out.rc.q2 = second_core(0.0) + s2;
  out.rc.wq = -4.0 * eh * eh * (s + c * ph) * (1.0 - E) - 4.0 * eh * ec * X * (1.0 - E);
  out.rm.wq = out.rc.wq - 2.0 * s2;
  return out;
}

}  // namespace otto

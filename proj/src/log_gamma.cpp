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

// Complex log-gamma: upward recurrence into the Stirling region, then the
// asymptotic series. Summing principal logs of z+k keeps the imaginary
// part continuous along horizontal lines, which is the branch needed for
// the accumulated phase arg Gamma(1 - i delta).

#include <cmath>
#include <numbers>

#include "otto/core_states.hpp"

namespace otto {
namespace {

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr double kStirling[] = {
    1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,      -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,  1.0 / 156.0,       -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

constexpr double kShift = 20.0;

cplx stirling(cplx z) {
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  cplx sum = (z - 0.5) * std::log(z) - z + half_log_2pi;
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx p = inv;
  for (double c : kStirling) {
    sum += c * p;
    p *= inv2;
  }
  return sum;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) {
    // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
    const cplx s = std::sin(std::numbers::pi * z);
    if (std::abs(s) == 0.0) throw InvalidArgument("log_gamma evaluated at a pole");
    return std::log(std::numbers::pi) - std::log(s) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (std::abs(z) < kShift || z.real() < kShift) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

}  // namespace otto

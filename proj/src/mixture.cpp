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

#include "otto/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <utility>

namespace otto {

double Mixture1D::total_weight() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight;
  return s;
}

double Mixture1D::mean() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight * c.mean;
  return s;
}

double Mixture1D::second_moment() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight * (c.mean * c.mean + c.var);
  return s;
}

double Mixture1D::density(double x) const {
  double s = 0.0;
  for (const auto& c : components) {
    const double z = x - c.mean;
    s += c.weight * std::exp(-0.5 * z * z / c.var) / std::sqrt(2.0 * std::numbers::pi * c.var);
  }
  return s;
}

Mixture1D Mixture1D::canonical() const {
  std::map<std::pair<int, int>, Component1D> merged;
  for (const auto& c : components) {
    auto [it, fresh] = merged.try_emplace({c.a, c.b}, c);
    if (!fresh) it->second.weight += c.weight;
  }
  Mixture1D out;
  out.components.reserve(merged.size());
  for (auto& [k, c] : merged) out.components.push_back(c);
  return out;
}

double Mixture2D::total_weight() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight;
  return s;
}

Moments Mixture2D::moments() const {
  Moments m;
  for (const auto& c : components) {
    const double w = c.mean(0), q = c.mean(1);
    m.w += c.weight * w;
    m.q += c.weight * q;
    m.w2 += c.weight * (w * w + c.cov(0, 0));
    m.q2 += c.weight * (q * q + c.cov(1, 1));
    m.wq += c.weight * (w * q + c.cov(0, 1));
  }
  return m;
}

double Mixture2D::density(double w, double q) const {
  double s = 0.0;
  for (const auto& c : components) {
    const Eigen::Vector2d z(w - c.mean(0), q - c.mean(1));
    const double det = c.cov.determinant();
    s += c.weight * std::exp(-0.5 * z.dot(c.cov.inverse() * z)) /
         (2.0 * std::numbers::pi * std::sqrt(det));
  }
  return s;
}

std::complex<double> Mixture2D::characteristic(double u, double v) const {
  const Eigen::Vector2d k(u, v);
  std::complex<double> s = 0.0;
  for (const auto& c : components)
    s += c.weight * std::exp(std::complex<double>(-0.5 * k.dot(c.cov * k), k.dot(c.mean)));
  return s;
}

Mixture1D Mixture2D::marginal_work() const {
  Mixture1D out;
  for (const auto& c : components)
    out.components.push_back({c.weight, c.mean(0), c.cov(0, 0), c.a, c.b});
  return out.canonical();
}

Mixture1D Mixture2D::marginal_heat() const {
  Mixture1D out;
  for (const auto& c : components)
    out.components.push_back({c.weight, c.mean(1), c.cov(1, 1), 0, c.bq});
  return out.canonical();
}

Moments mixture_moments(const Mixture2D& joint) { return joint.moments(); }

Moments mixture_moments(const Mixture1D& work, const Mixture1D& heat) {
  Moments m;
  m.w = work.mean();
  m.w2 = work.second_moment();
  m.q = heat.mean();
  m.q2 = heat.second_moment();
  return m;
}

}  // namespace otto

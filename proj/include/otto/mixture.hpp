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

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace otto {

// One Gaussian term; var == 0 marks a point mass. Components carry the
// integer lattice coordinates of their center: value = a*eps_c + b*eps_h.
struct Component1D {
  double weight;
  double mean;
  double var;
  int a;
  int b;
};

struct Component2D {
  double weight;
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  int a;
  int b;
  int bq;
};

struct Moments {
  double w = 0.0;
  double q = 0.0;
  double w2 = 0.0;
  double q2 = 0.0;
  double wq = 0.0;
};

struct Mixture1D {
  std::vector<Component1D> components;

  double total_weight() const;
  double mean() const;
  double second_moment() const;
  double variance() const { double m = mean(); return second_moment() - m * m; }
  // Density at x; requires every component to have positive variance.
  double density(double x) const;
  // Sorted by (a, b); components with equal coordinates summed.
  Mixture1D canonical() const;
};

struct Mixture2D {
  std::vector<Component2D> components;

  double total_weight() const;
  Moments moments() const;
  double density(double w, double q) const;
  // E[exp(i (u W + v Q))].
  std::complex<double> characteristic(double u, double v) const;
  Mixture1D marginal_work() const;
  Mixture1D marginal_heat() const;
};

// Moments of a joint mixture, or of a work marginal and a heat marginal
// taken from the same scheme (wq is then left at zero).
Moments mixture_moments(const Mixture2D& joint);
Moments mixture_moments(const Mixture1D& work, const Mixture1D& heat);

}  // namespace otto

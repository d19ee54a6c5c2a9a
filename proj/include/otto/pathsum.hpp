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

#include <cstdint>
#include <vector>

#include "otto/engine.hpp"
#include "otto/mixture.hpp"

namespace otto {

inline constexpr int kOracleMaxCycles = 3;

// One pair of index sequences (m, m') over all 4N contacts.
struct BranchCoefficient {
  cplx value;
  // Half-sum centers on the integer lattice: W = a eps_c + b eps_h, Q = bq eps_h.
  int a;
  int b;
  int bq;
  double work_center;
  double heat_center;
  // W^m - W^m' and Q^m - Q^m'.
  double delta_work;
  double delta_heat;
  double suppression_rm;
  double suppression_rc;
  // Bit k holds the level index at contact k+1.
  std::uint32_t m;
  std::uint32_t mp;
};

// exp(-x^2 / (8 sigma^2)); at sigma = 0 the indicator of x == 0.
double pointer_suppression(double x, double sigma);

std::vector<BranchCoefficient> enumerate_branches(const EngineConfig& engine, int N,
                                                  double prune = 1e-15);
std::vector<BranchCoefficient> enumerate_branches(const EngineConfig& engine,
                                                  const DensityMatrix& rho, int N,
                                                  double prune = 1e-15);

Mixture2D joint_pdf_rm(const std::vector<BranchCoefficient>& br, double sigma, int N);
Mixture2D joint_pdf_rc(const std::vector<BranchCoefficient>& br, double sigma);
Mixture2D joint_pdf_rm(const EngineConfig& engine, int N);
Mixture2D joint_pdf_rc(const EngineConfig& engine, int N);

// Marginal PDFs. For RC1 the single pointer records the chosen observable only.
Mixture1D oracle_marginal(const std::vector<BranchCoefficient>& br, const EngineConfig& engine,
                          int N, Scheme scheme, Observable obs);
Mixture1D oracle_marginal(const EngineConfig& engine, int N, Scheme scheme, Observable obs);
Mixture1D marginal_rc_work(const EngineConfig& engine, int N, int pointers);

// Single-cycle closed forms at Sigma = 0, starting from the cold target.
Moments analytic_moments_perfect(const EngineConfig& engine);
Moments analytic_moments_perfect(double eps_c, double eps_h, double alpha, double d_c,
                                 double d_h);

struct SchemeMoments {
  Moments rm;
  Moments rc;
};
// Single-cycle closed forms with Lindblad strokes from a diagonal initial
// state with excited population initial.d.
SchemeMoments analytic_moments_lindblad(const EngineConfig& engine, const ThermalState& initial);

}  // namespace otto

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

#include <array>

#include "otto/engine.hpp"

namespace otto {

enum class MapKind { RM, RC };

inline MapKind map_kind(Scheme s) { return s == Scheme::RM ? MapKind::RM : MapKind::RC; }

// One full cycle acting on column-stacked 2x2 operators.
struct CycleSuperoperator {
  Mat4 matrix;
  MapKind kind;

  Mat2 apply(const Mat2& x) const { return unvec(matrix * vec(x)); }
};

struct SpectrumReport {
  std::array<cplx, 4> eigenvalues;  // sorted by decreasing modulus
  double lambda2;
};

class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// RC: the unmonitored cycle. RM: the same strokes with partial dephasing at
// each of the four contacts.
CycleSuperoperator build_cycle_superoperator(const EngineConfig& engine, MapKind kind);
// Off-diagonals damped by exp(-eps^2 / (2 sigma^2)).
Mat4 dephasing_superoperator(double eps, double sigma);

DensityMatrix invariant_state(const CycleSuperoperator& sop);
SpectrumReport spectrum(const CycleSuperoperator& sop);

// Fixed point of the unmonitored cycle.
DensityMatrix invariant_cycle_state(const EngineConfig& engine);

double asymptotic_work_per_cycle(const EngineConfig& engine, MapKind kind);
double asymptotic_heat_per_cycle(const EngineConfig& engine, MapKind kind);
// Negative values mark the dud regime.
double asymptotic_power(const EngineConfig& engine, MapKind kind, double T1, double T2);

}  // namespace otto

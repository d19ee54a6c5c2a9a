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

#include <cstddef>
#include <vector>

#include "otto/engine.hpp"
#include "otto/mixture.hpp"

namespace otto {

// One cycle's branch operators summed per lattice shift. For RM the
// per-contact pointer suppression is folded into each operator.
struct CycleShift {
  int da;
  int db;
  Mat4 op;
};

class CycleTable {
 public:
  CycleTable(const EngineConfig& engine, Scheme scheme, Observable obs);

  const std::vector<CycleShift>& shifts() const { return shifts_; }
  Scheme scheme() const { return scheme_; }
  Observable observable() const { return obs_; }
  // Sum of all shift operators: the cycle superoperator of the scheme.
  Mat4 total() const;

 private:
  Scheme scheme_;
  Observable obs_;
  std::vector<CycleShift> shifts_;
};

// Operators on the integer work lattice W = a eps_c + b eps_h (heat uses
// a = 0 and Q = b eps_h), stored densely over the occupied bounding box.
class LatticeAccumulator {
 public:
  static LatticeAccumulator delta(const Mat2& rho);

  int a_min() const { return a_lo_; }
  int a_max() const { return a_hi_; }
  int b_min() const { return b_lo_; }
  int b_max() const { return b_hi_; }
  bool occupied(int a, int b) const;
  Mat2 at(int a, int b) const;
  std::size_t occupied_count() const;
  cplx total_trace() const;
  int cycles() const { return cycles_; }

  template <typename F>
  void for_each(F&& f) const {
    for (int a = a_lo_; a <= a_hi_; ++a)
      for (int b = b_lo_; b <= b_hi_; ++b) {
        const std::size_t i = index(a, b);
        if (live_[i]) f(a, b, cells_[i]);
      }
  }

 private:
  friend LatticeAccumulator advance_cycle(const LatticeAccumulator&, const CycleTable&);
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a - a_lo_) * (b_hi_ - b_lo_ + 1) + (b - b_lo_);
  }

  int a_lo_ = 0, a_hi_ = 0, b_lo_ = 0, b_hi_ = 0;
  int cycles_ = 0;
  std::vector<Vec4> cells_;
  std::vector<char> live_;
};

inline constexpr double kLatticePrune = 1e-16;

LatticeAccumulator advance_cycle(const LatticeAccumulator& acc, const CycleTable& table);
LatticeAccumulator advance_cycle(const LatticeAccumulator& acc, const EngineConfig& engine,
                                 Scheme scheme, Observable obs);

// Damps the coherences of rho by exp(-eps_c^2 / (2 sigma^2)).
Mat2 fold_initial_state_rc(const Mat2& rho, double sigma, double eps_c);
// Whether the lattice run for this scheme and observable starts from the fold.
bool uses_rc_fold(Scheme scheme, Observable obs);

double mixture_variance(Scheme scheme, Observable obs, int N, double sigma);

Mixture1D assemble_marginal(const LatticeAccumulator& acc, const EngineConfig& engine,
                            Scheme scheme, int N, Observable obs);

// Full run from rho (or the configured initial state) through N cycles.
LatticeAccumulator run_lattice(const EngineConfig& engine, const DensityMatrix& rho, int N,
                               Scheme scheme, Observable obs);
Mixture1D lattice_marginal(const EngineConfig& engine, int N, Scheme scheme, Observable obs);

struct SeriesPoint {
  int N;
  double mean;           // <W>_N
  double second;         // <W^2>_N
  double mean_per_cycle;
  double reliability;    // -<W>/std(W)
  std::size_t occupied;
};

std::vector<SeriesPoint> work_per_cycle_series(const EngineConfig& engine, Scheme scheme,
                                               int N_max);
std::vector<SeriesPoint> work_per_cycle_series(const EngineConfig& engine,
                                               const DensityMatrix& rho, Scheme scheme,
                                               int N_max);

}  // namespace otto

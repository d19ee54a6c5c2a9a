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

#include <stdexcept>
#include <string>

#include "otto/core_states.hpp"

namespace otto {

struct BathSpec {
  double beta;
  double gamma;
  double omega_d;
  BathLabel label;

  BathSpec(double b, double g, double wd, BathLabel lab);
};

// rho = d|+><+| + (1-d)|-><-| + q|+><-| + conj(q)|-><+|
struct ThermalState {
  double d = 0.0;
  cplx q = 0.0;

  Mat2 matrix() const;
  DensityMatrix density() const { return DensityMatrix(matrix()); }
};

ThermalState gibbs_state(double beta, double epsilon);

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Second-order canonical perturbation theory for the coupling S = sigma_z + sigma_x
// with an Ohmic Lorentz-Drude bath.
ThermalState generalized_gibbs(const BathSpec& bath, const StrokeHamiltonian& h);
// Bath correlator C(-i lambda) for 0 < lambda < beta.
double bath_correlator(const BathSpec& bath, double lambda);

Mat2 apply_perfect_unnormalized(const ThermalState& target, const Mat2& op);
DensityMatrix apply_perfect(const ThermalState& target, const DensityMatrix& rho);
// Closed-form Lindblad solution after a dimensionless time theta = eps * tau.
// Linear in op, so it accepts non-Hermitian branch operators.
Mat2 apply_lindblad(const BathSpec& bath, const StrokeHamiltonian& h, double theta,
                    const Mat2& op);

// A linear thermalization stroke. The synthetic kind wraps a Lindblad stroke
// with a fixed rotation that mixes populations and coherences; it exists to
// exercise code paths that require decoupled channels.
class ThermalChannel {
 public:
  enum class Kind { Perfect, Lindblad, Synthetic };

  static ThermalChannel perfect(const ThermalState& target);
  static ThermalChannel lindblad(const BathSpec& bath, const StrokeHamiltonian& h,
                                 double theta);
  static ThermalChannel synthetic(const BathSpec& bath, const StrokeHamiltonian& h,
                                  double theta, double mixing_angle);

  Kind kind() const { return kind_; }
  Mat2 apply(const Mat2& op) const;
  const Mat4& superoperator() const { return sop_; }
  // Largest violation of the population/coherence decoupling conditions.
  double decoupling_violation() const;
  bool decoupled(double tol = 1e-14) const { return decoupling_violation() <= tol; }

 private:
  ThermalChannel(Kind k, ThermalState target, BathSpec bath, StrokeHamiltonian h,
                 double theta, double mixing);
  void tabulate();

  Kind kind_;
  ThermalState target_;
  BathSpec bath_;
  StrokeHamiltonian h_;
  double theta_;
  Mat2 rotation_;
  Mat4 sop_;
};

}  // namespace otto

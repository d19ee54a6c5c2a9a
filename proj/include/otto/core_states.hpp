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
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace otto {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

// Basis index 0 is the lower level |->, index 1 the upper level |+>.
enum class Level : int { Minus = 0, Plus = 1 };
enum class BathLabel { Cold, Hot };

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hermitian, unit-trace, positive 2x2 matrix. Construction validates.
class DensityMatrix {
 public:
  static constexpr double kTol = 1e-12;

  explicit DensityMatrix(const Mat2& m);
  static DensityMatrix from_populations(double d, cplx q = 0.0);
  static DensityMatrix maximally_mixed();

  const Mat2& matrix() const { return m_; }
  double excited() const { return m_(1, 1).real(); }
  cplx coherence() const { return m_(1, 0); }

  // Reports why m would be rejected, or an empty string.
  static std::string check(const Mat2& m);

 private:
  Mat2 m_;
};

struct StrokeHamiltonian {
  double epsilon;
  BathLabel label;

  StrokeHamiltonian(double eps, BathLabel lab);
  Mat2 matrix() const;
  double energy(Level l) const { return l == Level::Plus ? epsilon : -epsilon; }
};

struct WorkStrokeParams {
  double alpha = 0.0;
  double phi = 0.0;

  WorkStrokeParams() = default;
  WorkStrokeParams(double a, double p);
};

struct PointerSpec {
  double sigma = 0.0;
  explicit PointerSpec(double s);
};

Mat2 build_forward_unitary(const WorkStrokeParams& p);
Mat2 build_reverse_unitary(const WorkStrokeParams& p);
Mat2 projector(Level level);
inline Mat2 projector(const StrokeHamiltonian&, Level level) { return projector(level); }

// Principal-continuous log Gamma(z) for complex z away from the poles.
cplx log_gamma(cplx z);

struct LandauZener {
  double delta;
  WorkStrokeParams params;
};
LandauZener landau_zener(double eps_c, double eps_h, double T1);
inline WorkStrokeParams landau_zener_params(double eps_c, double eps_h, double T1) {
  return landau_zener(eps_c, eps_h, T1).params;
}

// Column stacking: vec(A X B) = (B^T kron A) vec(X).
Vec4 vec(const Mat2& m);
Mat2 unvec(const Vec4& v);
Mat4 sandwich(const Mat2& left, const Mat2& right);
// Row functional with vec(I)^T vec(X) = Tr X.
Eigen::RowVector4cd trace_row();

}  // namespace otto

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

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "otto/asymptotics.hpp"
#include "otto/lattice.hpp"
#include "otto/pathsum.hpp"

using namespace otto;

namespace {

EngineConfig lz_engine(double T1, double theta) {
  EngineConfig e;
  e.stroke = StrokeMode::LandauZener;
  e.T1 = T1;
  e.theta = theta;
  return e;
}

}  // namespace

TEST_CASE("perfect thermalization gives a rank one map") {
  EngineConfig e;
  e.thermo = ThermoMode::Perfect;
  e.targets = TargetMode::Custom;
  e.target_q_c = 0.02;
  const CycleSuperoperator rc = build_cycle_superoperator(e, MapKind::RC);
  const SpectrumReport sp = spectrum(rc);
  CHECK(std::abs(sp.eigenvalues[0] - 1.0) < 1e-12);
  CHECK(sp.lambda2 < 1e-12);
  const Mat2 inv = invariant_state(rc).matrix();
  CHECK((inv - e.cold_target().matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dephasing limits") {
  EngineConfig e;
  e.alpha = 0.3;
  e.phi = 0.5;
  e.sigma = 1e6;
  CHECK((build_cycle_superoperator(e, MapKind::RM).matrix -
         build_cycle_superoperator(e, MapKind::RC).matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  const Mat4 full = dephasing_superoperator(1.0, 0.0);
  Mat4 diag = Mat4::Zero();
  diag(0, 0) = 1.0;
  diag(3, 3) = 1.0;
  CHECK((full - diag).norm() == 0.0);
  CHECK(std::abs(dephasing_superoperator(2.0, 2.0)(1, 1) - std::exp(-0.5)) < 1e-15);
}

TEST_CASE("invariant state agrees with power iteration") {
  for (MapKind k : {MapKind::RC, MapKind::RM}) {
    EngineConfig e;
    const CycleSuperoperator sop = build_cycle_superoperator(e, k);
    Mat2 r = DensityMatrix::maximally_mixed().matrix();
    for (int i = 0; i < 10000; ++i) r = sop.apply(r);
    const Mat2 inv = invariant_state(sop).matrix();
    CHECK((inv - r).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((sop.apply(inv) - inv).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_NOTHROW(DensityMatrix{inv});
    CHECK(((trace_row() * sop.matrix) - trace_row()).cwiseAbs().maxCoeff() < 1e-14);
  }
  const DensityMatrix star = invariant_cycle_state(EngineConfig{});
  CHECK(star.excited() == doctest::Approx(0.439430410288).epsilon(1e-10));
}

TEST_CASE("degenerate leading eigenvalue is reported") {
  EngineConfig e;
  e.gamma = 0.0;
  e.alpha = 0.0;
  CHECK_THROWS_AS(invariant_state(build_cycle_superoperator(e, MapKind::RC)), DegenerateSpectrum);
}

TEST_CASE("second eigenvalue") {
  EngineConfig e;
  double prev = 1.0;
  for (double theta : {2.0, 8.0, 32.0, 128.0, 512.0}) {
    e.theta = theta;
    const double l2 = spectrum(build_cycle_superoperator(e, MapKind::RC)).lambda2;
    CHECK(l2 <= prev + 1e-12);
    prev = l2;
  }
  CHECK(prev < 1e-4);
  CHECK(spectrum(build_cycle_superoperator(EngineConfig{}, MapKind::RM)).lambda2 ==
        doctest::Approx(0.363956).epsilon(1e-5));

  for (double T1 : {2.0, 8.0, 20.0})
    for (double theta : {1.0, 5.0, 20.0}) {
      const EngineConfig f = lz_engine(T1, theta);
      CHECK(spectrum(build_cycle_superoperator(f, MapKind::RM)).lambda2 <=
            spectrum(build_cycle_superoperator(f, MapKind::RC)).lambda2 + 1e-12);
    }
}

TEST_CASE("asymptotic work and power") {
  EngineConfig e;
  e.thermo = ThermoMode::Perfect;
  e.targets = TargetMode::Custom;
  e.sigma = 0.0;
  e.alpha = 0.2;
  CHECK(std::abs(asymptotic_work_per_cycle(e, MapKind::RM) - analytic_moments_perfect(e).w) < 1e-13);
  CHECK(std::abs(asymptotic_work_per_cycle(e, MapKind::RC) - analytic_moments_perfect(e).w) < 1e-13);

  const EngineConfig f;
  CHECK(f.T2() == doctest::Approx(8.0 * (1.0 + 1.0 / 3.7)).epsilon(1e-15));
  CHECK(f.T2() == doctest::Approx(10.1622).epsilon(1e-5));
  const double p1 = asymptotic_power(f, MapKind::RM, 2.0, 10.0);
  const double p2 = asymptotic_power(f, MapKind::RM, 4.0, 20.0);
  CHECK(p1 == doctest::Approx(2.0 * p2));
  // the unmonitored engine at these parameters is a dud
  CHECK(asymptotic_work_per_cycle(f, MapKind::RC) > 0.0);
  CHECK(asymptotic_power(f, MapKind::RC, 1.0, f.T2()) < 0.0);
  CHECK_THROWS_AS(asymptotic_power(f, MapKind::RC, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("asymptotic work matches the lattice increment") {
  const EngineConfig e;
  for (Scheme s : {Scheme::RM, Scheme::RC2}) {
    const auto series = work_per_cycle_series(e, s, 200);
    const double inc = series[199].mean - series[198].mean;
    CHECK(std::abs(inc - asymptotic_work_per_cycle(e, map_kind(s))) < 1e-10);
  }
  CHECK(std::abs(asymptotic_heat_per_cycle(e, MapKind::RM) -
                 asymptotic_heat_per_cycle(e, MapKind::RC)) > 0.0);
}

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

#include "otto/engine.hpp"

#include <cmath>

#include "otto/asymptotics.hpp"

namespace otto {

void EngineConfig::validate() const {
  auto need = [](bool ok, const char* msg) {
    if (!ok) throw InvalidArgument(msg);
  };
  need(std::isfinite(eps_c) && eps_c > 0.0, "eps_c must be positive");
  need(std::isfinite(eps_h) && eps_h > eps_c, "eps_h must exceed eps_c");
  need(sigma >= 0.0 && std::isfinite(sigma), "sigma must be non-negative");
  need(cycles >= 1, "cycles must be at least 1");
  if (stroke == StrokeMode::Direct) {
    need(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0, 1]");
    need(std::isfinite(phi), "phi must be finite");
  } else {
    need(T1 > 0.0 && std::isfinite(T1), "T1 must be positive");
  }
  if (thermo == ThermoMode::Perfect) {
    if (targets == TargetMode::Custom) {
      need(target_d_c >= 0.0 && target_d_c <= 1.0, "target_d_c must lie in [0, 1]");
      need(target_d_h >= 0.0 && target_d_h <= 1.0, "target_d_h must lie in [0, 1]");
    }
  } else {
    need(theta >= 0.0 && std::isfinite(theta), "theta must be non-negative");
    need(gamma >= 0.0 && std::isfinite(gamma), "gamma must be non-negative");
  }
  need(beta_c > 0.0 && beta_h > 0.0, "inverse temperatures must be positive");
  need(coupling >= 0.0 && omega_d > 0.0, "bath coupling and cutoff must be positive");
  if (init == InitMode::Custom) {
    need(init_d >= 0.0 && init_d <= 1.0, "init_d must lie in [0, 1]");
    const ThermalState s{init_d, cplx(init_q_re, init_q_im)};
    need(DensityMatrix::check(s.matrix()).empty(), "custom initial state is not positive");
  }
}

WorkStrokeParams EngineConfig::stroke_params() const {
  if (stroke == StrokeMode::LandauZener) return landau_zener_params(eps_c, eps_h, T1);
  return {alpha, phi};
}

ThermalState EngineConfig::cold_target() const {
  switch (targets) {
    case TargetMode::Gibbs:
      return gibbs_state(beta_c, eps_c);
    case TargetMode::Custom:
      return {target_d_c, target_q_c};
    case TargetMode::GeneralizedGibbs:
      break;
  }
  return generalized_gibbs(BathSpec(beta_c, coupling, omega_d, BathLabel::Cold), cold());
}

ThermalState EngineConfig::hot_target() const {
  switch (targets) {
    case TargetMode::Gibbs:
      return gibbs_state(beta_h, eps_h);
    case TargetMode::Custom:
      return {target_d_h, target_q_h};
    case TargetMode::GeneralizedGibbs:
      break;
  }
  return generalized_gibbs(BathSpec(beta_h, coupling, omega_d, BathLabel::Hot), hot());
}

ThermalChannel EngineConfig::cold_channel() const {
  const BathSpec bath(beta_c, gamma, omega_d, BathLabel::Cold);
  switch (thermo) {
    case ThermoMode::Perfect:
      return ThermalChannel::perfect(cold_target());
    case ThermoMode::Synthetic:
      return ThermalChannel::synthetic(bath, cold(), theta, mixing);
    case ThermoMode::Lindblad:
      break;
  }
  return ThermalChannel::lindblad(bath, cold(), theta);
}

ThermalChannel EngineConfig::hot_channel() const {
  const BathSpec bath(beta_h, gamma, omega_d, BathLabel::Hot);
  switch (thermo) {
    case ThermoMode::Perfect:
      return ThermalChannel::perfect(hot_target());
    case ThermoMode::Synthetic:
      return ThermalChannel::synthetic(bath, hot(), theta, mixing);
    case ThermoMode::Lindblad:
      break;
  }
  return ThermalChannel::lindblad(bath, hot(), theta);
}

DensityMatrix EngineConfig::initial_state() const {
  switch (init) {
    case InitMode::GibbsCold:
      return gibbs_state(beta_c, eps_c).density();
    case InitMode::GeneralizedGibbsCold:
      return generalized_gibbs(BathSpec(beta_c, coupling, omega_d, BathLabel::Cold), cold())
          .density();
    case InitMode::Custom:
      return ThermalState{init_d, cplx(init_q_re, init_q_im)}.density();
    case InitMode::Invariant:
      break;
  }
  return invariant_cycle_state(*this);
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::RM: return "rm";
    case Scheme::RC1: return "rc1";
    case Scheme::RC2: return "rc2";
  }
  return "?";
}

std::string to_string(Observable o) { return o == Observable::Work ? "work" : "heat"; }

Scheme parse_scheme(const std::string& s) {
  if (s == "rm" || s == "RM") return Scheme::RM;
  if (s == "rc1" || s == "RC1") return Scheme::RC1;
  if (s == "rc2" || s == "RC2" || s == "rc" || s == "RC") return Scheme::RC2;
  throw InvalidArgument("unknown scheme '" + s + "'");
}

Observable parse_observable(const std::string& s) {
  if (s == "work") return Observable::Work;
  if (s == "heat") return Observable::Heat;
  throw InvalidArgument("unknown observable '" + s + "'");
}

}  // namespace otto

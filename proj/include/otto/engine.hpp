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

#include <optional>
#include <string>

#include "otto/core_states.hpp"
#include "otto/thermal_maps.hpp"

namespace otto {

enum class Scheme { RM, RC1, RC2 };
enum class Observable { Work, Heat };
enum class StrokeMode { Direct, LandauZener };
enum class ThermoMode { Perfect, Lindblad, Synthetic };
enum class TargetMode { GeneralizedGibbs, Gibbs, Custom };
enum class InitMode { Invariant, GibbsCold, GeneralizedGibbsCold, Custom };

// Every physical parameter of a run. Defaults reproduce the standard
// finite-time engine (eps_h/eps_c = 3.7, theta = 8, Sigma = 0.2).
struct EngineConfig {
  double eps_c = 1.0;
  double eps_h = 3.7;

  StrokeMode stroke = StrokeMode::Direct;
  double alpha = 0.05;
  double phi = 0.0;
  double T1 = 0.0;

  ThermoMode thermo = ThermoMode::Lindblad;
  double beta_c = 0.25;
  double beta_h = 0.025;
  double gamma = 0.025;
  double theta = 8.0;
  // Rotation angle of the synthetic, non-decoupled thermalization stroke.
  double mixing = 0.3;

  // Targets of perfect thermalization.
  TargetMode targets = TargetMode::GeneralizedGibbs;
  double coupling = 0.5;
  double omega_d = 0.2;
  double target_d_c = 0.37759;
  double target_q_c = 0.0;
  double target_d_h = 0.45388;
  double target_q_h = 0.0;

  double sigma = 0.2;
  int cycles = 1;
  Scheme scheme = Scheme::RM;

  InitMode init = InitMode::Invariant;
  double init_d = 0.5;
  double init_q_re = 0.0;
  double init_q_im = 0.0;

  // Negative-control hook: the lattice uses a wrong measurement suppression.
  bool corrupt_suppression = false;

  // Throws InvalidArgument describing the first violated constraint.
  void validate() const;

  WorkStrokeParams stroke_params() const;
  StrokeHamiltonian cold() const { return {eps_c, BathLabel::Cold}; }
  StrokeHamiltonian hot() const { return {eps_h, BathLabel::Hot}; }
  ThermalState cold_target() const;
  ThermalState hot_target() const;
  ThermalChannel cold_channel() const;
  ThermalChannel hot_channel() const;
  DensityMatrix initial_state() const;
  // Combined duration of both thermalization strokes.
  double T2() const { return theta * (1.0 / eps_h + 1.0 / eps_c); }
};

std::string to_string(Scheme s);
std::string to_string(Observable o);
Scheme parse_scheme(const std::string& s);
Observable parse_observable(const std::string& s);

}  // namespace otto

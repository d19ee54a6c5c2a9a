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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "otto/config.hpp"
#include "otto/mixture.hpp"

namespace otto {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBadConfig = 2;

// Performance figures derived from one set of moments.
struct Metrics {
  double mean_work;
  double mean_heat;
  double var_work;
  double var_heat;
  std::optional<double> cov_work_heat;
  std::optional<double> efficiency;   // -<W>/<Q>
  std::optional<double> reliability;  // -<W>/std(W)
  std::optional<double> power;        // -<W>/(N (T1 + T2))
};

Metrics compute_metrics(const Moments& m, bool has_cov, int N, double T1, double T2);

// Marginal from the lattice, or from the path-sum oracle when the channel is
// not decoupled and N is small enough.
Mixture1D scheme_marginal(const EngineConfig& engine, const DensityMatrix& rho, int N,
                          Scheme scheme, Observable obs);

int cmd_pdf(const RunConfig& cfg, std::ostream& out);
int cmd_joint(const RunConfig& cfg, std::ostream& out);
int cmd_moments(const RunConfig& cfg, std::ostream& out);
int cmd_series(const RunConfig& cfg, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, std::ostream& out);
int cmd_asymptotic(const RunConfig& cfg, std::ostream& out);
int cmd_lz(const RunConfig& cfg, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& out);

struct CheckResult {
  std::string name;
  bool pass;
  bool skipped;
  double deviation;
  double tolerance;
  std::string detail;
};

std::vector<CheckResult> run_validation(const RunConfig& cfg);

const std::vector<std::string>& command_names();
// Dispatches, mapping invalid input to exit code 2 with a message on err.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

}  // namespace otto

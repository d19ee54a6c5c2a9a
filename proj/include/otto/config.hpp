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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "otto/engine.hpp"

namespace otto {

enum class OutputFormat { Csv, Json };
enum class SweepQuantity { Power, Efficiency, Lambda2 };

struct SweepSpec {
  double T1_min = 2.0;
  double T1_max = 30.0;
  int T1_count = 10;
  double T2_min = 2.0;
  double T2_max = 40.0;
  int T2_count = 10;
  SweepQuantity quantity = SweepQuantity::Power;
  // 0 selects the asymptotic (many-cycle) value.
  int sweep_cycles = 0;
};

// Everything a command needs: the engine plus output and grid settings.
struct RunConfig {
  EngineConfig engine;
  Observable observable = Observable::Work;
  OutputFormat format = OutputFormat::Csv;
  double grid_min = 0.0;
  double grid_max = 0.0;  // grid_max <= grid_min selects an automatic range
  int grid_points = 1024;
  int joint_points = 101;  // per axis for joint densities
  SweepSpec sweep;
  int threads = 0;  // 0 uses all hardware threads
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigKey {
  std::string name;
  std::string section;
  std::string help;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

const std::vector<ConfigKey>& config_keys();
const ConfigKey* find_key(const std::string& name);

// Applies "key = value" lines; '#' starts a comment, "[section]" lines are
// accepted and ignored. Unknown keys and malformed values raise ConfigError.
void parse_config(std::istream& in, RunConfig& cfg);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string serialize_config(const RunConfig& cfg);

// Shortest decimal text that reads back to the same double.
std::string format_full(double x);
// Twelve significant digits.
std::string format_csv(double x);

}  // namespace otto

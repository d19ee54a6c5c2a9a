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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "otto/commands.hpp"
#include "otto/config.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions = {
    {"pdf", "work or heat density on a grid for every scheme"},
    {"joint", "joint work-heat density from the path sum (cycles <= 2)"},
    {"moments", "means, variances, efficiency, reliability and power"},
    {"series", "cumulative work statistics for 1..cycles"},
    {"sweep", "power, efficiency or second eigenvalue over a (T1, T2) grid"},
    {"asymptotic", "many-cycle work, heat and spectrum of the cycle maps"},
    {"lz", "Landau-Zener transition probability and phase for T1"},
    {"validate", "consistency checks at the given configuration"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-level quantum Otto engine: work and heat statistics under monitoring"};
  app.require_subcommand(1);
  std::string config_path;
  bool dump_config = false;
  std::map<std::string, std::string> overrides;

  for (const auto& name : otto::command_names()) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    sub->add_option("-c,--config", config_path, "key = value configuration file");
    sub->add_flag("--print-config", dump_config, "print the effective configuration and exit");
    for (const auto& key : otto::config_keys()) {
      sub->add_option_function<std::string>(
          "--" + key.name, [&overrides, n = key.name](const std::string& v) { overrides[n] = v; },
          key.help);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return e.get_exit_code() == 0 ? code : otto::kExitBadConfig;
  }

  otto::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = otto::load_config_file(config_path);
    for (const auto& [k, v] : overrides) otto::set_config_value(cfg, k, v);
  } catch (const otto::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return otto::kExitBadConfig;
  }
  if (dump_config) {
    std::cout << otto::serialize_config(cfg);
    return otto::kExitOk;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return otto::run_command(command, cfg, std::cout, std::cerr);
}

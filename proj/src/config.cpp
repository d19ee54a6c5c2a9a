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

#include "otto/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace otto {

std::string format_full(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_csv(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto res = std::from_chars(first, last, x);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(x))
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

template <typename E>
struct EnumNames {
  std::vector<std::pair<E, std::string>> names;

  std::string get(E e) const {
    for (auto& [k, n] : names)
      if (k == e) return n;
    return "?";
  }
  E parse(const std::string& key, const std::string& v) const {
    for (auto& [k, n] : names)
      if (n == v) return k;
    std::string opts;
    for (auto& [k, n] : names) opts += (opts.empty() ? "" : "|") + n;
    throw ConfigError("key '" + key + "': expected one of " + opts + ", got '" + v + "'");
  }
};

const EnumNames<StrokeMode> kStroke{{{StrokeMode::Direct, "direct"},
                                     {StrokeMode::LandauZener, "landau_zener"}}};
const EnumNames<ThermoMode> kThermo{{{ThermoMode::Perfect, "perfect"},
                                     {ThermoMode::Lindblad, "lindblad"},
                                     {ThermoMode::Synthetic, "synthetic"}}};
const EnumNames<TargetMode> kTargets{{{TargetMode::GeneralizedGibbs, "generalized_gibbs"},
                                      {TargetMode::Gibbs, "gibbs"},
                                      {TargetMode::Custom, "custom"}}};
const EnumNames<InitMode> kInit{{{InitMode::Invariant, "invariant"},
                                 {InitMode::GibbsCold, "gibbs_cold"},
                                 {InitMode::GeneralizedGibbsCold, "generalized_gibbs_cold"},
                                 {InitMode::Custom, "custom"}}};
const EnumNames<Scheme> kScheme{{{Scheme::RM, "rm"}, {Scheme::RC1, "rc1"}, {Scheme::RC2, "rc2"}}};
const EnumNames<Observable> kObs{{{Observable::Work, "work"}, {Observable::Heat, "heat"}}};
const EnumNames<OutputFormat> kFormat{{{OutputFormat::Csv, "csv"}, {OutputFormat::Json, "json"}}};
const EnumNames<SweepQuantity> kQuantity{{{SweepQuantity::Power, "power"},
                                          {SweepQuantity::Efficiency, "efficiency"},
                                          {SweepQuantity::Lambda2, "lambda2"}}};

ConfigKey real(std::string name, std::string section, std::string help,
               std::function<double&(RunConfig&)> ref) {
  ConfigKey k{name, section, help, nullptr, nullptr};
  k.get = [ref](const RunConfig& c) { return format_full(ref(const_cast<RunConfig&>(c))); };
  k.set = [ref, name](RunConfig& c, const std::string& v) { ref(c) = to_double(name, v); };
  return k;
}

ConfigKey integer(std::string name, std::string section, std::string help,
                  std::function<int&(RunConfig&)> ref) {
  ConfigKey k{name, section, help, nullptr, nullptr};
  k.get = [ref](const RunConfig& c) { return std::to_string(ref(const_cast<RunConfig&>(c))); };
  k.set = [ref, name](RunConfig& c, const std::string& v) { ref(c) = to_int(name, v); };
  return k;
}

template <typename E>
ConfigKey choice(std::string name, std::string section, std::string help,
                 const EnumNames<E>& names, std::function<E&(RunConfig&)> ref) {
  ConfigKey k{name, section, help, nullptr, nullptr};
  k.get = [ref, &names](const RunConfig& c) { return names.get(ref(const_cast<RunConfig&>(c))); };
  k.set = [ref, name, &names](RunConfig& c, const std::string& v) { ref(c) = names.parse(name, v); };
  return k;
}

std::vector<ConfigKey> build_keys() {
  std::vector<ConfigKey> k;
#define ENG(field) [](RunConfig& c) -> auto& { return c.engine.field; }
#define RUN(field) [](RunConfig& c) -> auto& { return c.field; }
  k.push_back(real("eps_c", "levels", "cold half-gap", ENG(eps_c)));
  k.push_back(real("eps_h", "levels", "hot half-gap", ENG(eps_h)));
  k.push_back(choice<StrokeMode>("stroke", "stroke", "direct|landau_zener", kStroke, ENG(stroke)));
  k.push_back(real("alpha", "stroke", "transition probability (direct mode)", ENG(alpha)));
  k.push_back(real("phi", "stroke", "stroke phase in radians (direct mode)", ENG(phi)));
  k.push_back(real("T1", "stroke", "work stroke duration; 0 leaves power unreported", ENG(T1)));
  k.push_back(choice<ThermoMode>("thermo", "thermalization", "perfect|lindblad|synthetic", kThermo,
                                 ENG(thermo)));
  k.push_back(real("beta_c", "thermalization", "cold inverse temperature", ENG(beta_c)));
  k.push_back(real("beta_h", "thermalization", "hot inverse temperature", ENG(beta_h)));
  k.push_back(real("gamma", "thermalization", "Lindblad coupling rate", ENG(gamma)));
  k.push_back(real("theta", "thermalization", "eps*tau of each thermalization stroke", ENG(theta)));
  k.push_back(real("mixing", "thermalization", "rotation angle of the synthetic channel",
                   ENG(mixing)));
  k.push_back(choice<TargetMode>("targets", "targets", "generalized_gibbs|gibbs|custom", kTargets,
                                 ENG(targets)));
  k.push_back(real("coupling", "targets", "bath coupling for generalized Gibbs states",
                   ENG(coupling)));
  k.push_back(real("omega_d", "targets", "Drude cutoff", ENG(omega_d)));
  k.push_back(real("target_d_c", "targets", "custom cold excited population", ENG(target_d_c)));
  k.push_back(real("target_q_c", "targets", "custom cold coherence", ENG(target_q_c)));
  k.push_back(real("target_d_h", "targets", "custom hot excited population", ENG(target_d_h)));
  k.push_back(real("target_q_h", "targets", "custom hot coherence", ENG(target_q_h)));
  k.push_back(real("sigma", "pointer", "pointer width", ENG(sigma)));
  k.push_back(integer("cycles", "run", "number of cycles N", ENG(cycles)));
  k.push_back(choice<Scheme>("scheme", "run", "rm|rc1|rc2", kScheme, ENG(scheme)));
  k.push_back(choice<InitMode>("init", "initial", "invariant|gibbs_cold|generalized_gibbs_cold|custom",
                               kInit, ENG(init)));
  k.push_back(real("init_d", "initial", "custom initial excited population", ENG(init_d)));
  k.push_back(real("init_q_re", "initial", "custom initial coherence, real part", ENG(init_q_re)));
  k.push_back(real("init_q_im", "initial", "custom initial coherence, imaginary part",
                   ENG(init_q_im)));
  {
    ConfigKey c{"corrupt_suppression", "testing", "negative control: wrong lattice suppression",
                nullptr, nullptr};
    c.get = [](const RunConfig& r) { return std::string(r.engine.corrupt_suppression ? "true" : "false"); };
    c.set = [](RunConfig& r, const std::string& v) {
      r.engine.corrupt_suppression = to_bool("corrupt_suppression", v);
    };
    k.push_back(c);
  }
  k.push_back(choice<Observable>("observable", "output", "work|heat", kObs, RUN(observable)));
  k.push_back(choice<OutputFormat>("format", "output", "csv|json", kFormat, RUN(format)));
  k.push_back(real("grid_min", "output", "density grid start", RUN(grid_min)));
  k.push_back(real("grid_max", "output", "density grid end (<= grid_min: automatic)", RUN(grid_max)));
  k.push_back(integer("grid_points", "output", "density grid points", RUN(grid_points)));
  k.push_back(integer("joint_points", "output", "joint density grid points per axis",
                      RUN(joint_points)));
  k.push_back(integer("threads", "output", "worker threads (0: all)", RUN(threads)));
  k.push_back(real("T1_min", "sweep", "smallest work stroke duration", RUN(sweep.T1_min)));
  k.push_back(real("T1_max", "sweep", "largest work stroke duration", RUN(sweep.T1_max)));
  k.push_back(integer("T1_count", "sweep", "T1 grid points (>= 2)", RUN(sweep.T1_count)));
  k.push_back(real("T2_min", "sweep", "smallest total thermalization time", RUN(sweep.T2_min)));
  k.push_back(real("T2_max", "sweep", "largest total thermalization time", RUN(sweep.T2_max)));
  k.push_back(integer("T2_count", "sweep", "T2 grid points (>= 2)", RUN(sweep.T2_count)));
  k.push_back(choice<SweepQuantity>("quantity", "sweep", "power|efficiency|lambda2", kQuantity,
                                    RUN(sweep.quantity)));
  k.push_back(integer("sweep_cycles", "sweep", "cycles per sweep point (0: asymptotic)",
                      RUN(sweep.sweep_cycles)));
#undef ENG
#undef RUN
  return k;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = build_keys();
  return keys;
}

const ConfigKey* find_key(const std::string& name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const ConfigKey* k = find_key(key);
  if (!k) throw ConfigError("unknown key '" + key + "'");
  k->set(cfg, trim(value));
}

void parse_config(std::istream& in, RunConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    set_config_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  parse_config(in, cfg);
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RunConfig cfg;
  parse_config(in, cfg);
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  std::string section;
  for (const auto& k : config_keys()) {
    if (k.section != section) {
      if (!section.empty()) out << '\n';
      section = k.section;
      out << '[' << section << "]\n";
    }
    out << k.name << " = " << k.get(cfg) << '\n';
  }
  return out.str();
}

}  // namespace otto

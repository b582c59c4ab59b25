// Copyright 2026 The mpf-lab Authors
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

// mpf-lab command-line front end. Every subcommand maps its flags onto
// experiment config keys and runs the experiment through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpf/mpf_lab.h"

namespace {

enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitCapacity = 3, kExitNumerical = 4 };

int exit_code(mpf_status status) {
  switch (status) {
    case MPF_OK: return kExitOk;
    case MPF_ERR_CAPACITY: return kExitCapacity;
    case MPF_ERR_NUMERICAL:
    case MPF_ERR_BUDGET:
    case MPF_ERR_INTERNAL: return kExitNumerical;
    default: return kExitUsage;
  }
}

struct FlagSpec {
  const char* names;
  const char* key;
  const char* help;
};

struct Subcommand {
  const char* name;
  const char* help;
  std::vector<FlagSpec> flags;
};

const std::vector<Subcommand>& subcommands() {
  static const std::vector<Subcommand> list{
      {"weights", "Exact extrapolation weights for a sequence of Trotter exponents",
       {{"--k", "k", "exponents, e.g. 1,2,7"},
        {"--base", "base", "base formula: s1, s2, s4, ..."},
        {"--symmetric", "symmetric", "override the base symmetry (true/false)"}}},
      {"search", "Enumerate well-conditioned exponent sequences",
       {{"--l", "l", "number of exponents"},
        {"--base", "base", "base formula"},
        {"--symmetric", "symmetric", "override the base symmetry"},
        {"--range", "range", "exponent range kmin:kmax"},
        {"--threshold", "threshold", "maximum ||a||_1"},
        {"--objective", "objective", "min-norm1 or min-depth"},
        {"--threads", "threads", "worker threads (0 = all cores)"},
        {"--limit", "limit", "print at most this many sequences (0 = all)"}}},
      {"ising-demo", "Magnetization of the transverse-field Ising chain: PFs versus MPFs",
       {{"--n", "n", "number of spins"},
        {"-J,--coupling", "J", "ZZ coupling J"},
        {"--field", "h", "transverse field h"},
        {"--t", "t", "evolution time"},
        {"--k-max", "k_max", "largest PF exponent in the sweep"},
        {"--base", "base", "base formula"},
        {"--observable", "observable", "z0 or zavg"},
        {"--state", "state", "initial state: plus_i or zeros"},
        {"--eps-prime", "eps_prime", "sign-aligned perturbation added to each E_j"},
        {"--sequences", "sequences", "MPF sequences, e.g. \"1,2;2,4;6,7\""}}},
      {"bernoulli-demo", "Shot-noise amplification by ill-conditioned weights",
       {{"--p", "p", "Bernoulli probability"},
        {"--samples", "samples", "samples per expectation value"},
        {"--l-min", "l_min", "smallest l"},
        {"--l-max", "l_max", "largest l"},
        {"--base", "base", "base formula for k_j = j"},
        {"--trials", "trials", "number of seeds"},
        {"--threads", "threads", "worker threads"}}},
      {"zne-demo", "Synthetic zero-noise extrapolation round trip",
       {{"--e-ideal", "e_ideal", "noiseless expectation value"},
        {"--b", "b", "decay rate"},
        {"--d", "d", "asymptote"},
        {"--c-min", "c_min", "smallest stretch factor"},
        {"--c-max", "c_max", "largest stretch factor"},
        {"--points", "points", "number of stretch factors"},
        {"--shots", "shots", "shots per point"},
        {"--trials", "trials", "number of independent curves"},
        {"--threads", "threads", "worker threads"}}},
      {"lcu-cost", "CNOT count of the LCU circuit versus classical combination",
       {{"--k", "k", "three exponents"}, {"--n-spins", "n_spins", "Ising chain length"}}},
      {"scaling", "Number of MPF terms and deepest exponent for a target accuracy",
       {{"--nq", "nq", "qubit count(s), comma-separated"},
        {"--eps", "eps", "target accuracy(ies), comma-separated"},
        {"--t", "t", "evolution time"}}},
      {"repetitions", "Spin-boson repetitions to reach a target accuracy",
       {{"--systems", "systems", "(M, n_max) pairs, e.g. \"1:1;2:1\""},
        {"--eps", "eps", "target accuracies"},
        {"--formulas", "formulas", "base formulas, e.g. s1,s2,s4"},
        {"--t", "t", "evolution time"},
        {"--metric", "metric", "operator-norm or observable"},
        {"--omega", "omega", "mode frequency"},
        {"--omega-s", "omega_s", "spin splitting"},
        {"--delta", "delta", "tunnelling rate"},
        {"--g", "g", "spin-mode coupling"},
        {"--mpf", "mpf", "also search MPFs (true/false)"},
        {"--mpf-l-max", "mpf_l_max", "largest MPF length"},
        {"--mpf-k-max", "mpf_k_max", "largest base exponent for MPF candidates"},
        {"--max-scale", "max_scale", "largest multiplier applied to candidates"},
        {"--threads", "threads", "worker threads"}}},
      {"twirl-check", "Check that the twirling set commutes with R_ZZ",
       {{"--theta", "theta", "rotation angle"}}},
  };
  return list;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("mpf-lab ") + mpf_version() + ": well-conditioned multi-product formulas"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("mpf-lab ") + mpf_version());

  std::string config_path;
  std::string output_path;
  bool json = false;
  app.add_option("--config", config_path, "key=value config file; flags win")->check(CLI::ExistingFile);
  app.add_option("-o,--output", output_path, "write the result here instead of stdout");
  app.add_flag("--json", json, "emit the JSON summary instead of CSV");

  std::string seed;
  // Per subcommand: key -> value storage, filled only for flags that were given.
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::vector<std::pair<CLI::Option*, std::string>>> options;
  for (const auto& sc : subcommands()) {
    CLI::App* sub = app.add_subcommand(sc.name, sc.help);
    auto& store = values[sc.name];
    for (const auto& f : sc.flags) {
      CLI::Option* opt = sub->add_option(f.names, store[f.key], f.help);
      options[sc.name].emplace_back(opt, f.key);
    }
    CLI::Option* opt = sub->add_option("--seed", store["seed"], "random seed (default: $MPF_LAB_SEED or 0)");
    options[sc.name].emplace_back(opt, "seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  std::string overrides;
  for (const auto& [opt, key] : options[name]) {
    if (opt->count() > 0) overrides += key + "=" + values[name][key] + "\n";
  }

  std::string config_text;
  try {
    if (!config_path.empty()) config_text = read_file(config_path);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  mpf_report* report = nullptr;
  const mpf_status status = mpf_run_experiment(name.c_str(), config_text.c_str(), overrides.c_str(), &report);
  if (status != MPF_OK) {
    std::cerr << "error (" << mpf_status_name(status) << "): " << mpf_last_error() << "\n";
    return exit_code(status);
  }
  const std::string text = json ? mpf_report_json(report) : mpf_report_primary(report);
  mpf_report_free(report);

  if (output_path.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    std::ofstream out(output_path);
    if (!(out << text)) {
      std::cerr << "error: cannot write '" << output_path << "'\n";
      return kExitUsage;
    }
  }
  return kExitOk;
}

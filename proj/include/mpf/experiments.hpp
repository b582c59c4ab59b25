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

// Experiment runners behind the command-line tool and the C API. Each runner
// reads a flat key=value configuration, rejects keys it does not know and
// returns a report: a CSV table whose first line echoes the version, seed and
// resolved configuration, plus a JSON summary.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpf/mpf_engine.hpp"
#include "mpf/noise_lab.hpp"
#include "mpf/resource_estimator.hpp"

namespace mpf {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "MPF_LAB_SEED";

// ---------------------------------------------------------------------------
// Configuration

class Config {
 public:
  Config() = default;

  /// Lines of `key = value`; blank lines and lines starting with '#' are
  /// skipped. Duplicate keys are an error.
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  /// Inserts or overrides a value.
  void set(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Seed from the MPF_LAB_SEED environment variable, or 0.
std::uint64_t default_seed();

std::vector<std::uint64_t> parse_uint_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
/// "1,2;1,3;2,4"
std::vector<std::vector<std::uint64_t>> parse_sequence_list(const std::string& text);

/// Shortest round-trip decimal form.
std::string format_double(double x);

// ---------------------------------------------------------------------------
// Reports

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string experiment;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  Table table;
  nlohmann::json summary;
  /// Whether the JSON summary is the natural primary output.
  bool json_primary = false;

  /// `# mpf-lab v<version> seed=<n> experiment=<name> key=value ...`
  std::string header_line() const;
  std::string csv() const;
  /// Summary with the version, experiment, seed and config folded in.
  nlohmann::json json() const;
  std::string primary() const;
};

nlohmann::json to_json(const ExponentSequence& seq);
nlohmann::json to_json(const ExponentSequence& seq, const WeightVector& w);
/// Inverse of the sequence part of to_json: {"k": [...], "base": "s1", "symmetric": bool}.
ExponentSequence sequence_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Statistics helpers

/// Least-squares slope of log(y) against log(x); non-positive points are skipped.
double loglog_slope(std::span<const double> x, std::span<const double> y);
/// Linear-interpolation quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Results must be written to per-index slots.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn);

// ---------------------------------------------------------------------------
// Ising magnetization demo

struct IsingDemoSettings {
  std::size_t n = 5;
  double coupling = 0.5;  ///< J
  double field = 1.0;     ///< h
  double time = 0.5;
  std::uint64_t k_max = 10;
  ProductFormula base = ProductFormula::lie_trotter();
  std::string observable = "z0";   ///< z0 | zavg
  std::string state = "plus_i";    ///< plus_i | zeros
  double eps_prime = 1e-3;
  std::vector<std::vector<std::uint64_t>> sequences{{1, 2}, {1, 3}, {2, 4}, {2, 5}, {1, 2, 6},
                                                    {1, 2, 7}, {6, 7}, {3, 4, 5, 6, 7},
                                                    {1, 2, 3, 4, 5, 6, 7}};
};

struct IsingDemoRow {
  std::string kind;   ///< "pf" or "mpf"
  std::string label;  ///< k or the sequence
  std::uint64_t k_max = 0;
  double eps_prime = 0.0;
  double value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double norm1 = 1.0;
};

struct IsingDemoResult {
  double exact = 0.0;
  std::vector<IsingDemoRow> pf_rows;
  std::vector<IsingDemoRow> mpf_rows;
  double pf_slope = 0.0;  ///< log-log slope of the PF relative errors
};

StateVector initial_state(const std::string& name, std::size_t num_qubits);
IsingDemoResult ising_demo(const IsingDemoSettings& s);

// ---------------------------------------------------------------------------
// Bernoulli conditioning demo

struct BernoulliSettings {
  double p = 0.3;
  std::uint64_t samples = 10000;
  std::size_t l_min = 1;
  std::size_t l_max = 7;
  ProductFormula base = ProductFormula::suzuki(1);
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

struct BernoulliRow {
  std::size_t l = 0;
  double norm1 = 0.0;
  double median_error = 0.0;
  double p95_error = 0.0;
  double reference = 0.0;  ///< ||a||_1 * 0.5 / sqrt(M)
};

/// Trial s uses seed stream s for every l, so rows differ only in weights.
std::vector<BernoulliRow> bernoulli_sweep(const BernoulliSettings& s);

// ---------------------------------------------------------------------------
// Synthetic zero-noise extrapolation

struct ZneTrial {
  ZneCurve curve;
  double error = 0.0;  ///< |extrapolated - e_ideal|
};

/// Trial i draws its curve from seed stream i of e.seed.
std::vector<ZneTrial> zne_trials(const ZneExperiment& e, std::size_t trials, std::size_t threads = 0);

// ---------------------------------------------------------------------------
// Spin-boson repetitions to accuracy

struct RepetitionSettings {
  std::vector<std::pair<std::size_t, std::size_t>> systems{{1, 1}, {1, 2}, {2, 1}};  ///< (M, n_max)
  std::vector<double> eps{1e-2, 1e-3, 1e-4};
  std::vector<ProductFormula> formulas{ProductFormula(1), ProductFormula(2), ProductFormula(4)};
  double time = 10.0;
  ErrorMetric metric = ErrorMetric::kOperatorNorm;
  SpinBosonParams model;  ///< modes and n_max are taken from `systems`
  bool mpf = true;
  std::size_t mpf_l_max = 3;
  std::uint64_t mpf_k_max = 6;
  std::uint64_t max_scale = 64;
  std::size_t threads = 0;
};

struct RepetitionRow {
  std::size_t modes = 0;
  std::size_t n_max = 0;
  std::size_t n_qubits = 0;  ///< 1 + M (n_max + 1), one-hot boson encoding
  double eps = 0.0;
  ProductFormula formula = ProductFormula::lie_trotter();
  RepetitionResult pf;
  MpfRepetitionResult mpf;
};

std::vector<RepetitionRow> repetition_table(const RepetitionSettings& s);

// ---------------------------------------------------------------------------
// Config-driven runners

Report run_weights(const Config& cfg);
Report run_search(const Config& cfg);
Report run_ising_demo(const Config& cfg);
Report run_bernoulli_demo(const Config& cfg);
Report run_zne_demo(const Config& cfg);
Report run_lcu_cost(const Config& cfg);
Report run_scaling(const Config& cfg);
Report run_repetitions(const Config& cfg);
Report run_twirl_check(const Config& cfg);

const std::vector<std::string>& experiment_names();
/// Dispatches on `name`; kInvalidInput for an unknown experiment.
Report run_experiment(const std::string& name, const Config& cfg);

}  // namespace mpf

#include "mpf/detail/parallel.hpp"

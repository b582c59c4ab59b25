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

#include "mpf/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "mpf/error.hpp"
#include "mpf/hamiltonians.hpp"

namespace mpf {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    fail(ErrorCode::kInvalidInput, what + ": '" + text + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    fail(ErrorCode::kInvalidInput, what + ": '" + text + "' is not a non-negative integer");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  fail(ErrorCode::kInvalidInput, what + ": '" + text + "' is not a boolean");
}

// Reads typed values from a Config, remembers the resolved values for the
// report header and rejects keys nobody asked for.
class Reader {
 public:
  Reader(const Config& cfg, std::string experiment) : cfg_(cfg), experiment_(std::move(experiment)) {
    used_.insert("experiment");
    if (auto e = cfg.get("experiment"); e && *e != experiment_) {
      fail(ErrorCode::kInvalidInput, "config is for experiment '" + *e + "', not '" + experiment_ + "'");
    }
  }

  std::optional<std::string> opt(const std::string& key) {
    used_.insert(key);
    auto v = cfg_.get(key);
    if (v) echo(key, *v);
    return v;
  }

  std::string str(const std::string& key, const std::string& def) {
    used_.insert(key);
    const std::string v = cfg_.get(key).value_or(def);
    echo(key, v);
    return v;
  }

  double num(const std::string& key, double def) {
    used_.insert(key);
    const auto raw = cfg_.get(key);
    const double v = raw ? parse_double(*raw, key) : def;
    echo(key, format_double(v));
    return v;
  }

  std::uint64_t uint(const std::string& key, std::uint64_t def) {
    used_.insert(key);
    const auto raw = cfg_.get(key);
    const std::uint64_t v = raw ? parse_uint(*raw, key) : def;
    echo(key, std::to_string(v));
    return v;
  }

  bool flag(const std::string& key, bool def) {
    used_.insert(key);
    const auto raw = cfg_.get(key);
    const bool v = raw ? parse_bool(*raw, key) : def;
    echo(key, v ? "true" : "false");
    return v;
  }

  std::uint64_t seed() {
    used_.insert("seed");
    const auto raw = cfg_.get("seed");
    return raw ? parse_uint(*raw, "seed") : default_seed();
  }

  void echo(const std::string& key, const std::string& value) {
    for (auto& kv : echo_) {
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    }
    echo_.emplace_back(key, value);
  }

  // Throws on unknown keys.
  void finish() const {
    std::string unknown;
    for (const auto& [k, v] : cfg_.entries()) {
      if (!used_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    }
    if (!unknown.empty()) {
      fail(ErrorCode::kInvalidInput, "unknown config key(s) for " + experiment_ + ": " + unknown);
    }
  }

  Report report(std::uint64_t seed) const {
    Report r;
    r.experiment = experiment_;
    r.seed = seed;
    r.config = echo_;
    return r;
  }

 private:
  const Config& cfg_;
  std::string experiment_;
  std::set<std::string> used_;
  std::vector<std::pair<std::string, std::string>> echo_;
};

}  // namespace

// ---------------------------------------------------------------------------

Config Config::parse(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kInvalidInput, "config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) fail(ErrorCode::kInvalidInput, "config line " + std::to_string(lineno) + ": empty key");
    if (cfg.contains(key)) fail(ErrorCode::kInvalidInput, "config key '" + key + "' given twice");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kInvalidInput, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) {
  require(!trim(key).empty(), "config key must not be empty");
  values_[trim(key)] = value;
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnvVar);
  if (env == nullptr || *env == '\0') return 0;
  return parse_uint(env, kSeedEnvVar);
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_uint(part, "integer list"));
  require(!out.empty(), "empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part, "number list"));
  require(!out.empty(), "empty number list");
  return out;
}

std::vector<std::vector<std::uint64_t>> parse_sequence_list(const std::string& text) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& part : split(text, ';')) out.push_back(parse_uint_list(part));
  require(!out.empty(), "empty sequence list");
  return out;
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------

std::string Report::header_line() const {
  std::string h = std::string("# mpf-lab v") + kVersion + " seed=" + std::to_string(seed) + " experiment=" + experiment;
  for (const auto& [k, v] : config) h += " " + k + "=" + v;
  return h;
}

std::string Report::csv() const {
  std::string out = header_line() + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool quote = row[i].find_first_of(",\"") != std::string::npos;
      std::string cell = row[i];
      if (quote) {
        std::string q = "\"";
        for (char c : cell) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        cell = q + "\"";
      }
      out += (i ? "," : "") + cell;
    }
    out += "\n";
  }
  return out;
}

nlohmann::json Report::json() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["config"] = nlohmann::json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  j["summary"] = summary;
  return j;
}

std::string Report::primary() const { return json_primary ? json().dump(2) + "\n" : csv(); }

nlohmann::json to_json(const ExponentSequence& seq) {
  return {{"k", seq.k()}, {"base", seq.base().name()}, {"symmetric", seq.symmetric()}};
}

nlohmann::json to_json(const ExponentSequence& seq, const WeightVector& w) {
  nlohmann::json j = to_json(seq);
  std::vector<std::string> exact;
  for (const auto& a : w.exact) exact.push_back(to_string(a));
  j["weights"] = exact;
  j["values"] = w.values;
  j["norm1"] = w.norm1;
  j["norm1_exact"] = to_string(w.norm1_exact);
  return j;
}

ExponentSequence sequence_from_json(const nlohmann::json& j) {
  try {
    const auto k = j.at("k").get<std::vector<std::uint64_t>>();
    const ProductFormula base = ProductFormula::parse(j.value("base", std::string("s1")));
    std::optional<bool> sym;
    if (j.contains("symmetric")) sym = j.at("symmetric").get<bool>();
    return ExponentSequence(k, base, sym);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInvalidInput, std::string("malformed sequence JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "slope fit needs matching x and y");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) fail(ErrorCode::kNumerical, "slope fit needs at least two positive points");
  const double dn = static_cast<double>(n);
  const double denom = dn * sxx - sx * sx;
  if (denom == 0.0) fail(ErrorCode::kNumerical, "slope fit with a single distinct x");
  return (dn * sxy - sx * sy) / denom;
}

double quantile(std::vector<double> values, double q) {
  require(!values.empty(), "quantile of an empty set");
  require(q >= 0.0 && q <= 1.0, "quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

// ---------------------------------------------------------------------------
// Ising demo

StateVector initial_state(const std::string& name, std::size_t num_qubits) {
  if (name == "plus_i") return StateVector::plus_i(num_qubits);
  if (name == "zeros") return StateVector::basis(std::size_t{1} << num_qubits, 0);
  fail(ErrorCode::kInvalidInput, "unknown initial state '" + name + "' (plus_i | zeros)");
}

namespace {

DenseOperator ising_observable(const std::string& name, std::size_t n) {
  if (name == "z0") return z_observable(n, 0);
  if (name == "zavg") return average_z_observable(n);
  fail(ErrorCode::kInvalidInput, "unknown observable '" + name + "' (z0 | zavg)");
}

double relative(double err, double exact) { return std::abs(exact) > 1e-12 ? err / std::abs(exact) : err; }

}  // namespace

IsingDemoResult ising_demo(const IsingDemoSettings& s) {
  require(s.k_max >= 1, "k_max must be at least 1");
  require(s.eps_prime >= 0.0, "eps_prime must be non-negative");
  require(std::isfinite(s.time) && s.time > 0.0, "time must be positive");
  const HamiltonianTerms h = build_ising(s.n, s.coupling, s.field);
  const DenseOperator obs = ising_observable(s.observable, s.n);
  const StateVector psi = initial_state(s.state, s.n);

  std::vector<ExponentSequence> seqs;
  for (const auto& k : s.sequences) seqs.emplace_back(k, s.base);

  IsingDemoResult r;
  r.exact = exact_expectation(h, s.time, psi, obs);

  std::map<std::uint64_t, double> pf;
  auto pf_value = [&](std::uint64_t k) {
    auto it = pf.find(k);
    if (it == pf.end()) it = pf.emplace(k, pf_expectation(h, s.time, k, s.base, psi, obs)).first;
    return it->second;
  };

  std::vector<double> ks;
  std::vector<double> errs;
  for (std::uint64_t k = 1; k <= s.k_max; ++k) {
    const double v = pf_value(k);
    const double err = std::abs(v - r.exact);
    r.pf_rows.push_back({"pf", std::to_string(k), k, 0.0, v, err, relative(err, r.exact), 1.0});
    ks.push_back(static_cast<double>(k));
    errs.push_back(relative(err, r.exact));
  }
  r.pf_slope = s.k_max >= 2 ? loglog_slope(ks, errs) : 0.0;

  std::vector<double> eps_values{0.0};
  if (s.eps_prime > 0.0) eps_values.push_back(s.eps_prime);
  for (const auto& seq : seqs) {
    const WeightVector w = solve_weights(seq);
    for (double eps : eps_values) {
      std::vector<ExpectationRecord> records;
      for (std::size_t j = 0; j < seq.size(); ++j) {
        const std::uint64_t k = seq.k()[j];
        records.push_back({k, inject_perturbation(pf_value(k), w.values[j], eps), std::nullopt, eps});
      }
      const double v = combine_expectations(seq, w, records);
      const double err = std::abs(v - r.exact);
      r.mpf_rows.push_back({"mpf", seq.to_string(), seq.deepest(), eps, v, err, relative(err, r.exact), w.norm1});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bernoulli demo

std::vector<BernoulliRow> bernoulli_sweep(const BernoulliSettings& s) {
  require(s.l_min >= 1 && s.l_max >= s.l_min, "invalid l range");
  require(s.trials >= 1, "at least one trial is required");
  std::vector<BernoulliRow> rows;
  for (std::size_t l = s.l_min; l <= s.l_max; ++l) {
    std::vector<double> errors(s.trials);
    double norm1 = 0.0;
    parallel_for(s.trials, s.threads, [&](std::size_t trial) {
      errors[trial] = bernoulli_mpf_demo(s.p, s.samples, l, s.base, stream_seed(s.seed, trial + 1)).error;
    });
    std::vector<std::uint64_t> k(l);
    for (std::size_t j = 0; j < l; ++j) k[j] = j + 1;
    norm1 = solve_weights(ExponentSequence(k, s.base)).norm1;
    rows.push_back({l, norm1, quantile(errors, 0.5), quantile(errors, 0.95),
                    norm1 * 0.5 / std::sqrt(static_cast<double>(s.samples))});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// ZNE

std::vector<ZneTrial> zne_trials(const ZneExperiment& e, std::size_t trials, std::size_t threads) {
  require(trials >= 1, "at least one trial is required");
  std::vector<ZneTrial> out(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    ZneExperiment run = e;
    run.seed = stream_seed(e.seed, 0x7a6e65, i);
    out[i].curve = zne_round_trip(run);
    out[i].error = std::abs(out[i].curve.extrapolated - e.e_ideal);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Repetitions

namespace {

std::vector<ExponentSequence> mpf_candidates(ProductFormula base, std::size_t l_max, std::uint64_t k_max) {
  std::vector<ExponentSequence> out;
  for (std::size_t l = 2; l <= l_max && l <= k_max; ++l) {
    SearchQuery q;
    q.l = l;
    q.base = base;
    q.k_min = 1;
    q.k_max = k_max;
    q.threshold = default_threshold(base);
    q.threads = 1;
    for (auto& c : search_sequences(q).accepted) out.push_back(c.sequence);
  }
  return out;
}

}  // namespace

std::vector<RepetitionRow> repetition_table(const RepetitionSettings& s) {
  require(!s.systems.empty() && !s.eps.empty() && !s.formulas.empty(), "empty repetition grid");
  struct Cell {
    std::size_t system;
    double eps;
    ProductFormula formula;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < s.systems.size(); ++i) {
    for (const auto& f : s.formulas) {
      for (double eps : s.eps) cells.push_back({i, eps, f});
    }
  }
  std::vector<HamiltonianTerms> models;
  for (const auto& [modes, n_max] : s.systems) {
    SpinBosonParams p = s.model;
    p.modes = modes;
    p.n_max = n_max;
    models.push_back(build_spin_boson(p));
  }

  std::vector<RepetitionRow> rows(cells.size());
  parallel_for(cells.size(), s.threads, [&](std::size_t i) {
    const Cell& c = cells[i];
    const auto [modes, n_max] = s.systems[c.system];
    const HamiltonianTerms& h = models[c.system];
    RepetitionQuery q;
    q.time = s.time;
    q.formula = c.formula;
    q.eps_target = c.eps;
    q.metric = s.metric;
    if (s.metric == ErrorMetric::kObservable) {
      std::vector<std::size_t> dims{2};
      for (std::size_t m = 0; m < modes; ++m) dims.push_back(n_max + 1);
      q.initial_state = StateVector::basis(h.dim(), 0);
      q.observable = embed(pauli_matrix(PauliString("Z")), dims, 0);
    }
    RepetitionRow& row = rows[i];
    row.modes = modes;
    row.n_max = n_max;
    row.n_qubits = 1 + modes * (n_max + 1);
    row.eps = c.eps;
    row.formula = c.formula;
    row.pf = pf_repetitions_to_accuracy(h, q);
    if (s.mpf) {
      const auto cands = mpf_candidates(c.formula, s.mpf_l_max, s.mpf_k_max);
      row.mpf = mpf_repetitions_to_accuracy(h, q, cands, s.max_scale);
    }
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Runners

Report run_weights(const Config& cfg) {
  Reader in(cfg, "weights");
  const auto k_text = in.opt("k");
  require(k_text.has_value(), "weights needs k (comma-separated exponents)");
  const ProductFormula base = ProductFormula::parse(in.str("base", "s1"));
  std::optional<bool> sym;
  if (auto v = in.opt("symmetric")) sym = parse_bool(*v, "symmetric");
  const std::uint64_t seed = in.seed();
  in.finish();

  const ExponentSequence seq(parse_uint_list(*k_text), base, sym);
  const WeightVector w = solve_weights(seq);
  const auto residuals = constraint_residuals(seq, w.exact);
  const bool exact_zero = std::all_of(residuals.begin(), residuals.end(), [](const Rational& r) { return r == 0; });

  Report r = in.report(seed);
  r.json_primary = true;
  r.table.columns = {"j", "k", "a_exact", "a"};
  for (std::size_t j = 0; j < seq.size(); ++j) {
    r.table.rows.push_back({std::to_string(j + 1), std::to_string(seq.k()[j]), to_string(w.exact[j]),
                            format_double(w.values[j])});
  }
  r.summary = to_json(seq, w);
  r.summary["cancelled_powers"] = seq.cancelled_powers();
  r.summary["residuals_zero"] = exact_zero;
  return r;
}

Report run_search(const Config& cfg) {
  Reader in(cfg, "search");
  SearchQuery q;
  q.l = in.uint("l", 2);
  q.base = ProductFormula::parse(in.str("base", "s1"));
  if (auto v = in.opt("symmetric")) q.symmetric = parse_bool(*v, "symmetric");
  const std::string range = in.str("range", "1:10");
  const auto colon = range.find(':');
  require(colon != std::string::npos, "range must look like kmin:kmax");
  q.k_min = parse_uint(range.substr(0, colon), "range");
  q.k_max = parse_uint(range.substr(colon + 1), "range");
  q.threshold = in.num("threshold", default_threshold(q.base));
  q.objective = parse_objective(in.str("objective", "min-norm1"));
  q.threads = in.uint("threads", 0);
  const std::uint64_t limit = in.uint("limit", 0);
  const std::uint64_t seed = in.seed();
  in.finish();

  const SearchResult res = search_sequences(q);
  Report r = in.report(seed);
  r.table.columns = {"rank", "sequence", "norm1", "norm1_exact", "k_l", "weights"};
  nlohmann::json accepted = nlohmann::json::array();
  for (std::size_t i = 0; i < res.accepted.size(); ++i) {
    if (limit && i >= limit) break;
    const auto& c = res.accepted[i];
    std::string weights;
    for (std::size_t j = 0; j < c.weights.exact.size(); ++j) weights += (j ? " " : "") + to_string(c.weights.exact[j]);
    r.table.rows.push_back({std::to_string(i + 1), c.sequence.to_string(), format_double(c.weights.norm1),
                            to_string(c.weights.norm1_exact), std::to_string(c.sequence.deepest()), weights});
    accepted.push_back(to_json(c.sequence, c.weights));
  }
  r.summary["examined"] = res.examined;
  r.summary["accepted"] = res.accepted.size();
  r.summary["sequences"] = accepted;
  if (!res.diagnostic.empty()) r.summary["diagnostic"] = res.diagnostic;
  return r;
}

Report run_ising_demo(const Config& cfg) {
  Reader in(cfg, "ising-demo");
  IsingDemoSettings s;
  s.n = in.uint("n", s.n);
  s.coupling = in.num("J", s.coupling);
  s.field = in.num("h", s.field);
  s.time = in.num("t", s.time);
  s.k_max = in.uint("k_max", s.k_max);
  s.base = ProductFormula::parse(in.str("base", s.base.name()));
  s.observable = in.str("observable", s.observable);
  s.state = in.str("state", s.state);
  s.eps_prime = in.num("eps_prime", s.eps_prime);
  if (auto v = in.opt("sequences")) s.sequences = parse_sequence_list(*v);
  const std::uint64_t seed = in.seed();
  in.finish();

  const IsingDemoResult res = ising_demo(s);
  Report r = in.report(seed);
  r.table.columns = {"kind", "label", "k_max", "eps_prime", "value", "exact", "abs_error", "rel_error", "norm1"};
  auto emit = [&](const IsingDemoRow& row) {
    r.table.rows.push_back({row.kind, row.label, std::to_string(row.k_max), format_double(row.eps_prime),
                            format_double(row.value), format_double(res.exact), format_double(row.abs_error),
                            format_double(row.rel_error), format_double(row.norm1)});
  };
  for (const auto& row : res.pf_rows) emit(row);
  for (const auto& row : res.mpf_rows) emit(row);
  r.summary["exact"] = res.exact;
  r.summary["pf_slope"] = res.pf_slope;
  r.summary["pf_k_max_rel_error"] = res.pf_rows.back().rel_error;
  return r;
}

Report run_bernoulli_demo(const Config& cfg) {
  Reader in(cfg, "bernoulli-demo");
  BernoulliSettings s;
  s.p = in.num("p", s.p);
  s.samples = in.uint("samples", s.samples);
  s.l_min = in.uint("l_min", s.l_min);
  s.l_max = in.uint("l_max", s.l_max);
  s.base = ProductFormula::parse(in.str("base", s.base.name()));
  s.trials = in.uint("trials", s.trials);
  s.threads = in.uint("threads", 0);
  s.seed = in.seed();
  in.finish();

  const auto rows = bernoulli_sweep(s);
  Report r = in.report(s.seed);
  r.table.columns = {"l", "norm1", "median_error", "p95_error", "reference"};
  nlohmann::json ls = nlohmann::json::array();
  for (const auto& row : rows) {
    r.table.rows.push_back({std::to_string(row.l), format_double(row.norm1), format_double(row.median_error),
                            format_double(row.p95_error), format_double(row.reference)});
    ls.push_back({{"l", row.l}, {"norm1", row.norm1}, {"median_error", row.median_error}});
  }
  r.summary["rows"] = ls;
  return r;
}

namespace {

double default_zne_ideal() {
  const HamiltonianTerms h = build_ising(5, 0.5, 1.0);
  return exact_expectation(h, 0.5, StateVector::plus_i(5), z_observable(5, 0));
}

}  // namespace

Report run_zne_demo(const Config& cfg) {
  Reader in(cfg, "zne-demo");
  ZneExperiment e;
  if (auto v = in.opt("e_ideal")) {
    e.e_ideal = parse_double(*v, "e_ideal");
  } else {
    e.e_ideal = default_zne_ideal();
    in.echo("e_ideal", format_double(e.e_ideal));
  }
  e.b = in.num("b", e.b);
  e.d = in.num("d", e.d);
  e.c_min = in.num("c_min", e.c_min);
  e.c_max = in.num("c_max", e.c_max);
  e.points = in.uint("points", e.points);
  e.shots = in.uint("shots", e.shots);
  const std::size_t trials = in.uint("trials", 1);
  const std::size_t threads = in.uint("threads", 0);
  e.seed = in.seed();
  in.finish();

  const auto runs = zne_trials(e, trials, threads);
  Report r = in.report(e.seed);
  r.table.columns = {"trial", "c", "y"};
  nlohmann::json fits = nlohmann::json::array();
  std::vector<double> errors;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (const auto& p : runs[i].curve.points) {
      r.table.rows.push_back({std::to_string(i), format_double(p.c), format_double(p.y)});
    }
    const auto& c = runs[i].curve;
    fits.push_back({{"trial", i}, {"a", c.a}, {"b", c.b}, {"d", c.d}, {"extrapolated", c.extrapolated},
                    {"residual", c.residual}, {"degenerate", c.degenerate}, {"error", runs[i].error}});
    errors.push_back(runs[i].error);
  }
  r.summary["fits"] = fits;
  r.summary["median_error"] = quantile(errors, 0.5);
  r.summary["p95_error"] = quantile(errors, 0.95);
  return r;
}

Report run_lcu_cost(const Config& cfg) {
  Reader in(cfg, "lcu-cost");
  const auto k = parse_uint_list(in.str("k", "1,2,7"));
  const std::size_t n_spins = in.uint("n_spins", 5);
  GateCostTable costs;
  const char* keys[kGateKinds] = {"cost_rzz", "cost_c_rzz", "cost_c_u", "cost_cc_rzz", "cost_cc_rx"};
  for (std::size_t i = 0; i < kGateKinds; ++i) costs.cnots[i] = in.uint(keys[i], costs.cnots[i]);
  const std::uint64_t seed = in.seed();
  in.finish();

  const GateTally lcu = lcu_gate_tally(k, n_spins);
  const GateTally classical = classical_gate_tally(k, n_spins);
  const std::uint64_t lcu_total = cnot_total(lcu, costs);
  const std::uint64_t classical_total = cnot_total(classical, costs);

  Report r = in.report(seed);
  r.table.columns = {"gate", "cnots_per_gate", "lcu_gates", "lcu_cnots", "classical_gates", "classical_cnots"};
  for (std::size_t i = 0; i < kGateKinds; ++i) {
    r.table.rows.push_back({gate_name(static_cast<GateKind>(i)), std::to_string(costs.cnots[i]),
                            std::to_string(lcu[i]), std::to_string(lcu[i] * costs.cnots[i]),
                            std::to_string(classical[i]), std::to_string(classical[i] * costs.cnots[i])});
  }
  r.table.rows.push_back({"total", "", "", std::to_string(lcu_total), "", std::to_string(classical_total)});
  r.summary["lcu"] = lcu_total;
  r.summary["classical"] = classical_total;
  if (classical_total > 0) {
    const double ratio = static_cast<double>(lcu_total) / static_cast<double>(classical_total);
    r.summary["ratio"] = std::round(ratio * 100.0) / 100.0;
    r.summary["ratio_rounded"] = std::llround(ratio);
  }
  return r;
}

Report run_scaling(const Config& cfg) {
  Reader in(cfg, "scaling");
  const auto nq = parse_double_list(in.str("nq", "11"));
  const auto eps = parse_double_list(in.str("eps", "1e-4"));
  const double t = in.num("t", 1.0);
  const std::uint64_t seed = in.seed();
  in.finish();

  Report r = in.report(seed);
  r.table.columns = {"nq", "eps", "t", "l", "l_closed_form", "l_closed_ceil", "alpha", "k_l"};
  nlohmann::json rows = nlohmann::json::array();
  for (double n : nq) {
    for (double e : eps) {
      const ScalingEstimate est = mpf_depth_scaling({n, e, t});
      r.table.rows.push_back({format_double(n), format_double(e), format_double(t), std::to_string(est.l),
                              format_double(est.l_closed_form), std::to_string(est.l_closed_ceil),
                              format_double(est.alpha), std::to_string(est.k_deepest)});
      rows.push_back({{"nq", n}, {"eps", e}, {"l", est.l}, {"l_closed_form", est.l_closed_form},
                      {"k_l", est.k_deepest}});
    }
  }
  r.summary["rows"] = rows;
  return r;
}

Report run_repetitions(const Config& cfg) {
  Reader in(cfg, "repetitions");
  RepetitionSettings s;
  const std::string systems = in.str("systems", "1:1;1:2;2:1");
  s.systems.clear();
  for (const auto& part : split(systems, ';')) {
    const auto colon = part.find(':');
    require(colon != std::string::npos, "systems must look like M:n_max;M:n_max");
    s.systems.emplace_back(parse_uint(part.substr(0, colon), "systems"), parse_uint(part.substr(colon + 1), "systems"));
  }
  s.eps = parse_double_list(in.str("eps", "0.01,0.001,0.0001"));
  s.formulas.clear();
  for (const auto& f : split(in.str("formulas", "s1,s2,s4"), ',')) s.formulas.push_back(ProductFormula::parse(f));
  s.time = in.num("t", s.time);
  s.metric = parse_metric(in.str("metric", "operator-norm"));
  s.model.omega = in.num("omega", s.model.omega);
  s.model.omega_s = in.num("omega_s", s.model.omega_s);
  s.model.delta = in.num("delta", s.model.delta);
  s.model.coupling = in.num("g", s.model.coupling);
  s.mpf = in.flag("mpf", s.mpf);
  s.mpf_l_max = in.uint("mpf_l_max", s.mpf_l_max);
  s.mpf_k_max = in.uint("mpf_k_max", s.mpf_k_max);
  s.max_scale = in.uint("max_scale", s.max_scale);
  s.threads = in.uint("threads", 0);
  const std::uint64_t seed = in.seed();
  in.finish();

  const auto rows = repetition_table(s);
  Report r = in.report(seed);
  r.table.columns = {"n_qubits", "M", "n_max", "eps", "formula", "pf_k", "pf_repetitions", "pf_error",
                     "mpf_sequence", "mpf_l", "mpf_repetitions", "mpf_error", "best_repetitions", "best_l"};
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& row : rows) {
    const bool has_mpf = row.mpf.sequence.has_value();
    const bool mpf_wins = has_mpf && row.mpf.repetitions < row.pf.repetitions;
    const std::uint64_t best = mpf_wins ? row.mpf.repetitions : row.pf.repetitions;
    const std::size_t best_l = mpf_wins ? row.mpf.sequence->size() : 1;
    r.table.rows.push_back({std::to_string(row.n_qubits), std::to_string(row.modes), std::to_string(row.n_max),
                            format_double(row.eps), row.formula.name(), std::to_string(row.pf.k),
                            std::to_string(row.pf.repetitions), format_double(row.pf.error),
                            has_mpf ? row.mpf.sequence->to_string() : "", has_mpf ? std::to_string(row.mpf.sequence->size()) : "",
                            has_mpf ? std::to_string(row.mpf.repetitions) : "", has_mpf ? format_double(row.mpf.error) : "",
                            std::to_string(best), std::to_string(best_l)});
    cells.push_back({{"M", row.modes}, {"n_max", row.n_max}, {"eps", row.eps}, {"formula", row.formula.name()},
                     {"pf_repetitions", row.pf.repetitions}, {"best", std::to_string(best) + "(" + std::to_string(best_l) + ")"}});
  }
  r.summary["cells"] = cells;
  return r;
}

Report run_twirl_check(const Config& cfg) {
  Reader in(cfg, "twirl-check");
  const double theta = in.num("theta", 0.7);
  const std::uint64_t seed = in.seed();
  in.finish();

  const auto checks = twirl_set_check(theta);
  Report r = in.report(seed);
  r.table.columns = {"element", "commutes", "defect"};
  bool all = true;
  for (const auto& c : checks) {
    r.table.rows.push_back({c.label, c.commutes ? "true" : "false", format_double(c.defect)});
    all = all && c.commutes;
  }
  r.summary["all_commute"] = all;
  return r;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"weights", "search", "ising-demo", "bernoulli-demo", "zne-demo",
                                              "lcu-cost", "scaling", "repetitions", "twirl-check"};
  return names;
}

Report run_experiment(const std::string& name, const Config& cfg) {
  if (name == "weights") return run_weights(cfg);
  if (name == "search") return run_search(cfg);
  if (name == "ising-demo") return run_ising_demo(cfg);
  if (name == "bernoulli-demo") return run_bernoulli_demo(cfg);
  if (name == "zne-demo") return run_zne_demo(cfg);
  if (name == "lcu-cost") return run_lcu_cost(cfg);
  if (name == "scaling") return run_scaling(cfg);
  if (name == "repetitions") return run_repetitions(cfg);
  if (name == "twirl-check") return run_twirl_check(cfg);
  fail(ErrorCode::kInvalidInput, "unknown experiment '" + name + "'");
}

}  // namespace mpf

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

#include "mpf/mpf_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "mpf/error.hpp"

namespace mpf {

namespace mp = boost::multiprecision;

std::string to_string(const Rational& r) {
  return mp::numerator(r).str() + "/" + mp::denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    require(den != 0, "rational with zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    fail(ErrorCode::kInvalidInput, "cannot parse rational '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// ExponentSequence

ExponentSequence::ExponentSequence(std::vector<std::uint64_t> k, ProductFormula base,
                                   std::optional<bool> symmetric)
    : k_(std::move(k)), base_(base), symmetric_(symmetric.value_or(base.symmetric())) {
  require(!k_.empty(), "exponent sequence must not be empty");
  require(k_.front() >= 1, "Trotter exponents must be at least 1");
  for (std::size_t j = 1; j < k_.size(); ++j) {
    require(k_[j] > k_[j - 1], "Trotter exponents must be strictly increasing: " + to_string());
  }
}

std::vector<unsigned> ExponentSequence::cancelled_powers() const {
  const unsigned stride = symmetric_ ? 2 : 1;
  std::vector<unsigned> eta;
  for (std::size_t n = 0; n + 1 < k_.size(); ++n) {
    eta.push_back(base_.order() + stride * static_cast<unsigned>(n));
  }
  return eta;
}

ExponentSequence ExponentSequence::rescaled(double alpha) const {
  require(std::isfinite(alpha) && alpha > 0.0, "rescaling factor must be positive");
  std::vector<std::uint64_t> scaled;
  for (auto kj : k_) scaled.push_back(static_cast<std::uint64_t>(std::ceil(alpha * static_cast<double>(kj))));
  return ExponentSequence(std::move(scaled), base_, symmetric_);
}

std::string ExponentSequence::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t j = 0; j < k_.size(); ++j) os << (j ? "," : "") << k_[j];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Exact linear algebra

std::vector<Rational> solve_exact(std::vector<std::vector<BigInt>> a, std::vector<BigInt> b) {
  const std::size_t n = a.size();
  require(b.size() == n, "right-hand side length mismatch");
  for (const auto& row : a) require(row.size() == n, "matrix must be square");

  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k] == 0) ++pivot;
    if (pivot == n) fail(ErrorCode::kInternal, "singular system in exact solve");
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      std::swap(b[pivot], b[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
      b[i] = (b[i] * a[k][k] - a[i][k] * b[k]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }

  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc(b[i]);
    for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(a[i][j]) * x[j];
    x[i] = acc / Rational(a[i][i]);
  }
  return x;
}

namespace {

BigInt pow_big(std::uint64_t base, unsigned exp) { return mp::pow(BigInt(base), exp); }

WeightVector finish_weights(std::vector<Rational> exact) {
  WeightVector w;
  w.norm1_exact = 0;
  for (const auto& a : exact) {
    w.values.push_back(static_cast<double>(a));
    w.norm1_exact += mp::abs(a);
  }
  w.norm1 = static_cast<double>(w.norm1_exact);
  w.exact = std::move(exact);
  return w;
}

}  // namespace

WeightVector solve_weights(const ExponentSequence& seq) {
  const std::size_t l = seq.size();
  std::vector<std::vector<BigInt>> a(l, std::vector<BigInt>(l));
  std::vector<BigInt> b(l, 0);
  for (std::size_t j = 0; j < l; ++j) a[0][j] = 1;
  b[0] = 1;

  const auto powers = seq.cancelled_powers();
  for (std::size_t row = 0; row < powers.size(); ++row) {
    // Row of 1/k_j^eta scaled by the lcm of the denominators.
    std::vector<BigInt> denom(l);
    BigInt lcm = 1;
    for (std::size_t j = 0; j < l; ++j) {
      denom[j] = pow_big(seq.k()[j], powers[row]);
      lcm = lcm / mp::gcd(lcm, denom[j]) * denom[j];
    }
    for (std::size_t j = 0; j < l; ++j) a[row + 1][j] = lcm / denom[j];
  }
  return finish_weights(solve_exact(std::move(a), std::move(b)));
}

std::vector<Rational> constraint_residuals(const ExponentSequence& seq,
                                           std::span<const Rational> weights) {
  require(weights.size() == seq.size(), "weight count does not match the sequence");
  std::vector<Rational> res;
  Rational sum = 0;
  for (const auto& a : weights) sum += a;
  res.push_back(sum - 1);
  for (unsigned eta : seq.cancelled_powers()) {
    Rational acc = 0;
    for (std::size_t j = 0; j < seq.size(); ++j) acc += weights[j] / Rational(pow_big(seq.k()[j], eta));
    res.push_back(acc);
  }
  return res;
}

double condition_number(const WeightVector& w) {
  double s = 0.0;
  for (double a : w.values) s += std::abs(a);
  return s;
}

// ---------------------------------------------------------------------------
// Sequence search

SearchObjective parse_objective(const std::string& text) {
  if (text == "min-norm1" || text == "norm1") return SearchObjective::kMinNorm1;
  if (text == "min-depth" || text == "depth") return SearchObjective::kMinDepth;
  fail(ErrorCode::kInvalidInput, "unknown search objective '" + text + "'");
}

std::string to_string(SearchObjective objective) {
  return objective == SearchObjective::kMinNorm1 ? "min-norm1" : "min-depth";
}

double default_threshold(ProductFormula base) { return base.symmetric() ? 1.7 : 3.0; }

namespace {

double binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0.0;
  double c = 1.0;
  for (std::uint64_t i = 1; i <= r; ++i) c = c * static_cast<double>(n - r + i) / static_cast<double>(i);
  return c;
}

// Advances a strictly increasing combination inside [lo, hi]; false when done.
bool next_combination(std::vector<std::uint64_t>& k, std::uint64_t hi) {
  const std::size_t l = k.size();
  std::size_t i = l;
  while (i-- > 0) {
    if (k[i] < hi - (l - 1 - i)) {
      ++k[i];
      for (std::size_t j = i + 1; j < l; ++j) k[j] = k[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct Ranker {
  SearchObjective objective;
  bool operator()(const SequenceCandidate& x, const SequenceCandidate& y) const {
    const auto& kx = x.sequence.k();
    const auto& ky = y.sequence.k();
    if (objective == SearchObjective::kMinNorm1) {
      if (x.weights.norm1_exact != y.weights.norm1_exact) return x.weights.norm1_exact < y.weights.norm1_exact;
    }
    if (kx.back() != ky.back()) return kx.back() < ky.back();
    return kx < ky;
  }
};

}  // namespace

SearchResult search_sequences(const SearchQuery& q) {
  require(q.l >= 1, "search needs l >= 1");
  require(q.k_min >= 1 && q.k_max >= q.k_min, "invalid exponent range");
  require(q.k_max - q.k_min + 1 >= q.l, "exponent range is narrower than l");
  require(std::isfinite(q.threshold) && q.threshold > 0.0, "threshold must be positive");
  const double candidates = binomial(q.k_max - q.k_min + 1, q.l);
  if (candidates > kMaxSearchCandidates) {
    fail(ErrorCode::kCapacity, "search would enumerate " + std::to_string(candidates) +
                                   " sequences; the limit is 1e6");
  }

  std::size_t threads = q.threads ? q.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<std::size_t>(threads, static_cast<std::size_t>(candidates));
  threads = std::max<std::size_t>(threads, 1);

  const Rational limit(q.threshold);
  const Ranker by_norm{SearchObjective::kMinNorm1};

  struct Partial {
    std::vector<SequenceCandidate> accepted;
    std::optional<SequenceCandidate> best;
    std::size_t examined = 0;
  };
  std::vector<Partial> partials(threads);

  auto worker = [&](std::size_t id) {
    Partial& part = partials[id];
    std::vector<std::uint64_t> k(q.l);
    for (std::size_t j = 0; j < q.l; ++j) k[j] = q.k_min + j;
    std::size_t rank = 0;
    do {
      if (rank++ % threads != id) continue;
      ExponentSequence seq(k, q.base, q.symmetric);
      SequenceCandidate cand{seq, solve_weights(seq)};
      ++part.examined;
      if (!part.best || by_norm(cand, *part.best)) part.best = cand;
      if (cand.weights.norm1_exact <= limit) part.accepted.push_back(std::move(cand));
    } while (next_combination(k, q.k_max));
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }

  SearchResult result;
  std::optional<SequenceCandidate> best;
  for (auto& part : partials) {
    result.examined += part.examined;
    for (auto& c : part.accepted) result.accepted.push_back(std::move(c));
    if (part.best && (!best || by_norm(*part.best, *best))) best = part.best;
  }
  std::sort(result.accepted.begin(), result.accepted.end(), Ranker{q.objective});

  if (result.accepted.empty()) {
    std::ostringstream os;
    os << "no sequence with ||a||_1 <= " << q.threshold << " among " << result.examined
       << " candidates";
    if (best) os << "; smallest ||a||_1 was " << best->weights.norm1 << " for " << best->sequence.to_string();
    result.diagnostic = os.str();
  }
  return result;
}

// ---------------------------------------------------------------------------
// Classical combination

double combine_expectations(const ExponentSequence& seq, const WeightVector& w,
                            std::span<const ExpectationRecord> records) {
  require(w.values.size() == seq.size(), "weights do not match the sequence");
  require(records.size() == seq.size(), "expected " + std::to_string(seq.size()) +
                                            " expectation records, got " + std::to_string(records.size()));
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t j = i + 1; j < records.size(); ++j) {
      require(records[i].k != records[j].k, "duplicate expectation record for k=" + std::to_string(records[i].k));
    }
  }
  double total = 0.0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const auto it = std::find_if(records.begin(), records.end(),
                                 [&](const ExpectationRecord& r) { return r.k == seq.k()[j]; });
    require(it != records.end(), "no expectation record for k=" + std::to_string(seq.k()[j]));
    require(std::isfinite(it->value), "expectation value must be finite");
    total += w.values[j] * it->value;
  }
  return total;
}

double amplified_error_bound(const WeightVector& w, double eps_prime) {
  require(eps_prime >= 0.0, "eps' must be non-negative");
  return condition_number(w) * eps_prime;
}

}  // namespace mpf

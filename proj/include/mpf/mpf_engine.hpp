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

// Multi-product formulas: extrapolation weights for a sequence of Trotter
// exponents, condition-number driven sequence search, and the classical
// combination of per-exponent expectation values.
//
// For exponents k_1 < ... < k_l on a base formula of order chi the weights a
// solve the square system
//
//   sum_j a_j           = 1
//   sum_j a_j / k_j^eta = 0   for eta = chi + stride * n,  n = 0 .. l-2
//
// with stride 2 for symmetric base formulas and 1 otherwise. Every entry is
// rational, so the system is solved exactly.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mpf/propagators.hpp"

namespace mpf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Always "p/q", including q = 1.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

/// Strictly increasing Trotter exponents together with the base formula.
class ExponentSequence {
 public:
  /// `symmetric` defaults to the base formula's symmetry.
  ExponentSequence(std::vector<std::uint64_t> k, ProductFormula base,
                   std::optional<bool> symmetric = std::nullopt);

  const std::vector<std::uint64_t>& k() const noexcept { return k_; }
  std::size_t size() const noexcept { return k_.size(); }
  std::uint64_t deepest() const noexcept { return k_.back(); }
  ProductFormula base() const noexcept { return base_; }
  bool symmetric() const noexcept { return symmetric_; }

  /// Error powers eta_n cancelled by the weights, n = 0 .. l-2.
  std::vector<unsigned> cancelled_powers() const;

  /// k_j -> ceil(alpha * k_j). Used to keep t / k_j <= 1 for long times.
  ExponentSequence rescaled(double alpha) const;

  std::string to_string() const;

  friend bool operator==(const ExponentSequence&, const ExponentSequence&) = default;

 private:
  std::vector<std::uint64_t> k_;
  ProductFormula base_;
  bool symmetric_;
};

struct WeightVector {
  std::vector<Rational> exact;
  std::vector<double> values;
  Rational norm1_exact;
  double norm1 = 0.0;
};

/// Exact solve of a square rational system A x = b by fraction-free
/// (Bareiss) elimination on integers. Rows of A may be scaled freely by the
/// caller. Throws kInternal on a singular matrix.
std::vector<Rational> solve_exact(std::vector<std::vector<BigInt>> a, std::vector<BigInt> b);

WeightVector solve_weights(const ExponentSequence& seq);

/// Residuals of every constraint row for the given weights, first the
/// normalization sum minus one, then each cancellation sum.
std::vector<Rational> constraint_residuals(const ExponentSequence& seq,
                                           std::span<const Rational> weights);

/// ||a||_1
double condition_number(const WeightVector& w);

enum class SearchObjective { kMinNorm1, kMinDepth };

SearchObjective parse_objective(const std::string& text);
std::string to_string(SearchObjective objective);

struct SearchQuery {
  std::size_t l = 2;
  ProductFormula base = ProductFormula::lie_trotter();
  std::optional<bool> symmetric;
  std::uint64_t k_min = 1;
  std::uint64_t k_max = 10;
  double threshold = 3.0;
  SearchObjective objective = SearchObjective::kMinNorm1;
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;
};

struct SequenceCandidate {
  ExponentSequence sequence;
  WeightVector weights;
};

struct SearchResult {
  std::vector<SequenceCandidate> accepted;
  std::size_t examined = 0;
  /// Set when nothing passes the threshold.
  std::string diagnostic;
};

inline constexpr double kMaxSearchCandidates = 1e6;

/// Default well-conditioning threshold for a base formula: 3 for first order,
/// 1.7 for symmetric formulas.
double default_threshold(ProductFormula base);

/// Enumerates every strictly increasing sequence in [k_min, k_max], keeps those
/// with ||a||_1 <= threshold and ranks them by the objective, ties broken by
/// smaller k_l and then lexicographic k. The order is independent of the
/// thread count.
SearchResult search_sequences(const SearchQuery& query);

struct ExpectationRecord {
  std::uint64_t k = 0;
  double value = 0.0;
  /// Empty for exact (noiseless) values.
  std::optional<std::uint64_t> shots;
  double epsilon_prime = 0.0;
};

/// sum_j a_j E_j with records matched to the sequence by k.
double combine_expectations(const ExponentSequence& seq, const WeightVector& w,
                            std::span<const ExpectationRecord> records);

/// ||a||_1 * eps'
double amplified_error_bound(const WeightVector& w, double eps_prime);

}  // namespace mpf

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

// Exact evolution and Lie-Trotter-Suzuki product formulas.
//
// A product formula is represented by its schedule: the ordered list of
// factors exp(-i H_j f t) written left to right as a matrix product, so the
// last factor acts on the state first.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpf/hamiltonians.hpp"
#include "mpf/operator_core.hpp"

namespace mpf {

/// Full unitaries are only formed up to this dimension; larger systems use
/// state application.
inline constexpr std::size_t kMaxPropagatorDim = 256;

/// Order of a product formula: 1 (Lie-Trotter) or 2*chi (symmetric Suzuki).
class ProductFormula {
 public:
  explicit ProductFormula(unsigned order);

  static ProductFormula lie_trotter() { return ProductFormula(1); }
  static ProductFormula suzuki(unsigned chi) { return ProductFormula(2 * chi); }
  /// Parses "s1", "s2", "s4", ... (case-insensitive) or a bare order.
  static ProductFormula parse(const std::string& text);

  unsigned order() const noexcept { return order_; }
  bool symmetric() const noexcept { return order_ % 2 == 0; }
  std::string name() const { return "s" + std::to_string(order_); }

  friend bool operator==(const ProductFormula&, const ProductFormula&) = default;

 private:
  unsigned order_;
};

/// s_p = 1 / (4 - 4^{1/(2p-1)})
double suzuki_coefficient(unsigned p);

struct ScheduleFactor {
  std::size_t term;
  double fraction;  ///< multiple of the total evolution time t
};

/// One application of the formula to time t, with adjacent factors on the same
/// term merged.
std::vector<ScheduleFactor> formula_schedule(std::size_t num_terms, ProductFormula formula);

/// [S(t/k)]^k with fractions relative to the total time t and merging across
/// step boundaries. Its length is the repetition count of the circuit.
std::vector<ScheduleFactor> step_schedule(std::size_t num_terms, ProductFormula formula,
                                          std::size_t k);

/// Number of exp(-i H_j tau) factors in [S(t/k)]^k after merging.
std::size_t repetition_count(std::size_t num_terms, ProductFormula formula, std::size_t k);

DenseOperator exact_unitary(const HamiltonianTerms& h, double t);
StateVector exact_evolve(const HamiltonianTerms& h, double t, const StateVector& psi);
double exact_expectation(const HamiltonianTerms& h, double t, const StateVector& psi,
                         const DenseOperator& obs);

/// prod_j exp(-i H_j t) in term order
DenseOperator s1(const HamiltonianTerms& h, double t);
/// Symmetric Suzuki formula of order 2*chi.
DenseOperator s2chi(const HamiltonianTerms& h, double t, unsigned chi);
DenseOperator product_formula(const HamiltonianTerms& h, double t, ProductFormula formula);

/// [S(t/k)]^k
DenseOperator pf_steps(const HamiltonianTerms& h, double t, std::size_t k, ProductFormula formula);
StateVector pf_evolve(const HamiltonianTerms& h, double t, std::size_t k, ProductFormula formula,
                      const StateVector& psi);
double pf_expectation(const HamiltonianTerms& h, double t, std::size_t k, ProductFormula formula,
                      const StateVector& psi, const DenseOperator& obs);

}  // namespace mpf

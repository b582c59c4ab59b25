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

#include "mpf/propagators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "mpf/error.hpp"

namespace mpf {

namespace {

void append_merged(std::vector<ScheduleFactor>& out, ScheduleFactor f) {
  if (!out.empty() && out.back().term == f.term) {
    out.back().fraction += f.fraction;
  } else {
    out.push_back(f);
  }
}

// Unmerged schedule of S_order(t), fractions relative to t.
void build_schedule(std::vector<ScheduleFactor>& out, std::size_t num_terms, unsigned order,
                    double scale) {
  if (order == 1) {
    for (std::size_t j = 0; j < num_terms; ++j) append_merged(out, {j, scale});
    return;
  }
  if (order == 2) {
    for (std::size_t j = 0; j < num_terms; ++j) append_merged(out, {j, 0.5 * scale});
    for (std::size_t j = num_terms; j-- > 0;) append_merged(out, {j, 0.5 * scale});
    return;
  }
  // S_{2chi}(t) = S_{2chi-2}(s t)^2 S_{2chi-2}((1-4s) t) S_{2chi-2}(s t)^2
  const unsigned chi = order / 2;
  const double s = suzuki_coefficient(chi);
  const unsigned lower = order - 2;
  build_schedule(out, num_terms, lower, s * scale);
  build_schedule(out, num_terms, lower, s * scale);
  build_schedule(out, num_terms, lower, (1.0 - 4.0 * s) * scale);
  build_schedule(out, num_terms, lower, s * scale);
  build_schedule(out, num_terms, lower, s * scale);
}

DenseOperator schedule_operator(const HamiltonianTerms& h, const std::vector<ScheduleFactor>& sched,
                                double t) {
  Matrix m = Matrix::Identity(h.dim(), h.dim());
  for (const auto& f : sched) m = m * h.term_propagator(f.term, f.fraction * t).matrix();
  return DenseOperator(std::move(m));
}

void check_materializable(const HamiltonianTerms& h) {
  if (h.dim() > kMaxPropagatorDim) {
    fail(ErrorCode::kCapacity, "propagator matrices are limited to dimension " +
                                   std::to_string(kMaxPropagatorDim) + "; use state evolution");
  }
}

Matrix matrix_power(Matrix base, std::size_t k) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace

ProductFormula::ProductFormula(unsigned order) : order_(order) {
  require(order == 1 || (order >= 2 && order % 2 == 0),
          "product formula order must be 1 or even, got " + std::to_string(order));
  require(order <= 12, "product formula orders above 12 are not supported");
}

ProductFormula ProductFormula::parse(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (!s.empty() && s.front() == 's') s.erase(s.begin());
  require(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }),
          "cannot parse product formula '" + text + "'");
  return ProductFormula(static_cast<unsigned>(std::stoul(s)));
}

double suzuki_coefficient(unsigned p) {
  require(p >= 1, "Suzuki coefficient index must be at least 1");
  return 1.0 / (4.0 - std::pow(4.0, 1.0 / (2.0 * p - 1.0)));
}

std::vector<ScheduleFactor> formula_schedule(std::size_t num_terms, ProductFormula formula) {
  require(num_terms >= 1, "product formula needs at least one term");
  std::vector<ScheduleFactor> out;
  build_schedule(out, num_terms, formula.order(), 1.0);
  return out;
}

std::vector<ScheduleFactor> step_schedule(std::size_t num_terms, ProductFormula formula,
                                          std::size_t k) {
  require(k >= 1, "Trotter exponent k must be at least 1");
  const auto one = formula_schedule(num_terms, formula);
  const double inv_k = 1.0 / static_cast<double>(k);
  std::vector<ScheduleFactor> out;
  out.reserve(one.size() * k);
  for (std::size_t step = 0; step < k; ++step) {
    for (const auto& f : one) append_merged(out, {f.term, f.fraction * inv_k});
  }
  return out;
}

std::size_t repetition_count(std::size_t num_terms, ProductFormula formula, std::size_t k) {
  require(k >= 1, "Trotter exponent k must be at least 1");
  const auto one = formula_schedule(num_terms, formula);
  if (one.size() == 1) return 1;
  // Consecutive steps merge exactly when a step starts and ends on the same term.
  const bool joins = one.front().term == one.back().term;
  return k * one.size() - (joins ? k - 1 : 0);
}

DenseOperator exact_unitary(const HamiltonianTerms& h, double t) {
  return h.spectrum().propagator(t);
}

StateVector exact_evolve(const HamiltonianTerms& h, double t, const StateVector& psi) {
  require(psi.dim() == h.dim(), "state does not match Hamiltonian dimension");
  Vector out = h.spectrum().apply_propagator(psi.amplitudes(), t);
  return StateVector(out.normalized());
}

double exact_expectation(const HamiltonianTerms& h, double t, const StateVector& psi,
                         const DenseOperator& obs) {
  return expectation(exact_evolve(h, t, psi), obs);
}

DenseOperator s1(const HamiltonianTerms& h, double t) {
  return product_formula(h, t, ProductFormula::lie_trotter());
}

DenseOperator s2chi(const HamiltonianTerms& h, double t, unsigned chi) {
  require(chi >= 1, "chi must be at least 1");
  return product_formula(h, t, ProductFormula::suzuki(chi));
}

DenseOperator product_formula(const HamiltonianTerms& h, double t, ProductFormula formula) {
  check_materializable(h);
  return schedule_operator(h, formula_schedule(h.size(), formula), t);
}

DenseOperator pf_steps(const HamiltonianTerms& h, double t, std::size_t k, ProductFormula formula) {
  require(k >= 1, "Trotter exponent k must be at least 1");
  check_materializable(h);
  const DenseOperator step = product_formula(h, t / static_cast<double>(k), formula);
  return DenseOperator(matrix_power(step.matrix(), k));
}

StateVector pf_evolve(const HamiltonianTerms& h, double t, std::size_t k, ProductFormula formula,
                      const StateVector& psi) {
  require(k >= 1, "Trotter exponent k must be at least 1");
  require(psi.dim() == h.dim(), "state does not match Hamiltonian dimension");
  const auto sched = step_schedule(h.size(), formula, k);
  Vector v = psi.amplitudes();
  for (auto it = sched.rbegin(); it != sched.rend(); ++it) v = h.apply_term(it->term, v, it->fraction * t);
  // Each factor is unitary; renormalize away accumulated round-off.
  return StateVector(v.normalized());
}

double pf_expectation(const HamiltonianTerms& h, double t, std::size_t k, ProductFormula formula,
                      const StateVector& psi, const DenseOperator& obs) {
  return expectation(pf_evolve(h, t, k, formula, psi), obs);
}

}  // namespace mpf

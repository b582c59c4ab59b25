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

#include <gtest/gtest.h>

#include <cmath>

#include "mpf/error.hpp"
#include "mpf/resource_estimator.hpp"

namespace {

using mpf::ErrorCode;
using mpf::ProductFormula;

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const mpf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an mpf::Error";
  return ErrorCode::kInternal;
}

std::uint64_t closed_lcu(std::uint64_t k1, std::uint64_t k2, std::uint64_t k3) {
  return 108 * (k1 + k2) + 40 * k3 + 4;
}

TEST(CnotCount, DefaultTable) {
  const mpf::GateCostTable t;
  EXPECT_EQ(t.cnots, (std::array<std::uint64_t, 5>{1, 8, 2, 20, 7}));
  EXPECT_EQ(t[mpf::GateKind::kDoublyControlledRzz], 20u);
}

TEST(CnotCount, LcuVersusClassical) {
  const std::vector<std::uint64_t> k{1, 2, 7};
  EXPECT_EQ(mpf::lcu_cnot_count(k), 608u);
  EXPECT_EQ(mpf::classical_cnot_count(k, 5), 28u);
  EXPECT_EQ(std::lround(608.0 / 28.0), 22);
  const std::vector<std::uint64_t> k123{1, 2, 3};
  EXPECT_EQ(mpf::lcu_cnot_count(k123), 448u);
  EXPECT_EQ(mpf::classical_cnot_count(k123, 5), 12u);
  EXPECT_EQ(mpf::lcu_cnot_count(k, mpf::GateCostTable::zero()), 0u);
}

// Gate-by-gate tally agrees with the closed form for every small exponent triple.
TEST(CnotCount, TallyMatchesClosedForm) {
  for (std::uint64_t k1 = 1; k1 <= 4; ++k1) {
    for (std::uint64_t k2 = k1 + 1; k2 <= 6; ++k2) {
      for (std::uint64_t k3 = k2 + 1; k3 <= 9; ++k3) {
        const std::vector<std::uint64_t> k{k1, k2, k3};
        EXPECT_EQ(mpf::lcu_cnot_count(k), closed_lcu(k1, k2, k3));
      }
    }
  }
}

TEST(CnotCount, RatioGrowsWithShallowBranches) {
  const std::vector<std::uint64_t> a{1, 2, 20};
  const std::vector<std::uint64_t> b{5, 10, 20};
  const double ra = double(mpf::lcu_cnot_count(a)) / double(mpf::classical_cnot_count(a));
  const double rb = double(mpf::lcu_cnot_count(b)) / double(mpf::classical_cnot_count(b));
  EXPECT_LT(ra, rb);
}

TEST(CnotCount, OnlyThreeTermLcu) {
  const std::vector<std::uint64_t> k{1, 2};
  EXPECT_EQ(code_of([&] { mpf::lcu_cnot_count(k); }), ErrorCode::kUnsupported);
  const std::vector<std::uint64_t> bad{2, 1, 3};
  EXPECT_EQ(code_of([&] { mpf::lcu_cnot_count(bad); }), ErrorCode::kInvalidInput);
}

TEST(LambertW, PrincipalBranch) {
  EXPECT_NEAR(mpf::lambert_w0(1.0), 0.567143290409784, 1e-14);
  for (double z : {-0.35, -0.1, 0.0, 0.5, 1.0, 3.0, 10.0, 1e3, 1e8}) {
    const double w = mpf::lambert_w0(z);
    EXPECT_NEAR(w * std::exp(w), z, 1e-12 * std::max(1.0, std::abs(z))) << z;
  }
  EXPECT_NEAR(mpf::lambert_w0(-std::exp(-1.0)), -1.0, 1e-7);
  EXPECT_EQ(code_of([] { mpf::lambert_w0(-1.0); }), ErrorCode::kInvalidInput);
}

double factorial(unsigned n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

TEST(DepthScaling, BruteForceExamples) {
  const auto a = mpf::mpf_depth_scaling({11, 1e-4, 10});
  EXPECT_EQ(a.l, 4u);
  EXPECT_EQ(a.k_deepest, 160u);
  EXPECT_EQ(mpf::mpf_depth_scaling({3, 1e-2, 1}).l, 3u);
  for (double nq = 3; nq <= 11; ++nq) {
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto est = mpf::mpf_depth_scaling({nq, eps, 1.0});
      EXPECT_LT(nq / factorial(2 * est.l + 1), eps);
      if (est.l > 1) EXPECT_GE(nq / factorial(2 * est.l - 1), eps);
      EXPECT_LE(std::abs(static_cast<long>(est.l) - static_cast<long>(est.l_closed_ceil)), 1);
      EXPECT_EQ(est.k_deepest, est.l * est.l);
    }
  }
}

TEST(DepthScaling, Validation) {
  EXPECT_EQ(code_of([] { mpf::mpf_depth_scaling({3, 1.0, 1}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { mpf::mpf_depth_scaling({0.5, 0.1, 1}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { mpf::mpf_depth_scaling({3, 0.1, 0}); }), ErrorCode::kInvalidInput);
}

TEST(Repetitions, CommutingHamiltonianNeedsOneStep) {
  const auto h = mpf::build_ising(3, 0.0, 1.0);
  mpf::RepetitionQuery q;
  q.time = 2.0;
  q.eps_target = 1e-6;
  const auto r = mpf::pf_repetitions_to_accuracy(h, q);
  EXPECT_EQ(r.k, 1u);
  EXPECT_EQ(r.repetitions, h.size());
}

TEST(Repetitions, MinimalAndMonotone) {
  mpf::SpinBosonParams p;
  const auto h = mpf::build_spin_boson(p);
  mpf::RepetitionQuery q;
  q.time = 10.0;
  std::uint64_t prev = 0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    q.eps_target = eps;
    const auto r = mpf::pf_repetitions_to_accuracy(h, q);
    EXPECT_LT(r.error, eps);
    EXPECT_GE(mpf::product_formula_error(h, q, r.k - 1), eps);
    EXPECT_GE(r.repetitions, prev);
    prev = r.repetitions;
  }
}

TEST(Repetitions, SecondOrderIsShallower) {
  const auto h = mpf::build_spin_boson({});
  mpf::RepetitionQuery q;
  q.time = 10.0;
  q.eps_target = 1e-2;
  const auto r1 = mpf::pf_repetitions_to_accuracy(h, q);
  q.formula = ProductFormula(2);
  const auto r2 = mpf::pf_repetitions_to_accuracy(h, q);
  EXPECT_LT(r2.repetitions, r1.repetitions);
}

TEST(Repetitions, ObservableMetricNeedsStateAndBudget) {
  const auto h = mpf::build_spin_boson({});
  mpf::RepetitionQuery q;
  q.metric = mpf::ErrorMetric::kObservable;
  EXPECT_EQ(code_of([&] { mpf::pf_repetitions_to_accuracy(h, q); }), ErrorCode::kInvalidInput);
  mpf::RepetitionQuery tight;
  tight.time = 10.0;
  tight.eps_target = 1e-6;
  tight.max_k = 16;
  EXPECT_EQ(code_of([&] { mpf::pf_repetitions_to_accuracy(h, tight); }), ErrorCode::kBudgetExceeded);
}

TEST(Repetitions, MpfBeatsPlainFirstOrder) {
  const auto h = mpf::build_spin_boson({});
  mpf::RepetitionQuery q;
  q.time = 10.0;
  q.eps_target = 1e-3;
  const auto pf = mpf::pf_repetitions_to_accuracy(h, q);
  const std::vector<mpf::ExponentSequence> cands{mpf::ExponentSequence({1, 2}, ProductFormula(1)),
                                                 mpf::ExponentSequence({1, 2, 6}, ProductFormula(1))};
  const auto mpf_r = mpf::mpf_repetitions_to_accuracy(h, q, cands);
  ASSERT_TRUE(mpf_r.sequence.has_value());
  EXPECT_LT(mpf_r.error, 1e-3);
  EXPECT_LT(mpf_r.repetitions, pf.repetitions);
}

}  // namespace

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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpf/error.hpp"
#include "mpf/noise_lab.hpp"

namespace {

using mpf::ErrorCode;
using mpf::ZnePoint;

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

TEST(Seeds, StreamsAreDeterministicAndDistinct) {
  EXPECT_EQ(mpf::stream_seed(1, 2, 3), mpf::stream_seed(1, 2, 3));
  EXPECT_NE(mpf::stream_seed(1, 2, 3), mpf::stream_seed(1, 3, 2));
  EXPECT_NE(mpf::stream_seed(1, 2), mpf::stream_seed(2, 2));
}

TEST(Shots, EstimatorIsUnbiasedWithBinomialVariance) {
  const double e = 0.4;
  const std::uint64_t shots = 1000;
  const int trials = 4000;
  std::mt19937_64 rng(9);
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double v = mpf::sample_expectation(e, shots, rng);
    sum += v;
    sq += v * v;
  }
  const double mean = sum / trials;
  const double var = sq / trials - mean * mean;
  const double expected_var = (1 - e * e) / shots;
  EXPECT_NEAR(mean, e, 5 * std::sqrt(expected_var / trials));
  EXPECT_NEAR(var / expected_var, 1.0, 0.1);
}

TEST(Shots, DeterministicEdgesAndValidation) {
  EXPECT_EQ(mpf::sample_expectation(1.0, {100, 1}), 1.0);
  EXPECT_EQ(mpf::sample_expectation(-1.0, {100, 1}), -1.0);
  EXPECT_EQ(mpf::sample_expectation(0.3, {50, 7}), mpf::sample_expectation(0.3, {50, 7}));
  EXPECT_EQ(code_of([] { mpf::sample_expectation(1.5, {10, 0}); }), ErrorCode::kInvalidInput);
  EXPECT_EQ(code_of([] { mpf::sample_expectation(0.5, {0, 0}); }), ErrorCode::kInvalidInput);
}

TEST(Perturbation, SignOfWeight) {
  EXPECT_DOUBLE_EQ(mpf::inject_perturbation(0.5, -2.0, 0.1), 0.4);
  EXPECT_DOUBLE_EQ(mpf::inject_perturbation(0.5, 3.0, 0.1), 0.6);
  EXPECT_DOUBLE_EQ(mpf::inject_perturbation(0.5, 0.0, 0.1), 0.6);
}

TEST(Bernoulli, ErrorAndNorm) {
  const std::vector<double> w{1.0};
  const auto r = mpf::bernoulli_combine(0.3, 1000, w, 5);
  EXPECT_DOUBLE_EQ(r.norm1, 1.0);
  EXPECT_NEAR(r.error, std::abs(r.estimate - 0.3), 1e-15);
  const auto demo = mpf::bernoulli_mpf_demo(0.3, 1000, 3, mpf::ProductFormula(2), 5);
  EXPECT_NEAR(demo.norm1, 47.0 / 15.0, 1e-12);
  EXPECT_EQ(code_of([&] { mpf::bernoulli_combine(1.0, 10, w, 0); }), ErrorCode::kInvalidInput);
}

std::vector<ZnePoint> exact_curve(double a, double b, double d, double c0, double c1, int n) {
  std::vector<ZnePoint> pts;
  for (int i = 0; i < n; ++i) {
    const double c = c0 + (c1 - c0) * i / (n - 1);
    pts.push_back({c, a * std::exp(-b * c) + d});
  }
  return pts;
}

TEST(ZneFit, RecoversNoiselessCurves) {
  for (double b : {0.1, 0.25, 0.5, 1.0, 2.0}) {
    for (double d : {0.0, 0.2}) {
      const double a = -0.8 - d;
      const auto curve = mpf::zne_fit(exact_curve(a, b, d, 1.0, 3.0, 20));
      EXPECT_NEAR(curve.extrapolated, a + d, 1e-6) << "b=" << b << " d=" << d;
      EXPECT_NEAR(curve.b, b, 1e-5);
      EXPECT_FALSE(curve.degenerate);
    }
  }
}

TEST(ZneFit, OrderOfPointsDoesNotMatter) {
  auto pts = exact_curve(0.7, 0.4, 0.1, 0.5, 2.5, 8);
  const auto forward = mpf::zne_fit(pts);
  std::reverse(pts.begin(), pts.end());
  const auto backward = mpf::zne_fit(pts);
  EXPECT_EQ(forward.extrapolated, backward.extrapolated);
  EXPECT_TRUE(std::is_sorted(backward.points.begin(), backward.points.end(),
                             [](const ZnePoint& x, const ZnePoint& y) { return x.c < y.c; }));
}

TEST(ZneFit, DegenerateAndTooFewPoints) {
  std::vector<ZnePoint> flat{{1, 0.3}, {2, 0.3}, {3, 0.3}, {4, 0.3}};
  const auto curve = mpf::zne_fit(flat);
  EXPECT_TRUE(curve.degenerate);
  EXPECT_DOUBLE_EQ(curve.extrapolated, 0.3);
  EXPECT_EQ(curve.a, 0.0);
  EXPECT_EQ(curve.b, 0.0);
  std::vector<ZnePoint> three{{1, 0.3}, {2, 0.2}, {3, 0.1}};
  EXPECT_EQ(code_of([&] { mpf::zne_fit(three); }), ErrorCode::kInvalidInput);
  std::vector<ZnePoint> repeated{{1, 0.3}, {1, 0.2}, {2, 0.1}, {2, 0.1}, {3, 0.0}};
  EXPECT_EQ(code_of([&] { mpf::zne_fit(repeated); }), ErrorCode::kInvalidInput);
}

TEST(ZneRoundTrip, ReproducibleForSeed) {
  mpf::ZneExperiment e;
  e.e_ideal = -0.8;
  e.seed = 42;
  const auto a = mpf::zne_round_trip(e);
  const auto b = mpf::zne_round_trip(e);
  EXPECT_EQ(a.extrapolated, b.extrapolated);
  ASSERT_EQ(a.points.size(), 20u);
  EXPECT_DOUBLE_EQ(a.points.front().c, 1.0);
  EXPECT_DOUBLE_EQ(a.points.back().c, 3.0);
}

TEST(Twirl, EveryElementCommutesWithRzz) {
  for (double theta : {0.1, 0.7, 2.5}) {
    for (const auto& c : mpf::twirl_set_check(theta)) {
      EXPECT_TRUE(c.commutes) << c.label;
      EXPECT_LE(c.defect, 1e-12);
    }
  }
  EXPECT_EQ(mpf::twirl_set_labels().size(), 8u);
  EXPECT_FALSE(mpf::check_commutes_with_rzz("XI", 0.7).commutes);
  EXPECT_FALSE(mpf::check_commutes_with_rzz("IY", 0.7).commutes);
}

}  // namespace

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

// Non-algorithmic error sources: shot noise, adversarial perturbations,
// synthetic stretch-factor noise and its exponential zero-noise fit.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mpf/mpf_engine.hpp"

namespace mpf {

/// Derives an independent 64-bit seed for stream (a, b) of a base seed.
/// Every random task draws from its own stream so results do not depend on
/// execution order.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

struct ShotModel {
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
};

/// Binomial shot estimate of a +/-1 observable with mean `e_true`.
double sample_expectation(double e_true, const ShotModel& model);
double sample_expectation(double e_true, std::uint64_t shots, std::mt19937_64& rng);

/// E + sign(a) eps' with sign(0) = +1.
double inject_perturbation(double value, double weight, double eps_prime);

struct BernoulliDemoResult {
  double estimate = 0.0;
  double error = 0.0;  ///< |estimate - p|
  double norm1 = 0.0;
};

/// Each E_j is the mean of `samples` Bernoulli(p) draws (stream j of `seed`),
/// combined with the given weights.
BernoulliDemoResult bernoulli_combine(double p, std::uint64_t samples, std::span<const double> weights,
                                      std::uint64_t seed);

/// Same with the ill-conditioned weights of k_j = j, j = 1..l on `base`.
BernoulliDemoResult bernoulli_mpf_demo(double p, std::uint64_t samples, std::size_t l,
                                       ProductFormula base, std::uint64_t seed);

struct ZnePoint {
  double c = 0.0;
  double y = 0.0;
};

/// y ~ a exp(-b c) + d fitted by least squares with b >= 0.
struct ZneCurve {
  std::vector<ZnePoint> points;  ///< sorted by c
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  double extrapolated = 0.0;  ///< a + d, the c -> 0 limit
  double residual = 0.0;      ///< sum of squared residuals
  bool degenerate = false;
};

inline constexpr std::size_t kZneGridSize = 50;
inline constexpr double kZneGridMin = 1e-3;
inline constexpr double kZneGridMax = 10.0;

/// Grid over b (log-spaced in [1e-3, 10]) with the optimal (a, d) solved in
/// closed form at each b, then Gauss-Newton refinement on b. Needs at least
/// four distinct c values. Constant data yields b = a = 0, d = mean and the
/// degeneracy flag.
ZneCurve zne_fit(std::span<const ZnePoint> points);

/// Shot-noise sample of (E_ideal - d) exp(-b c) + d.
double synth_noisy_expectation(double e_ideal, double c, double b, double d, const ShotModel& model);

struct ZneExperiment {
  double e_ideal = 0.0;
  double b = 0.5;
  double d = 0.0;
  double c_min = 1.0;
  double c_max = 3.0;
  std::size_t points = 20;
  std::uint64_t shots = 12500;
  std::uint64_t seed = 0;
};

/// c values linearly spaced in [c_min, c_max].
std::vector<double> stretch_grid(const ZneExperiment& e);
/// Generates one noisy curve (point i drawn from stream i of the seed) and
/// fits it.
ZneCurve zne_round_trip(const ZneExperiment& e);

struct TwirlCheck {
  std::string label;
  bool commutes = false;
  double defect = 0.0;  ///< max |[U, R_ZZ(theta)]|
};

/// The eight two-qubit Paulis used to twirl R_ZZ.
const std::vector<std::string>& twirl_set_labels();

/// Commutator check against R_ZZ(theta) = exp(-i theta/2 Z(x)Z).
TwirlCheck check_commutes_with_rzz(const std::string& label, double theta);
std::vector<TwirlCheck> twirl_set_check(double theta);

}  // namespace mpf

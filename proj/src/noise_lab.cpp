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

#include "mpf/noise_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/QR>

#include "mpf/error.hpp"

namespace mpf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  return splitmix64(h ^ (b * 0xd1342543de82ef95ULL));
}

double sample_expectation(double e_true, std::uint64_t shots, std::mt19937_64& rng) {
  require(std::isfinite(e_true) && std::abs(e_true) <= 1.0, "expectation of a +/-1 observable must lie in [-1, 1]");
  require(shots >= 1, "shot count must be at least 1");
  const double p = 0.5 * (1.0 + e_true);
  std::uint64_t plus;
  if (p >= 1.0) {
    plus = shots;
  } else if (p <= 0.0) {
    plus = 0;
  } else {
    std::binomial_distribution<std::uint64_t> draw(shots, p);
    plus = draw(rng);
  }
  return 2.0 * static_cast<double>(plus) / static_cast<double>(shots) - 1.0;
}

double sample_expectation(double e_true, const ShotModel& model) {
  std::mt19937_64 rng(model.seed);
  return sample_expectation(e_true, model.shots, rng);
}

double inject_perturbation(double value, double weight, double eps_prime) {
  return value + (weight < 0.0 ? -eps_prime : eps_prime);
}

// ---------------------------------------------------------------------------
// Bernoulli sampling demo

BernoulliDemoResult bernoulli_combine(double p, std::uint64_t samples, std::span<const double> weights,
                                      std::uint64_t seed) {
  require(p > 0.0 && p < 1.0, "Bernoulli probability must lie in (0, 1)");
  require(samples >= 1, "sample count must be at least 1");
  require(!weights.empty(), "at least one weight is required");
  BernoulliDemoResult r;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    std::mt19937_64 rng(stream_seed(seed, j + 1));
    std::binomial_distribution<std::uint64_t> draw(samples, p);
    const double mean = static_cast<double>(draw(rng)) / static_cast<double>(samples);
    r.estimate += weights[j] * mean;
    r.norm1 += std::abs(weights[j]);
  }
  r.error = std::abs(r.estimate - p);
  return r;
}

BernoulliDemoResult bernoulli_mpf_demo(double p, std::uint64_t samples, std::size_t l,
                                       ProductFormula base, std::uint64_t seed) {
  require(l >= 1, "l must be at least 1");
  std::vector<std::uint64_t> k(l);
  std::iota(k.begin(), k.end(), std::uint64_t{1});
  const WeightVector w = solve_weights(ExponentSequence(k, base));
  BernoulliDemoResult r = bernoulli_combine(p, samples, w.values, seed);
  r.norm1 = w.norm1;
  return r;
}

// ---------------------------------------------------------------------------
// Exponential zero-noise fit

namespace {

struct LinearFit {
  double a = 0.0;
  double d = 0.0;
  double ssr = 0.0;
};

// Optimal (a, d) for fixed b, as a centered regression of y on exp(-b c).
LinearFit fit_linear(std::span<const ZnePoint> pts, double b) {
  const double n = static_cast<double>(pts.size());
  double mu = 0.0;
  double my = 0.0;
  for (const auto& p : pts) {
    mu += std::exp(-b * p.c);
    my += p.y;
  }
  mu /= n;
  my /= n;
  double suu = 0.0;
  double suy = 0.0;
  for (const auto& p : pts) {
    const double du = std::exp(-b * p.c) - mu;
    suu += du * du;
    suy += du * (p.y - my);
  }
  LinearFit f;
  f.a = suu > 0.0 ? suy / suu : 0.0;
  f.d = my - f.a * mu;
  for (const auto& p : pts) {
    const double r = f.a * std::exp(-b * p.c) + f.d - p.y;
    f.ssr += r * r;
  }
  return f;
}

double ssr_of(std::span<const ZnePoint> pts, double a, double b, double d) {
  double s = 0.0;
  for (const auto& p : pts) {
    const double r = a * std::exp(-b * p.c) + d - p.y;
    s += r * r;
  }
  return s;
}

}  // namespace

ZneCurve zne_fit(std::span<const ZnePoint> points) {
  require(points.size() >= 4, "exponential fit needs at least four points");
  ZneCurve curve;
  curve.points.assign(points.begin(), points.end());
  for (const auto& p : curve.points) require(std::isfinite(p.c) && std::isfinite(p.y), "fit points must be finite");
  std::sort(curve.points.begin(), curve.points.end(),
            [](const ZnePoint& x, const ZnePoint& y) { return x.c < y.c || (x.c == y.c && x.y < y.y); });
  std::size_t distinct = 1;
  for (std::size_t i = 1; i < curve.points.size(); ++i) distinct += curve.points[i].c != curve.points[i - 1].c;
  require(distinct >= 4, "exponential fit needs at least four distinct stretch factors");

  const std::span<const ZnePoint> pts(curve.points);
  const double n = static_cast<double>(pts.size());
  double mean = 0.0;
  for (const auto& p : pts) mean += p.y;
  mean /= n;
  double spread = 0.0;
  for (const auto& p : pts) spread = std::max(spread, std::abs(p.y - mean));
  if (spread <= 1e-12 * std::max(1.0, std::abs(mean))) {
    curve.d = mean;
    curve.extrapolated = mean;
    curve.residual = ssr_of(pts, 0.0, 0.0, mean);
    curve.degenerate = true;
    return curve;
  }

  // Coarse grid over b.
  double best_b = kZneGridMin;
  LinearFit best = fit_linear(pts, best_b);
  const double ratio = std::log(kZneGridMax / kZneGridMin) / static_cast<double>(kZneGridSize - 1);
  for (std::size_t i = 1; i < kZneGridSize; ++i) {
    const double b = kZneGridMin * std::exp(ratio * static_cast<double>(i));
    const LinearFit f = fit_linear(pts, b);
    if (f.ssr < best.ssr) {
      best = f;
      best_b = b;
    }
  }

  // Damped Gauss-Newton on (a, b, d), keeping b >= 0.
  double a = best.a;
  double b = best_b;
  double d = best.d;
  double ssr = best.ssr;
  double lambda = 1e-6;
  Eigen::MatrixXd jac(pts.size(), 3);
  Eigen::VectorXd res(pts.size());
  for (int iter = 0; iter < 200; ++iter) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double e = std::exp(-b * pts[i].c);
      jac(i, 0) = e;
      jac(i, 1) = -a * pts[i].c * e;
      jac(i, 2) = 1.0;
      res(i) = a * e + d - pts[i].y;
    }
    bool improved = false;
    double step_size = 0.0;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Eigen::MatrixXd aug(pts.size() + 3, 3);
      aug.topRows(pts.size()) = jac;
      aug.bottomRows(3) = std::sqrt(lambda) * Eigen::MatrixXd::Identity(3, 3) *
                          std::max(1.0, jac.colwise().norm().maxCoeff());
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(pts.size() + 3);
      rhs.head(pts.size()) = -res;
      const Eigen::Vector3d step = aug.colPivHouseholderQr().solve(rhs);
      const double nb = std::max(0.0, b + step(1));
      const double na = a + step(0);
      const double nd = d + step(2);
      const double nssr = ssr_of(pts, na, nb, nd);
      if (std::isfinite(nssr) && nssr <= ssr) {
        step_size = std::abs(nb - b) + std::abs(na - a) + std::abs(nd - d);
        improved = nssr < ssr || step_size == 0.0;
        a = na;
        b = nb;
        d = nd;
        ssr = nssr;
        lambda = std::max(lambda * 0.1, 1e-15);
        if (!improved) break;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved || step_size <= 1e-15 * (1.0 + std::abs(a) + std::abs(b) + std::abs(d))) break;
  }

  // Closed-form (a, d) at the refined b.
  const LinearFit final_fit = fit_linear(pts, b);
  if (final_fit.ssr <= ssr) {
    a = final_fit.a;
    d = final_fit.d;
    ssr = final_fit.ssr;
  }
  curve.a = a;
  curve.b = b;
  curve.d = d;
  curve.residual = ssr;
  curve.extrapolated = a + d;
  return curve;
}

double synth_noisy_expectation(double e_ideal, double c, double b, double d, const ShotModel& model) {
  require(std::isfinite(c) && c >= 0.0, "stretch factor must be non-negative");
  require(std::isfinite(b) && b >= 0.0, "decay rate must be non-negative");
  require(std::abs(e_ideal) <= 1.0 && std::abs(d) <= 1.0, "ideal value and asymptote must lie in [-1, 1]");
  const double mean = (e_ideal - d) * std::exp(-b * c) + d;
  return sample_expectation(std::clamp(mean, -1.0, 1.0), model);
}

std::vector<double> stretch_grid(const ZneExperiment& e) {
  require(e.points >= 4, "ZNE needs at least four stretch factors");
  require(e.c_min >= 0.0 && e.c_max > e.c_min, "invalid stretch factor range");
  std::vector<double> c(e.points);
  for (std::size_t i = 0; i < e.points; ++i) {
    c[i] = e.c_min + (e.c_max - e.c_min) * static_cast<double>(i) / static_cast<double>(e.points - 1);
  }
  return c;
}

ZneCurve zne_round_trip(const ZneExperiment& e) {
  const auto grid = stretch_grid(e);
  std::vector<ZnePoint> pts;
  pts.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ShotModel model{e.shots, stream_seed(e.seed, i + 1)};
    pts.push_back({grid[i], synth_noisy_expectation(e.e_ideal, grid[i], e.b, e.d, model)});
  }
  return zne_fit(pts);
}

// ---------------------------------------------------------------------------
// Twirling set

const std::vector<std::string>& twirl_set_labels() {
  static const std::vector<std::string> labels{"II", "XX", "YY", "ZZ", "XY", "YX", "ZI", "IZ"};
  return labels;
}

TwirlCheck check_commutes_with_rzz(const std::string& label, double theta) {
  require(label.size() == 2, "twirl elements are two-qubit Pauli strings");
  const Matrix u = pauli_matrix(PauliString(label)).matrix();
  const Matrix zz = pauli_matrix(PauliString("ZZ")).matrix();
  const Matrix rzz = std::cos(theta / 2) * Matrix::Identity(4, 4) - Complex(0.0, std::sin(theta / 2)) * zz;
  const double defect = (u * rzz - rzz * u).cwiseAbs().maxCoeff();
  return {label, defect <= 1e-12, defect};
}

std::vector<TwirlCheck> twirl_set_check(double theta) {
  std::vector<TwirlCheck> out;
  for (const auto& label : twirl_set_labels()) out.push_back(check_commutes_with_rzz(label, theta));
  return out;
}

}  // namespace mpf

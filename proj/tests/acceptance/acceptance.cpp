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

// Acceptance checks. Prints one PASS/FAIL line per criterion. Criteria named
// with --known-failures are reported as they are but do not fail the run;
// such a criterion passing unexpectedly does.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mpf/experiments.hpp"
#include "mpf/hamiltonians.hpp"
#include "mpf/mpf_engine.hpp"
#include "mpf/noise_lab.hpp"
#include "mpf/propagators.hpp"
#include "mpf/resource_estimator.hpp"

namespace {

using mpf::ExponentSequence;
using mpf::ProductFormula;
using mpf::Rational;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[fail] " << what << "; ";
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// --- 1 ----------------------------------------------------------------------

void table_weights(Outcome& o) {
  struct Row {
    std::vector<std::uint64_t> k;
    std::vector<Rational> a;
    Rational norm1;
  };
  const std::vector<Row> rows{
      {{1, 2}, {Rational(-1), Rational(2)}, Rational(3)},
      {{1, 3}, {Rational(-1, 2), Rational(3, 2)}, Rational(2)},
      {{2, 4}, {Rational(-1), Rational(2)}, Rational(3)},
      {{2, 5}, {Rational(-2, 3), Rational(5, 3)}, Rational(7, 3)},
      {{1, 2, 6}, {Rational(1, 5), Rational(-1), Rational(9, 5)}, Rational(3)},
      {{1, 2, 7}, {Rational(1, 6), Rational(-4, 5), Rational(49, 30)}, Rational(13, 5)},
      {{6, 7}, {Rational(-6), Rational(7)}, Rational(13)},
  };
  for (const auto& row : rows) {
    const ExponentSequence seq(row.k, ProductFormula::lie_trotter());
    const auto w = mpf::solve_weights(seq);
    o.check(w.exact == row.a, seq.to_string() + " weights");
    o.check(w.norm1_exact == row.norm1, seq.to_string() + " norm");
    for (const auto& r : mpf::constraint_residuals(seq, w.exact)) o.check(r == 0, seq.to_string() + " residual");
  }
  o.detail << rows.size() << " sequences exact, residuals zero";
}

// --- 2 ----------------------------------------------------------------------

void ising_figure(Outcome& o) {
  mpf::IsingDemoSettings s;  // 5 spins, J = 0.5, h = 1, t = 0.5, S1, k = 1..10
  s.eps_prime = 1e-3;
  const auto r = mpf::ising_demo(s);
  o.check(std::abs(r.pf_slope + 1.0) <= 0.15, "S1 slope " + fmt(r.pf_slope));
  o.detail << "slope " << fmt(r.pf_slope) << "; ";

  auto pf_error = [&](std::uint64_t k) { return r.pf_rows.at(k - 1).abs_error; };
  auto mpf_error = [&](const std::string& label, double eps) {
    for (const auto& row : r.mpf_rows) {
      if (row.label == label && row.eps_prime == eps) return row;
    }
    throw std::runtime_error("missing row " + label);
  };
  const double pf10 = pf_error(10);
  for (const auto& row : r.mpf_rows) {
    if (row.eps_prime != 0.0 || row.norm1 > mpf::default_threshold(s.base)) continue;
    o.check(row.abs_error < pf10, row.label + " noiseless " + fmt(row.abs_error) + " vs PF k=10 " + fmt(pf10));
  }
  const auto a = mpf_error("[2,4]", 1e-3);
  o.check(a.abs_error < pf_error(8), "[2,4] perturbed " + fmt(a.abs_error) + " vs PF k=8 " + fmt(pf_error(8)));
  const auto b = mpf_error("[6,7]", 1e-3);
  o.check(b.abs_error > pf_error(7), "[6,7] perturbed " + fmt(b.abs_error) + " vs PF k=7 " + fmt(pf_error(7)));
  o.detail << "[2,4]+eps " << fmt(a.abs_error) << " < k8 " << fmt(pf_error(8)) << "; [6,7]+eps "
           << fmt(b.abs_error) << " > k7 " << fmt(pf_error(7));
}

// --- 3 ----------------------------------------------------------------------

void lcu_cost(Outcome& o) {
  const std::vector<std::uint64_t> k{1, 2, 7};
  const auto lcu = mpf::lcu_cnot_count(k);
  const auto classical = mpf::classical_cnot_count(k);
  const double ratio = static_cast<double>(lcu) / static_cast<double>(classical);
  o.check(lcu == 608, "LCU count");
  o.check(classical == 28, "classical count");
  o.check(std::lround(ratio) == 22, "ratio");
  o.detail << lcu << " vs " << classical << ", ratio " << fmt(ratio);
}

// --- 4 ----------------------------------------------------------------------

void norm_growth(Outcome& o) {
  for (unsigned order : {1u, 2u}) {
    double prev = 0.0;
    for (std::uint64_t l = 1; l <= 7; ++l) {
      std::vector<std::uint64_t> k(l);
      for (std::uint64_t j = 0; j < l; ++j) k[j] = j + 1;
      const auto w = mpf::solve_weights(ExponentSequence(k, ProductFormula(order)));
      o.check(w.norm1 > prev, "S" + std::to_string(order) + " not increasing at l=" + std::to_string(l));
      prev = w.norm1;
      if (order == 1 && l == 7) {
        o.check(w.norm1 > 100.0, "l=7 below 100");
        o.check(w.norm1_exact == Rational(9065, 9), "l=7 exact value");
        o.detail << "S1 l=7 norm " << mpf::to_string(w.norm1_exact) << " = " << fmt(w.norm1) << "; ";
      }
    }
    o.detail << "S" << order << " increasing; ";
  }
}

// --- 5 ----------------------------------------------------------------------

void bernoulli(Outcome& o) {
  mpf::BernoulliSettings s;
  s.l_min = 2;
  s.l_max = 6;
  s.base = ProductFormula(2);
  const auto rows = mpf::bernoulli_sweep(s);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const double ratio = r.median_error / r.reference;
    o.detail << "l=" << r.l << " " << fmt(r.median_error) << " (x" << fmt(ratio) << ") ";
    if (i > 0) o.check(r.median_error > rows[i - 1].median_error, "median not increasing at l=" + std::to_string(r.l));
    o.check(ratio <= 3.0 && ratio >= 1.0 / 3.0, "l=" + std::to_string(r.l) + " outside factor 3");
  }
}

// --- 6 ----------------------------------------------------------------------

void scaling(Outcome& o) {
  int worst = 0;
  for (int nq = 3; nq <= 11; ++nq) {
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto e = mpf::mpf_depth_scaling({static_cast<double>(nq), eps, 1.0});
      const int diff = std::abs(static_cast<int>(e.l) - static_cast<int>(e.l_closed_ceil));
      worst = std::max(worst, diff);
      o.check(diff <= 1, "N_q=" + std::to_string(nq) + " eps=" + fmt(eps));
    }
  }
  const auto e = mpf::mpf_depth_scaling({11, 1e-4, 1.0});
  o.check(e.l == 4, "(11, 1e-4) gives l=" + std::to_string(e.l));
  o.detail << "max |brute - closed| = " << worst << ", (11,1e-4) -> l=" << e.l;
}

// --- 7 ----------------------------------------------------------------------

void zne(Outcome& o) {
  for (double b : {0.1, 0.5, 1.0}) {
    std::vector<mpf::ZnePoint> pts;
    for (int i = 0; i < 20; ++i) {
      const double c = 1.0 + 2.0 * i / 19.0;
      pts.push_back({c, -0.8 * std::exp(-b * c)});
    }
    const double err = std::abs(mpf::zne_fit(pts).extrapolated + 0.8);
    o.check(err <= 1e-6, "noiseless b=" + fmt(b) + " error " + fmt(err));
  }
  o.detail << "noiseless ok; p95:";
  mpf::IsingDemoSettings ising;
  ising.eps_prime = 0.0;
  const double e_ideal = mpf::ising_demo(ising).exact;
  for (double b : {0.1, 0.25, 0.5, 0.75, 1.0}) {
    mpf::ZneExperiment e;
    e.e_ideal = e_ideal;
    e.b = b;
    const auto trials = mpf::zne_trials(e, 100);
    std::vector<double> errors;
    for (const auto& t : trials) errors.push_back(t.error);
    const double p95 = mpf::quantile(errors, 0.95);
    o.detail << " b=" << b << " " << fmt(p95);
    o.check(p95 < 5e-3, "b=" + fmt(b) + " p95 " + fmt(p95));
  }
}

// --- 8 ----------------------------------------------------------------------

void propagators(Outcome& o) {
  const auto h = mpf::build_ising(2, 0.5, 1.0);
  const mpf::Matrix id = mpf::Matrix::Identity(h.dim(), h.dim());
  double unitarity = 0.0;
  for (unsigned order : {1u, 2u, 4u, 6u}) {
    for (double t : {0.1, 1.0, 3.0}) {
      const mpf::Matrix u = mpf::product_formula(h, t, ProductFormula(order)).matrix();
      unitarity = std::max(unitarity, (u.adjoint() * u - id).cwiseAbs().maxCoeff());
    }
  }
  o.check(unitarity <= 1e-10, "unitarity " + fmt(unitarity));
  double palindrome = 0.0;
  for (double t : {0.1, 0.7, 2.0}) {
    const mpf::Matrix p = mpf::product_formula(h, t, ProductFormula(2)).matrix() *
                   mpf::product_formula(h, -t, ProductFormula(2)).matrix();
    palindrome = std::max(palindrome, (p - id).cwiseAbs().maxCoeff());
  }
  o.check(palindrome <= 1e-12, "palindrome " + fmt(palindrome));
  o.detail << "unitarity " << fmt(unitarity) << ", palindrome " << fmt(palindrome) << ", slopes";

  const mpf::Matrix exact = mpf::exact_unitary(h, 1.0).matrix();
  const std::vector<std::pair<unsigned, double>> cases{{1, -1.0}, {2, -2.0}, {4, -4.0}};
  for (const auto& [order, want] : cases) {
    std::vector<double> ks;
    std::vector<double> errs;
    const std::vector<std::uint64_t> grid =
        order == 4 ? std::vector<std::uint64_t>{2, 4, 8, 16} : std::vector<std::uint64_t>{4, 8, 16, 32, 64};
    for (auto k : grid) {
      ks.push_back(static_cast<double>(k));
      errs.push_back(mpf::spectral_norm(mpf::pf_steps(h, 1.0, k, ProductFormula(order)).matrix() - exact));
    }
    const double slope = mpf::loglog_slope(ks, errs);
    o.detail << " S" << order << " " << fmt(slope);
    o.check(std::abs(slope - want) <= 0.15, "S" + std::to_string(order) + " slope " + fmt(slope));
  }
}

// --- 9 ----------------------------------------------------------------------

void cross_terms(Outcome& o) {
  const auto h = mpf::build_ising(2, 0.5, 1.0);
  const double t = 1.0;
  const auto psi = mpf::StateVector::plus_i(2);
  const auto obs = mpf::z_observable(2, 0);
  const mpf::Matrix exact_op = mpf::exact_unitary(h, t).matrix();
  const double exact_value = mpf::exact_expectation(h, t, psi, obs);
  const ProductFormula base(2);
  const auto w = mpf::solve_weights(ExponentSequence({1, 2}, base));

  std::vector<double> scales;
  std::vector<double> obs_err;
  std::vector<double> op_err;
  for (std::uint64_t s : {2, 4, 8, 16}) {
    const std::vector<std::uint64_t> k{s, 2 * s};
    mpf::Matrix combo = mpf::Matrix::Zero(h.dim(), h.dim());
    double value = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      combo += w.values[j] * mpf::pf_steps(h, t, k[j], base).matrix();
      value += w.values[j] * mpf::pf_expectation(h, t, k[j], base, psi, obs);
    }
    scales.push_back(static_cast<double>(s));
    op_err.push_back(mpf::spectral_norm(combo - exact_op));
    obs_err.push_back(std::abs(value - exact_value));
  }
  const double a = mpf::loglog_slope(scales, obs_err);
  const double b = mpf::loglog_slope(scales, op_err);
  o.check(std::abs(a - b) <= 0.3, "slopes differ");
  o.detail << "observable slope " << fmt(a) << ", operator slope " << fmt(b);
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

std::set<int> parse_ids(const std::string& text) {
  std::set<int> out;
  if (text.empty()) return out;
  for (auto v : mpf::parse_uint_list(text)) out.insert(static_cast<int>(v));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpf-lab acceptance checks"};
  std::string only;
  std::string known;
  app.add_option("--criterion", only, "comma-separated criteria to run (default: all)");
  app.add_option("--known-failures", known, "criteria expected to fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "exact weights for the reference sequences", 1, table_weights},
      {2, "Ising magnetization: PF versus MPF", 10, ising_figure},
      {3, "LCU versus classical CNOT count", 1, lcu_cost},
      {4, "condition number growth for k_j = j", 1, norm_growth},
      {5, "Bernoulli shot-noise amplification", 30, bernoulli},
      {6, "depth scaling closed form", 1, scaling},
      {7, "zero-noise extrapolation round trip", 60, zne},
      {8, "propagator invariants and orders", 10, propagators},
      {9, "observable versus operator MPF error order", 10, cross_terms},
  };

  std::set<int> selected;
  std::set<int> expected_fail;
  try {
    selected = parse_ids(only);
    expected_fail = parse_ids(known);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  int unexpected = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < c.budget_s, "runtime over " + fmt(c.budget_s) + " s");
    const bool xfail = expected_fail.count(c.id) != 0;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << fmt(secs)
              << " s)" << (xfail ? (o.pass ? " [unexpected pass]" : " [known failure]") : "") << "\n    "
              << o.detail.str() << "\n";
    if (o.pass == xfail) ++unexpected;
  }
  std::cout.flush();
  return unexpected == 0 ? 0 : 1;
}

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

#include "mpf/resource_estimator.hpp"

#include <cmath>
#include <limits>

#include "mpf/error.hpp"

namespace mpf {

const char* gate_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::kRzz: return "R_ZZ";
    case GateKind::kControlledRzz: return "1-controlled R_ZZ";
    case GateKind::kControlledSingleQubit: return "1-controlled single-qubit U";
    case GateKind::kDoublyControlledRzz: return "2-controlled R_ZZ";
    case GateKind::kDoublyControlledRx: return "2-controlled R_X";
  }
  return "?";
}

namespace {

void check_lcu_shape(std::span<const std::uint64_t> k, std::size_t n_spins) {
  if (k.size() != 3) {
    fail(ErrorCode::kUnsupported, "LCU gate accounting is only derived for l = 3, got l = " +
                                      std::to_string(k.size()));
  }
  require(n_spins >= 2, "Ising chain needs at least two spins");
  (void)ExponentSequence({k.begin(), k.end()}, ProductFormula::lie_trotter());
}

std::size_t idx(GateKind kind) { return static_cast<std::size_t>(kind); }

}  // namespace

GateTally lcu_gate_tally(std::span<const std::uint64_t> k, std::size_t n_spins) {
  check_lcu_shape(k, n_spins);
  const std::uint64_t layers = n_spins - 1;
  GateTally t{};
  t[idx(GateKind::kControlledRzz)] = layers * k[2];
  t[idx(GateKind::kControlledSingleQubit)] = layers * k[2] + 2;
  t[idx(GateKind::kDoublyControlledRzz)] = layers * (k[0] + k[1]);
  t[idx(GateKind::kDoublyControlledRx)] = layers * (k[0] + k[1]);
  return t;
}

GateTally classical_gate_tally(std::span<const std::uint64_t> k, std::size_t n_spins) {
  require(!k.empty(), "exponent sequence must not be empty");
  require(n_spins >= 2, "Ising chain needs at least two spins");
  (void)ExponentSequence({k.begin(), k.end()}, ProductFormula::lie_trotter());
  GateTally t{};
  t[idx(GateKind::kRzz)] = (n_spins - 1) * k.back();
  return t;
}

std::uint64_t cnot_total(const GateTally& tally, const GateCostTable& costs) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < kGateKinds; ++i) total += tally[i] * costs.cnots[i];
  return total;
}

std::uint64_t lcu_cnot_count(std::span<const std::uint64_t> k, const GateCostTable& costs,
                             std::size_t n_spins) {
  return cnot_total(lcu_gate_tally(k, n_spins), costs);
}

std::uint64_t classical_cnot_count(std::span<const std::uint64_t> k, std::size_t n_spins) {
  return cnot_total(classical_gate_tally(k, n_spins), GateCostTable{});
}

// ---------------------------------------------------------------------------

double lambert_w0(double z) {
  const double branch = -std::exp(-1.0);
  require(std::isfinite(z) && z >= branch, "Lambert W0 is defined for z >= -1/e");
  if (z == 0.0) return 0.0;
  if (z == branch) return -1.0;
  double w;
  if (z < 1.0) {
    // Series around the branch point for z near -1/e, otherwise log1p.
    const double p = std::sqrt(2.0 * (std::exp(1.0) * z + 1.0));
    w = z < -0.25 ? -1.0 + p - p * p / 3.0 : std::log1p(z);
  } else {
    const double lz = std::log(z);
    w = lz - (lz > 1.0 ? std::log(lz) : 0.0);
  }
  // Halley iterations on f(w) = w e^w - z.
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

ScalingEstimate mpf_depth_scaling(const ScalingQuery& q) {
  require(std::isfinite(q.n_qubits) && q.n_qubits >= 1.0, "N_q must be at least 1");
  require(std::isfinite(q.eps_target) && q.eps_target > 0.0 && q.eps_target < 1.0,
          "target accuracy must lie in (0, 1)");
  require(std::isfinite(q.time) && q.time > 0.0, "time must be positive");

  const double y = q.n_qubits / q.eps_target;
  ScalingEstimate est;

  // Smallest l with (2l+1)! > y.
  double factorial = 6.0;  // 3!
  std::size_t l = 1;
  while (!(factorial > y)) {
    ++l;
    factorial *= static_cast<double>(2 * l) * static_cast<double>(2 * l + 1);
    if (!std::isfinite(factorial)) fail(ErrorCode::kNumerical, "factorial overflow in depth scaling");
  }
  est.l = l;

  const double ln_y = std::log(y);
  const double x = ln_y / lambert_w0(ln_y / std::exp(1.0));
  est.l_closed_form = 0.5 * (x - 1.0);
  est.l_closed_ceil = static_cast<std::size_t>(std::max(1.0, std::ceil(est.l_closed_form - 1e-12)));

  est.alpha = std::max(1.0, q.time);
  est.k_deepest = static_cast<std::uint64_t>(std::ceil(est.alpha * static_cast<double>(l * l) - 1e-9));
  return est;
}

// ---------------------------------------------------------------------------

ErrorMetric parse_metric(const std::string& text) {
  if (text == "operator-norm" || text == "operator") return ErrorMetric::kOperatorNorm;
  if (text == "observable") return ErrorMetric::kObservable;
  fail(ErrorCode::kInvalidInput, "unknown error metric '" + text + "'");
}

std::string to_string(ErrorMetric metric) {
  return metric == ErrorMetric::kOperatorNorm ? "operator-norm" : "observable";
}

namespace {

void check_query(const HamiltonianTerms& h, const RepetitionQuery& q) {
  require(std::isfinite(q.time) && q.time > 0.0, "time must be positive");
  require(q.eps_target > 0.0, "target accuracy must be positive");
  require(q.max_k >= 1, "max_k must be at least 1");
  if (q.metric == ErrorMetric::kObservable) {
    require(q.initial_state.has_value() && q.observable.has_value(),
            "observable metric needs an initial state and an observable");
    require(q.initial_state->dim() == h.dim() && q.observable->dim() == h.dim(),
            "state or observable does not match the Hamiltonian");
  }
}

}  // namespace

double product_formula_error(const HamiltonianTerms& h, const RepetitionQuery& q, std::uint64_t k) {
  if (q.metric == ErrorMetric::kOperatorNorm) {
    const Matrix diff = pf_steps(h, q.time, k, q.formula).matrix() - exact_unitary(h, q.time).matrix();
    return spectral_norm(diff);
  }
  const double approx = pf_expectation(h, q.time, k, q.formula, *q.initial_state, *q.observable);
  const double exact = exact_expectation(h, q.time, *q.initial_state, *q.observable);
  return std::abs(approx - exact);
}

RepetitionResult pf_repetitions_to_accuracy(const HamiltonianTerms& h, const RepetitionQuery& q) {
  check_query(h, q);
  auto err = [&](std::uint64_t k) { return product_formula_error(h, q, k); };
  auto finish = [&](std::uint64_t k, double e, bool scan) {
    return RepetitionResult{k, repetition_count(h.size(), q.formula, k), e, scan};
  };
  auto linear_scan = [&]() {
    for (std::uint64_t k = 1; k <= q.max_k; ++k) {
      const double e = err(k);
      if (e < q.eps_target) return finish(k, e, true);
    }
    fail(ErrorCode::kBudgetExceeded, "no k <= " + std::to_string(q.max_k) + " reaches the target accuracy");
  };

  std::uint64_t k = 1;
  double e = err(k);
  double prev = std::numeric_limits<double>::infinity();
  while (!(e < q.eps_target)) {
    if (!(e < prev) && k > 1) return linear_scan();
    if (k > q.max_k / 2) {
      fail(ErrorCode::kBudgetExceeded, "no k <= " + std::to_string(q.max_k) + " reaches the target accuracy");
    }
    prev = e;
    k *= 2;
    e = err(k);
  }
  if (k == 1) return finish(1, e, false);

  // err(lo) >= eps > err(hi)
  std::uint64_t lo = k / 2;
  std::uint64_t hi = k;
  double e_hi = e;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    const double e_mid = err(mid);
    if (e_mid < q.eps_target) {
      hi = mid;
      e_hi = e_mid;
    } else {
      lo = mid;
    }
  }
  return finish(hi, e_hi, false);
}

MpfRepetitionResult mpf_repetitions_to_accuracy(const HamiltonianTerms& h, const RepetitionQuery& q,
                                                std::span<const ExponentSequence> candidates,
                                                std::uint64_t max_scale) {
  check_query(h, q);
  require(max_scale >= 1, "max_scale must be at least 1");

  std::optional<Matrix> exact_op;
  double exact_value = 0.0;
  if (q.metric == ErrorMetric::kOperatorNorm) {
    exact_op = exact_unitary(h, q.time).matrix();
  } else {
    exact_value = exact_expectation(h, q.time, *q.initial_state, *q.observable);
  }

  MpfRepetitionResult best;
  for (const auto& cand : candidates) {
    require(cand.base() == q.formula, "candidate sequence uses a different base formula");
    const WeightVector w = solve_weights(cand);
    for (std::uint64_t s = 1; s <= max_scale; ++s) {
      std::vector<std::uint64_t> ks;
      for (auto kj : cand.k()) ks.push_back(kj * s);
      if (static_cast<double>(ks.front()) < q.time) continue;
      const std::uint64_t reps = repetition_count(h.size(), q.formula, ks.back());
      if (best.sequence && reps > best.repetitions) break;
      double error;
      if (exact_op) {
        Matrix combo = Matrix::Zero(h.dim(), h.dim());
        for (std::size_t j = 0; j < ks.size(); ++j) {
          combo += w.values[j] * pf_steps(h, q.time, ks[j], q.formula).matrix();
        }
        error = spectral_norm(combo - *exact_op);
      } else {
        double combined = 0.0;
        for (std::size_t j = 0; j < ks.size(); ++j) {
          combined += w.values[j] * pf_expectation(h, q.time, ks[j], q.formula, *q.initial_state, *q.observable);
        }
        error = std::abs(combined - exact_value);
      }
      if (error < q.eps_target) {
        const bool better = !best.sequence || reps < best.repetitions ||
                            (reps == best.repetitions && w.norm1 < best.norm1);
        if (better) best = {ExponentSequence(ks, cand.base(), cand.symmetric()), reps, error, w.norm1};
        break;
      }
    }
  }
  return best;
}

}  // namespace mpf

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

#include "mpf/mpf_lab.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "mpf/error.hpp"
#include "mpf/experiments.hpp"
#include "mpf/hamiltonians.hpp"
#include "mpf/mpf_engine.hpp"
#include "mpf/noise_lab.hpp"
#include "mpf/propagators.hpp"
#include "mpf/resource_estimator.hpp"

struct mpf_weights {
  mpf::ExponentSequence sequence;
  mpf::WeightVector weights;
  std::vector<std::string> exact;
  std::string json;
};

struct mpf_search_result {
  mpf::SearchResult result;
};

struct mpf_hamiltonian {
  mpf::HamiltonianTerms terms;
};

struct mpf_report {
  std::string csv;
  std::string json;
  std::string primary;
};

namespace {

thread_local std::string g_last_error;

mpf_status to_status(mpf::ErrorCode code) {
  switch (code) {
    case mpf::ErrorCode::kInvalidInput: return MPF_ERR_INVALID_INPUT;
    case mpf::ErrorCode::kCapacity: return MPF_ERR_CAPACITY;
    case mpf::ErrorCode::kNumerical: return MPF_ERR_NUMERICAL;
    case mpf::ErrorCode::kUnsupported: return MPF_ERR_UNSUPPORTED;
    case mpf::ErrorCode::kBudgetExceeded: return MPF_ERR_BUDGET;
    case mpf::ErrorCode::kInternal: return MPF_ERR_INTERNAL;
  }
  return MPF_ERR_INTERNAL;
}

template <class Fn>
mpf_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MPF_OK;
  } catch (const mpf::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MPF_ERR_CAPACITY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MPF_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return MPF_ERR_INTERNAL;
  }
}

mpf_status null_error(const char* what) {
  g_last_error = std::string("null pointer: ") + what;
  return MPF_ERR_NULL_POINTER;
}

#define MPF_REQUIRE_PTR(p) \
  if ((p) == nullptr) return null_error(#p)

std::string str_or(const char* s, const char* def) { return s != nullptr ? std::string(s) : std::string(def); }

std::vector<std::uint64_t> to_vector(const uint64_t* k, size_t l) {
  return std::vector<std::uint64_t>(k, k + l);
}

mpf::DenseOperator first_factor_z(std::size_t dim) {
  std::vector<double> diag(dim);
  for (std::size_t i = 0; i < dim; ++i) diag[i] = i < dim / 2 ? 1.0 : -1.0;
  return mpf::DenseOperator::diagonal(diag);
}

mpf::StateVector named_state(const mpf::HamiltonianTerms& h, const std::string& name) {
  if (name == "zeros") return mpf::StateVector::basis(h.dim(), 0);
  if (!h.num_qubits()) mpf::fail(mpf::ErrorCode::kInvalidInput, "state '" + name + "' needs a qubit model");
  return mpf::initial_state(name, *h.num_qubits());
}

}  // namespace

extern "C" {

const char* mpf_version(void) { return mpf::kVersion; }

const char* mpf_status_name(mpf_status status) {
  switch (status) {
    case MPF_OK: return "ok";
    case MPF_ERR_INVALID_INPUT: return "invalid-input";
    case MPF_ERR_CAPACITY: return "capacity";
    case MPF_ERR_NUMERICAL: return "numerical";
    case MPF_ERR_UNSUPPORTED: return "unsupported";
    case MPF_ERR_BUDGET: return "budget-exceeded";
    case MPF_ERR_INTERNAL: return "internal";
    case MPF_ERR_NULL_POINTER: return "null-pointer";
  }
  return "unknown";
}

const char* mpf_last_error(void) { return g_last_error.c_str(); }

// ---- weights

mpf_status mpf_weights_solve(const uint64_t* k, size_t l, const char* base, int symmetric, mpf_weights** out) {
  MPF_REQUIRE_PTR(out);
  *out = nullptr;
  if (l > 0) MPF_REQUIRE_PTR(k);
  return guarded([&] {
    std::optional<bool> sym;
    if (symmetric == 0 || symmetric == 1) {
      sym = symmetric == 1;
    } else if (symmetric != -1) {
      mpf::fail(mpf::ErrorCode::kInvalidInput, "symmetric must be -1, 0 or 1");
    }
    mpf::ExponentSequence seq(to_vector(k, l), mpf::ProductFormula::parse(str_or(base, "s1")), sym);
    mpf::WeightVector w = mpf::solve_weights(seq);
    std::vector<std::string> exact;
    for (const auto& a : w.exact) exact.push_back(mpf::to_string(a));
    std::string json = mpf::to_json(seq, w).dump();
    *out = new mpf_weights{std::move(seq), std::move(w), std::move(exact), std::move(json)};
  });
}

size_t mpf_weights_size(const mpf_weights* w) { return w != nullptr ? w->weights.values.size() : 0; }

mpf_status mpf_weights_value(const mpf_weights* w, size_t j, double* out) {
  MPF_REQUIRE_PTR(w);
  MPF_REQUIRE_PTR(out);
  return guarded([&] {
    mpf::require(j < w->weights.values.size(), "weight index out of range");
    *out = w->weights.values[j];
  });
}

const char* mpf_weights_exact(const mpf_weights* w, size_t j) {
  if (w == nullptr || j >= w->exact.size()) return nullptr;
  return w->exact[j].c_str();
}

mpf_status mpf_weights_norm1(const mpf_weights* w, double* out) {
  MPF_REQUIRE_PTR(w);
  MPF_REQUIRE_PTR(out);
  *out = w->weights.norm1;
  return MPF_OK;
}

const char* mpf_weights_json(const mpf_weights* w) { return w != nullptr ? w->json.c_str() : nullptr; }

void mpf_weights_free(mpf_weights* w) { delete w; }

// ---- search

mpf_status mpf_search(size_t l, const char* base, uint64_t k_min, uint64_t k_max, double threshold,
                      const char* objective, size_t threads, mpf_search_result** out) {
  MPF_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] {
    mpf::SearchQuery q;
    q.l = l;
    q.base = mpf::ProductFormula::parse(str_or(base, "s1"));
    q.k_min = k_min;
    q.k_max = k_max;
    q.threshold = threshold > 0.0 ? threshold : mpf::default_threshold(q.base);
    q.objective = mpf::parse_objective(str_or(objective, "min-norm1"));
    q.threads = threads;
    *out = new mpf_search_result{mpf::search_sequences(q)};
  });
}

size_t mpf_search_count(const mpf_search_result* r) { return r != nullptr ? r->result.accepted.size() : 0; }

size_t mpf_search_examined(const mpf_search_result* r) { return r != nullptr ? r->result.examined : 0; }

mpf_status mpf_search_sequence(const mpf_search_result* r, size_t rank, uint64_t* k, size_t capacity, size_t* l) {
  MPF_REQUIRE_PTR(r);
  MPF_REQUIRE_PTR(l);
  return guarded([&] {
    mpf::require(rank < r->result.accepted.size(), "rank out of range");
    const auto& seq = r->result.accepted[rank].sequence.k();
    *l = seq.size();
    if (capacity < seq.size()) mpf::fail(mpf::ErrorCode::kCapacity, "output buffer too small for the sequence");
    if (k == nullptr) mpf::fail(mpf::ErrorCode::kInvalidInput, "null output buffer");
    std::copy(seq.begin(), seq.end(), k);
  });
}

mpf_status mpf_search_norm1(const mpf_search_result* r, size_t rank, double* out) {
  MPF_REQUIRE_PTR(r);
  MPF_REQUIRE_PTR(out);
  return guarded([&] {
    mpf::require(rank < r->result.accepted.size(), "rank out of range");
    *out = r->result.accepted[rank].weights.norm1;
  });
}

const char* mpf_search_diagnostic(const mpf_search_result* r) {
  return r != nullptr ? r->result.diagnostic.c_str() : nullptr;
}

void mpf_search_free(mpf_search_result* r) { delete r; }

// ---- Hamiltonians

mpf_status mpf_hamiltonian_ising(size_t n_spins, double coupling, double field, mpf_hamiltonian** out) {
  MPF_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] { *out = new mpf_hamiltonian{mpf::build_ising(n_spins, coupling, field)}; });
}

mpf_status mpf_hamiltonian_spin_boson(size_t modes, size_t n_max, double omega, double omega_s, double delta,
                                      double coupling, mpf_hamiltonian** out) {
  MPF_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] {
    mpf::SpinBosonParams p;
    p.modes = modes;
    p.n_max = n_max;
    p.omega = omega;
    p.omega_s = omega_s;
    p.delta = delta;
    p.coupling = coupling;
    *out = new mpf_hamiltonian{mpf::build_spin_boson(p)};
  });
}

size_t mpf_hamiltonian_dim(const mpf_hamiltonian* h) { return h != nullptr ? h->terms.dim() : 0; }

size_t mpf_hamiltonian_terms(const mpf_hamiltonian* h) { return h != nullptr ? h->terms.size() : 0; }

void mpf_hamiltonian_free(mpf_hamiltonian* h) { delete h; }

mpf_status mpf_z0_expectation(const mpf_hamiltonian* h, double t, uint64_t k, const char* formula, const char* state,
                              double* out) {
  MPF_REQUIRE_PTR(h);
  MPF_REQUIRE_PTR(out);
  return guarded([&] {
    const auto& terms = h->terms;
    const mpf::StateVector psi = named_state(terms, str_or(state, "zeros"));
    const mpf::DenseOperator obs = first_factor_z(terms.dim());
    if (k == 0) {
      *out = mpf::exact_expectation(terms, t, psi, obs);
    } else {
      *out = mpf::pf_expectation(terms, t, k, mpf::ProductFormula::parse(str_or(formula, "s1")), psi, obs);
    }
  });
}

mpf_status mpf_pf_operator_error(const mpf_hamiltonian* h, double t, uint64_t k, const char* formula, double* out) {
  MPF_REQUIRE_PTR(h);
  MPF_REQUIRE_PTR(out);
  return guarded([&] {
    mpf::RepetitionQuery q;
    q.time = t;
    q.formula = mpf::ProductFormula::parse(str_or(formula, "s1"));
    mpf::require(k >= 1, "k must be at least 1");
    *out = mpf::product_formula_error(h->terms, q, k);
  });
}

mpf_status mpf_pf_repetitions(const mpf_hamiltonian* h, double t, const char* formula, double eps,
                              const char* metric, uint64_t* k, uint64_t* repetitions) {
  MPF_REQUIRE_PTR(h);
  MPF_REQUIRE_PTR(k);
  MPF_REQUIRE_PTR(repetitions);
  return guarded([&] {
    mpf::RepetitionQuery q;
    q.time = t;
    q.formula = mpf::ProductFormula::parse(str_or(formula, "s1"));
    q.eps_target = eps;
    q.metric = mpf::parse_metric(str_or(metric, "operator-norm"));
    if (q.metric == mpf::ErrorMetric::kObservable) {
      q.initial_state = mpf::StateVector::basis(h->terms.dim(), 0);
      q.observable = first_factor_z(h->terms.dim());
    }
    const mpf::RepetitionResult r = mpf::pf_repetitions_to_accuracy(h->terms, q);
    *k = r.k;
    *repetitions = r.repetitions;
  });
}

// ---- resources and noise

mpf_status mpf_lcu_cnot_count(const uint64_t* k, size_t l, size_t n_spins, uint64_t* out) {
  MPF_REQUIRE_PTR(out);
  if (l > 0) MPF_REQUIRE_PTR(k);
  return guarded([&] { *out = mpf::lcu_cnot_count(to_vector(k, l), mpf::GateCostTable{}, n_spins); });
}

mpf_status mpf_classical_cnot_count(const uint64_t* k, size_t l, size_t n_spins, uint64_t* out) {
  MPF_REQUIRE_PTR(out);
  if (l > 0) MPF_REQUIRE_PTR(k);
  return guarded([&] { *out = mpf::classical_cnot_count(to_vector(k, l), n_spins); });
}

mpf_status mpf_depth_scaling(double n_qubits, double eps, double t, size_t* l, double* l_closed_form,
                             uint64_t* k_deepest) {
  return guarded([&] {
    const mpf::ScalingEstimate est = mpf::mpf_depth_scaling({n_qubits, eps, t});
    if (l) *l = est.l;
    if (l_closed_form) *l_closed_form = est.l_closed_form;
    if (k_deepest) *k_deepest = est.k_deepest;
  });
}

mpf_status mpf_zne_fit(const double* c, const double* y, size_t n, double* a, double* b, double* d,
                       double* extrapolated) {
  MPF_REQUIRE_PTR(c);
  MPF_REQUIRE_PTR(y);
  return guarded([&] {
    std::vector<mpf::ZnePoint> pts;
    for (size_t i = 0; i < n; ++i) pts.push_back({c[i], y[i]});
    const mpf::ZneCurve curve = mpf::zne_fit(pts);
    if (a) *a = curve.a;
    if (b) *b = curve.b;
    if (d) *d = curve.d;
    if (extrapolated) *extrapolated = curve.extrapolated;
  });
}

// ---- experiments

mpf_status mpf_run_experiment(const char* name, const char* config, const char* overrides, mpf_report** out) {
  MPF_REQUIRE_PTR(name);
  MPF_REQUIRE_PTR(out);
  *out = nullptr;
  return guarded([&] {
    mpf::Config cfg = mpf::Config::parse(config != nullptr ? config : "");
    if (overrides != nullptr) {
      const mpf::Config extra = mpf::Config::parse(overrides);
      for (const auto& [key, value] : extra.entries()) cfg.set(key, value);
    }
    const mpf::Report report = mpf::run_experiment(name, cfg);
    *out = new mpf_report{report.csv(), report.json().dump(2) + "\n", report.primary()};
  });
}

const char* mpf_report_csv(const mpf_report* r) { return r != nullptr ? r->csv.c_str() : nullptr; }

const char* mpf_report_json(const mpf_report* r) { return r != nullptr ? r->json.c_str() : nullptr; }

const char* mpf_report_primary(const mpf_report* r) { return r != nullptr ? r->primary.c_str() : nullptr; }

void mpf_report_free(mpf_report* r) { delete r; }

}  // extern "C"

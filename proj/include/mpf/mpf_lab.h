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

/* C interface to mpf-lab. All objects are opaque handles released with the
 * matching *_free function. Every call returns an mpf_status; on failure
 * mpf_last_error() describes the problem for the calling thread. Strings
 * returned by accessors are owned by the handle and stay valid until it is
 * freed. */

#ifndef MPF_LAB_H_
#define MPF_LAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MPF_API __declspec(dllexport)
#else
#define MPF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mpf_status {
  MPF_OK = 0,
  MPF_ERR_INVALID_INPUT = 1,
  MPF_ERR_CAPACITY = 2,
  MPF_ERR_NUMERICAL = 3,
  MPF_ERR_UNSUPPORTED = 4,
  MPF_ERR_BUDGET = 5,
  MPF_ERR_INTERNAL = 6,
  MPF_ERR_NULL_POINTER = 7
} mpf_status;

MPF_API const char* mpf_version(void);
MPF_API const char* mpf_status_name(mpf_status status);
/* Message of the last failed call on this thread; "" if none. */
MPF_API const char* mpf_last_error(void);

/* ---- extrapolation weights ------------------------------------------- */

typedef struct mpf_weights mpf_weights;

/* base: "s1", "s2", "s4", ...; symmetric: -1 for the base default, 0 or 1. */
MPF_API mpf_status mpf_weights_solve(const uint64_t* k, size_t l, const char* base, int symmetric,
                                     mpf_weights** out);
MPF_API size_t mpf_weights_size(const mpf_weights* w);
MPF_API mpf_status mpf_weights_value(const mpf_weights* w, size_t j, double* out);
/* Exact weight as "p/q"; NULL when j is out of range. */
MPF_API const char* mpf_weights_exact(const mpf_weights* w, size_t j);
MPF_API mpf_status mpf_weights_norm1(const mpf_weights* w, double* out);
MPF_API const char* mpf_weights_json(const mpf_weights* w);
MPF_API void mpf_weights_free(mpf_weights* w);

/* ---- sequence search -------------------------------------------------- */

typedef struct mpf_search_result mpf_search_result;

/* threshold <= 0 selects the base default; objective "min-norm1" or
 * "min-depth"; threads 0 uses every core. */
MPF_API mpf_status mpf_search(size_t l, const char* base, uint64_t k_min, uint64_t k_max, double threshold,
                              const char* objective, size_t threads, mpf_search_result** out);
MPF_API size_t mpf_search_count(const mpf_search_result* r);
MPF_API size_t mpf_search_examined(const mpf_search_result* r);
/* Copies sequence `rank` (0-based) into k[0..capacity); *l receives its length. */
MPF_API mpf_status mpf_search_sequence(const mpf_search_result* r, size_t rank, uint64_t* k, size_t capacity,
                                       size_t* l);
MPF_API mpf_status mpf_search_norm1(const mpf_search_result* r, size_t rank, double* out);
MPF_API const char* mpf_search_diagnostic(const mpf_search_result* r);
MPF_API void mpf_search_free(mpf_search_result* r);

/* ---- Hamiltonians and propagation ------------------------------------ */

typedef struct mpf_hamiltonian mpf_hamiltonian;

MPF_API mpf_status mpf_hamiltonian_ising(size_t n_spins, double coupling, double field, mpf_hamiltonian** out);
MPF_API mpf_status mpf_hamiltonian_spin_boson(size_t modes, size_t n_max, double omega, double omega_s,
                                              double delta, double coupling, mpf_hamiltonian** out);
MPF_API size_t mpf_hamiltonian_dim(const mpf_hamiltonian* h);
MPF_API size_t mpf_hamiltonian_terms(const mpf_hamiltonian* h);
MPF_API void mpf_hamiltonian_free(mpf_hamiltonian* h);

/* <Z> on the first qubit (or the spin) after evolving for time t. k = 0
 * gives the exact value, otherwise [S(t/k)]^k with the given formula.
 * state: "zeros" or "plus_i" (qubit models only). */
MPF_API mpf_status mpf_z0_expectation(const mpf_hamiltonian* h, double t, uint64_t k, const char* formula,
                                      const char* state, double* out);
/* Spectral-norm distance between [S(t/k)]^k and exp(-iHt). */
MPF_API mpf_status mpf_pf_operator_error(const mpf_hamiltonian* h, double t, uint64_t k, const char* formula,
                                         double* out);
/* Smallest k reaching eps under metric "operator-norm" or "observable"
 * (Z on the first factor, initial basis state 0). */
MPF_API mpf_status mpf_pf_repetitions(const mpf_hamiltonian* h, double t, const char* formula, double eps,
                                      const char* metric, uint64_t* k, uint64_t* repetitions);

/* ---- resources and noise ---------------------------------------------- */

MPF_API mpf_status mpf_lcu_cnot_count(const uint64_t* k, size_t l, size_t n_spins, uint64_t* out);
MPF_API mpf_status mpf_classical_cnot_count(const uint64_t* k, size_t l, size_t n_spins, uint64_t* out);
MPF_API mpf_status mpf_depth_scaling(double n_qubits, double eps, double t, size_t* l, double* l_closed_form,
                                     uint64_t* k_deepest);
/* Fits y = a exp(-b c) + d; any output pointer may be NULL. */
MPF_API mpf_status mpf_zne_fit(const double* c, const double* y, size_t n, double* a, double* b, double* d,
                               double* extrapolated);

/* ---- experiments -------------------------------------------------------- */

typedef struct mpf_report mpf_report;

/* config and overrides are key=value lines (either may be NULL); keys in
 * overrides win. */
MPF_API mpf_status mpf_run_experiment(const char* name, const char* config, const char* overrides,
                                      mpf_report** out);
MPF_API const char* mpf_report_csv(const mpf_report* r);
MPF_API const char* mpf_report_json(const mpf_report* r);
/* JSON for the weights experiment, CSV otherwise. */
MPF_API const char* mpf_report_primary(const mpf_report* r);
MPF_API void mpf_report_free(mpf_report* r);

#ifdef __cplusplus
}
#endif

#endif /* MPF_LAB_H_ */

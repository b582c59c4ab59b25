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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpf/hamiltonians.hpp"
#include "mpf/mpf_engine.hpp"
#include "mpf/propagators.hpp"

namespace mpf {

// ---------------------------------------------------------------------------
// CNOT accounting for an l = 3 MPF on an Ising chain: LCU circuit versus
// separately executed product-formula circuits.

enum class GateKind : std::size_t {
  kRzz = 0,
  kControlledRzz,
  kControlledSingleQubit,
  kDoublyControlledRzz,
  kDoublyControlledRx,
};

inline constexpr std::size_t kGateKinds = 5;

const char* gate_name(GateKind kind) noexcept;

/// CNOTs needed per gate kind. Defaults follow a standard transpilation to a
/// CNOT + single-qubit basis with R_ZZ counted as one CNOT.
struct GateCostTable {
  std::array<std::uint64_t, kGateKinds> cnots{1, 8, 2, 20, 7};

  std::uint64_t operator[](GateKind kind) const { return cnots[static_cast<std::size_t>(kind)]; }
  static GateCostTable zero() { return GateCostTable{{0, 0, 0, 0, 0}}; }
};

/// Gate multiplicities per kind.
using GateTally = std::array<std::uint64_t, kGateKinds>;

/// Gates used by the three-term LCU for exponents k on an n-spin chain. Each
/// first-order step has n-1 R_ZZ layers; the first two branches sit behind two
/// controls, the third behind one, plus two controlled single-qubit gates that
/// prepare the combination coefficients.
GateTally lcu_gate_tally(std::span<const std::uint64_t> k, std::size_t n_spins = 5);
/// Gates of the deepest classical-combination circuit: (n-1) k_l R_ZZ.
GateTally classical_gate_tally(std::span<const std::uint64_t> k, std::size_t n_spins = 5);

std::uint64_t cnot_total(const GateTally& tally, const GateCostTable& costs);

/// Throws kUnsupported unless k has exactly three entries.
std::uint64_t lcu_cnot_count(std::span<const std::uint64_t> k, const GateCostTable& costs = {},
                             std::size_t n_spins = 5);
std::uint64_t classical_cnot_count(std::span<const std::uint64_t> k, std::size_t n_spins = 5);

// ---------------------------------------------------------------------------
// Depth scaling of the classical-combination MPF.

struct ScalingQuery {
  double n_qubits = 1.0;   ///< N_q
  double eps_target = 1e-2;
  double time = 1.0;
};

struct ScalingEstimate {
  std::size_t l = 0;             ///< smallest l with N_q / (2l+1)! < eps
  double l_closed_form = 0.0;    ///< (x - 1)/2 with x = ln y / W(ln y / e)
  std::size_t l_closed_ceil = 0; ///< ceil of the above
  double alpha = 1.0;            ///< exponent rescaling, max(1, t)
  std::uint64_t k_deepest = 0;   ///< ceil(alpha l^2)
};

/// Principal branch of the Lambert W function for z >= -1/e.
double lambert_w0(double z);

ScalingEstimate mpf_depth_scaling(const ScalingQuery& q);

// ---------------------------------------------------------------------------
// Empirical repetitions needed to reach a target accuracy.

enum class ErrorMetric { kOperatorNorm, kObservable };

ErrorMetric parse_metric(const std::string& text);
std::string to_string(ErrorMetric metric);

struct RepetitionQuery {
  double time = 1.0;
  ProductFormula formula = ProductFormula::lie_trotter();
  double eps_target = 1e-2;
  ErrorMetric metric = ErrorMetric::kOperatorNorm;
  /// Required for the observable metric.
  std::optional<StateVector> initial_state;
  std::optional<DenseOperator> observable;
  std::uint64_t max_k = 1000000;
};

struct RepetitionResult {
  std::uint64_t k = 0;
  std::uint64_t repetitions = 0;
  double error = 0.0;
  /// True if a non-monotone bracket forced the linear scan.
  bool linear_scan = false;
};

/// Error of [S(t/k)]^k under the query's metric.
double product_formula_error(const HamiltonianTerms& h, const RepetitionQuery& q, std::uint64_t k);

/// Smallest k with error < eps (doubling, then bisection), reported together
/// with the merged count of exp(-i H_j tau) factors. Throws kBudgetExceeded
/// when max_k is not enough.
RepetitionResult pf_repetitions_to_accuracy(const HamiltonianTerms& h, const RepetitionQuery& q);

struct MpfRepetitionResult {
  std::optional<ExponentSequence> sequence;
  std::uint64_t repetitions = 0;  ///< repetitions of the deepest circuit
  double error = 0.0;
  double norm1 = 0.0;
};

/// Scans the given candidate sequences, each multiplied by s = 1, 2, ...,
/// and returns the cheapest (by deepest-circuit repetitions) whose combined
/// error is below eps. Scales with a time step t / k_1 above one are skipped.
/// Candidates that never reach eps within max_scale are
/// skipped; an empty result means none did.
MpfRepetitionResult mpf_repetitions_to_accuracy(const HamiltonianTerms& h, const RepetitionQuery& q,
                                                std::span<const ExponentSequence> candidates,
                                                std::uint64_t max_scale = 64);

}  // namespace mpf

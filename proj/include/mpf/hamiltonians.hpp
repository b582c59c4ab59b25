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

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpf/operator_core.hpp"

namespace mpf {

/// One exponentiable piece H_j of a split Hamiltonian. When `paulis` is
/// non-empty the term is exactly the sum of those mutually commuting Pauli
/// strings and exp(-i H_j t) is applied as a product of Pauli rotations.
struct HamiltonianTerm {
  std::string name;
  DenseOperator op;
  std::vector<PauliString> paulis;
};

using ModelParameters = std::vector<std::pair<std::string, double>>;

/// H = sum_j H_j with a fixed term order. Immutable; the eigendecompositions
/// needed for exact propagation are computed once on first use and shared
/// between copies.
class HamiltonianTerms {
 public:
  HamiltonianTerms(std::string model, std::vector<HamiltonianTerm> terms,
                   ModelParameters parameters = {}, std::optional<std::size_t> num_qubits = {});

  const std::string& model() const noexcept { return model_; }
  const ModelParameters& parameters() const noexcept { return parameters_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const HamiltonianTerm& term(std::size_t j) const { return terms_.at(j); }
  const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }
  /// Qubit count for spin models; empty for models with bosonic factors.
  std::optional<std::size_t> num_qubits() const noexcept { return num_qubits_; }

  /// Sum of all terms.
  const DenseOperator& full() const noexcept { return full_; }
  const HermitianSpectrum& spectrum() const;
  const HermitianSpectrum& term_spectrum(std::size_t j) const;

  /// exp(-i H_j tau) |psi>
  Vector apply_term(std::size_t j, const Vector& psi, double tau) const;
  /// exp(-i H_j tau) as a matrix.
  DenseOperator term_propagator(std::size_t j, double tau) const;

  /// True when every pair of terms commutes to 1e-12.
  bool terms_commute() const;

 private:
  struct Cache;

  std::string model_;
  std::vector<HamiltonianTerm> terms_;
  ModelParameters parameters_;
  std::optional<std::size_t> num_qubits_;
  std::size_t dim_ = 0;
  DenseOperator full_;
  std::shared_ptr<Cache> cache_;
};

/// Open transverse-field Ising chain split as
///   H_1 = -J sum_i Z_i Z_{i+1},  H_2 = -h sum_i X_i.
HamiltonianTerms build_ising(std::size_t n_spins, double coupling, double field);

struct SpinBosonParams {
  std::size_t modes = 1;         ///< M
  std::size_t n_max = 1;         ///< occupation truncation per mode
  double omega = 1.0;            ///< mode frequency (resonant, same for every mode)
  double omega_s = -1.0;         ///< spin splitting
  double delta = 0.0;            ///< tunnelling rate
  double coupling = 0.5;         ///< g, same for every mode
};

/// Spin coupled to M truncated bosonic modes. Factor order is spin first, then
/// modes 1..M. Terms, in order:
///   bosons:   sum_k omega a_k^dagger a_k
///   spin:     (omega_s / 2) Z + delta X
///   coupling: sum_k g X (a_k^dagger + a_k), accumulated in mode order
HamiltonianTerms build_spin_boson(const SpinBosonParams& params);

/// Z on one qubit of an n-qubit register.
DenseOperator z_observable(std::size_t num_qubits, std::size_t qubit);
/// (1/n) sum_i Z_i
DenseOperator average_z_observable(std::size_t num_qubits);

}  // namespace mpf

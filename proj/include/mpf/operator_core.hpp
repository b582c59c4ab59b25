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

// Dense complex linear algebra used by every other module.
//
// Tensor convention: qubit 0 is the leftmost Kronecker factor, so for an
// n-qubit basis index x the state of qubit q is bit (n - 1 - q) of x.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mpf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest Hilbert-space dimension any dense object may have.
inline constexpr std::size_t kMaxDenseDim = 4096;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

/// Weighted Pauli product such as -0.5 * "XX".
class PauliString {
 public:
  PauliString(std::string label, double coefficient = 1.0);

  const std::string& label() const noexcept { return label_; }
  double coefficient() const noexcept { return coefficient_; }
  std::size_t num_qubits() const noexcept { return label_.size(); }

  /// Bits set where the Pauli flips (X or Y), in basis-index order.
  std::size_t flip_mask() const noexcept { return flip_mask_; }
  /// Bits set where the Pauli carries a Z component (Z or Y).
  std::size_t phase_mask() const noexcept { return phase_mask_; }
  /// Number of Y factors, which contributes i^y to every matrix element.
  unsigned y_count() const noexcept { return y_count_; }

  bool commutes_with(const PauliString& other) const;

 private:
  std::string label_;
  double coefficient_;
  std::size_t flip_mask_ = 0;
  std::size_t phase_mask_ = 0;
  unsigned y_count_ = 0;
};

class DenseOperator {
 public:
  DenseOperator() = default;
  explicit DenseOperator(Matrix m);

  static DenseOperator identity(std::size_t dim);
  static DenseOperator zero(std::size_t dim);
  static DenseOperator diagonal(std::span<const double> entries);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  /// max |A - A^dagger| over all entries
  double hermiticity_defect() const;
  /// max |A^dagger A - I| over all entries
  double unitarity_defect() const;
  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }
  bool is_unitary(double tol = kUnitaryTol) const { return unitarity_defect() <= tol; }

  DenseOperator adjoint() const { return DenseOperator(m_.adjoint()); }

  friend DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
  friend DenseOperator operator*(Complex s, const DenseOperator& a);

 private:
  Matrix m_;
};

/// Normalized amplitude vector.
class StateVector {
 public:
  /// Rejects vectors whose 2-norm differs from one by more than `tol`.
  explicit StateVector(Vector amplitudes, double tol = 1e-10);

  static StateVector basis(std::size_t dim, std::size_t index);
  /// Kronecker product of single-qubit states, qubit 0 leftmost. Each factor
  /// is normalized before use.
  static StateVector product(std::span<const std::array<Complex, 2>> qubits);
  /// (|0> + i|1>)/sqrt(2) on every qubit.
  static StateVector plus_i(std::size_t num_qubits);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const noexcept { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  Vector amps_;
};

struct BosonicMode {
  std::size_t n_max = 0;
  std::size_t dim() const noexcept { return n_max + 1; }
};

struct LadderPair {
  DenseOperator annihilator;
  DenseOperator creator;
};

DenseOperator pauli_matrix(const PauliString& p);
LadderPair boson_ladder(BosonicMode mode);

/// Kronecker product a (x) b.
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);
/// Embeds `local` acting on factor `slot` of a product space with the given
/// factor dimensions.
DenseOperator embed(const DenseOperator& local, std::span<const std::size_t> factor_dims,
                    std::size_t slot);

/// Returns P|psi> including the Pauli's coefficient.
Vector apply_pauli(const Vector& psi, const PauliString& p);

/// exp(-i * angle * c * P)|psi> where c is the Pauli's coefficient. Uses
/// (cP)^2 = c^2 I, so no matrix is formed.
StateVector apply_pauli_exponential(const StateVector& state, const PauliString& p,
                                    double angle);

/// <psi|O|psi>. Throws on non-Hermitian O or a non-negligible imaginary part.
double expectation(const StateVector& state, const DenseOperator& obs);

/// Hermitian eigendecomposition H = V diag(lambda) V^dagger, cached so that
/// exp(-iHt) can be formed or applied for many t.
class HermitianSpectrum {
 public:
  HermitianSpectrum() = default;
  explicit HermitianSpectrum(const DenseOperator& h);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }

  /// exp(-i H t)
  DenseOperator propagator(double t) const;
  Vector apply_propagator(const Vector& psi, double t) const;

 private:
  Eigen::VectorXd values_;
  Matrix vectors_;
};

/// Largest singular value.
double spectral_norm(const Matrix& m);

}  // namespace mpf

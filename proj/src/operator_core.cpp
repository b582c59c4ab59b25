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

#include "mpf/operator_core.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mpf/error.hpp"

namespace mpf {

namespace {

constexpr unsigned kMaxQubits = 12;  // 2^12 = kMaxDenseDim

void check_dim(std::size_t dim) {
  if (dim == 0) fail(ErrorCode::kInvalidInput, "dimension must be positive");
  if (dim > kMaxDenseDim) {
    fail(ErrorCode::kCapacity, "dimension " + std::to_string(dim) + " exceeds dense cap " +
                                   std::to_string(kMaxDenseDim));
  }
}

Complex i_power(unsigned n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(std::string label, double coefficient)
    : label_(std::move(label)), coefficient_(coefficient) {
  require(!label_.empty(), "Pauli label must not be empty");
  require(std::isfinite(coefficient_), "Pauli coefficient must be finite");
  if (label_.size() > kMaxQubits) {
    fail(ErrorCode::kCapacity, "Pauli label longer than " + std::to_string(kMaxQubits) + " qubits");
  }
  const std::size_t n = label_.size();
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    switch (label_[q]) {
      case 'I': break;
      case 'X': flip_mask_ |= bit; break;
      case 'Y':
        flip_mask_ |= bit;
        phase_mask_ |= bit;
        ++y_count_;
        break;
      case 'Z': phase_mask_ |= bit; break;
      default:
        fail(ErrorCode::kInvalidInput, std::string("invalid Pauli character '") + label_[q] + "'");
    }
  }
}

bool PauliString::commutes_with(const PauliString& other) const {
  require(num_qubits() == other.num_qubits(), "Pauli strings act on different qubit counts");
  // Symplectic product of the (x|z) vectors.
  const auto anti = std::popcount(flip_mask_ & other.phase_mask_) +
                    std::popcount(phase_mask_ & other.flip_mask_);
  return anti % 2 == 0;
}

// ---------------------------------------------------------------------------
// DenseOperator

DenseOperator::DenseOperator(Matrix m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols(), "operator must be square");
  check_dim(static_cast<std::size_t>(m_.rows()));
}

DenseOperator DenseOperator::identity(std::size_t dim) {
  check_dim(dim);
  return DenseOperator(Matrix::Identity(dim, dim));
}

DenseOperator DenseOperator::zero(std::size_t dim) {
  check_dim(dim);
  return DenseOperator(Matrix::Zero(dim, dim));
}

DenseOperator DenseOperator::diagonal(std::span<const double> entries) {
  check_dim(entries.size());
  Matrix m = Matrix::Zero(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return DenseOperator(std::move(m));
}

double DenseOperator::hermiticity_defect() const {
  if (m_.size() == 0) return 0.0;
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DenseOperator::unitarity_defect() const {
  if (m_.size() == 0) return 0.0;
  return (m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) {
  require(a.dim() == b.dim(), "operator dimension mismatch");
  return DenseOperator(a.m_ + b.m_);
}

DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) {
  require(a.dim() == b.dim(), "operator dimension mismatch");
  return DenseOperator(a.m_ - b.m_);
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  require(a.dim() == b.dim(), "operator dimension mismatch");
  return DenseOperator(a.m_ * b.m_);
}

DenseOperator operator*(Complex s, const DenseOperator& a) { return DenseOperator(s * a.m_); }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Vector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  check_dim(static_cast<std::size_t>(amps_.size()));
  const double n = amps_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    fail(ErrorCode::kInvalidInput, "state vector is not normalized (norm " + std::to_string(n) + ")");
  }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  check_dim(dim);
  require(index < dim, "basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::product(std::span<const std::array<Complex, 2>> qubits) {
  require(!qubits.empty(), "product state needs at least one qubit");
  if (qubits.size() > kMaxQubits) fail(ErrorCode::kCapacity, "too many qubits for a dense state");
  Vector v = Vector::Ones(1);
  for (const auto& q : qubits) {
    const double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
    require(n > 0.0 && std::isfinite(n), "single-qubit factor has zero norm");
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q[0] / n;
      next(2 * i + 1) = v(i) * q[1] / n;
    }
    v = std::move(next);
  }
  return StateVector(std::move(v));
}

StateVector StateVector::plus_i(std::size_t num_qubits) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<std::array<Complex, 2>> qubits(num_qubits, {Complex(r, 0.0), Complex(0.0, r)});
  return product(qubits);
}

// ---------------------------------------------------------------------------
// Construction helpers

DenseOperator pauli_matrix(const PauliString& p) {
  const std::size_t dim = std::size_t{1} << p.num_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  const Complex base = p.coefficient() * i_power(p.y_count());
  for (std::size_t x = 0; x < dim; ++x) {
    const double sign = (std::popcount(x & p.phase_mask()) % 2) ? -1.0 : 1.0;
    m(x ^ p.flip_mask(), x) = sign * base;
  }
  return DenseOperator(std::move(m));
}

LadderPair boson_ladder(BosonicMode mode) {
  require(mode.n_max >= 1, "bosonic truncation n_max must be at least 1");
  const std::size_t dim = mode.dim();
  Matrix a = Matrix::Zero(dim, dim);
  for (std::size_t n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix a_dag = a.transpose();
  return {DenseOperator(std::move(a)), DenseOperator(std::move(a_dag))};
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const auto da = static_cast<Eigen::Index>(a.dim());
  const auto db = static_cast<Eigen::Index>(b.dim());
  check_dim(a.dim() * b.dim());
  Matrix m(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return DenseOperator(std::move(m));
}

DenseOperator embed(const DenseOperator& local, std::span<const std::size_t> factor_dims,
                    std::size_t slot) {
  require(slot < factor_dims.size(), "embedding slot out of range");
  require(local.dim() == factor_dims[slot], "local operator does not match its factor");
  DenseOperator out;
  bool first = true;
  for (std::size_t f = 0; f < factor_dims.size(); ++f) {
    const DenseOperator piece = (f == slot) ? local : DenseOperator::identity(factor_dims[f]);
    out = first ? piece : kron(out, piece);
    first = false;
  }
  return out;
}

Vector apply_pauli(const Vector& psi, const PauliString& p) {
  const std::size_t dim = static_cast<std::size_t>(psi.size());
  if (dim != (std::size_t{1} << p.num_qubits())) {
    fail(ErrorCode::kInvalidInput, "Pauli string does not match state dimension");
  }
  const Complex base = p.coefficient() * i_power(p.y_count());
  Vector out(psi.size());
  for (std::size_t x = 0; x < dim; ++x) {
    const double sign = (std::popcount(x & p.phase_mask()) % 2) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(x ^ p.flip_mask())) = sign * base * psi(static_cast<Eigen::Index>(x));
  }
  return out;
}

StateVector apply_pauli_exponential(const StateVector& state, const PauliString& p,
                                    double angle) {
  // exp(-i a cP) = cos(a c) I - i sin(a c) P  with P the unit Pauli.
  const PauliString unit(p.label(), 1.0);
  const double phi = angle * p.coefficient();
  Vector out = std::cos(phi) * state.amplitudes() -
               Complex(0.0, std::sin(phi)) * apply_pauli(state.amplitudes(), unit);
  return StateVector(std::move(out));
}

double expectation(const StateVector& state, const DenseOperator& obs) {
  require(state.dim() == obs.dim(), "observable does not match state dimension");
  if (!obs.is_hermitian(1e-10)) fail(ErrorCode::kInvalidInput, "observable is not Hermitian");
  const Complex value = state.amplitudes().dot(obs.matrix() * state.amplitudes());
  if (std::abs(value.imag()) > 1e-10) {
    fail(ErrorCode::kNumerical, "expectation value has imaginary part " + std::to_string(value.imag()));
  }
  return value.real();
}

// ---------------------------------------------------------------------------
// HermitianSpectrum

HermitianSpectrum::HermitianSpectrum(const DenseOperator& h) {
  if (!h.is_hermitian(1e-10)) fail(ErrorCode::kInvalidInput, "operator is not Hermitian");
  // Symmetrize so round-off in the input cannot leak into the eigenvectors.
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) fail(ErrorCode::kNumerical, "Hermitian eigensolver failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

DenseOperator HermitianSpectrum::propagator(double t) const {
  Vector phases(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) phases(i) = std::polar(1.0, -values_(i) * t);
  return DenseOperator(vectors_ * phases.asDiagonal() * vectors_.adjoint());
}

Vector HermitianSpectrum::apply_propagator(const Vector& psi, double t) const {
  require(static_cast<std::size_t>(psi.size()) == dim(), "state does not match operator dimension");
  Vector coeffs = vectors_.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::polar(1.0, -values_(i) * t);
  return vectors_ * coeffs;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace mpf

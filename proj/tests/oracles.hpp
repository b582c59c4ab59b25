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

// Independent reference computations used by the unit and acceptance tests.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Rational = boost::multiprecision::cpp_rational;

inline Matrix pauli_2x2(char c) {
  Matrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

/// Dense Pauli string, leftmost letter on the most significant factor.
inline Matrix pauli_string(const std::string& label, double coeff = 1.0) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : label) m = kron(m, pauli_2x2(c));
  return coeff * m;
}

/// exp(-i H t) by the Pade-based matrix exponential.
inline Matrix expm(const Matrix& h, double t) {
  const Matrix a = Complex(0.0, -t) * h;
  return a.exp();
}

/// Largest singular value from the eigenvalues of A^dagger A.
inline double spectral_norm(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.adjoint() * a);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// Open transverse-field Ising chain built from Kronecker products.
inline Matrix ising(std::size_t n, double coupling, double field) {
  const std::size_t dim = std::size_t{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::string s(n, 'I');
    s[i] = 'Z';
    s[i + 1] = 'Z';
    h -= pauli_string(s, coupling);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string s(n, 'I');
    s[i] = 'X';
    h -= pauli_string(s, field);
  }
  return h;
}

/// Closed-form Richardson weights: a_j = prod_{m != j} k_j^s / (k_j^s - k_m^s)
/// with s = 1 for first-order and s = 2 for symmetric base formulas.
inline std::vector<Rational> lagrange_weights(const std::vector<std::uint64_t>& k, unsigned s) {
  std::vector<Rational> a;
  for (std::size_t j = 0; j < k.size(); ++j) {
    Rational w = 1;
    Rational kj = 1;
    for (unsigned p = 0; p < s; ++p) kj *= k[j];
    for (std::size_t m = 0; m < k.size(); ++m) {
      if (m == j) continue;
      Rational km = 1;
      for (unsigned p = 0; p < s; ++p) km *= k[m];
      w *= kj / (kj - km);
    }
    a.push_back(w);
  }
  return a;
}

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle

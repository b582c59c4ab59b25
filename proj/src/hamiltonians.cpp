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

#include "mpf/hamiltonians.hpp"

#include <bit>
#include <cmath>
#include <mutex>

#include "mpf/error.hpp"

namespace mpf {

namespace {

Complex i_power(unsigned n) {
  static constexpr Complex kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPowers[n % 4];
}

// Rows of (unit P) * m.
Matrix unit_pauli_times(const Matrix& m, const PauliString& p) {
  const Complex base = i_power(p.y_count());
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index x = 0; x < m.rows(); ++x) {
    const auto ux = static_cast<std::size_t>(x);
    const double sign = (std::popcount(ux & p.phase_mask()) % 2) ? -1.0 : 1.0;
    out.row(static_cast<Eigen::Index>(ux ^ p.flip_mask())) = (sign * base) * m.row(x);
  }
  return out;
}

// exp(-i tau c P) applied on the left of m.
void rotate_rows(Matrix& m, const PauliString& p, double tau) {
  const double phi = tau * p.coefficient();
  if (phi == 0.0) return;
  m = std::cos(phi) * m - Complex(0.0, std::sin(phi)) * unit_pauli_times(m, p);
}

DenseOperator sum_of(const std::vector<PauliString>& paulis) {
  DenseOperator acc = pauli_matrix(paulis.front());
  for (std::size_t i = 1; i < paulis.size(); ++i) acc = acc + pauli_matrix(paulis[i]);
  return acc;
}

std::string qubit_label(std::size_t n, std::initializer_list<std::pair<std::size_t, char>> sites) {
  std::string label(n, 'I');
  for (auto [q, c] : sites) label[q] = c;
  return label;
}

}  // namespace

struct HamiltonianTerms::Cache {
  explicit Cache(std::size_t terms)
      : term_once(std::make_unique<std::once_flag[]>(terms)), term_spectra(terms) {}

  std::once_flag full_once;
  HermitianSpectrum full;
  std::unique_ptr<std::once_flag[]> term_once;
  std::vector<HermitianSpectrum> term_spectra;
};

HamiltonianTerms::HamiltonianTerms(std::string model, std::vector<HamiltonianTerm> terms,
                                   ModelParameters parameters,
                                   std::optional<std::size_t> num_qubits)
    : model_(std::move(model)),
      terms_(std::move(terms)),
      parameters_(std::move(parameters)),
      num_qubits_(num_qubits) {
  require(!terms_.empty(), "Hamiltonian needs at least one term");
  dim_ = terms_.front().op.dim();
  for (const auto& t : terms_) {
    require(t.op.dim() == dim_, "Hamiltonian terms have mismatched dimensions");
    if (!t.op.is_hermitian()) fail(ErrorCode::kInvalidInput, "term '" + t.name + "' is not Hermitian");
    for (std::size_t a = 0; a < t.paulis.size(); ++a) {
      for (std::size_t b = a + 1; b < t.paulis.size(); ++b) {
        require(t.paulis[a].commutes_with(t.paulis[b]),
                "Pauli strings inside term '" + t.name + "' must commute");
      }
    }
  }
  full_ = terms_.front().op;
  for (std::size_t j = 1; j < terms_.size(); ++j) full_ = full_ + terms_[j].op;
  cache_ = std::make_shared<Cache>(terms_.size());
}

const HermitianSpectrum& HamiltonianTerms::spectrum() const {
  std::call_once(cache_->full_once, [this] { cache_->full = HermitianSpectrum(full_); });
  return cache_->full;
}

const HermitianSpectrum& HamiltonianTerms::term_spectrum(std::size_t j) const {
  require(j < terms_.size(), "term index out of range");
  std::call_once(cache_->term_once[j],
                 [this, j] { cache_->term_spectra[j] = HermitianSpectrum(terms_[j].op); });
  return cache_->term_spectra[j];
}

Vector HamiltonianTerms::apply_term(std::size_t j, const Vector& psi, double tau) const {
  const HamiltonianTerm& t = term(j);
  require(static_cast<std::size_t>(psi.size()) == dim_, "state does not match Hamiltonian dimension");
  if (t.paulis.empty()) return term_spectrum(j).apply_propagator(psi, tau);
  Vector out = psi;
  for (const auto& p : t.paulis) {
    const double phi = tau * p.coefficient();
    if (phi == 0.0) continue;
    out = std::cos(phi) * out - Complex(0.0, std::sin(phi)) * apply_pauli(out, PauliString(p.label()));
  }
  return out;
}

DenseOperator HamiltonianTerms::term_propagator(std::size_t j, double tau) const {
  const HamiltonianTerm& t = term(j);
  if (t.paulis.empty()) return term_spectrum(j).propagator(tau);
  Matrix m = Matrix::Identity(dim_, dim_);
  for (const auto& p : t.paulis) rotate_rows(m, p, tau);
  return DenseOperator(std::move(m));
}

bool HamiltonianTerms::terms_commute() const {
  for (std::size_t a = 0; a < terms_.size(); ++a) {
    for (std::size_t b = a + 1; b < terms_.size(); ++b) {
      const Matrix c = terms_[a].op.matrix() * terms_[b].op.matrix() -
                       terms_[b].op.matrix() * terms_[a].op.matrix();
      if (c.cwiseAbs().maxCoeff() > 1e-12) return false;
    }
  }
  return true;
}

HamiltonianTerms build_ising(std::size_t n_spins, double coupling, double field) {
  require(n_spins >= 2, "Ising chain needs at least two spins");
  require(std::isfinite(coupling) && std::isfinite(field), "Ising parameters must be finite");

  std::vector<PauliString> zz;
  for (std::size_t i = 0; i + 1 < n_spins; ++i) {
    zz.emplace_back(qubit_label(n_spins, {{i, 'Z'}, {i + 1, 'Z'}}), -coupling);
  }
  std::vector<PauliString> x;
  for (std::size_t i = 0; i < n_spins; ++i) x.emplace_back(qubit_label(n_spins, {{i, 'X'}}), -field);

  std::vector<HamiltonianTerm> terms;
  terms.push_back({"zz", sum_of(zz), zz});
  terms.push_back({"x", sum_of(x), x});
  return HamiltonianTerms("ising", std::move(terms),
                          {{"n", static_cast<double>(n_spins)}, {"J", coupling}, {"h", field}},
                          n_spins);
}

HamiltonianTerms build_spin_boson(const SpinBosonParams& p) {
  require(p.modes >= 1, "spin-boson model needs at least one mode");
  require(p.n_max >= 1, "bosonic truncation n_max must be at least 1");
  const std::size_t mode_dim = p.n_max + 1;
  std::size_t dim = 2;
  for (std::size_t k = 0; k < p.modes; ++k) {
    dim *= mode_dim;
    if (dim > kMaxDenseDim) {
      fail(ErrorCode::kCapacity, "spin-boson dimension exceeds dense cap " + std::to_string(kMaxDenseDim));
    }
  }

  std::vector<std::size_t> factors{2};
  factors.insert(factors.end(), p.modes, mode_dim);

  const auto [a, a_dag] = boson_ladder(BosonicMode{p.n_max});
  const DenseOperator number = a_dag * a;
  const DenseOperator quadrature = a + a_dag;
  const DenseOperator z = pauli_matrix(PauliString("Z"));
  const DenseOperator x = pauli_matrix(PauliString("X"));
  const DenseOperator x_full = embed(x, factors, 0);

  DenseOperator bosons = DenseOperator::zero(dim);
  DenseOperator coupling = DenseOperator::zero(dim);
  for (std::size_t k = 0; k < p.modes; ++k) {
    bosons = bosons + Complex(p.omega) * embed(number, factors, k + 1);
    coupling = coupling + Complex(p.coupling) * (x_full * embed(quadrature, factors, k + 1));
  }
  const DenseOperator spin =
      Complex(0.5 * p.omega_s) * embed(z, factors, 0) + Complex(p.delta) * x_full;

  std::vector<HamiltonianTerm> terms;
  terms.push_back({"bosons", bosons, {}});
  terms.push_back({"spin", spin, {}});
  terms.push_back({"coupling", coupling, {}});
  return HamiltonianTerms("spin_boson", std::move(terms),
                          {{"M", static_cast<double>(p.modes)},
                           {"n_max", static_cast<double>(p.n_max)},
                           {"omega", p.omega},
                           {"omega_s", p.omega_s},
                           {"delta", p.delta},
                           {"g", p.coupling}});
}

DenseOperator z_observable(std::size_t num_qubits, std::size_t qubit) {
  require(qubit < num_qubits, "observable qubit out of range");
  std::string label(num_qubits, 'I');
  label[qubit] = 'Z';
  return pauli_matrix(PauliString(label));
}

DenseOperator average_z_observable(std::size_t num_qubits) {
  DenseOperator acc = z_observable(num_qubits, 0);
  for (std::size_t q = 1; q < num_qubits; ++q) acc = acc + z_observable(num_qubits, q);
  return Complex(1.0 / static_cast<double>(num_qubits)) * acc;
}

}  // namespace mpf

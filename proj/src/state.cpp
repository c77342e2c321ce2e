// Copyright 2026 The qconc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qconc/state.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qconc {

namespace {

constexpr double kStateTolerance = 1e-10;
constexpr int kMaxQubits = 20;

void require_qubits(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
}

std::size_t bit_of(int num_qubits, int wire) { return std::size_t{1} << (num_qubits - 1 - wire); }

std::array<Complex, 4> matmul2(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

std::size_t expected_angles(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      return 1;
    case GateKind::U3:
      return 3;
    default:
      return 0;
  }
}

std::size_t expected_wires(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CZ) ? 2 : 1;
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  require_qubits(num_qubits);
  amplitudes_.assign(dimension_of(num_qubits), Complex{});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  require_qubits(num_qubits);
  if (amplitudes_.size() != dimension_of(num_qubits)) {
    throw std::invalid_argument("amplitude count does not match 2^n");
  }
  if (std::abs(norm() - 1.0) > kStateTolerance) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

StateVector StateVector::basis(int num_qubits, std::size_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

DensityMatrix::DensityMatrix(int num_qubits, ComplexMatrix matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
  require_qubits(num_qubits);
  if (matrix_.rows() != dimension_of(num_qubits) || !matrix_.is_square()) {
    throw std::invalid_argument("density matrix dimension does not match 2^n");
  }
  if (hermiticity_defect(matrix_) > kStateTolerance) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex{1.0, 0.0}) > kStateTolerance) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  require_qubits(num_qubits);
  const std::size_t dim = dimension_of(num_qubits);
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0 / static_cast<double>(dim);
  return DensityMatrix(num_qubits, std::move(m));
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_rc|^2 for Hermitian rho.
  double sum = 0.0;
  for (const auto& v : matrix_.data()) sum += std::norm(v);
  return sum;
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigen(matrix_).values.back(); }

void DensityMatrix::validate_psd(double tolerance) const {
  const double lowest = min_eigenvalue();
  if (lowest < -tolerance) {
    throw std::domain_error("density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::U3: return "U3";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::PauliX: return "X";
    case GateKind::PauliY: return "Y";
    case GateKind::PauliZ: return "Z";
  }
  return "?";
}

void validate_gate(const GateSpec& gate, int num_qubits) {
  if (gate.angles.size() != expected_angles(gate.kind)) {
    throw std::invalid_argument(std::string(to_string(gate.kind)) + ": expected " +
                                std::to_string(expected_angles(gate.kind)) + " angle(s), got " +
                                std::to_string(gate.angles.size()));
  }
  if (gate.wires.size() != expected_wires(gate.kind)) {
    throw std::invalid_argument(std::string(to_string(gate.kind)) + ": wrong wire count");
  }
  for (int w : gate.wires) {
    if (w < 0 || w >= num_qubits) {
      throw std::invalid_argument(std::string(to_string(gate.kind)) + ": wire " +
                                  std::to_string(w) + " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
    }
  }
  if (gate.wires.size() == 2 && gate.wires[0] == gate.wires[1]) {
    throw std::invalid_argument(std::string(to_string(gate.kind)) + ": wires must be distinct");
  }
}

std::array<Complex, 4> single_qubit_matrix(const GateSpec& gate) {
  const Complex i{0.0, 1.0};
  switch (gate.kind) {
    case GateKind::RX: {
      const double c = std::cos(gate.angles.at(0) / 2), s = std::sin(gate.angles.at(0) / 2);
      return {c, -i * s, -i * s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(gate.angles.at(0) / 2), s = std::sin(gate.angles.at(0) / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ: {
      const double h = gate.angles.at(0) / 2;
      return {std::polar(1.0, -h), 0.0, 0.0, std::polar(1.0, h)};
    }
    case GateKind::U3: {
      const auto rz1 = single_qubit_matrix(GateSpec::rz(0, gate.angles.at(0)));
      const auto ry2 = single_qubit_matrix(GateSpec::ry(0, gate.angles.at(1)));
      const auto rz3 = single_qubit_matrix(GateSpec::rz(0, gate.angles.at(2)));
      return matmul2(rz3, matmul2(ry2, rz1));
    }
    case GateKind::PauliX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::PauliY: return {0.0, -i, i, 0.0};
    case GateKind::PauliZ: return {1.0, 0.0, 0.0, -1.0};
    default:
      throw std::invalid_argument("single_qubit_matrix: two-qubit gate");
  }
}

void apply_gate_inplace(StateVector& state, const GateSpec& gate) {
  const int n = state.num_qubits();
  validate_gate(gate, n);
  auto amp = state.amplitudes();
  const std::size_t dim = amp.size();

  if (gate.kind == GateKind::CNOT || gate.kind == GateKind::CZ) {
    const std::size_t cbit = bit_of(n, gate.wires[0]);
    const std::size_t tbit = bit_of(n, gate.wires[1]);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      if (!(idx & cbit) || (idx & tbit)) continue;
      if (gate.kind == GateKind::CNOT) {
        std::swap(amp[idx], amp[idx | tbit]);
      } else {
        amp[idx | tbit] = -amp[idx | tbit];
      }
    }
    return;
  }

  const auto u = single_qubit_matrix(gate);
  const std::size_t bit = bit_of(n, gate.wires[0]);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    if (idx & bit) continue;
    const Complex a0 = amp[idx];
    const Complex a1 = amp[idx | bit];
    amp[idx] = u[0] * a0 + u[1] * a1;
    amp[idx | bit] = u[2] * a0 + u[3] * a1;
  }
}

StateVector apply_gate(StateVector state, const GateSpec& gate) {
  apply_gate_inplace(state, gate);
  return state;
}

PauliString::PauliString(std::string_view letters) : letters_(letters) {
  const int n = static_cast<int>(letters_.size());
  require_qubits(n);
  for (int w = 0; w < n; ++w) {
    const std::size_t bit = bit_of(n, w);
    switch (letters_[w]) {
      case 'I': break;
      case 'X': flip_mask_ |= bit; break;
      case 'Y': flip_mask_ |= bit; z_mask_ |= bit; ++y_count_; break;
      case 'Z': z_mask_ |= bit; break;
      default:
        throw std::invalid_argument("Pauli letter must be one of I, X, Y, Z");
    }
  }
}

PauliString PauliString::single(int num_qubits, int wire, char letter) {
  if (wire < 0 || wire >= num_qubits) throw std::invalid_argument("Pauli wire out of range");
  std::string s(num_qubits, 'I');
  s[wire] = letter;
  return PauliString(s);
}

bool PauliString::is_identity() const { return flip_mask_ == 0 && z_mask_ == 0; }

Complex PauliString::phase(std::size_t column) const {
  // Y|b> = i (-1)^b |1-b>, Z|b> = (-1)^b |b>.
  static constexpr std::array<Complex, 4> kPowI = {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0},
                                                   Complex{0, -1}};
  const double sign = (std::popcount(column & z_mask_) & 1) ? -1.0 : 1.0;
  return kPowI[y_count_ % 4] * sign;
}

ComplexMatrix PauliString::matrix() const {
  const std::size_t dim = dimension_of(num_qubits());
  ComplexMatrix m(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) m(c ^ flip_mask_, c) = phase(c);
  return m;
}

double expectation(const StateVector& state, const PauliString& obs) {
  if (obs.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("expectation: observable length does not match qubit count");
  }
  const auto amp = state.amplitudes();
  const std::size_t flip = obs.flip_mask();
  Complex sum{};
  for (std::size_t c = 0; c < amp.size(); ++c) {
    sum += std::conj(amp[c ^ flip]) * obs.phase(c) * amp[c];
  }
  return sum.real();
}

double expectation(const DensityMatrix& rho, const PauliString& obs) {
  if (obs.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument("expectation: observable length does not match qubit count");
  }
  // Tr(P rho) = sum_c P[c^f, c] rho[c, c^f]
  const std::size_t flip = obs.flip_mask();
  Complex sum{};
  for (std::size_t c = 0; c < rho.dim(); ++c) sum += obs.phase(c) * rho(c, c ^ flip);
  return sum.real();
}

DensityMatrix density_from_state(const StateVector& state) {
  const std::size_t dim = state.dim();
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = state[r] * std::conj(state[c]);
  }
  return DensityMatrix(state.num_qubits(), std::move(m));
}

}  // namespace qconc

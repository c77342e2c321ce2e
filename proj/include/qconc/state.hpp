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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qconc/linalg.hpp"

namespace qconc {

// Qubit (wire) 0 is the most significant bit of a basis index, i.e. the top
// wire of a circuit diagram. All wire indices in the API are zero-based.

inline std::size_t dimension_of(int num_qubits) { return std::size_t{1} << num_qubits; }

/// Pure state on n qubits. Starts in |0...0>.
class StateVector {
 public:
  explicit StateVector(int num_qubits);
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  /// Computational basis state |index>.
  static StateVector basis(int num_qubits, std::size_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  std::span<Complex> amplitudes() { return amplitudes_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix on n qubits.
class DensityMatrix {
 public:
  /// Validates the invariants (Hermitian and unit trace within 1e-10); PSD
  /// is only checked by validate_psd() since it needs an eigensolve.
  DensityMatrix(int num_qubits, ComplexMatrix matrix);

  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  /// Tr(rho^2).
  double purity() const;
  /// Smallest eigenvalue.
  double min_eigenvalue() const;
  /// Throws std::domain_error if the smallest eigenvalue is below -tolerance.
  void validate_psd(double tolerance = 1e-8) const;

 private:
  int num_qubits_;
  ComplexMatrix matrix_;
};

enum class GateKind { RX, RY, RZ, U3, CNOT, CZ, PauliX, PauliY, PauliZ };

std::string_view to_string(GateKind kind);

/// One gate instance. Rotations take 1 angle, U3 takes 3, fixed gates 0.
/// Two-qubit gates list wires as (control, target).
struct GateSpec {
  GateKind kind;
  std::vector<double> angles;
  std::vector<int> wires;

  static GateSpec rx(int wire, double theta) { return {GateKind::RX, {theta}, {wire}}; }
  static GateSpec ry(int wire, double theta) { return {GateKind::RY, {theta}, {wire}}; }
  static GateSpec rz(int wire, double theta) { return {GateKind::RZ, {theta}, {wire}}; }
  static GateSpec u3(int wire, double t1, double t2, double t3) {
    return {GateKind::U3, {t1, t2, t3}, {wire}};
  }
  static GateSpec cnot(int control, int target) { return {GateKind::CNOT, {}, {control, target}}; }
  static GateSpec cz(int control, int target) { return {GateKind::CZ, {}, {control, target}}; }
};

/// Throws std::invalid_argument on angle-count or wire errors.
void validate_gate(const GateSpec& gate, int num_qubits);

/// 2x2 unitary of a single-qubit gate. R_P(t) = exp(-i t P / 2),
/// U3(t1, t2, t3) = RZ(t3) RY(t2) RZ(t1).
std::array<Complex, 4> single_qubit_matrix(const GateSpec& gate);

/// Applies the gate in place on amplitude strides.
void apply_gate_inplace(StateVector& state, const GateSpec& gate);
StateVector apply_gate(StateVector state, const GateSpec& gate);

/// Tensor product of single-qubit Paulis; letter 0 acts on wire 0.
class PauliString {
 public:
  /// Accepts letters from "IXYZ"; throws std::invalid_argument otherwise.
  explicit PauliString(std::string_view letters);

  static PauliString identity(int num_qubits) { return PauliString(std::string(num_qubits, 'I')); }
  /// Single Pauli `letter` on `wire`, identity elsewhere.
  static PauliString single(int num_qubits, int wire, char letter);

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  const std::string& letters() const { return letters_; }
  bool is_identity() const;

  /// P|c> = phase(c) |c ^ flip_mask()>.
  std::size_t flip_mask() const { return flip_mask_; }
  Complex phase(std::size_t column) const;

  ComplexMatrix matrix() const;

  bool operator==(const PauliString&) const = default;

 private:
  std::string letters_;
  std::size_t flip_mask_ = 0;
  std::size_t z_mask_ = 0;  // wires carrying Z or Y
  int y_count_ = 0;
};

/// <psi|P|psi>. Throws std::invalid_argument on a qubit-count mismatch.
double expectation(const StateVector& state, const PauliString& obs);

/// Tr(P rho).
double expectation(const DensityMatrix& rho, const PauliString& obs);

DensityMatrix density_from_state(const StateVector& state);

}  // namespace qconc

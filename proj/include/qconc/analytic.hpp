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

// Exact Gaussian averages of encoded states in the Pauli basis.
//
// A state on n qubits is written as rho = sum_s c_s P_s over the 4^n Pauli
// strings. Each qubit's letter is a base-4 digit in the order (I, Z, X, Y),
// wire 0 being the most significant digit. Averaging a rotation with a
// Gaussian angle acts on one qubit's four coefficients through a real 4x4
// transfer matrix; CNOT and CZ permute strings up to a sign. Chaining these
// maps from |0...0> gives E[rho(x)] without sampling.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qconc/encoding.hpp"
#include "qconc/state.hpp"

namespace qconc {

/// Per-qubit Pauli letters in coefficient order.
enum class PauliLetter : std::uint8_t { I = 0, Z = 1, X = 2, Y = 3 };

char to_char(PauliLetter p);

/// Coefficients c_s of rho = sum_s c_s P_s, length 4^n.
struct PauliVector {
  int qubits = 1;
  std::vector<double> coeffs;

  /// Vector of |0...0><0...0|, i.e. (1/2, 1/2, 0, 0) on every qubit.
  static PauliVector zero_state(int qubits);

  std::size_t index_of(std::span<const PauliLetter> letters) const;
  /// Pauli string (letters over IXYZ) for coefficient index s.
  PauliString string_of(std::size_t s) const;
  /// sum_s c_s^2, so Tr(rho^2) = 2^n * squared_norm().
  double squared_norm() const;
};

/// Row-vector convention: out[b] = sum_a in[a] * m[a][b].
struct TransferMatrix4 {
  std::array<std::array<double, 4>, 4> m{};

  static TransferMatrix4 identity();
  TransferMatrix4 operator*(const TransferMatrix4& rhs) const;
  /// Singular values in descending order.
  std::array<double, 4> singular_values() const;
};

enum class RotationKind { RY, RZ, U3 };

/// Gaussian average of conjugation by the rotation, as a transfer matrix.
///
/// RY and RZ take one (mu, sigma); U3 takes three, for U3 = RZ(x3) RY(x2) RZ(x1),
/// and returns T_z(x1) * T_y(x2) * T_z(x3). Each factor scales its rotation
/// plane by A = exp(-sigma^2 / 2). Throws std::invalid_argument on wrong arity
/// or a negative sigma.
TransferMatrix4 averaged_rotation_transfer(RotationKind kind, std::span<const double> mu,
                                           std::span<const double> sigma);

/// Signed permutation of Pauli-string coefficients, s -> (target[s], sign[s]).
struct SignedPermutation {
  std::vector<std::uint32_t> target;
  std::vector<std::int8_t> sign;

  static SignedPermutation identity(std::size_t size);
  std::size_t size() const { return target.size(); }
  /// Applies this, then `next`.
  SignedPermutation then(const SignedPermutation& next) const;
  SignedPermutation inverse() const;
  /// out[target[s]] = sign[s] * in[s].
  std::vector<double> apply(std::span<const double> in) const;
};

/// Image of a two-qubit Pauli product (control letter, target letter) under
/// conjugation by the gate, as listed in the CNOT/CZ transition table.
struct PauliPairImage {
  PauliLetter control;
  PauliLetter target;
  int sign;
};

PauliPairImage two_qubit_transition(GateKind kind, PauliLetter control, PauliLetter target);

enum class SignMode { Exact, DropSigns };

/// Signed permutation induced by conjugation with the layer's gates in order.
/// DropSigns forces every sign to +1, which reproduces the norm argument of
/// the bound proof but not the exact state.
SignedPermutation entangler_transfer(const EntanglerLayer& layer, int qubits,
                                     SignMode mode = SignMode::Exact);

/// coeffs[s] = Tr(P_s rho) / 2^n.
PauliVector pauli_vector_of(const DensityMatrix& rho);
/// rho = sum_s coeffs[s] P_s. Validates Hermiticity and unit trace.
DensityMatrix density_of(const PauliVector& v);

/// Applies a 4x4 map to one qubit's coefficients in place.
void apply_local_transfer(PauliVector& v, int qubit, const TransferMatrix4& t);

struct AnalyticOptions {
  SignMode signs = SignMode::Exact;
  bool check_psd = true;  // eigensolve the result and require min eigenvalue >= -1e-9
};

/// E[rho(x)] in the Pauli basis for independent Gaussian features.
PauliVector analytic_average_pauli(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g,
                                   SignMode signs = SignMode::Exact);

/// E[rho(x)] as a density matrix.
DensityMatrix analytic_average_state(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g,
                                     const AnalyticOptions& options = {});

/// D2(E[rho] || I/2^n) straight from the coefficients: log2(4^n sum c_s^2).
double analytic_divergence_to_mixed(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g);

struct BoundQuery {
  int qubits = 1;
  int depth = 1;
  double sigma = 1.0;
  double eps = 0.1;  // only read by depth_threshold
};

/// n log2(1 + exp(-D sigma^2)), the RY-product bound.
double bound_warmup(const BoundQuery& q);
/// log2(1 + (2^n - 1) exp(-D sigma^2)), the U3-with-entanglers bound.
double bound_general(const BoundQuery& q);
/// log2(1 + (2^n - 1) exp(-floor(D/2) sigma^2)), the weaker bound for RY-only
/// layers separated by entanglers.
double bound_ry_layered(const BoundQuery& q);
/// Smallest integer D >= ((n + 4) ln 2 + 2 ln(1/eps)) / sigma^2.
int depth_threshold(const BoundQuery& q);
/// The real-valued right-hand side before the ceiling.
double depth_threshold_exact(const BoundQuery& q);

}  // namespace qconc

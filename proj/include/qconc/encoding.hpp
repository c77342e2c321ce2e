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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qconc/random.hpp"
#include "qconc/state.hpp"

namespace qconc {

enum class EncodingFamily {
  RyProduct,             // D columns of RY, no entanglers
  U3Entangled,           // D columns of U3, D-1 entangler layers
  StronglyEntanglingRy,  // D columns of RY, D-1 ring-CNOT layers
};

std::string_view to_string(EncodingFamily family);
/// Throws std::invalid_argument for an unknown name.
EncodingFamily parse_encoding_family(std::string_view name);

struct EntanglerGate {
  GateKind kind;  // CNOT or CZ
  int control;
  int target;

  bool operator==(const EntanglerGate&) const = default;
};

/// Two-qubit gates applied in list order.
using EntanglerLayer = std::vector<EntanglerGate>;

/// CNOT(j -> j+1 mod n) for j = 0..n-1; empty for n = 1.
EntanglerLayer ring_cnot_layer(int num_qubits);

/// Circuit shape of an angle encoder.
///
/// Feature layout is qubit-major, then layer, then the U3 rotation index:
/// feature (j, d, k) sits at (j * depth + d) * rotations + k, where rotations
/// is 1 for the RY families and 3 for U3Entangled.
struct EncodingCircuitSpec {
  EncodingFamily family = EncodingFamily::RyProduct;
  int qubits = 1;
  int depth = 1;
  std::vector<EntanglerLayer> entanglers;  // depth - 1 layers, empty for RyProduct

  /// Spec with the default entanglers for the family (ring CNOTs).
  static EncodingCircuitSpec make(EncodingFamily family, int qubits, int depth);

  int rotations_per_slot() const { return family == EncodingFamily::U3Entangled ? 3 : 1; }
  std::size_t feature_count() const;
  std::size_t feature_index(int qubit, int layer, int rotation = 0) const;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

using FeatureVector = std::vector<double>;

/// Independent Gaussian per feature, laid out like FeatureVector.
struct GaussianFeatureSpec {
  std::vector<double> means;
  std::vector<double> stds;

  void validate() const;
  std::size_t size() const { return means.size(); }
};

/// Pure state obtained by running the encoder on |0...0>.
StateVector encode(const EncodingCircuitSpec& spec, std::span<const double> x);

/// One independent N(mean_i, std_i^2) draw per component.
FeatureVector sample_features(const GaussianFeatureSpec& g, SeededStream& rng);

/// (1/M) sum_m rho(x_m) with x_m drawn from rng.substream(m).
///
/// Samples are accumulated in chunks of 1024 that are combined in chunk
/// order, so the result does not depend on the number of worker threads.
DensityMatrix monte_carlo_average(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g,
                                  std::uint64_t samples, const SeededStream& rng);

/// Mean of the encoded density matrices of the given feature vectors.
DensityMatrix average_encoded_state(const EncodingCircuitSpec& spec,
                                    std::span<const FeatureVector> features);

}  // namespace qconc

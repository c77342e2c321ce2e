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

#include "qconc/encoding.hpp"

#include <cmath>
#include <stdexcept>

#include "qconc/parallel.hpp"

namespace qconc {

namespace {

constexpr std::size_t kMonteCarloChunk = 1024;

// Adds |psi><psi| into the upper triangle of acc.
void accumulate_projector(ComplexMatrix& acc, const StateVector& psi) {
  const std::size_t dim = psi.dim();
  for (std::size_t r = 0; r < dim; ++r) {
    const Complex a = psi[r];
    for (std::size_t c = r; c < dim; ++c) acc(r, c) += a * std::conj(psi[c]);
  }
}

DensityMatrix finish_average(int num_qubits, ComplexMatrix sum, double count) {
  const std::size_t dim = sum.rows();
  for (std::size_t r = 0; r < dim; ++r) {
    sum(r, r) = sum(r, r).real() / count;
    for (std::size_t c = r + 1; c < dim; ++c) {
      sum(r, c) /= count;
      sum(c, r) = std::conj(sum(r, c));
    }
  }
  return DensityMatrix(num_qubits, std::move(sum));
}

}  // namespace

std::string_view to_string(EncodingFamily family) {
  switch (family) {
    case EncodingFamily::RyProduct: return "RyProduct";
    case EncodingFamily::U3Entangled: return "U3Entangled";
    case EncodingFamily::StronglyEntanglingRy: return "StronglyEntanglingRy";
  }
  return "?";
}

EncodingFamily parse_encoding_family(std::string_view name) {
  for (auto f : {EncodingFamily::RyProduct, EncodingFamily::U3Entangled,
                 EncodingFamily::StronglyEntanglingRy}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown encoding family '" + std::string(name) + "'");
}

EntanglerLayer ring_cnot_layer(int num_qubits) {
  EntanglerLayer layer;
  if (num_qubits < 2) return layer;
  for (int j = 0; j < num_qubits; ++j) {
    layer.push_back({GateKind::CNOT, j, (j + 1) % num_qubits});
  }
  return layer;
}

EncodingCircuitSpec EncodingCircuitSpec::make(EncodingFamily family, int qubits, int depth) {
  EncodingCircuitSpec spec{family, qubits, depth, {}};
  if (family != EncodingFamily::RyProduct && depth > 1) {
    spec.entanglers.assign(static_cast<std::size_t>(depth - 1), ring_cnot_layer(qubits));
  }
  spec.validate();
  return spec;
}

std::size_t EncodingCircuitSpec::feature_count() const {
  return static_cast<std::size_t>(qubits) * static_cast<std::size_t>(depth) *
         static_cast<std::size_t>(rotations_per_slot());
}

std::size_t EncodingCircuitSpec::feature_index(int qubit, int layer, int rotation) const {
  return (static_cast<std::size_t>(qubit) * depth + layer) * rotations_per_slot() + rotation;
}

void EncodingCircuitSpec::validate() const {
  if (qubits < 1 || qubits > 20) throw std::invalid_argument("encoder qubit count must be in [1, 20]");
  if (depth < 1) throw std::invalid_argument("encoder depth must be >= 1");
  if (family == EncodingFamily::RyProduct) {
    if (!entanglers.empty()) throw std::invalid_argument("RyProduct encoder has no entanglers");
    return;
  }
  if (entanglers.size() != static_cast<std::size_t>(depth - 1)) {
    throw std::invalid_argument("encoder needs depth - 1 = " + std::to_string(depth - 1) +
                                " entangler layers, got " + std::to_string(entanglers.size()));
  }
  for (const auto& layer : entanglers) {
    for (const auto& g : layer) {
      if (g.kind != GateKind::CNOT && g.kind != GateKind::CZ) {
        throw std::invalid_argument("entangler gates must be CNOT or CZ");
      }
      if (g.control < 0 || g.control >= qubits || g.target < 0 || g.target >= qubits) {
        throw std::invalid_argument("entangler wire out of range");
      }
      if (g.control == g.target) throw std::invalid_argument("entangler wires must be distinct");
    }
  }
}

void GaussianFeatureSpec::validate() const {
  if (means.size() != stds.size()) {
    throw std::invalid_argument("Gaussian feature spec: means and stds differ in length");
  }
  for (double s : stds) {
    if (!(s >= 0.0)) throw std::invalid_argument("Gaussian feature spec: negative std");
  }
}

StateVector encode(const EncodingCircuitSpec& spec, std::span<const double> x) {
  spec.validate();
  if (x.size() != spec.feature_count()) {
    throw std::invalid_argument("encode: expected " + std::to_string(spec.feature_count()) +
                                " features, got " + std::to_string(x.size()));
  }
  StateVector psi(spec.qubits);
  for (int d = 0; d < spec.depth; ++d) {
    for (int j = 0; j < spec.qubits; ++j) {
      if (spec.family == EncodingFamily::U3Entangled) {
        const std::size_t i = spec.feature_index(j, d, 0);
        apply_gate_inplace(psi, GateSpec::u3(j, x[i], x[i + 1], x[i + 2]));
      } else {
        apply_gate_inplace(psi, GateSpec::ry(j, x[spec.feature_index(j, d)]));
      }
    }
    if (d + 1 < spec.depth && !spec.entanglers.empty()) {
      for (const auto& g : spec.entanglers[d]) {
        apply_gate_inplace(psi, {g.kind, {}, {g.control, g.target}});
      }
    }
  }
  return psi;
}

FeatureVector sample_features(const GaussianFeatureSpec& g, SeededStream& rng) {
  g.validate();
  FeatureVector x(g.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Always consume the draw so the stream position does not depend on stds.
    const double z = rng.normal();
    x[i] = g.stds[i] == 0.0 ? g.means[i] : g.means[i] + g.stds[i] * z;
  }
  return x;
}

DensityMatrix monte_carlo_average(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g,
                                  std::uint64_t samples, const SeededStream& rng) {
  if (samples == 0) throw std::invalid_argument("monte_carlo_average: sample count must be >= 1");
  spec.validate();
  g.validate();
  if (g.size() != spec.feature_count()) {
    throw std::invalid_argument("monte_carlo_average: Gaussian spec does not match encoder");
  }
  const std::size_t dim = dimension_of(spec.qubits);
  ComplexMatrix total(dim, dim);
  chunked_reduce<ComplexMatrix>(
      samples, kMonteCarloChunk,
      [&](std::size_t begin, std::size_t end) {
        ComplexMatrix partial(dim, dim);
        for (std::size_t m = begin; m < end; ++m) {
          SeededStream stream = rng.substream(m);
          const FeatureVector x = sample_features(g, stream);
          accumulate_projector(partial, encode(spec, x));
        }
        return partial;
      },
      [&](const ComplexMatrix& partial) { total += partial; });
  return finish_average(spec.qubits, std::move(total), static_cast<double>(samples));
}

DensityMatrix average_encoded_state(const EncodingCircuitSpec& spec,
                                    std::span<const FeatureVector> features) {
  if (features.empty()) throw std::invalid_argument("average_encoded_state: no samples");
  const std::size_t dim = dimension_of(spec.qubits);
  ComplexMatrix total(dim, dim);
  chunked_reduce<ComplexMatrix>(
      features.size(), kMonteCarloChunk,
      [&](std::size_t begin, std::size_t end) {
        ComplexMatrix partial(dim, dim);
        for (std::size_t m = begin; m < end; ++m) accumulate_projector(partial, encode(spec, features[m]));
        return partial;
      },
      [&](const ComplexMatrix& partial) { total += partial; });
  return finish_average(spec.qubits, std::move(total), static_cast<double>(features.size()));
}

}  // namespace qconc

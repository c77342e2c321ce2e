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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "qconc/encoding.hpp"

namespace qconc {

/// Feature vectors with one-hot labels, all shaped for `spec`.
struct LabeledDataset {
  EncodingCircuitSpec spec;
  int num_classes = 2;
  std::vector<FeatureVector> features;
  std::vector<std::vector<double>> labels;

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
  /// Index of the 1 in label i.
  int class_of(std::size_t i) const;
  void add(FeatureVector x, int class_id);
  /// Throws std::invalid_argument if a label is not one-hot or a feature
  /// vector has the wrong length.
  void validate() const;
};

/// Throws std::invalid_argument unless `label` has exactly one 1 and zeros elsewhere.
int one_hot_class(std::span<const double> label);

// ---- synthetic two-line Gaussian task ----

struct SyntheticTaskSpec {
  EncodingFamily family = EncodingFamily::StronglyEntanglingRy;
  int qubits = 4;
  int depth = 1;
  double sigma = 0.8;

  EncodingCircuitSpec encoder() const { return EncodingCircuitSpec::make(family, qubits, depth); }
  void validate() const;
};

/// Means (2 pi / 16)(j - 1) mod 2 pi for class 0 and (2 pi / 16)(16 - j) mod 2 pi
/// for class 1, j = 1..t over the encoder's feature layout; all stds = sigma.
GaussianFeatureSpec synthetic_spec(const SyntheticTaskSpec& task, int class_id);

/// `per_class` samples of each class. Sample m of class k is drawn from
/// rng.substream(k).substream(m); class 0 samples come first.
LabeledDataset generate_dataset(const SyntheticTaskSpec& task, std::size_t per_class,
                                const SeededStream& rng);

/// Like generate_dataset but with arbitrary per-class Gaussian specs.
LabeledDataset generate_gaussian_dataset(const EncodingCircuitSpec& spec,
                                         std::span<const GaussianFeatureSpec> classes,
                                         std::size_t per_class, const SeededStream& rng);

// ---- MNIST ----

inline constexpr int kMnistSide = 28;
inline constexpr int kMnistPixels = kMnistSide * kMnistSide;
inline constexpr int kReducedSide = 4;
inline constexpr int kReducedFeatures = kReducedSide * kReducedSide;

struct RawMnist {
  std::vector<std::array<std::uint8_t, kMnistPixels>> images;
  std::vector<std::uint8_t> labels;
};

class IdxError : public std::runtime_error {
 public:
  enum class Kind { Io, BadMagic, BadDimensions, Truncated, CountMismatch, BadLabel };
  IdxError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Reads a big-endian IDX image file (magic 2051, 28x28) and label file
/// (magic 2049). Paths ending in ".gz" are decompressed transparently.
RawMnist load_mnist_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path);

/// 7x7 block means of a 28x28 image, row-major, scaled to [0, pi].
std::array<double, kReducedFeatures> reduce_image(const std::array<std::uint8_t, kMnistPixels>& image);

/// Fills `slots` features by cycling through the 16 reduced pixels.
FeatureVector tile_features(std::span<const double> reduced, std::size_t slots);

/// Keeps the two digits (first one -> class 0), reduces each image to 16
/// features and tiles them onto the encoder's feature count. Throws
/// std::invalid_argument if a digit is absent or the digits are not distinct.
LabeledDataset preprocess_mnist(const RawMnist& raw, std::array<int, 2> digits,
                                const EncodingCircuitSpec& spec);

}  // namespace qconc

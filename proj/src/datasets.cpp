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

#include "qconc/datasets.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

namespace qconc {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;
constexpr int kBlock = kMnistSide / kReducedSide;

// Reads the whole file; gzread passes plain files through unchanged.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::unique_ptr<gzFile_s, decltype(&gzclose)> file(gzopen(path.c_str(), "rb"), &gzclose);
  if (!file) throw IdxError(IdxError::Kind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes;
  std::vector<std::uint8_t> buffer(1 << 16);
  for (;;) {
    const int got = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
    if (got < 0) throw IdxError(IdxError::Kind::Io, "read error in " + path.string());
    if (got == 0) break;
    bytes.insert(bytes.end(), buffer.begin(), buffer.begin() + got);
  }
  return bytes;
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset) {
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void require_bytes(const std::vector<std::uint8_t>& bytes, std::size_t expected,
                   const std::filesystem::path& path) {
  if (bytes.size() < expected) {
    throw IdxError(IdxError::Kind::Truncated, path.string() + ": truncated, expected " +
                                                  std::to_string(expected) + " bytes, got " +
                                                  std::to_string(bytes.size()));
  }
}

std::size_t mean_index(int class_id, std::size_t j) {
  // j is 1-based; positive remainder mod 16.
  const long long k = class_id == 0 ? static_cast<long long>(j) - 1 : 16 - static_cast<long long>(j);
  return static_cast<std::size_t>(((k % 16) + 16) % 16);
}

}  // namespace

int one_hot_class(std::span<const double> label) {
  int found = -1;
  for (std::size_t k = 0; k < label.size(); ++k) {
    if (label[k] == 1.0) {
      if (found >= 0) throw std::invalid_argument("label is not one-hot (several ones)");
      found = static_cast<int>(k);
    } else if (label[k] != 0.0) {
      throw std::invalid_argument("label is not one-hot (entry other than 0 or 1)");
    }
  }
  if (found < 0) throw std::invalid_argument("label is not one-hot (no entry equal to 1)");
  return found;
}

int LabeledDataset::class_of(std::size_t i) const { return one_hot_class(labels.at(i)); }

void LabeledDataset::add(FeatureVector x, int class_id) {
  if (class_id < 0 || class_id >= num_classes) throw std::invalid_argument("class id out of range");
  std::vector<double> label(static_cast<std::size_t>(num_classes), 0.0);
  label[static_cast<std::size_t>(class_id)] = 1.0;
  features.push_back(std::move(x));
  labels.push_back(std::move(label));
}

void LabeledDataset::validate() const {
  spec.validate();
  if (num_classes < 2) throw std::invalid_argument("dataset needs at least 2 classes");
  if (features.size() != labels.size()) throw std::invalid_argument("dataset: feature/label count mismatch");
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != spec.feature_count()) {
      throw std::invalid_argument("dataset: sample " + std::to_string(i) + " has " +
                                  std::to_string(features[i].size()) + " features, expected " +
                                  std::to_string(spec.feature_count()));
    }
    if (labels[i].size() != static_cast<std::size_t>(num_classes)) {
      throw std::invalid_argument("dataset: label length does not match class count");
    }
    one_hot_class(labels[i]);
  }
}

void SyntheticTaskSpec::validate() const {
  encoder();
  if (!(sigma > 0.0)) throw std::invalid_argument("synthetic task: sigma must be > 0");
}

GaussianFeatureSpec synthetic_spec(const SyntheticTaskSpec& task, int class_id) {
  if (class_id != 0 && class_id != 1) throw std::invalid_argument("synthetic_spec: class id must be 0 or 1");
  task.validate();
  const std::size_t t = task.encoder().feature_count();
  GaussianFeatureSpec g{std::vector<double>(t), std::vector<double>(t, task.sigma)};
  const double step = 2.0 * std::numbers::pi / 16.0;
  for (std::size_t j = 1; j <= t; ++j) g.means[j - 1] = step * static_cast<double>(mean_index(class_id, j));
  return g;
}

LabeledDataset generate_gaussian_dataset(const EncodingCircuitSpec& spec,
                                         std::span<const GaussianFeatureSpec> classes,
                                         std::size_t per_class, const SeededStream& rng) {
  if (per_class == 0) throw std::invalid_argument("generate_dataset: need at least one sample per class");
  if (classes.size() < 2) throw std::invalid_argument("generate_dataset: need at least two classes");
  LabeledDataset data{spec, static_cast<int>(classes.size()), {}, {}};
  data.features.reserve(per_class * classes.size());
  data.labels.reserve(per_class * classes.size());
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].size() != spec.feature_count()) {
      throw std::invalid_argument("generate_dataset: class spec does not match encoder");
    }
    const SeededStream class_stream = rng.substream(k);
    for (std::size_t m = 0; m < per_class; ++m) {
      SeededStream sample_stream = class_stream.substream(m);
      data.add(sample_features(classes[k], sample_stream), static_cast<int>(k));
    }
  }
  return data;
}

LabeledDataset generate_dataset(const SyntheticTaskSpec& task, std::size_t per_class,
                                const SeededStream& rng) {
  const std::array<GaussianFeatureSpec, 2> classes = {synthetic_spec(task, 0), synthetic_spec(task, 1)};
  return generate_gaussian_dataset(task.encoder(), classes, per_class, rng);
}

RawMnist load_mnist_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path) {
  const auto images = read_file(images_path);
  const auto labels = read_file(labels_path);

  require_bytes(images, 16, images_path);
  if (const auto magic = read_be32(images, 0); magic != kImageMagic) {
    throw IdxError(IdxError::Kind::BadMagic, images_path.string() + ": bad image magic " +
                                                 std::to_string(magic) + ", expected 2051");
  }
  const std::uint32_t image_count = read_be32(images, 4);
  const std::uint32_t rows = read_be32(images, 8);
  const std::uint32_t cols = read_be32(images, 12);
  if (rows != kMnistSide || cols != kMnistSide) {
    throw IdxError(IdxError::Kind::BadDimensions,
                   images_path.string() + ": expected 28x28 images, got " + std::to_string(rows) +
                       "x" + std::to_string(cols));
  }
  require_bytes(images, 16 + std::size_t{image_count} * kMnistPixels, images_path);

  require_bytes(labels, 8, labels_path);
  if (const auto magic = read_be32(labels, 0); magic != kLabelMagic) {
    throw IdxError(IdxError::Kind::BadMagic, labels_path.string() + ": bad label magic " +
                                                 std::to_string(magic) + ", expected 2049");
  }
  const std::uint32_t label_count = read_be32(labels, 4);
  require_bytes(labels, 8 + std::size_t{label_count}, labels_path);
  if (label_count != image_count) {
    throw IdxError(IdxError::Kind::CountMismatch, "image count " + std::to_string(image_count) +
                                                      " differs from label count " +
                                                      std::to_string(label_count));
  }

  RawMnist raw;
  raw.images.resize(image_count);
  raw.labels.assign(labels.begin() + 8, labels.begin() + 8 + label_count);
  for (std::size_t i = 0; i < image_count; ++i) {
    std::copy_n(images.begin() + 16 + static_cast<std::ptrdiff_t>(i * kMnistPixels), kMnistPixels,
                raw.images[i].begin());
    if (raw.labels[i] > 9) {
      throw IdxError(IdxError::Kind::BadLabel, "label " + std::to_string(raw.labels[i]) +
                                                   " at index " + std::to_string(i) + " is not a digit");
    }
  }
  return raw;
}

std::array<double, kReducedFeatures> reduce_image(const std::array<std::uint8_t, kMnistPixels>& image) {
  std::array<double, kReducedFeatures> out{};
  for (int br = 0; br < kReducedSide; ++br) {
    for (int bc = 0; bc < kReducedSide; ++bc) {
      int sum = 0;
      for (int r = 0; r < kBlock; ++r) {
        for (int c = 0; c < kBlock; ++c) sum += image[(br * kBlock + r) * kMnistSide + bc * kBlock + c];
      }
      const double mean = static_cast<double>(sum) / (kBlock * kBlock);
      out[br * kReducedSide + bc] = mean / 255.0 * std::numbers::pi;
    }
  }
  return out;
}

FeatureVector tile_features(std::span<const double> reduced, std::size_t slots) {
  if (reduced.empty()) throw std::invalid_argument("tile_features: no features");
  FeatureVector x(slots);
  for (std::size_t i = 0; i < slots; ++i) x[i] = reduced[i % reduced.size()];
  return x;
}

LabeledDataset preprocess_mnist(const RawMnist& raw, std::array<int, 2> digits,
                                const EncodingCircuitSpec& spec) {
  for (int d : digits) {
    if (d < 0 || d > 9) throw std::invalid_argument("preprocess_mnist: digits must be in [0, 9]");
  }
  if (digits[0] == digits[1]) throw std::invalid_argument("preprocess_mnist: digits must be distinct");
  spec.validate();
  LabeledDataset data{spec, 2, {}, {}};
  std::array<std::size_t, 2> seen{};
  for (std::size_t i = 0; i < raw.images.size(); ++i) {
    const int label = raw.labels.at(i);
    const int cls = label == digits[0] ? 0 : label == digits[1] ? 1 : -1;
    if (cls < 0) continue;
    const auto reduced = reduce_image(raw.images[i]);
    data.add(tile_features(reduced, spec.feature_count()), cls);
    ++seen[static_cast<std::size_t>(cls)];
  }
  for (int k = 0; k < 2; ++k) {
    if (seen[k] == 0) {
      throw std::invalid_argument("preprocess_mnist: digit " + std::to_string(digits[k]) +
                                  " does not occur in the data");
    }
  }
  return data;
}

}  // namespace qconc

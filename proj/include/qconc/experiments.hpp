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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qconc/datasets.hpp"
#include "qconc/encoding.hpp"
#include "qconc/learn.hpp"

namespace qconc {

using Json = nlohmann::json;

/// Invalid or inconsistent experiment configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grid of (n, D) points for one encoder family and a uniform sigma.
struct SweepConfig {
  EncodingFamily family = EncodingFamily::RyProduct;
  std::vector<int> qubits;
  std::vector<int> depths;
  double sigma = 0.8;
  int class_id = 0;
  std::uint64_t mc_samples = 200000;  // 0 skips the Monte Carlo column
  std::uint64_t seed = 0;
};

struct SweepRow {
  int qubits;
  int depth;
  double d2_analytic;
  std::optional<double> d2_monte_carlo;
  double bound_warmup;
  double bound_general;
  double bound_ry_layered;
  std::uint64_t mc_samples;
};

/// Analytic and M-sample divergence of the class average to the maximally
/// mixed state, plus the bounds, per grid point in grid order. Grid point i
/// samples from SeededStream(seed).substream(i).
std::vector<SweepRow> run_divergence_sweep(const SweepConfig& cfg);

struct DiscriminateConfig {
  EncodingFamily family = EncodingFamily::StronglyEntanglingRy;
  std::vector<int> qubits;
  std::vector<int> depths;
  double sigma = 0.8;
  std::size_t samples_per_class = 2000;
  bool identical_classes = false;  // class 1 drawn from the class-0 distribution
  std::uint64_t seed = 0;
};

struct DiscriminateRow {
  int qubits;
  int depth;
  double p_succ;
};

/// Helstrom success probability of the empirical class averages per grid point.
std::vector<DiscriminateRow> run_discrimination_sweep(const DiscriminateConfig& cfg);

struct BoundsRowInput {
  int qubits = 1;
  std::optional<int> depth;
  double sigma = 0.8;
  std::optional<double> eps;
};

struct BoundsRow {
  BoundsRowInput input;
  std::optional<double> bound_warmup;
  std::optional<double> bound_general;
  std::optional<double> bound_ry_layered;
  std::optional<int> depth_threshold;
  std::string error;  // empty on success
};

/// Pure formula evaluation. A row with invalid inputs yields an error record
/// and the remaining rows are still evaluated.
std::vector<BoundsRow> run_bounds(const std::vector<BoundsRowInput>& rows);

/// Standard file names inside an MNIST directory; each may also end in .gz.
struct MnistFiles {
  std::filesystem::path images;
  std::filesystem::path labels;
};
/// Throws std::runtime_error if neither the plain nor the .gz file exists.
MnistFiles locate_mnist(const std::filesystem::path& dir, bool train_split);

struct TrainDataConfig {
  enum class Kind { Synthetic, Mnist } kind = Kind::Synthetic;
  EncodingFamily family = EncodingFamily::StronglyEntanglingRy;
  int qubits = 4;
  int depth = 1;
  // synthetic
  double sigma = 0.8;
  std::size_t train_per_class = 2000;
  std::size_t test_per_class = 500;
  // mnist
  std::filesystem::path mnist_dir;
  std::array<int, 2> digits = {3, 6};
};

struct TrainExperimentConfig {
  TrainDataConfig data;
  int layers = -1;  // -1 selects qubits + 2
  TrainConfig training;
  std::uint64_t seed = 0;

  int resolved_layers() const { return layers < 0 ? data.qubits + 2 : layers; }
};

struct TrainExperimentResult {
  TrainReport report;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
};

/// Builds the train and test sets, draws theta uniformly, and trains. The
/// seed feeds four substreams: train data, test data, theta, minibatch order.
TrainExperimentResult run_training_experiment(const TrainExperimentConfig& cfg);

struct MnistPrepConfig {
  std::filesystem::path mnist_dir;
  bool train_split = true;
  std::array<int, 2> digits = {3, 6};
  EncodingFamily family = EncodingFamily::StronglyEntanglingRy;
  int qubits = 4;
  int depth = 4;
  std::uint64_t seed = 0;
};

/// Parses the config for one subcommand. `seed_flag` is the --seed value;
/// it must agree with a "seed" key if both are given. Throws ConfigError for
/// unknown keys, wrong types, a missing seed, or invalid values.
SweepConfig parse_sweep_config(const Json& j, std::optional<std::uint64_t> seed_flag);
DiscriminateConfig parse_discriminate_config(const Json& j, std::optional<std::uint64_t> seed_flag);
std::vector<BoundsRowInput> parse_bounds_config(const Json& j, std::optional<std::uint64_t> seed_flag,
                                                std::uint64_t* seed_out);
TrainExperimentConfig parse_train_config(const Json& j, std::optional<std::uint64_t> seed_flag);
MnistPrepConfig parse_mnist_prep_config(const Json& j, std::optional<std::uint64_t> seed_flag);

/// Fully resolved configs, every default filled in.
Json to_json(const SweepConfig& cfg);
Json to_json(const DiscriminateConfig& cfg);
Json to_json(const TrainExperimentConfig& cfg);
Json to_json(const MnistPrepConfig& cfg);

/// FNV-1a 64 over the compact dump of `j`, as 16 hex digits.
std::string config_hash(const Json& j);

/// printf %.9g.
std::string format_number(double v);

/// Runs one subcommand ("sweep-divergence", "train", "discriminate",
/// "bounds", "mnist-prep") and writes its output files. CSV outputs start
/// with a "# {metadata}" line; "train" writes `out` as JSON and the loss
/// trace next to it as <stem>.loss.csv. Throws ConfigError for config
/// problems and other exceptions for runtime failures.
void run_command(const std::string& command, const Json& config, std::optional<std::uint64_t> seed_flag,
                 const std::filesystem::path& out);

}  // namespace qconc

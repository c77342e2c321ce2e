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
#include <optional>
#include <span>
#include <vector>

#include "qconc/datasets.hpp"
#include "qconc/random.hpp"
#include "qconc/state.hpp"

namespace qconc {

/// Variational classifier: one U3 column, then `layers` blocks of
/// [ring CNOTs; RY column], followed by measuring each observable.
///
/// Parameter layout: U3 on wire j is U3(theta[j], theta[n + j], theta[2n + j]);
/// the RY on wire j in block l uses theta[3n + l * n + j]. At n = 4 this is
/// the 4 * layers + 12 parameter count of the reference ansatz.
struct QnnSpec {
  int qubits = 1;
  int layers = 0;
  std::vector<double> theta;
  std::vector<PauliString> observables;

  /// Zero-initialized parameters.
  static QnnSpec make(int qubits, int layers, std::vector<PauliString> observables);
  /// Z and X on wire 0.
  static std::vector<PauliString> default_observables(int qubits);

  std::size_t parameter_count() const;
  std::size_t num_classes() const { return observables.size(); }
  void validate() const;
};

/// Fills theta with independent uniform draws from [0, 2 pi).
void randomize_parameters(QnnSpec& qnn, SeededStream& rng);

/// Gate sequence of the ansatz. parameter_of[g] is the theta index driving
/// gate g, or -1 for fixed gates. Every parameter drives exactly one gate.
struct QnnCircuit {
  std::vector<GateSpec> gates;
  std::vector<int> parameter_of;
};
QnnCircuit build_qnn_circuit(const QnnSpec& qnn);

/// h_k = <psi| U^dagger H_k U |psi>.
std::vector<double> qnn_forward(const QnnSpec& qnn, const StateVector& state);

/// Softmax probabilities of the scores.
std::vector<double> softmax(std::span<const double> h);

/// -sum_k y_k ln softmax(h)_k in nats. Throws for a non-one-hot label.
double ce_loss(std::span<const double> h, std::span<const double> y);

/// d h_k / d theta_i for one state by the two-term shift rule
/// (h(theta_i + pi/2) - h(theta_i - pi/2)) / 2. Result is [k][i].
std::vector<std::vector<double>> score_jacobian(const QnnSpec& qnn, const StateVector& state);

struct LossGradient {
  double loss;
  std::vector<double> gradient;
};

/// Batch-mean loss and parameter-shift gradient. Per-sample terms are summed
/// in chunks of 256 folded in order. Throws std::invalid_argument for an
/// empty batch or mismatched sizes.
LossGradient loss_and_gradient(const QnnSpec& qnn, std::span<const StateVector> states,
                               std::span<const std::vector<double>> labels);

/// Gradient part of loss_and_gradient.
std::vector<double> grad_param_shift(const QnnSpec& qnn, std::span<const StateVector> states,
                                     std::span<const std::vector<double>> labels);

/// Mean cross-entropy loss over the states.
double mean_loss(const QnnSpec& qnn, std::span<const StateVector> states,
                 std::span<const std::vector<double>> labels);

struct TrainConfig {
  std::size_t batch_size = 200;
  double learning_rate = 0.02;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  int epochs = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
};

/// One bias-corrected Adam update; `step` counts from 1.
std::pair<std::vector<double>, AdamState> adam_step(std::span<const double> theta,
                                                    std::span<const double> grad, AdamState state,
                                                    const TrainConfig& cfg, std::uint64_t step);

struct TrainReport {
  std::vector<double> loss_trace;  // batch loss before each update
  std::vector<double> theta;
  double final_train_loss = 0.0;
  double train_accuracy = 0.0;
  std::optional<double> test_accuracy;
};

/// Encodes every sample of the dataset.
std::vector<StateVector> encode_dataset(const LabeledDataset& data);

/// Adam over shuffled minibatches, starting from qnn.theta. Each epoch is a
/// Fisher-Yates shuffle drawn from SeededStream(cfg.seed).substream(epoch).
TrainReport train(const LabeledDataset& data, const QnnSpec& qnn, const TrainConfig& cfg,
                  const LabeledDataset* test = nullptr);

/// Index of the largest score, lowest index on ties.
std::size_t argmax(std::span<const double> h);

/// Fraction of samples whose argmax score matches the label.
double evaluate(const QnnSpec& qnn, const LabeledDataset& data);
double evaluate(const QnnSpec& qnn, std::span<const StateVector> states,
                std::span<const std::vector<double>> labels);

/// Largest |dL/d theta_i| over `trials` parameter draws uniform in [0, 2 pi),
/// using the full-dataset gradient. Trial t draws from rng.substream(t).
double gradient_probe(const LabeledDataset& data, const QnnSpec& qnn_template, int trials,
                      const SeededStream& rng);

}  // namespace qconc

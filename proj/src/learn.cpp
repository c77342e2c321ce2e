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

#include "qconc/learn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qconc/parallel.hpp"

namespace qconc {

namespace {

constexpr std::size_t kGradientChunk = 256;
constexpr double kShift = std::numbers::pi / 2.0;

std::vector<double> measure(const QnnSpec& qnn, const StateVector& psi) {
  std::vector<double> h(qnn.observables.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = expectation(psi, qnn.observables[k]);
  return h;
}

void run_gates(StateVector& psi, const QnnCircuit& circuit, std::size_t from) {
  for (std::size_t g = from; g < circuit.gates.size(); ++g) apply_gate_inplace(psi, circuit.gates[g]);
}

void require_batch(const QnnSpec& qnn, std::span<const StateVector> states,
                   std::span<const std::vector<double>> labels) {
  if (states.empty()) throw std::invalid_argument("empty batch");
  if (states.size() != labels.size()) throw std::invalid_argument("batch: state/label count mismatch");
  for (const auto& s : states) {
    if (s.num_qubits() != qnn.qubits) throw std::invalid_argument("batch: state qubit count does not match QNN");
  }
}

struct PartialLossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

template <typename T>
std::vector<T> gather(std::span<const T> items, std::span<const std::size_t> order) {
  std::vector<T> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(items[i]);
  return out;
}

}  // namespace

QnnSpec QnnSpec::make(int qubits, int layers, std::vector<PauliString> observables) {
  QnnSpec q{qubits, layers, {}, std::move(observables)};
  q.theta.assign(q.parameter_count(), 0.0);
  q.validate();
  return q;
}

std::vector<PauliString> QnnSpec::default_observables(int qubits) {
  return {PauliString::single(qubits, 0, 'Z'), PauliString::single(qubits, 0, 'X')};
}

std::size_t QnnSpec::parameter_count() const {
  return static_cast<std::size_t>(qubits) * (3 + static_cast<std::size_t>(std::max(layers, 0)));
}

void QnnSpec::validate() const {
  if (qubits < 1 || qubits > 20) throw std::invalid_argument("QNN qubit count must be in [1, 20]");
  if (layers < 0) throw std::invalid_argument("QNN layer count must be >= 0");
  if (theta.size() != parameter_count()) {
    throw std::invalid_argument("QNN expects " + std::to_string(parameter_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  if (observables.empty()) throw std::invalid_argument("QNN needs at least one observable");
  for (const auto& h : observables) {
    if (h.num_qubits() != qubits) throw std::invalid_argument("QNN observable length does not match qubits");
  }
}

void randomize_parameters(QnnSpec& qnn, SeededStream& rng) {
  for (auto& t : qnn.theta) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
}

QnnCircuit build_qnn_circuit(const QnnSpec& qnn) {
  qnn.validate();
  const int n = qnn.qubits;
  QnnCircuit c;
  auto add = [&](GateSpec g, int param) {
    c.gates.push_back(std::move(g));
    c.parameter_of.push_back(param);
  };
  for (int j = 0; j < n; ++j) {
    add(GateSpec::rz(j, qnn.theta[j]), j);
    add(GateSpec::ry(j, qnn.theta[n + j]), n + j);
    add(GateSpec::rz(j, qnn.theta[2 * n + j]), 2 * n + j);
  }
  for (int l = 0; l < qnn.layers; ++l) {
    if (n > 1) {
      for (int j = 0; j < n; ++j) add(GateSpec::cnot(j, (j + 1) % n), -1);
    }
    for (int j = 0; j < n; ++j) {
      const int p = 3 * n + l * n + j;
      add(GateSpec::ry(j, qnn.theta[p]), p);
    }
  }
  return c;
}

std::vector<double> qnn_forward(const QnnSpec& qnn, const StateVector& state) {
  if (state.num_qubits() != qnn.qubits) throw std::invalid_argument("qnn_forward: qubit count mismatch");
  const QnnCircuit circuit = build_qnn_circuit(qnn);
  StateVector psi = state;
  run_gates(psi, circuit, 0);
  return measure(qnn, psi);
}

std::vector<double> softmax(std::span<const double> h) {
  if (h.empty()) throw std::invalid_argument("softmax of an empty vector");
  const double top = *std::max_element(h.begin(), h.end());
  std::vector<double> p(h.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) sum += (p[k] = std::exp(h[k] - top));
  for (auto& v : p) v /= sum;
  return p;
}

double ce_loss(std::span<const double> h, std::span<const double> y) {
  if (h.size() != y.size()) throw std::invalid_argument("ce_loss: score and label lengths differ");
  const int k = one_hot_class(y);
  const double top = *std::max_element(h.begin(), h.end());
  double sum = 0.0;
  for (double v : h) sum += std::exp(v - top);
  // -ln softmax_k = ln sum_j e^{h_j} - h_k
  return std::max(0.0, top + std::log(sum) - h[k]);
}

std::vector<std::vector<double>> score_jacobian(const QnnSpec& qnn, const StateVector& state) {
  if (state.num_qubits() != qnn.qubits) throw std::invalid_argument("score_jacobian: qubit count mismatch");
  const QnnCircuit circuit = build_qnn_circuit(qnn);
  std::vector<std::vector<double>> jac(qnn.observables.size(), std::vector<double>(qnn.theta.size(), 0.0));

  // Snapshot the state in front of every gate so each shifted evaluation
  // only reruns the suffix.
  std::vector<StateVector> before;
  before.reserve(circuit.gates.size());
  StateVector psi = state;
  for (const auto& g : circuit.gates) {
    before.push_back(psi);
    apply_gate_inplace(psi, g);
  }

  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const int p = circuit.parameter_of[g];
    if (p < 0) continue;
    std::vector<double> h_plus, h_minus;
    for (double shift : {kShift, -kShift}) {
      StateVector shifted = before[g];
      GateSpec gate = circuit.gates[g];
      gate.angles[0] += shift;
      apply_gate_inplace(shifted, gate);
      run_gates(shifted, circuit, g + 1);
      (shift > 0 ? h_plus : h_minus) = measure(qnn, shifted);
    }
    for (std::size_t k = 0; k < jac.size(); ++k) jac[k][p] = 0.5 * (h_plus[k] - h_minus[k]);
  }
  return jac;
}

LossGradient loss_and_gradient(const QnnSpec& qnn, std::span<const StateVector> states,
                               std::span<const std::vector<double>> labels) {
  qnn.validate();
  require_batch(qnn, states, labels);
  const std::size_t params = qnn.theta.size();
  PartialLossGradient total{0.0, std::vector<double>(params, 0.0)};
  chunked_reduce<PartialLossGradient>(
      states.size(), kGradientChunk,
      [&](std::size_t begin, std::size_t end) {
        PartialLossGradient part{0.0, std::vector<double>(params, 0.0)};
        for (std::size_t i = begin; i < end; ++i) {
          const auto h = qnn_forward(qnn, states[i]);
          part.loss += ce_loss(h, labels[i]);
          // dL/dh_l = softmax_l - y_l
          auto dl_dh = softmax(h);
          for (std::size_t l = 0; l < dl_dh.size(); ++l) dl_dh[l] -= labels[i][l];
          const auto jac = score_jacobian(qnn, states[i]);
          for (std::size_t l = 0; l < jac.size(); ++l) {
            for (std::size_t p = 0; p < params; ++p) part.gradient[p] += dl_dh[l] * jac[l][p];
          }
        }
        return part;
      },
      [&](const PartialLossGradient& part) {
        total.loss += part.loss;
        for (std::size_t p = 0; p < params; ++p) total.gradient[p] += part.gradient[p];
      });
  const double n = static_cast<double>(states.size());
  total.loss /= n;
  for (auto& g : total.gradient) g /= n;
  return {total.loss, std::move(total.gradient)};
}

std::vector<double> grad_param_shift(const QnnSpec& qnn, std::span<const StateVector> states,
                                     std::span<const std::vector<double>> labels) {
  return loss_and_gradient(qnn, states, labels).gradient;
}

double mean_loss(const QnnSpec& qnn, std::span<const StateVector> states,
                 std::span<const std::vector<double>> labels) {
  qnn.validate();
  require_batch(qnn, states, labels);
  double total = 0.0;
  chunked_reduce<double>(
      states.size(), kGradientChunk,
      [&](std::size_t begin, std::size_t end) {
        double part = 0.0;
        for (std::size_t i = begin; i < end; ++i) part += ce_loss(qnn_forward(qnn, states[i]), labels[i]);
        return part;
      },
      [&](double part) { total += part; });
  return total / static_cast<double>(states.size());
}

void TrainConfig::validate() const {
  if (batch_size < 1) throw std::invalid_argument("train config: batch size must be >= 1");
  if (!(learning_rate >= 0.0)) throw std::invalid_argument("train config: learning rate must be >= 0");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw std::invalid_argument("train config: beta1 must be in (0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw std::invalid_argument("train config: beta2 must be in (0, 1)");
  if (!(adam_eps > 0.0)) throw std::invalid_argument("train config: Adam epsilon must be > 0");
  if (epochs < 1) throw std::invalid_argument("train config: epochs must be >= 1");
}

std::pair<std::vector<double>, AdamState> adam_step(std::span<const double> theta,
                                                    std::span<const double> grad, AdamState state,
                                                    const TrainConfig& cfg, std::uint64_t step) {
  if (theta.size() != grad.size()) throw std::invalid_argument("adam_step: theta/gradient length mismatch");
  if (step == 0) throw std::invalid_argument("adam_step: step index starts at 1");
  if (state.m.empty()) state.m.assign(theta.size(), 0.0);
  if (state.v.empty()) state.v.assign(theta.size(), 0.0);
  if (state.m.size() != theta.size() || state.v.size() != theta.size()) {
    throw std::invalid_argument("adam_step: optimizer state length mismatch");
  }
  const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
  const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
  std::vector<double> out(theta.begin(), theta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grad[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    out[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.adam_eps);
  }
  return {std::move(out), std::move(state)};
}

std::vector<StateVector> encode_dataset(const LabeledDataset& data) {
  data.validate();
  std::vector<StateVector> states;
  states.reserve(data.size());
  for (const auto& x : data.features) states.push_back(encode(data.spec, x));
  return states;
}

TrainReport train(const LabeledDataset& data, const QnnSpec& qnn, const TrainConfig& cfg,
                  const LabeledDataset* test) {
  cfg.validate();
  qnn.validate();
  if (data.empty()) throw std::invalid_argument("train: empty dataset");
  if (data.spec.qubits != qnn.qubits) throw std::invalid_argument("train: encoder and QNN qubit counts differ");
  if (static_cast<std::size_t>(data.num_classes) != qnn.num_classes()) {
    throw std::invalid_argument("train: one observable per class required");
  }
  const auto states = encode_dataset(data);
  const std::span<const StateVector> all_states(states);
  const std::span<const std::vector<double>> all_labels(data.labels);

  QnnSpec model = qnn;
  AdamState adam;
  TrainReport report;
  std::uint64_t step = 0;
  const SeededStream root(cfg.seed);
  std::vector<std::size_t> order(states.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    SeededStream shuffle = root.substream(static_cast<std::uint64_t>(epoch));
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle.below(i)]);

    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::span<const std::size_t> idx(order.data() + begin,
                                             std::min(cfg.batch_size, order.size() - begin));
      const auto batch_states = gather(all_states, idx);
      const auto batch_labels = gather(all_labels, idx);
      const auto lg = loss_and_gradient(model, batch_states, batch_labels);
      report.loss_trace.push_back(lg.loss);
      auto [theta, next] = adam_step(model.theta, lg.gradient, std::move(adam), cfg, ++step);
      model.theta = std::move(theta);
      adam = std::move(next);
    }
  }
  report.theta = model.theta;
  report.final_train_loss = mean_loss(model, all_states, all_labels);
  report.train_accuracy = evaluate(model, all_states, all_labels);
  if (test != nullptr) report.test_accuracy = evaluate(model, *test);
  return report;
}

std::size_t argmax(std::span<const double> h) {
  if (h.empty()) throw std::invalid_argument("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (h[k] > h[best]) best = k;
  }
  return best;
}

double evaluate(const QnnSpec& qnn, std::span<const StateVector> states,
                std::span<const std::vector<double>> labels) {
  qnn.validate();
  if (states.empty()) throw std::invalid_argument("evaluate: empty dataset");
  require_batch(qnn, states, labels);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (argmax(qnn_forward(qnn, states[i])) == static_cast<std::size_t>(one_hot_class(labels[i]))) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(states.size());
}

double evaluate(const QnnSpec& qnn, const LabeledDataset& data) {
  if (data.empty()) throw std::invalid_argument("evaluate: empty dataset");
  const auto states = encode_dataset(data);
  return evaluate(qnn, states, data.labels);
}

double gradient_probe(const LabeledDataset& data, const QnnSpec& qnn_template, int trials,
                      const SeededStream& rng) {
  if (trials < 1) throw std::invalid_argument("gradient_probe: trials must be >= 1");
  if (data.empty()) throw std::invalid_argument("gradient_probe: empty dataset");
  const auto states = encode_dataset(data);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    QnnSpec qnn = qnn_template;
    SeededStream stream = rng.substream(static_cast<std::uint64_t>(t));
    randomize_parameters(qnn, stream);
    for (double g : grad_param_shift(qnn, states, data.labels)) worst = std::max(worst, std::abs(g));
  }
  return worst;
}

}  // namespace qconc

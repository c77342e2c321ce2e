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

#include "qconc/discriminate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qconc {

ClassEnsemble class_average_states(const LabeledDataset& data) {
  data.validate();
  std::vector<std::vector<FeatureVector>> by_class(static_cast<std::size_t>(data.num_classes));
  for (std::size_t i = 0; i < data.size(); ++i) {
    by_class[static_cast<std::size_t>(data.class_of(i))].push_back(data.features[i]);
  }
  ClassEnsemble out;
  for (std::size_t k = 0; k < by_class.size(); ++k) {
    if (by_class[k].empty()) {
      throw std::invalid_argument("class_average_states: class " + std::to_string(k) + " has no samples");
    }
    out.averages.push_back(average_encoded_state(data.spec, by_class[k]));
    out.counts.push_back(by_class[k].size());
  }
  return out;
}

void Measurement::validate(double tolerance) const {
  if (effects.empty()) throw std::invalid_argument("measurement has no effects");
  const std::size_t dim = effects.front().rows();
  ComplexMatrix sum(dim, dim);
  for (const auto& e : effects) {
    if (e.rows() != dim || !e.is_square()) throw std::invalid_argument("measurement effects differ in shape");
    if (hermitian_eigen(e).values.back() < -tolerance) {
      throw std::invalid_argument("measurement effect is not positive semidefinite");
    }
    sum += e;
  }
  if (frobenius_distance(sum, ComplexMatrix::identity(dim)) > tolerance) {
    throw std::invalid_argument("measurement effects do not sum to the identity");
  }
}

double success_probability(const std::vector<DensityMatrix>& states, const Measurement& m) {
  if (states.size() != m.effects.size()) {
    throw std::invalid_argument("success_probability: one effect per state required");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& e = m.effects[k];
    const auto& rho = states[k].matrix();
    if (e.rows() != rho.rows()) throw std::invalid_argument("success_probability: dimension mismatch");
    Complex tr{};
    for (std::size_t r = 0; r < rho.rows(); ++r) {
      for (std::size_t c = 0; c < rho.cols(); ++c) tr += e(r, c) * rho(c, r);
    }
    total += tr.real();
  }
  return total / static_cast<double>(states.size());
}

HelstromResult helstrom_binary(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) throw std::invalid_argument("helstrom_binary: dimension mismatch");
  const auto eig = hermitian_eigen(rho0.matrix() - rho1.matrix());
  double trace_norm = 0.0;
  for (double l : eig.values) trace_norm += std::abs(l);
  ComplexMatrix pi0 = hermitian_function(eig, [](double l) { return l >= 0.0 ? 1.0 : 0.0; });
  ComplexMatrix pi1 = ComplexMatrix::identity(rho0.dim()) - pi0;
  return {0.5 + 0.25 * trace_norm, Measurement{{std::move(pi0), std::move(pi1)}}};
}

HelstromResult optimal_discrimination(const ClassEnsemble& ensemble) {
  if (ensemble.num_classes() != 2) {
    throw std::invalid_argument(
        "optimal discrimination is only available for K = 2 (Helstrom); K = " +
        std::to_string(ensemble.num_classes()) + " would need a semidefinite program");
  }
  return helstrom_binary(ensemble.averages[0], ensemble.averages[1]);
}

double psucc_bound(int num_classes, double eps) {
  if (num_classes < 2) throw std::invalid_argument("psucc_bound: K must be >= 2");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("psucc_bound: eps must be in (0, 1)");
  return 1.0 / num_classes + eps;
}

}  // namespace qconc

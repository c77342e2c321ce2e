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

#include <vector>

#include "qconc/datasets.hpp"
#include "qconc/state.hpp"

namespace qconc {

/// Per-class mean encoded states.
struct ClassEnsemble {
  std::vector<DensityMatrix> averages;
  std::vector<std::size_t> counts;

  std::size_t num_classes() const { return averages.size(); }
};

/// POVM with one effect per class.
struct Measurement {
  std::vector<ComplexMatrix> effects;

  /// Throws std::invalid_argument if an effect is not PSD or the effects do
  /// not sum to the identity (tolerance 1e-9).
  void validate(double tolerance = 1e-9) const;
};

struct HelstromResult {
  double p_succ;
  Measurement measurement;
};

/// Throws std::invalid_argument if some class has no samples.
ClassEnsemble class_average_states(const LabeledDataset& data);

/// (1/K) sum_k Tr(Pi_k rho_k).
double success_probability(const std::vector<DensityMatrix>& states, const Measurement& m);

/// Optimal equal-prior binary discrimination.
///
/// p_succ = 1/2 + Tr|rho0 - rho1| / 4. Pi_0 projects onto the eigenvectors of
/// rho0 - rho1 with eigenvalue >= 0 (zero eigenvalues go to Pi_0), Pi_1 = I - Pi_0.
HelstromResult helstrom_binary(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Helstrom optimum for a two-class ensemble. K > 2 needs a semidefinite
/// program, which is not provided; throws std::invalid_argument.
HelstromResult optimal_discrimination(const ClassEnsemble& ensemble);

/// 1/K + eps; K >= 2 and eps in (0, 1).
double psucc_bound(int num_classes, double eps);

}  // namespace qconc

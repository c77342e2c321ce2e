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

#include "qconc/state.hpp"

// Divergences are in bits (log base 2).

namespace qconc {

/// D2(rho || I/2^n) = log2(2^n Tr rho^2), in [0, n].
double renyi2_vs_mixed(const DensityMatrix& rho);

/// Petz-Renyi divergence of order 2, log2 Tr(rho^2 sigma^-1).
/// Throws std::domain_error if sigma has an eigenvalue <= 1e-10.
double petz_renyi2(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Tr|rho - sigma|, in [0, 2].
double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Squared-overlap fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qconc

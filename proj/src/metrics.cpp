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

#include "qconc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qconc {

namespace {

constexpr double kSingularTolerance = 1e-10;

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("density matrices differ in dimension");
}

// Round-off can leave eigenvalues slightly below zero.
double clipped_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

double renyi2_vs_mixed(const DensityMatrix& rho) {
  return std::log2(static_cast<double>(rho.dim()) * rho.purity());
}

double petz_renyi2(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const auto eig = hermitian_eigen(sigma.matrix());
  if (eig.values.back() <= kSingularTolerance) {
    throw std::domain_error("petz_renyi2: reference state is singular (min eigenvalue " +
                            std::to_string(eig.values.back()) + ")");
  }
  const ComplexMatrix sigma_inv = hermitian_function(eig, [](double l) { return 1.0 / l; });
  // Tr(rho^2 sigma^-1) = Tr(rho (rho sigma^-1)).
  const ComplexMatrix rho_sq = rho.matrix() * rho.matrix();
  Complex tr{};
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    for (std::size_t k = 0; k < rho.dim(); ++k) tr += rho_sq(r, k) * sigma_inv(k, r);
  }
  return std::log2(tr.real());
}

double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const auto eig = hermitian_eigen(rho.matrix() - sigma.matrix());
  double sum = 0.0;
  for (double l : eig.values) sum += std::abs(l);
  return sum;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  const auto eig = hermitian_eigen(rho.matrix());
  const ComplexMatrix sqrt_rho = hermitian_function(eig, clipped_sqrt);
  ComplexMatrix inner = sqrt_rho * sigma.matrix() * sqrt_rho;
  // Re-symmetrize against round-off before the second eigensolve.
  for (std::size_t r = 0; r < inner.rows(); ++r) {
    inner(r, r) = inner(r, r).real();
    for (std::size_t c = r + 1; c < inner.cols(); ++c) {
      const Complex avg = 0.5 * (inner(r, c) + std::conj(inner(c, r)));
      inner(r, c) = avg;
      inner(c, r) = std::conj(avg);
    }
  }
  double root_sum = 0.0;
  for (double l : hermitian_eigen(inner).values) root_sum += clipped_sqrt(l);
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

}  // namespace qconc

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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qconc {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  ComplexMatrix adjoint() const;
  Complex trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix lhs, Complex scale);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// max |m - m^dagger| entrywise; 0 for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

struct EigenDecomposition {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Sweeps over all (p, q) pairs, annihilating each off-diagonal entry with a
/// phase-adjusted Givens rotation, until the off-diagonal Frobenius norm drops
/// below 1e-12 (relative to max(1, ||m||_F)). Throws std::invalid_argument for
/// a non-Hermitian input (tolerance 1e-8) and std::runtime_error if 100 sweeps
/// do not converge.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);

/// V diag(f(lambda)) V^dagger for a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const EigenDecomposition& eig, F&& f) {
  const std::size_t dim = eig.values.size();
  ComplexMatrix out(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex vr = eig.vectors(r, k) * fk;
      for (std::size_t c = 0; c < dim; ++c) out(r, c) += vr * std::conj(eig.vectors(c, k));
    }
  }
  return out;
}

}  // namespace qconc

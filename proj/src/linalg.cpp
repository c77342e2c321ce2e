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

#include "qconc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qconc {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-8;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) sum += std::norm(a(r, c));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& v : data_) v *= scale;
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("matrix product shape mismatch");
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (const auto& v : m.data()) sum += std::norm(v);
  return std::sqrt(sum);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) sum += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(sum);
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = r; c < m.cols(); ++c) {
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    }
  }
  return worst;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianTolerance)) {
    throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian (defect " +
                                std::to_string(defect) + ")");
  }

  const std::size_t dim = m.rows();
  ComplexMatrix a = m;
  // Symmetrize so the rotations act on an exactly Hermitian matrix.
  for (std::size_t r = 0; r < dim; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < dim; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(dim);
  const double tolerance = kOffDiagonalTolerance * std::max(1.0, frobenius_norm(a));

  bool converged = off_diagonal_norm(a) < tolerance;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const Complex phase = apq / r;
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        // a <- a * J (columns p, q)
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        // a <- J^dagger * a (rows p, q)
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
    converged = off_diagonal_norm(a) < tolerance;
  }
  if (!converged) throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(dim), ComplexMatrix(dim, dim)};
  for (std::size_t k = 0; k < dim; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < dim; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace qconc

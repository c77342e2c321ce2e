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

// Reference implementations used as oracles by the tests. They are written
// independently of the library: dense Kronecker products instead of stride
// updates, textbook quadrature instead of closed forms.

#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "qconc/linalg.hpp"
#include "qconc/state.hpp"

namespace qconc::testing {

using Mat2 = std::array<Complex, 4>;

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

inline ComplexMatrix pauli(char p) {
  const Complex i{0.0, 1.0};
  switch (p) {
    case 'X': return mat2(0, 1, 1, 0);
    case 'Y': return mat2(0, -i, i, 0);
    case 'Z': return mat2(1, 0, 0, -1);
    default: return mat2(1, 0, 0, 1);
  }
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) out(r * b.rows() + p, c * b.cols() + q) = a(r, c) * b(p, q);
  return out;
}

/// exp(-i t P / 2) = cos(t/2) I - i sin(t/2) P.
inline ComplexMatrix rotation(char p, double t) {
  ComplexMatrix m = pauli('I') * Complex(std::cos(t / 2), 0.0);
  m += pauli(p) * Complex(0.0, -std::sin(t / 2));
  return m;
}

/// 2x2 matrix on `wire` of an n-qubit register, wire 0 leftmost factor.
inline ComplexMatrix embed(const ComplexMatrix& u, int wire, int n) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int w = 0; w < n; ++w) out = kron(out, w == wire ? u : pauli('I'));
  return out;
}

/// Controlled-U from projectors: |0><0|_c (x) I + |1><1|_c (x) U_t.
inline ComplexMatrix controlled(const ComplexMatrix& u, int control, int target, int n) {
  const ComplexMatrix p0 = mat2(1, 0, 0, 0), p1 = mat2(0, 0, 0, 1);
  ComplexMatrix a = ComplexMatrix::identity(1), b = ComplexMatrix::identity(1);
  for (int w = 0; w < n; ++w) {
    a = kron(a, w == control ? p0 : pauli('I'));
    b = kron(b, w == control ? p1 : (w == target ? u : pauli('I')));
  }
  return a + b;
}

inline ComplexMatrix dense_gate(const GateSpec& g, int n) {
  switch (g.kind) {
    case GateKind::RX: return embed(rotation('X', g.angles[0]), g.wires[0], n);
    case GateKind::RY: return embed(rotation('Y', g.angles[0]), g.wires[0], n);
    case GateKind::RZ: return embed(rotation('Z', g.angles[0]), g.wires[0], n);
    case GateKind::U3:
      return embed(rotation('Z', g.angles[2]) * rotation('Y', g.angles[1]) * rotation('Z', g.angles[0]),
                   g.wires[0], n);
    case GateKind::PauliX: return embed(pauli('X'), g.wires[0], n);
    case GateKind::PauliY: return embed(pauli('Y'), g.wires[0], n);
    case GateKind::PauliZ: return embed(pauli('Z'), g.wires[0], n);
    case GateKind::CNOT: return controlled(pauli('X'), g.wires[0], g.wires[1], n);
    case GateKind::CZ: return controlled(pauli('Z'), g.wires[0], g.wires[1], n);
  }
  return {};
}

inline std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

inline ComplexMatrix outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

inline ComplexMatrix dense_pauli(const std::string& letters) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (char c : letters) out = kron(out, pauli(c));
  return out;
}

inline std::vector<Complex> random_amplitudes(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  std::vector<Complex> v(dim);
  double norm = 0.0;
  for (auto& a : v) {
    a = {n01(rng), n01(rng)};
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

inline StateVector random_state(int n, std::mt19937_64& rng) {
  return StateVector(n, random_amplitudes(dimension_of(n), rng));
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    m(r, r) = n01(rng);
    for (std::size_t c = r + 1; c < dim; ++c) {
      m(r, c) = {n01(rng), n01(rng)};
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

/// G G^dagger / Tr, with G complex Gaussian: full rank almost surely.
inline DensityMatrix random_density(int n, std::mt19937_64& rng, std::size_t rank = 0) {
  const std::size_t dim = dimension_of(n);
  if (rank == 0) rank = dim;
  std::normal_distribution<double> n01;
  ComplexMatrix g(dim, rank);
  for (auto& x : g.data()) x = {n01(rng), n01(rng)};
  ComplexMatrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real(), 0.0);
  for (std::size_t r = 0; r < dim; ++r) {
    rho(r, r) = rho(r, r).real();
    for (std::size_t c = r + 1; c < dim; ++c) rho(c, r) = std::conj(rho(r, c));
  }
  return DensityMatrix(n, rho);
}

/// Nodes and weights of Gauss-Hermite quadrature (weight e^{-x^2}), by
/// Newton iteration on the orthonormal Hermite recurrence.
inline std::vector<std::pair<double, double>> gauss_hermite(int order) {
  std::vector<std::pair<double, double>> nodes(order);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  double z = 0.0;
  for (int i = 0; i < (order + 1) / 2; ++i) {
    if (i == 0) z = std::sqrt(2.0 * order + 1) - 1.85575 * std::pow(2.0 * order + 1, -1.0 / 6);
    else if (i == 1) z -= 1.14 * std::pow(order, 0.426) / z;
    else if (i == 2) z = 1.86 * z - 0.86 * nodes[0].first;
    else if (i == 3) z = 1.91 * z - 0.91 * nodes[1].first;
    else z = 2.0 * z - nodes[i - 2].first;
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * order) * p2;
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    nodes[i] = {z, 2.0 / (pp * pp)};
    nodes[order - 1 - i] = {-z, 2.0 / (pp * pp)};
  }
  return nodes;
}

/// E[f(x)] for x ~ N(mu, sigma^2) by Gauss-Hermite quadrature.
template <typename F>
double gaussian_expectation(F&& f, double mu, double sigma, int order = 64) {
  double sum = 0.0;
  for (const auto& [x, w] : gauss_hermite(order)) sum += w * f(mu + std::sqrt(2.0) * sigma * x);
  return sum / std::sqrt(std::numbers::pi);
}

}  // namespace qconc::testing

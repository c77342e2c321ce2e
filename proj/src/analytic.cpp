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

#include "qconc/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qconc {

namespace {

using P = PauliLetter;

constexpr double kPsdTolerance = 1e-9;

// Rows are indexed by (control, target) letters in (I, Z, X, Y) order.
constexpr PauliPairImage kCnotTable[4][4] = {
    {{P::I, P::I, 1}, {P::Z, P::Z, 1}, {P::I, P::X, 1}, {P::Z, P::Y, 1}},
    {{P::Z, P::I, 1}, {P::I, P::Z, 1}, {P::Z, P::X, 1}, {P::I, P::Y, 1}},
    {{P::X, P::X, 1}, {P::Y, P::Y, -1}, {P::X, P::I, 1}, {P::Y, P::Z, 1}},
    {{P::Y, P::X, 1}, {P::X, P::Y, 1}, {P::Y, P::I, 1}, {P::X, P::Z, -1}},
};

constexpr PauliPairImage kCzTable[4][4] = {
    {{P::I, P::I, 1}, {P::I, P::Z, 1}, {P::Z, P::X, 1}, {P::Z, P::Y, 1}},
    {{P::Z, P::I, 1}, {P::Z, P::Z, 1}, {P::I, P::X, 1}, {P::I, P::Y, 1}},
    {{P::X, P::Z, 1}, {P::X, P::I, 1}, {P::Y, P::Y, 1}, {P::Y, P::X, -1}},
    {{P::Y, P::Z, 1}, {P::Y, P::I, 1}, {P::X, P::Y, -1}, {P::X, P::X, 1}},
};

std::size_t pauli_count(int qubits) { return std::size_t{1} << (2 * qubits); }

std::size_t place_of(int qubits, int wire) { return std::size_t{1} << (2 * (qubits - 1 - wire)); }

// Masks describing P_s acting on basis columns: P_s|c> = i^y (-1)^{|c & z|} |c ^ flip>.
struct PauliMasks {
  std::size_t flip = 0;
  std::size_t z = 0;
  int y = 0;
};

PauliMasks masks_of(int qubits, std::size_t s) {
  PauliMasks m;
  for (int w = 0; w < qubits; ++w) {
    const auto letter = static_cast<P>((s / place_of(qubits, w)) & 3);
    const std::size_t bit = std::size_t{1} << (qubits - 1 - w);
    switch (letter) {
      case P::I: break;
      case P::Z: m.z |= bit; break;
      case P::X: m.flip |= bit; break;
      case P::Y: m.flip |= bit; m.z |= bit; ++m.y; break;
    }
  }
  return m;
}

Complex phase_of(const PauliMasks& m, std::size_t column) {
  static constexpr std::array<Complex, 4> kPowI = {Complex{1, 0}, Complex{0, 1}, Complex{-1, 0},
                                                   Complex{0, -1}};
  const double sign = (std::popcount(column & m.z) & 1) ? -1.0 : 1.0;
  return kPowI[m.y % 4] * sign;
}

TransferMatrix4 rotation_plane(int a, int b, double mu, double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("transfer matrix: sigma must be >= 0");
  // E[cos x] = exp(-sigma^2/2) cos(mu), E[sin x] = exp(-sigma^2/2) sin(mu).
  const double damp = std::exp(-0.5 * sigma * sigma);
  const double c = damp * std::cos(mu);
  const double s = damp * std::sin(mu);
  auto t = TransferMatrix4::identity();
  t.m[a][a] = c;
  t.m[a][b] = s;
  t.m[b][a] = -s;
  t.m[b][b] = c;
  return t;
}

// Y rotation mixes (Z, X); Z rotation mixes (X, Y).
TransferMatrix4 averaged_ry(double mu, double sigma) { return rotation_plane(1, 2, mu, sigma); }
TransferMatrix4 averaged_rz(double mu, double sigma) { return rotation_plane(2, 3, mu, sigma); }

void require_query(const BoundQuery& q) {
  if (q.qubits < 1) throw std::invalid_argument("bound query: qubits must be >= 1");
  if (!(q.sigma > 0.0)) throw std::invalid_argument("bound query: sigma must be > 0");
}

void require_depth(const BoundQuery& q) {
  if (q.depth < 1) throw std::invalid_argument("bound query: depth must be >= 1");
}

}  // namespace

char to_char(PauliLetter p) {
  static constexpr char kChars[] = {'I', 'Z', 'X', 'Y'};
  return kChars[static_cast<int>(p)];
}

PauliVector PauliVector::zero_state(int qubits) {
  if (qubits < 1 || qubits > 12) throw std::invalid_argument("PauliVector: qubits must be in [1, 12]");
  PauliVector v{qubits, std::vector<double>(pauli_count(qubits), 0.0)};
  // Tensor power of (1/2, 1/2, 0, 0): every string over {I, Z} gets 2^-n.
  const double value = std::ldexp(1.0, -qubits);
  for (std::size_t s = 0; s < v.coeffs.size(); ++s) {
    bool only_iz = true;
    for (int w = 0; w < qubits && only_iz; ++w) only_iz = ((s / place_of(qubits, w)) & 3) <= 1;
    if (only_iz) v.coeffs[s] = value;
  }
  return v;
}

std::size_t PauliVector::index_of(std::span<const PauliLetter> letters) const {
  if (letters.size() != static_cast<std::size_t>(qubits)) {
    throw std::invalid_argument("PauliVector::index_of: wrong letter count");
  }
  std::size_t s = 0;
  for (auto p : letters) s = 4 * s + static_cast<std::size_t>(p);
  return s;
}

PauliString PauliVector::string_of(std::size_t s) const {
  std::string letters(qubits, 'I');
  for (int w = 0; w < qubits; ++w) letters[w] = to_char(static_cast<P>((s / place_of(qubits, w)) & 3));
  return PauliString(letters);
}

double PauliVector::squared_norm() const {
  double sum = 0.0;
  for (double c : coeffs) sum += c * c;
  return sum;
}

TransferMatrix4 TransferMatrix4::identity() {
  TransferMatrix4 t;
  for (int i = 0; i < 4; ++i) t.m[i][i] = 1.0;
  return t;
}

TransferMatrix4 TransferMatrix4::operator*(const TransferMatrix4& rhs) const {
  TransferMatrix4 out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      double sum = 0.0;
      for (int k = 0; k < 4; ++k) sum += m[r][k] * rhs.m[k][c];
      out.m[r][c] = sum;
    }
  }
  return out;
}

std::array<double, 4> TransferMatrix4::singular_values() const {
  ComplexMatrix gram(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      double sum = 0.0;
      for (int k = 0; k < 4; ++k) sum += m[k][r] * m[k][c];
      gram(r, c) = sum;
    }
  }
  const auto eig = hermitian_eigen(gram);
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = std::sqrt(std::max(0.0, eig.values[i]));
  return out;
}

TransferMatrix4 averaged_rotation_transfer(RotationKind kind, std::span<const double> mu,
                                           std::span<const double> sigma) {
  const std::size_t arity = kind == RotationKind::U3 ? 3 : 1;
  if (mu.size() != arity || sigma.size() != arity) {
    throw std::invalid_argument("averaged_rotation_transfer: expected " + std::to_string(arity) +
                                " mean(s) and std(s)");
  }
  switch (kind) {
    case RotationKind::RY: return averaged_ry(mu[0], sigma[0]);
    case RotationKind::RZ: return averaged_rz(mu[0], sigma[0]);
    case RotationKind::U3:
      return averaged_rz(mu[0], sigma[0]) * averaged_ry(mu[1], sigma[1]) *
             averaged_rz(mu[2], sigma[2]);
  }
  throw std::invalid_argument("averaged_rotation_transfer: unknown kind");
}

SignedPermutation SignedPermutation::identity(std::size_t size) {
  SignedPermutation p{std::vector<std::uint32_t>(size), std::vector<std::int8_t>(size, 1)};
  for (std::size_t s = 0; s < size; ++s) p.target[s] = static_cast<std::uint32_t>(s);
  return p;
}

SignedPermutation SignedPermutation::then(const SignedPermutation& next) const {
  if (next.size() != size()) throw std::invalid_argument("SignedPermutation::then: size mismatch");
  SignedPermutation out = *this;
  for (std::size_t s = 0; s < size(); ++s) {
    out.target[s] = next.target[target[s]];
    out.sign[s] = static_cast<std::int8_t>(sign[s] * next.sign[target[s]]);
  }
  return out;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation out = *this;
  for (std::size_t s = 0; s < size(); ++s) {
    out.target[target[s]] = static_cast<std::uint32_t>(s);
    out.sign[target[s]] = sign[s];
  }
  return out;
}

std::vector<double> SignedPermutation::apply(std::span<const double> in) const {
  if (in.size() != size()) throw std::invalid_argument("SignedPermutation::apply: size mismatch");
  std::vector<double> out(in.size(), 0.0);
  for (std::size_t s = 0; s < in.size(); ++s) out[target[s]] = sign[s] * in[s];
  return out;
}

PauliPairImage two_qubit_transition(GateKind kind, PauliLetter control, PauliLetter target) {
  const auto c = static_cast<int>(control);
  const auto t = static_cast<int>(target);
  switch (kind) {
    case GateKind::CNOT: return kCnotTable[c][t];
    case GateKind::CZ: return kCzTable[c][t];
    default:
      throw std::invalid_argument("two_qubit_transition: only CNOT and CZ are tabulated");
  }
}

SignedPermutation entangler_transfer(const EntanglerLayer& layer, int qubits, SignMode mode) {
  const std::size_t size = pauli_count(qubits);
  SignedPermutation total = SignedPermutation::identity(size);
  for (const auto& gate : layer) {
    if (gate.control < 0 || gate.control >= qubits || gate.target < 0 || gate.target >= qubits) {
      throw std::invalid_argument("entangler_transfer: wire out of range");
    }
    if (gate.control == gate.target) {
      throw std::invalid_argument("entangler_transfer: control and target overlap");
    }
    const std::size_t cp = place_of(qubits, gate.control);
    const std::size_t tp = place_of(qubits, gate.target);
    SignedPermutation step = SignedPermutation::identity(size);
    for (std::size_t s = 0; s < size; ++s) {
      const auto cl = static_cast<P>((s / cp) & 3);
      const auto tl = static_cast<P>((s / tp) & 3);
      const auto image = two_qubit_transition(gate.kind, cl, tl);
      const std::size_t base = s - static_cast<std::size_t>(cl) * cp - static_cast<std::size_t>(tl) * tp;
      step.target[s] = static_cast<std::uint32_t>(base + static_cast<std::size_t>(image.control) * cp +
                                                  static_cast<std::size_t>(image.target) * tp);
      step.sign[s] = static_cast<std::int8_t>(mode == SignMode::Exact ? image.sign : 1);
    }
    total = total.then(step);
  }
  return total;
}

PauliVector pauli_vector_of(const DensityMatrix& rho) {
  const int n = rho.num_qubits();
  PauliVector v{n, std::vector<double>(pauli_count(n), 0.0)};
  const double scale = std::ldexp(1.0, -n);
  for (std::size_t s = 0; s < v.coeffs.size(); ++s) {
    const PauliMasks m = masks_of(n, s);
    // Tr(P rho) = sum_c P[c^f, c] rho[c, c^f]
    Complex sum{};
    for (std::size_t c = 0; c < rho.dim(); ++c) sum += phase_of(m, c) * rho(c, c ^ m.flip);
    v.coeffs[s] = sum.real() * scale;
  }
  return v;
}

DensityMatrix density_of(const PauliVector& v) {
  const int n = v.qubits;
  if (v.coeffs.size() != pauli_count(n)) throw std::invalid_argument("density_of: wrong coefficient count");
  const std::size_t dim = dimension_of(n);
  ComplexMatrix rho(dim, dim);
  for (std::size_t s = 0; s < v.coeffs.size(); ++s) {
    const double c = v.coeffs[s];
    if (c == 0.0) continue;
    const PauliMasks m = masks_of(n, s);
    for (std::size_t col = 0; col < dim; ++col) rho(col ^ m.flip, col) += c * phase_of(m, col);
  }
  return DensityMatrix(n, std::move(rho));
}

void apply_local_transfer(PauliVector& v, int qubit, const TransferMatrix4& t) {
  if (qubit < 0 || qubit >= v.qubits) throw std::invalid_argument("apply_local_transfer: bad qubit");
  const std::size_t place = place_of(v.qubits, qubit);
  const std::size_t block = 4 * place;
  auto& c = v.coeffs;
  for (std::size_t hi = 0; hi < c.size(); hi += block) {
    for (std::size_t lo = 0; lo < place; ++lo) {
      const std::size_t s = hi + lo;
      const double in[4] = {c[s], c[s + place], c[s + 2 * place], c[s + 3 * place]};
      for (int b = 0; b < 4; ++b) {
        c[s + b * place] = in[0] * t.m[0][b] + in[1] * t.m[1][b] + in[2] * t.m[2][b] + in[3] * t.m[3][b];
      }
    }
  }
}

PauliVector analytic_average_pauli(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g,
                                   SignMode signs) {
  spec.validate();
  g.validate();
  if (g.size() != spec.feature_count()) {
    throw std::invalid_argument("analytic_average_state: expected " +
                                std::to_string(spec.feature_count()) + " features, got " +
                                std::to_string(g.size()));
  }
  PauliVector v = PauliVector::zero_state(spec.qubits);
  const bool u3 = spec.family == EncodingFamily::U3Entangled;
  for (int d = 0; d < spec.depth; ++d) {
    for (int j = 0; j < spec.qubits; ++j) {
      const std::size_t i = spec.feature_index(j, d, 0);
      const std::size_t arity = u3 ? 3 : 1;
      const auto t = averaged_rotation_transfer(u3 ? RotationKind::U3 : RotationKind::RY,
                                                std::span(g.means).subspan(i, arity),
                                                std::span(g.stds).subspan(i, arity));
      apply_local_transfer(v, j, t);
    }
    if (d + 1 < spec.depth && !spec.entanglers.empty()) {
      v.coeffs = entangler_transfer(spec.entanglers[d], spec.qubits, signs).apply(v.coeffs);
    }
  }
  return v;
}

DensityMatrix analytic_average_state(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g,
                                     const AnalyticOptions& options) {
  DensityMatrix rho = density_of(analytic_average_pauli(spec, g, options.signs));
  if (options.check_psd) {
    const double lowest = rho.min_eigenvalue();
    if (lowest < -kPsdTolerance) {
      throw std::logic_error("analytic_average_state: result is not PSD (min eigenvalue " +
                             std::to_string(lowest) + ")");
    }
  }
  return rho;
}

double analytic_divergence_to_mixed(const EncodingCircuitSpec& spec, const GaussianFeatureSpec& g) {
  const PauliVector v = analytic_average_pauli(spec, g);
  // Tr(rho^2) = 2^n sum c^2, D2 = log2(2^n Tr rho^2).
  return std::log2(v.squared_norm()) + 2.0 * spec.qubits;
}

double bound_warmup(const BoundQuery& q) {
  require_query(q);
  require_depth(q);
  return q.qubits * std::log1p(std::exp(-q.depth * q.sigma * q.sigma)) / std::numbers::ln2;
}

double bound_general(const BoundQuery& q) {
  require_query(q);
  require_depth(q);
  return std::log1p((std::ldexp(1.0, q.qubits) - 1.0) * std::exp(-q.depth * q.sigma * q.sigma)) / std::numbers::ln2;
}

double bound_ry_layered(const BoundQuery& q) {
  require_query(q);
  require_depth(q);
  const int pairs = q.depth / 2;
  return std::log1p((std::ldexp(1.0, q.qubits) - 1.0) * std::exp(-pairs * q.sigma * q.sigma)) / std::numbers::ln2;
}

double depth_threshold_exact(const BoundQuery& q) {
  require_query(q);
  if (!(q.eps > 0.0 && q.eps < 1.0)) throw std::invalid_argument("bound query: eps must be in (0, 1)");
  return ((q.qubits + 4) * std::numbers::ln2 + 2.0 * std::log(1.0 / q.eps)) / (q.sigma * q.sigma);
}

int depth_threshold(const BoundQuery& q) {
  return static_cast<int>(std::ceil(depth_threshold_exact(q)));
}

}  // namespace qconc

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "qconc/analytic.hpp"
#include "qconc/datasets.hpp"
#include "qconc/metrics.hpp"
#include "test_support.hpp"

namespace qconc {
namespace {

constexpr char kOrder[] = "IZXY";  // coefficient order of one qubit

std::string letters_of(std::size_t s, int n) {
  std::string out(n, 'I');
  for (int w = n - 1; w >= 0; --w, s /= 4) out[w] = kOrder[s % 4];
  return out;
}

// T[a][b] = Tr(P_b U P_a U^dagger) / 2 averaged over the angle grid.
TransferMatrix4 quadrature_transfer(const std::vector<char>& axes, const std::vector<double>& mu,
                                    const std::vector<double>& sigma, int order) {
  const auto nodes = testing::gauss_hermite(order);
  TransferMatrix4 t;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    double weight = 1.0;
    ComplexMatrix u = ComplexMatrix::identity(2);
    for (std::size_t k = 0; k < axes.size(); ++k) {
      const auto [x, w] = nodes[idx[k]];
      weight *= w / std::sqrt(std::numbers::pi);
      // Rotations apply in list order: later axes multiply from the left.
      u = testing::rotation(axes[k], mu[k] + std::sqrt(2.0) * sigma[k] * x) * u;
    }
    for (int a = 0; a < 4; ++a) {
      const auto conj = u * testing::pauli(kOrder[a]) * u.adjoint();
      for (int b = 0; b < 4; ++b) t.m[a][b] += weight * 0.5 * (testing::pauli(kOrder[b]) * conj).trace().real();
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == nodes.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return t;
}

void expect_transfer_near(const TransferMatrix4& a, const TransferMatrix4& b, double tol) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(a.m[r][c], b.m[r][c], tol) << "entry " << r << "," << c;
}

TEST(PauliVector, MaximallyMixedAndZeroState) {
  for (int n = 1; n <= 3; ++n) {
    const auto v = pauli_vector_of(DensityMatrix::maximally_mixed(n));
    EXPECT_NEAR(v.coeffs[0], 1.0 / dimension_of(n), 1e-15);
    for (std::size_t s = 1; s < v.coeffs.size(); ++s) EXPECT_NEAR(v.coeffs[s], 0.0, 1e-15);
  }
  const auto z = pauli_vector_of(density_from_state(StateVector(1)));
  const std::vector<double> want = {0.5, 0.5, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(z.coeffs[i], want[i], 1e-15);
  const auto z3 = PauliVector::zero_state(3);
  const auto z3_dense = pauli_vector_of(density_from_state(StateVector(3)));
  for (std::size_t s = 0; s < z3.coeffs.size(); ++s) EXPECT_NEAR(z3.coeffs[s], z3_dense.coeffs[s], 1e-15);
}

TEST(PauliVector, DenseOracleAndRoundTrip) {
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 3; ++n) {
    const auto rho = testing::random_density(n, rng);
    const auto v = pauli_vector_of(rho);
    EXPECT_NEAR(v.coeffs[0], 1.0 / dimension_of(n), 1e-14);
    for (std::size_t s = 0; s < v.coeffs.size(); ++s) {
      const auto letters = letters_of(s, n);
      EXPECT_EQ(v.string_of(s).letters(), letters);
      const double want = (testing::dense_pauli(letters) * rho.matrix()).trace().real() / dimension_of(n);
      EXPECT_NEAR(v.coeffs[s], want, 1e-14);
    }
    EXPECT_LT(frobenius_distance(density_of(v).matrix(), rho.matrix()), 1e-12);
    EXPECT_NEAR(dimension_of(n) * v.squared_norm(), rho.purity(), 1e-12);
  }
}

TEST(TransferMatrix, U3ZeroAngleIsIdentity) {
  const std::vector<double> zero(3, 0.0);
  expect_transfer_near(averaged_rotation_transfer(RotationKind::U3, zero, zero), TransferMatrix4::identity(), 1e-15);
}

TEST(TransferMatrix, LargeSigmaDephasesCompletely) {
  const std::vector<double> mu = {0.3, -1.0, 2.0}, sigma(3, 40.0);
  TransferMatrix4 want;
  want.m[0][0] = 1.0;
  expect_transfer_near(averaged_rotation_transfer(RotationKind::U3, mu, sigma), want, 1e-15);
}

TEST(TransferMatrix, RyUnitSigmaMatchesQuadrature) {
  const std::vector<double> mu = {0.0}, sigma = {1.0};
  const auto t = averaged_rotation_transfer(RotationKind::RY, mu, sigma);
  const double a = testing::gaussian_expectation([](double x) { return std::cos(x); }, 0.0, 1.0);
  EXPECT_NEAR(a, 0.606531, 1e-6);
  EXPECT_NEAR(t.m[1][1], a, 1e-12);
  EXPECT_NEAR(t.m[2][2], a, 1e-12);
  EXPECT_NEAR(t.m[3][3], 1.0, 1e-15);
  expect_transfer_near(t, quadrature_transfer({'Y'}, mu, sigma, 64), 1e-12);
}

TEST(TransferMatrix, RandomRotationsMatchQuadrature) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> mu(-3.0, 3.0), sd(0.0, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> m1 = {mu(rng)}, s1 = {sd(rng)};
    expect_transfer_near(averaged_rotation_transfer(RotationKind::RY, m1, s1), quadrature_transfer({'Y'}, m1, s1, 64),
                         1e-11);
    expect_transfer_near(averaged_rotation_transfer(RotationKind::RZ, m1, s1), quadrature_transfer({'Z'}, m1, s1, 64),
                         1e-11);
    const std::vector<double> m3 = {mu(rng), mu(rng), mu(rng)}, s3 = {sd(rng), sd(rng), sd(rng)};
    // U3(x1, x2, x3) = RZ(x3) RY(x2) RZ(x1): RZ(x1) acts first.
    expect_transfer_near(averaged_rotation_transfer(RotationKind::U3, m3, s3),
                         quadrature_transfer({'Z', 'Y', 'Z'}, m3, s3, 28), 1e-10);
  }
}

TEST(TransferMatrix, ArityAndSigmaErrors) {
  const std::vector<double> one = {0.0}, three = {0.0, 0.0, 0.0}, neg = {-0.1};
  EXPECT_THROW(averaged_rotation_transfer(RotationKind::U3, one, one), std::invalid_argument);
  EXPECT_THROW(averaged_rotation_transfer(RotationKind::RY, three, three), std::invalid_argument);
  EXPECT_THROW(averaged_rotation_transfer(RotationKind::RY, one, neg), std::invalid_argument);
}

TEST(TransferMatrix, SingularValuesContract) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> mu(-7.0, 7.0), sigma0(0.05, 2.0), extra(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const double s0 = sigma0(rng);
    const std::vector<double> m = {mu(rng), mu(rng), mu(rng)};
    const std::vector<double> s = {s0 + extra(rng), s0 + extra(rng), s0 + extra(rng)};
    const auto t = averaged_rotation_transfer(RotationKind::U3, m, s);
    EXPECT_EQ(t.m[0][0], 1.0);
    for (int k = 1; k < 4; ++k) {
      EXPECT_EQ(t.m[0][k], 0.0);
      EXPECT_EQ(t.m[k][0], 0.0);
    }
    const auto sv = t.singular_values();
    ASSERT_NEAR(sv[0], 1.0, 1e-12);
    ASSERT_LE(sv[1], std::exp(-s0 * s0 / 2) + 1e-10);
  }
}

TEST(TransitionTable, SelectedRows) {
  using L = PauliLetter;
  auto zz = two_qubit_transition(GateKind::CNOT, L::Z, L::Z);
  EXPECT_EQ(zz.control, L::I);
  EXPECT_EQ(zz.target, L::Z);
  EXPECT_EQ(zz.sign, 1);
  auto yy = two_qubit_transition(GateKind::CNOT, L::Y, L::Y);
  EXPECT_EQ(yy.control, L::X);
  EXPECT_EQ(yy.target, L::Z);
  EXPECT_EQ(yy.sign, -1);
  auto xy = two_qubit_transition(GateKind::CZ, L::X, L::Y);
  EXPECT_EQ(xy.control, L::Y);
  EXPECT_EQ(xy.target, L::X);
  EXPECT_EQ(xy.sign, -1);
}

TEST(TransitionTable, AllRowsMatchConjugation) {
  for (GateKind kind : {GateKind::CNOT, GateKind::CZ}) {
    const auto g = testing::dense_gate({kind, {}, {0, 1}}, 2);
    for (int c = 0; c < 4; ++c) {
      for (int t = 0; t < 4; ++t) {
        const std::string in = {kOrder[c], kOrder[t]};
        const auto image = g * testing::dense_pauli(in) * g.adjoint();
        const auto row = two_qubit_transition(kind, static_cast<PauliLetter>(c), static_cast<PauliLetter>(t));
        const std::string out = {to_char(row.control), to_char(row.target)};
        EXPECT_LT(frobenius_distance(image, testing::dense_pauli(out) * Complex(row.sign, 0.0)), 1e-14)
            << to_string(kind) << " " << in << " -> " << (row.sign < 0 ? "-" : "") << out;
      }
    }
  }
}

TEST(EntanglerTransfer, MatchesDenseConjugationOnRandomLayers) {
  std::mt19937_64 rng(41);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      EntanglerLayer layer;
      const int gates = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < gates; ++k) {
        const int c = static_cast<int>(rng() % n);
        const int t = (c + 1 + static_cast<int>(rng() % (n - 1))) % n;
        layer.push_back({rng() % 2 ? GateKind::CNOT : GateKind::CZ, c, t});
      }
      ComplexMatrix u = ComplexMatrix::identity(dimension_of(n));
      for (const auto& e : layer) u = testing::dense_gate({e.kind, {}, {e.control, e.target}}, n) * u;
      const auto perm = entangler_transfer(layer, n);
      std::set<std::uint32_t> seen;
      for (std::size_t s = 0; s < perm.size(); ++s) {
        const auto image = u * testing::dense_pauli(letters_of(s, n)) * u.adjoint();
        const auto want = testing::dense_pauli(letters_of(perm.target[s], n)) * Complex(perm.sign[s], 0.0);
        ASSERT_LT(frobenius_distance(image, want), 1e-13);
        seen.insert(perm.target[s]);
      }
      EXPECT_EQ(seen.size(), perm.size());
      const auto round = perm.then(perm.inverse());
      for (std::size_t s = 0; s < perm.size(); ++s) {
        EXPECT_EQ(round.target[s], s);
        EXPECT_EQ(round.sign[s], 1);
      }
      for (auto sign : entangler_transfer(layer, n, SignMode::DropSigns).sign) EXPECT_EQ(sign, 1);
    }
  }
}

TEST(EntanglerTransfer, RejectsCoincidentWires) {
  EXPECT_THROW(entangler_transfer({{GateKind::CNOT, 1, 1}}, 2), std::invalid_argument);
  EXPECT_THROW(entangler_transfer({{GateKind::CNOT, 0, 2}}, 2), std::invalid_argument);
}

TEST(AnalyticAverage, SingleQubitClosedForm) {
  const auto spec = EncodingCircuitSpec::make(EncodingFamily::RyProduct, 1, 1);
  const GaussianFeatureSpec g{{0.0}, {0.8}};
  const auto rho = analytic_average_state(spec, g);
  const double a = std::exp(-0.32);
  EXPECT_NEAR(rho(0, 0).real(), (1 + a) / 2, 1e-15);
  EXPECT_NEAR(rho(1, 1).real(), (1 - a) / 2, 1e-15);
  EXPECT_NEAR(rho(0, 0).real(), 0.863074, 1e-6);
  EXPECT_NEAR(std::abs(rho(0, 1)), 0.0, 1e-15);
  // Quadrature over the encoded pure states.
  const double p0 = testing::gaussian_expectation([](double x) { return std::pow(std::cos(x / 2), 2); }, 0.0, 0.8);
  EXPECT_NEAR(rho(0, 0).real(), p0, 1e-13);
}

TEST(AnalyticAverage, TwoQubitEntangledMatchesQuadrature) {
  // StronglyEntanglingRy n=2, D=2: four Gaussian angles, tensor quadrature.
  const auto spec = EncodingCircuitSpec::make(EncodingFamily::StronglyEntanglingRy, 2, 2);
  const GaussianFeatureSpec g{{0.4, -1.1, 2.0, 0.7}, {0.8, 0.5, 1.0, 0.3}};
  const auto nodes = testing::gauss_hermite(16);
  ComplexMatrix want(4, 4);
  std::array<std::size_t, 4> idx{};
  for (;;) {
    double w = 1.0;
    std::vector<double> x(4);
    for (int k = 0; k < 4; ++k) {
      x[k] = g.means[k] + std::sqrt(2.0) * g.stds[k] * nodes[idx[k]].first;
      w *= nodes[idx[k]].second / std::sqrt(std::numbers::pi);
    }
    want += testing::outer(encode(spec, x).amplitudes()) * Complex(w, 0.0);
    int k = 0;
    while (k < 4 && ++idx[k] == nodes.size()) idx[k++] = 0;
    if (k == 4) break;
  }
  EXPECT_LT(frobenius_distance(analytic_average_state(spec, g).matrix(), want), 1e-12);
}

TEST(AnalyticAverage, ZeroSigmaIsEncodedMeanState) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> mu(-3.0, 3.0);
  for (auto family : {EncodingFamily::RyProduct, EncodingFamily::U3Entangled, EncodingFamily::StronglyEntanglingRy}) {
    for (int n = 1; n <= 3; ++n) {
      auto spec = EncodingCircuitSpec::make(family, n, 3);
      if (family == EncodingFamily::U3Entangled && n > 1) spec.entanglers[1] = {{GateKind::CZ, 0, n - 1}};
      GaussianFeatureSpec g{std::vector<double>(spec.feature_count()), std::vector<double>(spec.feature_count(), 0.0)};
      for (auto& m : g.means) m = mu(rng);
      const auto want = density_from_state(encode(spec, g.means));
      EXPECT_LT(frobenius_distance(analytic_average_state(spec, g).matrix(), want.matrix()), 1e-12);
    }
  }
}

TEST(AnalyticAverage, U3EntangledMatchesMonteCarlo) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> mu(0.0, 2 * std::numbers::pi);
  const auto spec = EncodingCircuitSpec::make(EncodingFamily::U3Entangled, 2, 3);
  GaussianFeatureSpec g{std::vector<double>(spec.feature_count()), std::vector<double>(spec.feature_count(), 0.8)};
  for (auto& m : g.means) m = mu(rng);
  const auto exact = analytic_average_state(spec, g);
  const auto mc = monte_carlo_average(spec, g, 200000, SeededStream(123));
  EXPECT_LT(frobenius_distance(exact.matrix(), mc.matrix()), 5e-3);
}

TEST(AnalyticAverage, DroppingSignsChangesTheStateButKeepsTheBound) {
  const auto spec = EncodingCircuitSpec::make(EncodingFamily::U3Entangled, 2, 2);
  GaussianFeatureSpec g{std::vector<double>(12), std::vector<double>(12, 0.3)};
  for (std::size_t i = 0; i < 12; ++i) g.means[i] = 0.5 + 0.37 * static_cast<double>(i);
  const auto exact = analytic_average_pauli(spec, g);
  const auto unsigned_ = analytic_average_pauli(spec, g, SignMode::DropSigns);
  const double bound = std::exp2(bound_general({2, 2, 0.3})) / 16.0;  // sum c_s^2 <= 2^{bound} / 4^n
  EXPECT_LE(exact.squared_norm(), bound + 1e-15);
  EXPECT_LE(unsigned_.squared_norm(), bound + 1e-15);
  double diff = 0.0;
  for (std::size_t s = 0; s < exact.coeffs.size(); ++s) diff += std::abs(exact.coeffs[s] - unsigned_.coeffs[s]);
  EXPECT_GT(diff, 1e-3);
}

TEST(AnalyticAverage, RejectsLayoutMismatch) {
  const auto spec = EncodingCircuitSpec::make(EncodingFamily::U3Entangled, 2, 2);
  EXPECT_THROW(analytic_average_state(spec, {{0.0}, {1.0}}), std::invalid_argument);
}

TEST(Bounds, WarmupMatchesFormula) {
  // Independent evaluation; see the decisions ledger for the spec's rounded decimals.
  EXPECT_NEAR(bound_warmup({1, 1, 0.8}), std::log2(1 + std::exp(-0.64)), 1e-15);
  EXPECT_NEAR(bound_warmup({1, 1, 0.8}), 0.610976315, 1e-9);
  EXPECT_NEAR(bound_warmup({2, 1, 0.8}), 1.22195263, 1e-8);
  double prev = bound_warmup({3, 1, 0.5});
  for (int d = 2; d < 400; ++d) {
    const double b = bound_warmup({3, d, 0.5});
    EXPECT_LT(b, prev);
    prev = b;
  }
  EXPECT_LT(prev, 1e-40);
  EXPECT_GT(prev, 0.0);
}

TEST(Bounds, GeneralMatchesFormula) {
  EXPECT_NEAR(bound_general({2, 1, 0.8}), std::log2(1 + 3 * std::exp(-0.64)), 1e-15);
  EXPECT_NEAR(bound_general({2, 1, 0.8}), 1.36842042, 1e-8);
  for (int d = 1; d < 20; ++d) {
    for (double s : {0.1, 0.8, 2.0}) EXPECT_DOUBLE_EQ(bound_general({1, d, s}), bound_warmup({1, d, s}));
  }
  EXPECT_LT(bound_general({4, 1000, 0.8}), 1e-100);
  EXPECT_THROW(bound_general({2, 0, 0.8}), std::invalid_argument);
  EXPECT_THROW(bound_general({2, 1, 0.0}), std::invalid_argument);
  EXPECT_THROW(bound_warmup({2, 1, -0.8}), std::invalid_argument);
  EXPECT_NEAR(bound_ry_layered({3, 5, 0.8}), std::log2(1 + 7 * std::exp(-2 * 0.64)), 1e-15);
}

TEST(Bounds, DepthThreshold) {
  EXPECT_NEAR(depth_threshold_exact({4, 1, 0.8, 0.1}), (8 * std::log(2.0) + 2 * std::log(10.0)) / 0.64, 1e-12);
  EXPECT_NEAR(depth_threshold_exact({4, 1, 0.8, 0.1}), 15.860, 1e-3);
  EXPECT_EQ(depth_threshold({4, 1, 0.8, 0.1}), 16);
  EXPECT_EQ(depth_threshold({1, 1, 1.0, 0.99}), 4);
  EXPECT_NEAR(depth_threshold_exact({3, 1, 1.6, 0.2}), depth_threshold_exact({3, 1, 0.8, 0.2}) / 4, 1e-12);
  EXPECT_THROW(depth_threshold({4, 1, 0.8, 0.0}), std::invalid_argument);
  EXPECT_THROW(depth_threshold({4, 1, 0.8, 1.0}), std::invalid_argument);
  EXPECT_THROW(depth_threshold({4, 1, 0.0, 0.1}), std::invalid_argument);
}

TEST(Bounds, WarmupIsTightForRyProduct) {
  for (int n : {1, 2, 4, 6}) {
    for (int d = 1; d <= 14; ++d) {
      const SyntheticTaskSpec task{EncodingFamily::RyProduct, n, d, 0.8};
      const double d2 = analytic_divergence_to_mixed(task.encoder(), synthetic_spec(task, 0));
      EXPECT_NEAR(d2, bound_warmup({n, d, 0.8}), 1e-9) << "n=" << n << " D=" << d;
    }
  }
}

TEST(Bounds, GeneralHoldsForRandomU3Specs) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> mu(0.0, 2 * std::numbers::pi), sd(0.8, 1.5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const int d = 1 + static_cast<int>(rng() % 8);
    auto spec = EncodingCircuitSpec::make(EncodingFamily::U3Entangled, n, d);
    for (auto& layer : spec.entanglers) {
      layer.clear();
      if (n == 1) continue;
      const int gates = static_cast<int>(rng() % (2 * n));
      for (int k = 0; k < gates; ++k) {
        const int c = static_cast<int>(rng() % n);
        layer.push_back({rng() % 2 ? GateKind::CNOT : GateKind::CZ, c, (c + 1 + static_cast<int>(rng() % (n - 1))) % n});
      }
    }
    GaussianFeatureSpec g;
    for (std::size_t i = 0; i < spec.feature_count(); ++i) {
      g.means.push_back(mu(rng));
      g.stds.push_back(sd(rng));
    }
    EXPECT_LE(analytic_divergence_to_mixed(spec, g), bound_general({n, d, 0.8}) + 1e-9);
    const auto rho = analytic_average_state(spec, g);
    EXPECT_NEAR(analytic_divergence_to_mixed(spec, g), renyi2_vs_mixed(rho), 1e-10);
  }
}

TEST(Bounds, GeneralHoldsForRzRyLayers) {
  // U3 with the last angle fixed is an RZ-RY layer, which keeps two rotation axes.
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> mu(0.0, 2 * std::numbers::pi), sd(0.8, 1.2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const int d = 1 + trial % 6;
    const auto spec = EncodingCircuitSpec::make(EncodingFamily::U3Entangled, n, d);
    GaussianFeatureSpec g;
    for (std::size_t i = 0; i < spec.feature_count(); ++i) {
      g.means.push_back(mu(rng));
      g.stds.push_back(i % 3 == 2 ? 0.0 : sd(rng));
    }
    EXPECT_LE(analytic_divergence_to_mixed(spec, g), bound_general({n, d, 0.8}) + 1e-9);
  }
}

}  // namespace
}  // namespace qconc

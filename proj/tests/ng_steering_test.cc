// Copyright 2026 The cvsteer Authors
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

#include "cvsteer/ng_steering.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "testing/random_states.h"

namespace cvsteer {
namespace {

using testing::random_orthogonal;
using testing::random_real_state;

FockDensity lossy_rho(double r, double eta, int n) {
  return fock_density(apply_loss(tmsv_covariance(r), eta), n, n);
}

TEST(CorrelationMatrix, ProductStateHasNoCorrelations) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 3; ++n) {
    const FockDensity rho = product_density(random_real_state(n, rng, 0.9), random_real_state(n, rng, 0.7));
    const CorrelationMatrix c = correlation_matrix(rho, n, n);
    EXPECT_LT(c.entries.cwiseAbs().maxCoeff(), 1e-15);
    const double rhs = criterion_rhs(c, Direction::BtoA);
    EXPECT_NEAR(ng_margin(c, Direction::BtoA), -rhs, 1e-15);
    EXPECT_FALSE(ng_steerable(rho, n, n, Direction::BtoA).steerable);
  }
}

TEST(CorrelationMatrix, PureTmsvDiagonalProjectorEntry) {
  const FockDensity rho = fock_density(tmsv_covariance(0.5), 2, 2);
  const CorrelationMatrix c = correlation_matrix(rho, 2, 2);
  const double p = 2.0 / (std::cosh(1.0) + 1.0);  // rho_0000 = <lambda_0> on either side
  EXPECT_NEAR(c.entries(0, 0), p - p * p, 1e-14);
}

TEST(CorrelationMatrix, PlusMinusPairsVanishForLossyTmsv) {
  for (double r : {0.2, 0.7, 1.1}) {
    for (double eta : {0.3, 0.45, 0.8}) {
      const CorrelationMatrix c = correlation_matrix(lossy_rho(r, eta, 3), 3, 3);
      // Indices 3..5 are lambda^+, 6..8 lambda^-.
      for (int i = 3; i < 6; ++i)
        for (int j = 6; j < 9; ++j) {
          EXPECT_NEAR(c.entries(i, j), 0.0, 1e-12);
          EXPECT_NEAR(c.entries(j, i), 0.0, 1e-12);
        }
    }
  }
}

TEST(CorrelationMatrix, EntriesAreBoundedByOne) {
  for (double r : {0.3, 1.0, 1.8}) {
    const CorrelationMatrix c = correlation_matrix(lossy_rho(r, 0.6, 3), 3, 3);
    EXPECT_LE(c.entries.cwiseAbs().maxCoeff(), 1.0);
  }
}

TEST(CorrelationMatrix, RejectsLevelsAboveCutoff) {
  const FockDensity rho = lossy_rho(0.4, 0.5, 2);
  EXPECT_THROW(correlation_matrix(rho, 3, 2), std::invalid_argument);
}

TEST(CorrelationMatrix, SmallerLevelsReuseLargerCutoff) {
  const CorrelationMatrix big = correlation_matrix(lossy_rho(0.4, 0.5, 4), 2, 2);
  const CorrelationMatrix exact = correlation_matrix(lossy_rho(0.4, 0.5, 2), 2, 2);
  EXPECT_LT((big.entries - exact.entries).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CriterionRhs, ProductVacuumIsZero) {
  Eigen::MatrixXd vac = Eigen::MatrixXd::Zero(2, 2);
  vac(0, 0) = 1.0;
  EXPECT_NEAR(criterion_rhs(correlation_matrix(product_density(vac, vac), 2, 2), Direction::BtoA), 0.0, 1e-15);
}

TEST(CriterionRhs, MixedQubitOnTrustedSide) {
  Eigen::MatrixXd vac = Eigen::MatrixXd::Zero(2, 2);
  vac(0, 0) = 1.0;
  const Eigen::MatrixXd mixed = 0.5 * Eigen::MatrixXd::Identity(2, 2);
  const CorrelationMatrix c = correlation_matrix(product_density(mixed, vac), 2, 2);
  EXPECT_NEAR(criterion_rhs(c, Direction::BtoA), std::sqrt(0.5), 1e-15);
  // Roles exchanged: trusted vacuum factor 1 - 1 = 0.
  EXPECT_NEAR(criterion_rhs(c, Direction::AtoB), 0.0, 1e-15);
}

TEST(CriterionRhs, TrustedFactorIsNonNegative) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const FockDensity rho = product_density(random_real_state(3, rng, 0.6), random_real_state(3, rng));
    const CorrelationMatrix c = correlation_matrix(rho, 3, 3);
    EXPECT_GE(c.weight_a - c.mean_a.squaredNorm(), -1e-12);
  }
}

TEST(NgSteerable, DetectsBelowGaussianBoundary) {
  const auto v = ng_steerable(lossy_rho(0.4, 0.45, 2), 2, 2, Direction::BtoA);
  EXPECT_TRUE(v.steerable);
  EXPECT_EQ(v.criterion, Criterion::Tloo);
}

TEST(NgSteerable, MissesStrongSqueezingBelowBoundary) {
  EXPECT_FALSE(ng_steerable(lossy_rho(1.2, 0.45, 2), 2, 2, Direction::BtoA).steerable);
}

TEST(NgSteerable, PureTmsvSteersBothWays) {
  for (double r : {0.1, 0.5, 1.0, 1.5}) {
    const FockDensity rho = fock_density(tmsv_covariance(r), 2, 2);
    EXPECT_TRUE(ng_steerable(rho, 2, 2, Direction::BtoA).steerable) << r;
    EXPECT_TRUE(ng_steerable(rho, 2, 2, Direction::AtoB).steerable) << r;
  }
}

TEST(NgSteerable, AtoBEqualsBtoAOfSwappedState) {
  const FockDensity rho = fock_density(apply_gain(tmsv_covariance(0.4), 1.16), 3, 3);
  EXPECT_NEAR(ng_steerable(rho, 2, 3, Direction::AtoB).margin, ng_steerable(rho.swapped(), 3, 2, Direction::BtoA).margin,
              1e-14);
}

TEST(NgSteerable, SingleCrossingInTransmittance) {
  for (double r : {0.2, 0.5, 0.8}) {
    int changes = 0;
    bool prev = false;
    for (int i = 1; i <= 99; ++i) {
      const bool s = ng_steerable(lossy_rho(r, 0.01 * i, 2), 2, 2, Direction::BtoA).steerable;
      if (i > 1 && s != prev) ++changes;
      prev = s;
    }
    EXPECT_EQ(changes, 1) << r;
  }
}

TEST(OptimalGain, VanishesWithoutCorrelation) {
  std::mt19937_64 rng(23);
  const FockDensity rho = product_density(random_real_state(2, rng), random_real_state(2, rng));
  EXPECT_NEAR(optimal_gain(correlation_matrix(rho, 2, 2), Direction::BtoA), 0.0, 1e-15);
}

TEST(OptimalGain, MinimizesTheoremLhs) {
  const TlooSet s2 = build_tloos(2);
  const TlooSet s3 = build_tloos(3);
  for (double r : {0.3, 0.9}) {
    for (double eta : {0.3, 0.7}) {
      const FockDensity rho = lossy_rho(r, eta, 3);
      for (const auto& [a, b] : {std::pair{s2, s2}, std::pair{s3, s3}, std::pair{s2, s3}}) {
        const double g = optimal_gain(correlation_matrix(rho, a, b), Direction::BtoA);
        const TheoremTerms t = theorem_terms(rho, a, b);
        const double analytic_min = t.trusted_variance - t.cross_covariance * t.cross_covariance / t.untrusted_variance;
        EXPECT_NEAR(t.lhs(g), analytic_min, 1e-10);
        double scan_min = 1e300;
        for (double x = -5.0; x <= 5.0; x += 1e-3) {
          scan_min = std::min(scan_min, eval_theorem_lhs(rho, a, b, x).lhs);
        }
        EXPECT_GE(scan_min, t.lhs(g) - 1e-12);
        EXPECT_LT(scan_min - t.lhs(g), 1e-5);
      }
    }
  }
}

TEST(TheoremLhs, ZeroGainReducesToLocalUncertainty) {
  const TlooSet s = build_tloos(2);
  for (double r : {0.2, 0.8, 1.4}) {
    const FockDensity rho = lossy_rho(r, 0.4, 2);
    const TheoremSides sides = eval_theorem_lhs(rho, s, s, 0.0);
    const auto u = uncertainty_sum(rho.reduced_a().cast<std::complex<double>>(), s);
    EXPECT_NEAR(sides.lhs, u.sum_of_variances, 1e-14);
    EXPECT_NEAR(sides.bound, u.bound, 1e-14);
    EXPECT_GE(sides.lhs, sides.bound);
  }
}

TEST(TheoremLhs, ProductStatesNeverViolate) {
  std::mt19937_64 rng(24);
  for (int n = 2; n <= 3; ++n) {
    const TlooSet s = build_tloos(n);
    for (int trial = 0; trial < 50; ++trial) {
      const FockDensity rho = product_density(random_real_state(n, rng, 0.9), random_real_state(n, rng, 0.8));
      const double g = optimal_gain(correlation_matrix(rho, s, s), Direction::BtoA);
      const TheoremSides sides = eval_theorem_lhs(rho, s, s, g);
      EXPECT_GE(sides.lhs, sides.bound - 1e-12);
    }
  }
}

TEST(SingularRotations, DiagonalInputGivesSignedPermutations) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
  c(0, 0) = 0.1;
  c(1, 1) = -0.4;
  c(2, 2) = 0.25;
  c(3, 3) = 0.05;
  const SingularRotations rot = singular_rotations(c);
  for (const Eigen::MatrixXd& o : {rot.rows_a, rot.rows_b}) {
    for (int i = 0; i < 4; ++i) {
      int nonzero = 0;
      for (int j = 0; j < 4; ++j) {
        if (std::abs(o(i, j)) > 1e-12) {
          ++nonzero;
          EXPECT_NEAR(std::abs(o(i, j)), 1.0, 1e-12);
        }
      }
      EXPECT_EQ(nonzero, 1);
    }
  }
  const Eigen::MatrixXd d = rot.rows_a * c * rot.rows_b.transpose();
  EXPECT_LT((d - Eigen::MatrixXd(rot.singular_values.asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(rot.singular_values.sum(), 0.8, 1e-15);
}

TEST(Witness, ViolatesTheoremAtDetectedPoint) {
  const FockDensity rho = lossy_rho(0.4, 0.45, 2);
  const Witness w = build_witness(rho, 2, 2);
  EXPECT_LT(w.lhs, w.bound);
  EXPECT_NEAR(w.diagonal_sum, trace_norm(correlation_matrix(rho, 2, 2).entries), 1e-9);
  const CorrelationMatrix rotated = correlation_matrix(rho, w.rotated_a, w.rotated_b);
  EXPECT_NEAR(w.gain, -w.trace_norm / rotated.variance_b.sum(), 1e-9);
  // Rotated correlation matrix is diagonal.
  Eigen::MatrixXd off = rotated.entries;
  off.diagonal().setZero();
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Witness, MixedLevelsAndReversedDirection) {
  const FockDensity rho = fock_density(apply_gain(tmsv_covariance(0.4), 1.16), 3, 3);
  ASSERT_TRUE(ng_steerable(rho, 2, 2, Direction::AtoB).steerable);
  const Witness w = build_witness(rho, 2, 2, Direction::AtoB);
  EXPECT_LT(w.lhs, w.bound);
  int tried = 0;
  for (double r : {0.2, 0.4, 0.6}) {
    for (double eta : {0.3, 0.4, 0.45, 0.7, 0.9}) {
      const FockDensity lossy = lossy_rho(r, eta, 3);
      for (auto [n, m] : {std::pair{2, 3}, std::pair{3, 2}}) {
        if (!ng_steerable(lossy, n, m, Direction::BtoA).steerable) continue;
        ++tried;
        const Witness mixed = build_witness(lossy, n, m);
        EXPECT_LT(mixed.lhs, mixed.bound);
        EXPECT_NEAR(mixed.diagonal_sum, mixed.trace_norm, 1e-9);
      }
    }
  }
  EXPECT_GT(tried, 0);
}

TEST(Witness, RefusesNonViolatingState) {
  EXPECT_THROW(build_witness(lossy_rho(1.2, 0.45, 2), 2, 2), std::invalid_argument);
}

TEST(Witness, RandomRotationsFindNoViolationAtUndetectedPoint) {
  std::mt19937_64 rng(25);
  const FockDensity rho = lossy_rho(1.2, 0.4, 2);
  ASSERT_FALSE(ng_steerable(rho, 2, 2, Direction::BtoA).steerable);
  const TlooSet s = build_tloos(2);
  for (int trial = 0; trial < 50; ++trial) {
    const TlooSet a = rotate_tloos(s, random_orthogonal(4, rng));
    const TlooSet b = rotate_tloos(s, random_orthogonal(4, rng));
    const TheoremTerms t = theorem_terms(rho, a, b);
    for (double g = -5.0; g <= 5.0; g += 0.01) EXPECT_GE(t.lhs(g), t.bound);
  }
}

TEST(TraceNorm, InvariantUnderRotations) {
  std::mt19937_64 rng(26);
  const FockDensity rho = lossy_rho(0.6, 0.5, 3);
  for (int n = 2; n <= 3; ++n) {
    const TlooSet s = build_tloos(n);
    const double base = trace_norm(correlation_matrix(rho, s, s).entries);
    for (int trial = 0; trial < 10; ++trial) {
      const TlooSet a = rotate_tloos(s, random_orthogonal(n * n, rng));
      const TlooSet b = rotate_tloos(s, random_orthogonal(n * n, rng));
      EXPECT_NEAR(trace_norm(correlation_matrix(rho, a, b).entries), base, 1e-10);
      EXPECT_NEAR(trace_norm(correlation_matrix(rho, a, s).entries), base, 1e-10);
    }
  }
}

}  // namespace
}  // namespace cvsteer

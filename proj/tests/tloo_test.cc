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

#include "cvsteer/tloo.h"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cvsteer/fock_rep.h"
#include "testing/random_states.h"

namespace cvsteer {
namespace {

using testing::random_mixed_state;
using testing::random_orthogonal;
using testing::random_pure_state;

double max_gram_error(const TlooSet& set) {
  double err = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = 0; j < set.size(); ++j) {
      const std::complex<double> t = (set[i] * set[j]).trace();
      err = std::max(err, std::abs(t - (i == j ? 1.0 : 0.0)));
    }
  return err;
}

double completeness_error(const TlooSet& set) {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(set.level, set.level);
  for (const auto& a : set.observables) sum += a * a;
  return (sum - set.level * Eigen::MatrixXcd::Identity(set.level, set.level)).cwiseAbs().maxCoeff();
}

TEST(BuildTloos, Counts) {
  EXPECT_EQ(build_tloos(2).size(), 4u);
  EXPECT_EQ(build_tloos(3).size(), 9u);
  EXPECT_THROW(build_tloos(1), std::invalid_argument);
}

TEST(BuildTloos, QubitLevelMatrices) {
  const TlooSet s = build_tloos(2);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(s[0](0, 0), 1.0);
  EXPECT_EQ(s[1](1, 1), 1.0);
  EXPECT_NEAR(s[2](0, 1).real(), h, 1e-16);
  EXPECT_NEAR(s[2](1, 0).real(), h, 1e-16);
  EXPECT_NEAR(s[3](0, 1).imag(), -h, 1e-16);
  EXPECT_NEAR(s[3](1, 0).imag(), h, 1e-16);
  EXPECT_NEAR(std::abs((s[2] * s[3]).trace()), 0.0, 1e-16);
}

TEST(BuildTloos, CanonicalOrderForThreeLevels) {
  const TlooSet s = build_tloos(3);
  // + family: (0,1), (0,2), (1,2); then - family in the same order.
  EXPECT_NE(s[3](0, 1), 0.0);
  EXPECT_NE(s[4](0, 2), 0.0);
  EXPECT_NE(s[5](1, 2), 0.0);
  EXPECT_NE(s[8](1, 2).imag(), 0.0);
  EXPECT_EQ(s[8](1, 2).real(), 0.0);
}

TEST(BuildTloos, OrthonormalHermitianAndComplete) {
  for (int n = 2; n <= 6; ++n) {
    const TlooSet s = build_tloos(n);
    for (const auto& a : s.observables) EXPECT_LT((a - a.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(max_gram_error(s), 1e-12) << n;
    EXPECT_LT(completeness_error(s), 1e-12) << n;
  }
}

TEST(UncertaintySum, VacuumSaturates) {
  Eigen::MatrixXcd vac = Eigen::MatrixXcd::Zero(2, 2);
  vac(0, 0) = 1.0;
  const auto u = uncertainty_sum(vac, build_tloos(2));
  EXPECT_NEAR(u.sum_of_variances, 1.0, 1e-15);
  EXPECT_NEAR(u.bound, 1.0, 1e-15);
}

TEST(UncertaintySum, MaximallyMixedQubit) {
  const Eigen::MatrixXcd mixed = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  const auto u = uncertainty_sum(mixed, build_tloos(2));
  EXPECT_NEAR(u.sum_of_variances, 1.5, 1e-15);
  EXPECT_NEAR(u.bound, 1.0, 1e-15);
}

TEST(UncertaintySum, ThermalMarginalOfLossyTmsv) {
  const FockDensity rho = fock_density(apply_loss(tmsv_covariance(0.5), 0.5), 2, 2);
  for (const Eigen::MatrixXd& local : {rho.reduced_a(), rho.reduced_b()}) {
    const auto u = uncertainty_sum(local.cast<std::complex<double>>(), build_tloos(2));
    EXPECT_GE(u.sum_of_variances, u.bound - 1e-9);
    EXPECT_LT(u.bound, 1.0);  // leakage out of the two-level space
  }
}

TEST(UncertaintySum, RejectsBadInput) {
  EXPECT_THROW(uncertainty_sum(Eigen::MatrixXcd::Identity(3, 3) / 3.0, build_tloos(2)), std::invalid_argument);
  EXPECT_THROW(uncertainty_sum(Eigen::MatrixXcd::Identity(2, 2), build_tloos(2)), std::invalid_argument);
  Eigen::MatrixXcd skew = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  skew(0, 1) = 0.2;
  EXPECT_THROW(uncertainty_sum(skew, build_tloos(2)), std::invalid_argument);
}

TEST(UncertaintySum, RandomMixedStatesSatisfyBound) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  for (int n = 2; n <= 4; ++n) {
    const TlooSet s = build_tloos(n);
    for (int trial = 0; trial < 200; ++trial) {
      const Eigen::MatrixXcd rho = random_mixed_state(n, rng, weight(rng));
      const auto u = uncertainty_sum(rho, s);
      EXPECT_GE(u.sum_of_variances, u.bound - 1e-9);
      // Cauchy chain: sum <A_j>^2 <= <1_n>.
      EXPECT_LE(expectations(rho, s).squaredNorm(), rho.trace().real() + 1e-9);
    }
  }
}

TEST(UncertaintySum, RandomPureStatesSaturate) {
  std::mt19937_64 rng(12);
  for (int n = 2; n <= 4; ++n) {
    const TlooSet s = build_tloos(n);
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = uncertainty_sum(random_pure_state(n, rng), s);
      EXPECT_NEAR(u.sum_of_variances, u.bound, 1e-9);
    }
  }
}

TEST(RotateTloos, IdentityKeepsSet) {
  const TlooSet s = build_tloos(3);
  const TlooSet t = rotate_tloos(s, Eigen::MatrixXd::Identity(9, 9));
  for (std::size_t j = 0; j < s.size(); ++j) EXPECT_TRUE(t[j].isApprox(s[j]));
}

TEST(RotateTloos, PermutationReorders) {
  const TlooSet s = build_tloos(2);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(4, 4);
  p(0, 2) = p(1, 0) = p(2, 3) = p(3, 1) = 1.0;
  const TlooSet t = rotate_tloos(s, p);
  EXPECT_TRUE(t[0].isApprox(s[2]));
  EXPECT_TRUE(t[3].isApprox(s[1]));
  EXPECT_LT(max_gram_error(t), 1e-12);
  EXPECT_LT(completeness_error(t), 1e-12);
}

TEST(RotateTloos, RandomRotationPreservesInvariants) {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 3; ++n) {
    const TlooSet s = build_tloos(n);
    for (int trial = 0; trial < 50; ++trial) {
      const TlooSet t = rotate_tloos(s, random_orthogonal(n * n, rng));
      EXPECT_LT(max_gram_error(t), 1e-10);
      EXPECT_LT(completeness_error(t), 1e-10);
      const Eigen::MatrixXcd rho = random_mixed_state(n, rng, 0.8);
      EXPECT_NEAR(expectations(rho, t).squaredNorm(), expectations(rho, s).squaredNorm(), 1e-10);
      const auto u = uncertainty_sum(rho, t);
      EXPECT_GE(u.sum_of_variances, u.bound - 1e-9);
    }
  }
}

TEST(RotateTloos, RejectsNonOrthogonalOrMisSized) {
  const TlooSet s = build_tloos(2);
  Eigen::MatrixXd o = Eigen::MatrixXd::Identity(4, 4);
  o(0, 1) = 0.1;
  EXPECT_THROW(rotate_tloos(s, o), std::invalid_argument);
  EXPECT_THROW(rotate_tloos(s, Eigen::MatrixXd::Identity(9, 9)), std::invalid_argument);
}

}  // namespace
}  // namespace cvsteer

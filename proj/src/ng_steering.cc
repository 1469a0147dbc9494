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

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cvsteer {

namespace {

constexpr double kRealTolerance = 1e-12;

void check_levels(const FockDensity& rho, int level_a, int level_b) {
  if (level_a > rho.cutoff_a() || level_b > rho.cutoff_b()) {
    throw std::invalid_argument("TLOO levels (" + std::to_string(level_a) + ", " + std::to_string(level_b) +
                                ") exceed Fock cutoffs (" + std::to_string(rho.cutoff_a()) + ", " +
                                std::to_string(rho.cutoff_b()) + ")");
  }
}

Eigen::MatrixXcd reduced_block(const Eigen::MatrixXd& reduced, int level) {
  return reduced.topLeftCorner(level, level).cast<std::complex<double>>();
}

// <A (x) B> = sum rho_{m1 m2 n1 n2} A_{n1 m1} B_{n2 m2}.
double joint_expectation(const FockDensity& rho, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const auto na = static_cast<int>(a.rows());
  const auto nb = static_cast<int>(b.rows());
  std::complex<double> total = 0.0;
  for (int m1 = 0; m1 < na; ++m1)
    for (int n1 = 0; n1 < na; ++n1) {
      const std::complex<double> a_el = a(n1, m1);
      if (a_el == 0.0) continue;
      for (int m2 = 0; m2 < nb; ++m2)
        for (int n2 = 0; n2 < nb; ++n2) {
          const double r = rho(m1, m2, n1, n2);
          if (r != 0.0) total += r * a_el * b(n2, m2);
        }
    }
  if (std::abs(total.imag()) > kRealTolerance) {
    throw std::logic_error("joint expectation of Hermitian observables has an imaginary part");
  }
  return total.real();
}

struct Oriented {
  double trusted_weight;
  double untrusted_weight;
  int untrusted_level;
  double trusted_sq_means;
  double untrusted_sq_means;
};

Oriented orient(const CorrelationMatrix& corr, Direction direction) {
  if (direction == Direction::BtoA) {
    return {corr.weight_a, corr.weight_b, corr.level_b, corr.mean_a.squaredNorm(), corr.mean_b.squaredNorm()};
  }
  return {corr.weight_b, corr.weight_a, corr.level_a, corr.mean_b.squaredNorm(), corr.mean_a.squaredNorm()};
}

}  // namespace

CorrelationMatrix correlation_matrix(const FockDensity& rho, const TlooSet& tloos_a, const TlooSet& tloos_b) {
  check_levels(rho, tloos_a.level, tloos_b.level);
  const Eigen::MatrixXcd local_a = reduced_block(rho.reduced_a(), tloos_a.level);
  const Eigen::MatrixXcd local_b = reduced_block(rho.reduced_b(), tloos_b.level);

  CorrelationMatrix corr;
  corr.level_a = tloos_a.level;
  corr.level_b = tloos_b.level;
  corr.mean_a = expectations(local_a, tloos_a);
  corr.mean_b = expectations(local_b, tloos_b);
  corr.variance_a = variances(local_a, tloos_a);
  corr.variance_b = variances(local_b, tloos_b);
  corr.weight_a = local_a.trace().real();
  corr.weight_b = local_b.trace().real();
  corr.entries.resize(static_cast<Eigen::Index>(tloos_a.size()), static_cast<Eigen::Index>(tloos_b.size()));
  for (std::size_t i = 0; i < tloos_a.size(); ++i) {
    for (std::size_t j = 0; j < tloos_b.size(); ++j) {
      corr.entries(i, j) = joint_expectation(rho, tloos_a[i], tloos_b[j]) - corr.mean_a[i] * corr.mean_b[j];
    }
  }
  return corr;
}

CorrelationMatrix correlation_matrix(const FockDensity& rho, int n, int n_prime) {
  check_levels(rho, n, n_prime);
  return correlation_matrix(rho, build_tloos(n), build_tloos(n_prime));
}

double trace_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().sum();
}

double criterion_rhs(const CorrelationMatrix& corr, Direction direction) {
  const Oriented o = orient(corr, direction);
  const double trusted = o.trusted_weight - o.trusted_sq_means;
  const double untrusted = o.untrusted_level * o.untrusted_weight - o.untrusted_sq_means;
  if (trusted < -kRealTolerance || untrusted < -kRealTolerance) {
    throw std::domain_error("negative factor under the square root: inconsistent local statistics");
  }
  return std::sqrt(std::max(trusted, 0.0) * std::max(untrusted, 0.0));
}

double ng_margin(const CorrelationMatrix& corr, Direction direction) {
  return trace_norm(corr.entries) - criterion_rhs(corr, direction);
}

SteeringVerdict ng_steerable(const FockDensity& rho, int n, int n_prime, Direction direction) {
  const CorrelationMatrix corr = correlation_matrix(rho, n, n_prime);
  const double norm = trace_norm(corr.entries);
  const double rhs = criterion_rhs(corr, direction);
  std::ostringstream detail;
  detail.precision(10);
  detail << "levels " << n << "x" << n_prime << ", trace norm " << norm << ", bound " << rhs;
  return make_verdict(Criterion::Tloo, direction, norm - rhs, detail.str());
}

double optimal_gain(const CorrelationMatrix& corr, Direction direction) {
  const Eigen::Index paired = std::min(corr.entries.rows(), corr.entries.cols());
  const double diagonal = corr.entries.topLeftCorner(paired, paired).diagonal().sum();
  const double untrusted = direction == Direction::BtoA ? corr.variance_b.sum() : corr.variance_a.sum();
  if (!(untrusted > 0.0)) throw std::domain_error("untrusted party has zero total variance");
  return -diagonal / untrusted;
}

TheoremTerms theorem_terms(const FockDensity& rho, const TlooSet& tloos_a, const TlooSet& tloos_b,
                           Direction direction) {
  check_levels(rho, tloos_a.level, tloos_b.level);
  const Eigen::MatrixXcd local_a = reduced_block(rho.reduced_a(), tloos_a.level);
  const Eigen::MatrixXcd local_b = reduced_block(rho.reduced_b(), tloos_b.level);
  const Eigen::VectorXd mean_a = expectations(local_a, tloos_a);
  const Eigen::VectorXd mean_b = expectations(local_b, tloos_b);

  double var_a = 0.0;
  for (std::size_t j = 0; j < tloos_a.size(); ++j) {
    var_a += (local_a * tloos_a[j] * tloos_a[j]).trace().real() - mean_a[j] * mean_a[j];
  }
  double var_b = 0.0;
  for (std::size_t j = 0; j < tloos_b.size(); ++j) {
    var_b += (local_b * tloos_b[j] * tloos_b[j]).trace().real() - mean_b[j] * mean_b[j];
  }
  double cross = 0.0;
  for (std::size_t j = 0; j < std::min(tloos_a.size(), tloos_b.size()); ++j) {
    cross += joint_expectation(rho, tloos_a[j], tloos_b[j]) - mean_a[j] * mean_b[j];
  }

  TheoremTerms t;
  t.cross_covariance = cross;
  if (direction == Direction::BtoA) {
    t.trusted_variance = var_a;
    t.untrusted_variance = var_b;
    t.bound = (tloos_a.level - 1) * local_a.trace().real();
  } else {
    t.trusted_variance = var_b;
    t.untrusted_variance = var_a;
    t.bound = (tloos_b.level - 1) * local_b.trace().real();
  }
  return t;
}

TheoremSides eval_theorem_lhs(const FockDensity& rho, const TlooSet& tloos_a, const TlooSet& tloos_b, double gain,
                              Direction direction) {
  const TheoremTerms t = theorem_terms(rho, tloos_a, tloos_b, direction);
  return {t.lhs(gain), t.bound};
}

SingularRotations singular_rotations(const Eigen::MatrixXd& c) {
  // O_A C O_B^T = diag(s) with O_A = U^T, O_B = V^T.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {svd.matrixU().transpose(), svd.matrixV().transpose(), svd.singularValues()};
}

Witness build_witness(const FockDensity& rho, int n, int n_prime, Direction direction) {
  const TlooSet base_a = build_tloos(n);
  const TlooSet base_b = build_tloos(n_prime);
  const CorrelationMatrix corr = correlation_matrix(rho, base_a, base_b);
  const double margin = ng_margin(corr, direction);
  if (!(margin > kMarginTolerance)) {
    throw std::invalid_argument("state does not violate the trace-norm criterion (margin " + std::to_string(margin) +
                                ")");
  }

  const SingularRotations rotations = singular_rotations(corr.entries);
  Witness w;
  w.direction = direction;
  w.trace_norm = rotations.singular_values.sum();
  w.rotated_a = rotate_tloos(base_a, rotations.rows_a);
  w.rotated_b = rotate_tloos(base_b, rotations.rows_b);

  const CorrelationMatrix rotated = correlation_matrix(rho, w.rotated_a, w.rotated_b);
  const Eigen::Index paired = std::min(rotated.entries.rows(), rotated.entries.cols());
  w.diagonal_sum = rotated.entries.topLeftCorner(paired, paired).diagonal().sum();
  if (std::abs(w.diagonal_sum - w.trace_norm) > 1e-9) {
    throw std::logic_error("rotated diagonal correlations do not sum to the trace norm");
  }

  w.gain = optimal_gain(rotated, direction);
  const TheoremSides sides = eval_theorem_lhs(rho, w.rotated_a, w.rotated_b, w.gain, direction);
  w.lhs = sides.lhs;
  w.bound = sides.bound;
  if (!(w.lhs < w.bound)) {
    throw std::logic_error("rotated observables do not violate the non-steering inequality");
  }
  return w;
}

}  // namespace cvsteer

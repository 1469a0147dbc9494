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

#ifndef CVSTEER_NG_STEERING_H_
#define CVSTEER_NG_STEERING_H_

#include <Eigen/Dense>

#include "cvsteer/fock_rep.h"
#include "cvsteer/steering_verdict.h"
#include "cvsteer/tloo.h"

namespace cvsteer {

/// C_ij = <A_i (x) B_j> - <A_i><B_j> for TLOO sets on mode A (rows) and
/// mode B (columns), plus the local statistics the criteria need.
struct CorrelationMatrix {
  int level_a = 0;
  int level_b = 0;
  Eigen::MatrixXd entries;
  Eigen::VectorXd mean_a;
  Eigen::VectorXd mean_b;
  Eigen::VectorXd variance_a;
  Eigen::VectorXd variance_b;
  /// <1_n> on each side.
  double weight_a = 0.0;
  double weight_b = 0.0;
};

/// Correlation matrix for arbitrary (e.g. rotated) TLOO sets. Joint terms
/// are exact from the truncated block, local terms come from the reduced
/// states. Throws std::invalid_argument if a set level exceeds its cutoff.
CorrelationMatrix correlation_matrix(const FockDensity& rho, const TlooSet& tloos_a, const TlooSet& tloos_b);

/// Correlation matrix for the canonical n- and n'-level sets.
CorrelationMatrix correlation_matrix(const FockDensity& rho, int n, int n_prime);

/// Sum of singular values.
double trace_norm(const Eigen::MatrixXd& m);

/// sqrt((<1_T> - sum <T_i>^2) (n_U <1_U> - sum <U_j>^2)) with T the trusted
/// party (A for BtoA) and U the untrusted party of level n_U. Throws
/// std::domain_error if either factor is below -1e-12.
double criterion_rhs(const CorrelationMatrix& corr, Direction direction);

/// ||C||_tr - criterion_rhs.
double ng_margin(const CorrelationMatrix& corr, Direction direction);

SteeringVerdict ng_steerable(const FockDensity& rho, int n, int n_prime, Direction direction);

/// g minimizing sum_j var(T_j (x) 1 + g 1 (x) U_j):
/// g = -sum_j C_jj / sum_j var(U_j). Throws std::domain_error if the
/// untrusted variance sum vanishes.
double optimal_gain(const CorrelationMatrix& corr, Direction direction);

/// Pieces of sum_j var(T_j (x) 1 + g 1 (x) U_j), which equals
/// trusted_variance + g^2 untrusted_variance + 2 g cross_covariance. Sets of
/// different size are paired index by index; unpaired observables only
/// contribute their own variance.
struct TheoremTerms {
  double trusted_variance = 0.0;
  double untrusted_variance = 0.0;
  double cross_covariance = 0.0;
  /// (n_T - 1) <1_T>
  double bound = 0.0;

  double lhs(double gain) const {
    return trusted_variance + gain * gain * untrusted_variance + 2.0 * gain * cross_covariance;
  }
};

/// Evaluates the terms directly from operator expectations of rho (no
/// correlation-matrix shortcut). `tloos_a` always acts on mode A.
TheoremTerms theorem_terms(const FockDensity& rho, const TlooSet& tloos_a, const TlooSet& tloos_b,
                           Direction direction = Direction::BtoA);

struct TheoremSides {
  double lhs = 0.0;
  double bound = 0.0;
};

/// Both sides of the non-steering inequality lhs >= bound for gain g. For
/// BtoA the trusted party is A; for AtoB it is B.
TheoremSides eval_theorem_lhs(const FockDensity& rho, const TlooSet& tloos_a, const TlooSet& tloos_b, double gain,
                              Direction direction = Direction::BtoA);

/// Orthogonal factors with rows_a * C * rows_b^T = diag(singular values).
/// Degenerate singular values leave the basis to the SVD routine.
struct SingularRotations {
  Eigen::MatrixXd rows_a;
  Eigen::MatrixXd rows_b;
  Eigen::VectorXd singular_values;
};

SingularRotations singular_rotations(const Eigen::MatrixXd& c);

/// Explicit violation of the non-steering inequality, built by rotating
/// both TLOO sets onto the singular vectors of C.
struct Witness {
  Direction direction = Direction::BtoA;
  TlooSet rotated_a;
  TlooSet rotated_b;
  double gain = 0.0;
  /// Sum of the diagonal of C recomputed in the rotated sets.
  double diagonal_sum = 0.0;
  double trace_norm = 0.0;
  double lhs = 0.0;
  double bound = 0.0;
};

/// Throws std::invalid_argument if the trace-norm criterion is not violated
/// (margin <= kMarginTolerance), std::logic_error if the rotated observables
/// fail to reproduce the violation.
Witness build_witness(const FockDensity& rho, int n, int n_prime, Direction direction = Direction::BtoA);

}  // namespace cvsteer

#endif  // CVSTEER_NG_STEERING_H_

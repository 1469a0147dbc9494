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

#ifndef CVSTEER_FOCK_REP_H_
#define CVSTEER_FOCK_REP_H_

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cvsteer/gaussian_core.h"

namespace cvsteer {

/// Largest per-variable order accepted by `hermite_at_zero`.
inline constexpr int kMaxHermiteOrder = 6;

/// (m1, m2, n1, n2) addressing <m1|_A <m2|_B rho |n1>_A |n2>_B.
using FockIndex = std::array<int, 4>;

/// Quadratic form of the Gaussian generating function, rows/cols ordered
/// (m1, m2, n1, n2).
struct RMatrix {
  Eigen::Matrix4d value;
};

/// R = B U [(gamma + 1)^-1 - 1/2] U^dag D, evaluated as a complex product.
/// Throws std::domain_error if gamma + 1 is singular or the product has an
/// imaginary part above 1e-12.
RMatrix r_matrix(const TwoModeCovariance& cov);

/// Closed-form entries of R for a standard-form covariance.
RMatrix r_matrix_closed_form(const TwoModeCovariance& cov);

/// Multivariate Hermite polynomial H^{R,0}_{m1,m2,n1,n2} at the origin,
/// i.e. (-1)^|m| m1! m2! n1! n2! times the Taylor coefficient of
/// y1^m1 y2^m2 y3^n1 y4^n2 in exp(-y^T R y). Computed by expanding
/// exp(-y^T R y) = prod_{i<=j} exp(q_ij y_i y_j) term by term.
///
/// Throws std::invalid_argument if any order is negative or exceeds
/// kMaxHermiteOrder.
double hermite_at_zero(const RMatrix& r, const FockIndex& orders);

/// Truncated two-mode density matrix with real elements, plus the exact
/// single-mode reduced states of each mode on the same cutoffs.
///
/// Elements are not renormalized: trace_weight() is the probability inside
/// the truncated space and is below one for any squeezed state. The reduced
/// states come from the full state, not from a partial trace of the
/// truncated block.
class FockDensity {
 public:
  FockDensity(int cutoff_a, int cutoff_b);

  int cutoff_a() const { return cutoff_a_; }
  int cutoff_b() const { return cutoff_b_; }

  double operator()(int m1, int m2, int n1, int n2) const { return elements_[offset(m1, m2, n1, n2)]; }
  double& operator()(int m1, int m2, int n1, int n2) { return elements_[offset(m1, m2, n1, n2)]; }
  double operator()(const FockIndex& i) const { return (*this)(i[0], i[1], i[2], i[3]); }

  /// Sum_{k,l} rho_{k l k l}.
  double trace_weight() const;

  const Eigen::MatrixXd& reduced_a() const { return reduced_a_; }
  const Eigen::MatrixXd& reduced_b() const { return reduced_b_; }
  void set_reduced(Eigen::MatrixXd reduced_a, Eigen::MatrixXd reduced_b);

  /// (n_A n_B) x (n_A n_B) matrix with row m1*n_B + m2 and column n1*n_B + n2.
  Eigen::MatrixXd as_matrix() const;

  /// Same state with the mode labels exchanged.
  FockDensity swapped() const;

 private:
  std::size_t offset(int m1, int m2, int n1, int n2) const {
    return ((static_cast<std::size_t>(m1) * cutoff_b_ + m2) * cutoff_a_ + n1) * cutoff_b_ + n2;
  }

  int cutoff_a_;
  int cutoff_b_;
  std::vector<double> elements_;
  Eigen::MatrixXd reduced_a_;
  Eigen::MatrixXd reduced_b_;
};

/// Fock elements of a zero-mean standard-form Gaussian state on cutoffs
/// (n_a, n_b). Reduced states are thermal with mean photon number (a-1)/2
/// and (b-1)/2. Throws std::domain_error for unphysical input,
/// std::invalid_argument for cutoffs outside [1, kMaxHermiteOrder + 1].
FockDensity fock_density(const TwoModeCovariance& cov, int n_a, int n_b);

/// Product state rho_A (x) rho_B. The inputs are taken as the exact reduced
/// states, so they should be supported inside their cutoffs.
FockDensity product_density(const Eigen::MatrixXd& rho_a, const Eigen::MatrixXd& rho_b);

/// Diagonal thermal state n^k / (1 + n)^{k+1} truncated to `cutoff` levels.
Eigen::MatrixXd thermal_state(double mean_photons, int cutoff);

/// Closed-form Fock element of a TMSV whose mode B passed a loss channel of
/// transmittance eta. Indices must lie in {0, 1, 2}.
double lossy_tmsv_closed_form(double r, double eta, const FockIndex& index);

/// Occupation of |k> in the thermal reduced state of mode B of a lossy TMSV,
/// with mean photon number eta (cosh 2r - 1) / 2. k in {0, 1, 2}.
double thermal_marginal(double r, double eta, int k);

}  // namespace cvsteer

#endif  // CVSTEER_FOCK_REP_H_

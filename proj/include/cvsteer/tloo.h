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

#ifndef CVSTEER_TLOO_H_
#define CVSTEER_TLOO_H_

#include <vector>

#include <Eigen/Dense>

namespace cvsteer {

/// n^2 Hermitian observables on the span of |0>, ..., |n-1>.
///
/// Canonical order from `build_tloos`:
///   1. lambda_k = |k><k|                               for k = 0..n-1
///   2. lambda_kl^+ = (|k><l| + |l><k|) / sqrt(2)         for k < l, row-major
///   3. lambda_kl^- = (|k><l| - |l><k|) / (sqrt(2) i)     for k < l, row-major
///
/// Any orthogonal recombination (see `rotate_tloos`) keeps
/// Tr(A_i A_j) = delta_ij and sum_j A_j^2 = n * 1_n.
struct TlooSet {
  int level = 0;
  std::vector<Eigen::MatrixXcd> observables;

  std::size_t size() const { return observables.size(); }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return observables[i]; }
};

/// Throws std::invalid_argument for n < 2.
TlooSet build_tloos(int n);

/// <A_j> = Tr(rho A_j) for every observable. `state` is an n x n block of
/// a (possibly subnormalized) single-mode density matrix.
Eigen::VectorXd expectations(const Eigen::MatrixXcd& state, const TlooSet& tloos);

/// <A_j^2> - <A_j>^2 for every observable.
Eigen::VectorXd variances(const Eigen::MatrixXcd& state, const TlooSet& tloos);

struct UncertaintySum {
  double sum_of_variances = 0.0;
  /// (n - 1) <1_n>
  double bound = 0.0;
};

/// Left- and right-hand side of sum_j var(A_j) >= (n - 1) <1_n>. Throws
/// std::invalid_argument on a dimension mismatch, a non-Hermitian state or
/// a trace above 1 + 1e-9.
UncertaintySum uncertainty_sum(const Eigen::MatrixXcd& state, const TlooSet& tloos);

/// True iff O^T O = 1 within `tolerance`.
bool is_orthogonal(const Eigen::MatrixXd& o, double tolerance = 1e-10);

/// A~_j = sum_l O_jl A_l. Throws std::invalid_argument unless O is an
/// orthogonal n^2 x n^2 matrix.
TlooSet rotate_tloos(const TlooSet& tloos, const Eigen::MatrixXd& o);

}  // namespace cvsteer

#endif  // CVSTEER_TLOO_H_

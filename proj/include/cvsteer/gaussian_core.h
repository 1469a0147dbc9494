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

#ifndef CVSTEER_GAUSSIAN_CORE_H_
#define CVSTEER_GAUSSIAN_CORE_H_

#include <Eigen/Dense>

namespace cvsteer {

// Conventions: quadratures X = (a + a^dag)/sqrt(2), P = (a - a^dag)/(sqrt(2) i)
// and covariance entries <{dr_i, dr_j}> - 2<dr_i><dr_j>, so the vacuum has
// covariance matrix identity. Every module uses this convention.

/// Absolute eigenvalue tolerance for all semidefiniteness tests.
inline constexpr double kPhysicalTolerance = 1e-10;

enum class Mode { A, B };

/// Two-mode covariance matrix in standard form
///
///     [ a   0   c1  0  ]
///     [ 0   a   0  -c2 ]
///     [ c1  0   b   0  ]
///     [ 0  -c2  0   b  ]
///
/// The struct itself does not enforce physicality; see `is_physical`.
struct TwoModeCovariance {
  double a = 1.0;
  double b = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;

  Eigen::Matrix4d matrix() const;

  /// Exchanges the roles of mode A and mode B.
  TwoModeCovariance swapped() const { return {b, a, c1, c2}; }

  friend bool operator==(const TwoModeCovariance&, const TwoModeCovariance&) = default;
};

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]].
Eigen::Matrix4d symplectic_form();

enum class ChannelKind { Loss, Gain };

/// A vacuum-noise Gaussian channel acting on one mode. `eta` is used for
/// loss, `gain` for amplification.
struct ChannelParams {
  ChannelKind kind = ChannelKind::Loss;
  double eta = 1.0;
  double gain = 1.0;
  Mode target = Mode::B;

  /// Throws std::invalid_argument unless eta in (0, 1] (loss) or gain >= 1.
  void validate() const;
  /// The active parameter: eta for loss, gain for amplification.
  double parameter() const { return kind == ChannelKind::Loss ? eta : gain; }
};

/// Two-mode squeezed vacuum: a = b = cosh 2r, c1 = c2 = sinh 2r.
TwoModeCovariance tmsv_covariance(double r);

/// Pure-loss channel of transmittance eta on one mode.
TwoModeCovariance apply_loss(const TwoModeCovariance& cov, double eta, Mode mode = Mode::B);

/// Phase-insensitive amplifier of gain G on one mode.
TwoModeCovariance apply_gain(const TwoModeCovariance& cov, double gain, Mode mode = Mode::B);

TwoModeCovariance apply_channel(const TwoModeCovariance& cov, const ChannelParams& channel);

/// Smallest eigenvalue of the Hermitian matrix gamma + i*Omega. Throws
/// std::invalid_argument if gamma is not symmetric.
double min_uncertainty_eigenvalue(const Eigen::Matrix4d& gamma);

/// True iff gamma + i*Omega >= -kPhysicalTolerance. Throws
/// std::invalid_argument if gamma is not symmetric.
bool is_physical(const Eigen::Matrix4d& gamma);
inline bool is_physical(const TwoModeCovariance& cov) { return is_physical(cov.matrix()); }

}  // namespace cvsteer

#endif  // CVSTEER_GAUSSIAN_CORE_H_

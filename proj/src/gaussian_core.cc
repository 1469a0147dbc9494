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

#include "cvsteer/gaussian_core.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace cvsteer {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

}  // namespace

Eigen::Matrix4d TwoModeCovariance::matrix() const {
  Eigen::Matrix4d m;
  // clang-format off
  m << a,   0.0, c1,  0.0,
       0.0, a,   0.0, -c2,
       c1,  0.0, b,   0.0,
       0.0, -c2, 0.0, b;
  // clang-format on
  return m;
}

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

void ChannelParams::validate() const {
  if (kind == ChannelKind::Loss) {
    if (!(eta > 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("loss transmittance must lie in (0, 1], got " + std::to_string(eta));
    }
  } else if (!(gain >= 1.0)) {
    throw std::invalid_argument("amplifier gain must be >= 1, got " + std::to_string(gain));
  }
}

TwoModeCovariance tmsv_covariance(double r) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument("squeezing must be non-negative, got " + std::to_string(r));
  }
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return {ch, ch, sh, sh};
}

TwoModeCovariance apply_loss(const TwoModeCovariance& cov, double eta, Mode mode) {
  ChannelParams{ChannelKind::Loss, eta, 1.0, mode}.validate();
  const double s = std::sqrt(eta);
  TwoModeCovariance out = cov;
  out.c1 *= s;
  out.c2 *= s;
  double& diag = mode == Mode::A ? out.a : out.b;
  diag = eta * diag + 1.0 - eta;
  return out;
}

TwoModeCovariance apply_gain(const TwoModeCovariance& cov, double gain, Mode mode) {
  ChannelParams{ChannelKind::Gain, 1.0, gain, mode}.validate();
  const double s = std::sqrt(gain);
  TwoModeCovariance out = cov;
  out.c1 *= s;
  out.c2 *= s;
  double& diag = mode == Mode::A ? out.a : out.b;
  diag = gain * diag + gain - 1.0;
  return out;
}

TwoModeCovariance apply_channel(const TwoModeCovariance& cov, const ChannelParams& channel) {
  channel.validate();
  return channel.kind == ChannelKind::Loss ? apply_loss(cov, channel.eta, channel.target)
                                           : apply_gain(cov, channel.gain, channel.target);
}

double min_uncertainty_eigenvalue(const Eigen::Matrix4d& gamma) {
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw std::invalid_argument("covariance matrix is not symmetric");
  }
  const Eigen::Matrix4cd h =
      gamma.cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * symplectic_form().cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_physical(const Eigen::Matrix4d& gamma) { return min_uncertainty_eigenvalue(gamma) >= -kPhysicalTolerance; }

}  // namespace cvsteer

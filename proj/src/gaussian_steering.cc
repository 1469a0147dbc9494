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

#include "cvsteer/gaussian_steering.h"

#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cvsteer/bisect.h"

namespace cvsteer {

std::string_view to_string(Criterion c) { return c == Criterion::Gaussian ? "gaussian" : "tloo"; }

std::string_view to_string(Direction d) { return d == Direction::BtoA ? "b-to-a" : "a-to-b"; }

Direction parse_direction(std::string_view text) {
  if (text == "b-to-a" || text == "BtoA") return Direction::BtoA;
  if (text == "a-to-b" || text == "AtoB") return Direction::AtoB;
  throw std::invalid_argument("unknown direction '" + std::string(text) + "' (expected b-to-a or a-to-b)");
}

SteeringVerdict make_verdict(Criterion criterion, Direction direction, double margin, std::string detail) {
  SteeringVerdict v{criterion, direction, margin > kMarginTolerance, margin, std::move(detail)};
  if (std::abs(margin) <= kMarginTolerance) {
    v.detail += v.detail.empty() ? "boundary" : "; boundary";
  }
  return v;
}

double gaussian_margin(const TwoModeCovariance& cov, Direction direction) {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  const int block = direction == Direction::BtoA ? 0 : 2;
  omega(block, block + 1) = 1.0;
  omega(block + 1, block) = -1.0;
  const Eigen::Matrix4cd h =
      cov.matrix().cast<std::complex<double>>() + std::complex<double>(0.0, 1.0) * omega.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return -solver.eigenvalues().minCoeff();
}

SteeringVerdict gaussian_steerable(const TwoModeCovariance& cov, Direction direction) {
  if (!is_physical(cov)) throw std::domain_error("covariance matrix violates the uncertainty relation");
  const double margin = gaussian_margin(cov, direction);
  std::ostringstream detail;
  detail << "min eigenvalue " << -margin;
  return make_verdict(Criterion::Gaussian, direction, margin, detail.str());
}

double gaussian_loss_boundary(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("loss boundary requires r > 0");
  const TwoModeCovariance tmsv = tmsv_covariance(r);
  auto margin = [&](double eta) { return gaussian_margin(apply_loss(tmsv, eta), Direction::BtoA); };
  const auto root = bisect_sign_change(margin, 1e-9, 1.0);
  if (!root) throw std::runtime_error("no BtoA Gaussian boundary in (0, 1]");
  return *root;
}

double gaussian_gain_boundary(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("gain boundary requires r > 0");
  const TwoModeCovariance tmsv = tmsv_covariance(r);
  auto margin = [&](double g) { return gaussian_margin(apply_gain(tmsv, g), Direction::AtoB); };
  // The AtoB window closes below G = 2.
  const auto root = bisect_sign_change(margin, 1.0, 2.0);
  if (!root) throw std::runtime_error("no AtoB Gaussian boundary in [1, 2]");
  return *root;
}

}  // namespace cvsteer

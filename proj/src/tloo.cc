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
#include <stdexcept>
#include <string>

namespace cvsteer {

namespace {

using C = std::complex<double>;

void check_state(const Eigen::MatrixXcd& state, const TlooSet& tloos) {
  if (state.rows() != tloos.level || state.cols() != tloos.level) {
    throw std::invalid_argument("state dimension " + std::to_string(state.rows()) + " does not match TLOO level " +
                                std::to_string(tloos.level));
  }
}

}  // namespace

TlooSet build_tloos(int n) {
  if (n < 2) throw std::invalid_argument("TLOO level must be at least 2, got " + std::to_string(n));
  TlooSet set{n, {}};
  set.observables.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    m(k, k) = 1.0;
    set.observables.push_back(std::move(m));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      m(k, l) = s;
      m(l, k) = s;
      set.observables.push_back(std::move(m));
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      // 1/(sqrt(2) i) = -i/sqrt(2)
      m(k, l) = C(0.0, -s);
      m(l, k) = C(0.0, s);
      set.observables.push_back(std::move(m));
    }
  }
  return set;
}

Eigen::VectorXd expectations(const Eigen::MatrixXcd& state, const TlooSet& tloos) {
  check_state(state, tloos);
  Eigen::VectorXd out(tloos.size());
  for (std::size_t j = 0; j < tloos.size(); ++j) out[j] = (state * tloos[j]).trace().real();
  return out;
}

Eigen::VectorXd variances(const Eigen::MatrixXcd& state, const TlooSet& tloos) {
  check_state(state, tloos);
  Eigen::VectorXd out(tloos.size());
  for (std::size_t j = 0; j < tloos.size(); ++j) {
    const double mean = (state * tloos[j]).trace().real();
    out[j] = (state * tloos[j] * tloos[j]).trace().real() - mean * mean;
  }
  return out;
}

UncertaintySum uncertainty_sum(const Eigen::MatrixXcd& state, const TlooSet& tloos) {
  check_state(state, tloos);
  if ((state - state.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("state is not Hermitian");
  }
  const double weight = state.trace().real();
  if (weight > 1.0 + 1e-9) throw std::invalid_argument("state trace exceeds one");
  return {variances(state, tloos).sum(), (tloos.level - 1) * weight};
}

bool is_orthogonal(const Eigen::MatrixXd& o, double tolerance) {
  if (o.rows() != o.cols()) return false;
  const Eigen::MatrixXd gram = o.transpose() * o;
  return (gram - Eigen::MatrixXd::Identity(o.rows(), o.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

TlooSet rotate_tloos(const TlooSet& tloos, const Eigen::MatrixXd& o) {
  const auto dim = static_cast<Eigen::Index>(tloos.size());
  if (o.rows() != dim || o.cols() != dim) {
    throw std::invalid_argument("rotation must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!is_orthogonal(o)) throw std::invalid_argument("rotation matrix is not orthogonal");
  TlooSet out{tloos.level, {}};
  out.observables.reserve(tloos.size());
  for (Eigen::Index j = 0; j < dim; ++j) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(tloos.level, tloos.level);
    for (Eigen::Index l = 0; l < dim; ++l) {
      if (o(j, l) != 0.0) m += o(j, l) * tloos[static_cast<std::size_t>(l)];
    }
    out.observables.push_back(std::move(m));
  }
  return out;
}

}  // namespace cvsteer

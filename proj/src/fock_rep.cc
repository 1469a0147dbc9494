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

#include "cvsteer/fock_rep.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace cvsteer {

namespace {

constexpr double kImaginaryTolerance = 1e-12;

double factorial(int k) { return std::tgamma(k + 1.0); }

void check_cutoff(int cutoff, const char* name) {
  if (cutoff < 1 || cutoff > kMaxHermiteOrder + 1) {
    throw std::invalid_argument(std::string(name) + " must lie in [1, " + std::to_string(kMaxHermiteOrder + 1) +
                                "], got " + std::to_string(cutoff));
  }
}

// Coefficients of exp(sum_{i<=j} q_ij y_i y_j), with q from -y^T R y.
struct QuadraticTerms {
  std::array<std::array<int, 2>, 10> pairs;
  std::array<double, 10> q;
};

QuadraticTerms quadratic_terms(const Eigen::Matrix4d& r) {
  QuadraticTerms t{};
  int p = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j, ++p) {
      t.pairs[p] = {i, j};
      t.q[p] = i == j ? -r(i, i) : -(r(i, j) + r(j, i));
    }
  }
  return t;
}

// Sums prod_p q_p^{k_p} / k_p! over all exponent assignments that use up
// exactly `remaining` powers of each variable.
double taylor_coefficient(const QuadraticTerms& t, std::size_t p, std::array<int, 4>& remaining) {
  if (p == t.pairs.size()) {
    return remaining == std::array<int, 4>{0, 0, 0, 0} ? 1.0 : 0.0;
  }
  const auto [i, j] = t.pairs[p];
  const int step = i == j ? 2 : 1;
  const int limit = i == j ? remaining[i] / 2 : std::min(remaining[i], remaining[j]);
  if (t.q[p] == 0.0) {
    return taylor_coefficient(t, p + 1, remaining);
  }
  double total = 0.0;
  double term = 1.0;  // q^k / k!
  for (int k = 0; k <= limit; ++k) {
    if (k > 0) {
      term *= t.q[p] / k;
      if (step == 2) {
        remaining[i] -= 2;
      } else {
        remaining[i] -= 1;
        remaining[j] -= 1;
      }
    }
    total += term * taylor_coefficient(t, p + 1, remaining);
  }
  if (step == 2) {
    remaining[i] += 2 * limit;
  } else {
    remaining[i] += limit;
    remaining[j] += limit;
  }
  return total;
}

double hermite_with_terms(const QuadraticTerms& t, const FockIndex& orders) {
  const int degree = orders[0] + orders[1] + orders[2] + orders[3];
  if (degree % 2 != 0) return 0.0;
  std::array<int, 4> remaining = orders;
  const double coefficient = taylor_coefficient(t, 0, remaining);
  double scale = 1.0;
  for (int o : orders) scale *= factorial(o);
  // (-1)^degree is +1 for even degree.
  return scale * coefficient;
}

void check_orders(const FockIndex& orders) {
  for (int o : orders) {
    if (o < 0 || o > kMaxHermiteOrder) {
      throw std::invalid_argument("Hermite order " + std::to_string(o) + " outside [0, " +
                                  std::to_string(kMaxHermiteOrder) + "]");
    }
  }
}

}  // namespace

RMatrix r_matrix(const TwoModeCovariance& cov) {
  using C = std::complex<double>;
  const Eigen::Matrix4d shifted = cov.matrix() + Eigen::Matrix4d::Identity();
  Eigen::FullPivLU<Eigen::Matrix4d> lu(shifted);
  if (!lu.isInvertible()) throw std::domain_error("gamma + 1 is singular");

  const C i(0.0, 1.0);
  Eigen::Matrix4cd u;
  // clang-format off
  u << 1.0, i,   0.0, 0.0,
       1.0, -i,  0.0, 0.0,
       0.0, 0.0, 1.0, i,
       0.0, 0.0, 1.0, -i;
  // clang-format on
  u /= std::sqrt(2.0);
  Eigen::Matrix4d b;
  b << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
  Eigen::Matrix4d d;
  d << 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0;

  const Eigen::Matrix4d inner = lu.inverse() - 0.5 * Eigen::Matrix4d::Identity();
  const Eigen::Matrix4cd product =
      b.cast<C>() * u * inner.cast<C>() * u.adjoint() * d.cast<C>();
  if (product.imag().cwiseAbs().maxCoeff() > kImaginaryTolerance) {
    throw std::domain_error("R matrix has a non-negligible imaginary part");
  }
  return {product.real()};
}

RMatrix r_matrix_closed_form(const TwoModeCovariance& cov) {
  const double ap = cov.a + 1.0;
  const double bp = cov.b + 1.0;
  const double c1 = cov.c1;
  const double c2 = cov.c2;
  const double denom = (ap * bp - c1 * c1) * (ap * bp - c2 * c2);
  if (denom == 0.0) throw std::domain_error("gamma + 1 is singular");
  const double a1 = bp * (c1 * c1 - c2 * c2) / denom;
  const double a2 = -1.0 + bp * (2.0 * ap * bp - (c1 * c1 + c2 * c2)) / denom;
  const double b1 = ap * (c1 * c1 - c2 * c2) / denom;
  const double b2 = -1.0 + ap * (2.0 * ap * bp - (c1 * c1 + c2 * c2)) / denom;
  const double x1 = -(ap * bp - c1 * c2) * (c1 + c2) / denom;
  const double x2 = -(ap * bp + c1 * c2) * (c1 - c2) / denom;
  Eigen::Matrix4d r;
  // clang-format off
  r << a1, x1, a2, x2,
       x1, b1, x2, b2,
       a2, x2, a1, x1,
       x2, b2, x1, b1;
  // clang-format on
  return {0.5 * r};
}

double hermite_at_zero(const RMatrix& r, const FockIndex& orders) {
  check_orders(orders);
  return hermite_with_terms(quadratic_terms(r.value), orders);
}

FockDensity::FockDensity(int cutoff_a, int cutoff_b) : cutoff_a_(cutoff_a), cutoff_b_(cutoff_b) {
  if (cutoff_a < 1 || cutoff_b < 1) throw std::invalid_argument("cutoffs must be positive");
  elements_.assign(static_cast<std::size_t>(cutoff_a) * cutoff_b * cutoff_a * cutoff_b, 0.0);
  reduced_a_ = Eigen::MatrixXd::Zero(cutoff_a, cutoff_a);
  reduced_b_ = Eigen::MatrixXd::Zero(cutoff_b, cutoff_b);
}

double FockDensity::trace_weight() const {
  double w = 0.0;
  for (int k = 0; k < cutoff_a_; ++k) {
    for (int l = 0; l < cutoff_b_; ++l) w += (*this)(k, l, k, l);
  }
  return w;
}

void FockDensity::set_reduced(Eigen::MatrixXd reduced_a, Eigen::MatrixXd reduced_b) {
  if (reduced_a.rows() != cutoff_a_ || reduced_a.cols() != cutoff_a_ || reduced_b.rows() != cutoff_b_ ||
      reduced_b.cols() != cutoff_b_) {
    throw std::invalid_argument("reduced state dimensions do not match the cutoffs");
  }
  reduced_a_ = std::move(reduced_a);
  reduced_b_ = std::move(reduced_b);
}

Eigen::MatrixXd FockDensity::as_matrix() const {
  const int dim = cutoff_a_ * cutoff_b_;
  Eigen::MatrixXd m(dim, dim);
  for (int m1 = 0; m1 < cutoff_a_; ++m1)
    for (int m2 = 0; m2 < cutoff_b_; ++m2)
      for (int n1 = 0; n1 < cutoff_a_; ++n1)
        for (int n2 = 0; n2 < cutoff_b_; ++n2) m(m1 * cutoff_b_ + m2, n1 * cutoff_b_ + n2) = (*this)(m1, m2, n1, n2);
  return m;
}

FockDensity FockDensity::swapped() const {
  FockDensity out(cutoff_b_, cutoff_a_);
  for (int m1 = 0; m1 < cutoff_a_; ++m1)
    for (int m2 = 0; m2 < cutoff_b_; ++m2)
      for (int n1 = 0; n1 < cutoff_a_; ++n1)
        for (int n2 = 0; n2 < cutoff_b_; ++n2) out(m2, m1, n2, n1) = (*this)(m1, m2, n1, n2);
  out.set_reduced(reduced_b_, reduced_a_);
  return out;
}

Eigen::MatrixXd thermal_state(double mean_photons, int cutoff) {
  if (!(mean_photons >= 0.0)) throw std::invalid_argument("mean photon number must be non-negative");
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(cutoff, cutoff);
  const double ratio = mean_photons / (1.0 + mean_photons);
  double p = 1.0 / (1.0 + mean_photons);
  for (int k = 0; k < cutoff; ++k, p *= ratio) rho(k, k) = p;
  return rho;
}

FockDensity fock_density(const TwoModeCovariance& cov, int n_a, int n_b) {
  check_cutoff(n_a, "cutoff_a");
  check_cutoff(n_b, "cutoff_b");
  if (!is_physical(cov)) throw std::domain_error("covariance matrix violates the uncertainty relation");

  const QuadraticTerms terms = quadratic_terms(r_matrix(cov).value);
  const double det = (cov.matrix() + Eigen::Matrix4d::Identity()).determinant();
  const double prefactor = 4.0 / std::sqrt(det);

  std::array<double, kMaxHermiteOrder + 1> sqrt_fact{};
  for (int k = 0; k <= kMaxHermiteOrder; ++k) sqrt_fact[k] = std::sqrt(factorial(k));

  FockDensity rho(n_a, n_b);
  for (int m1 = 0; m1 < n_a; ++m1)
    for (int m2 = 0; m2 < n_b; ++m2)
      for (int n1 = 0; n1 < n_a; ++n1)
        for (int n2 = 0; n2 < n_b; ++n2) {
          const double h = hermite_with_terms(terms, {m1, m2, n1, n2});
          rho(m1, m2, n1, n2) = prefactor * h / (sqrt_fact[m1] * sqrt_fact[m2] * sqrt_fact[n1] * sqrt_fact[n2]);
        }
  rho.set_reduced(thermal_state(0.5 * (cov.a - 1.0), n_a), thermal_state(0.5 * (cov.b - 1.0), n_b));
  return rho;
}

FockDensity product_density(const Eigen::MatrixXd& rho_a, const Eigen::MatrixXd& rho_b) {
  const int na = static_cast<int>(rho_a.rows());
  const int nb = static_cast<int>(rho_b.rows());
  if (rho_a.cols() != na || rho_b.cols() != nb) throw std::invalid_argument("reduced states must be square");
  FockDensity rho(na, nb);
  for (int m1 = 0; m1 < na; ++m1)
    for (int m2 = 0; m2 < nb; ++m2)
      for (int n1 = 0; n1 < na; ++n1)
        for (int n2 = 0; n2 < nb; ++n2) rho(m1, m2, n1, n2) = rho_a(m1, n1) * rho_b(m2, n2);
  rho.set_reduced(rho_a, rho_b);
  return rho;
}

double lossy_tmsv_closed_form(double r, double eta, const FockIndex& index) {
  for (int i : index) {
    if (i < 0 || i > 2) throw std::invalid_argument("closed-form elements are tabulated for indices 0..2 only");
  }
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double p = ch + 1.0;
  const double m = ch - 1.0;
  const double loss = 1.0 - eta;

  // Hermitian partners share a value.
  auto is = [&](FockIndex x) { return index == x || index == FockIndex{x[2], x[3], x[0], x[1]}; };
  if (is({0, 0, 0, 0})) return 2.0 / p;
  if (is({0, 0, 1, 1})) return 2.0 * std::sqrt(eta) * sh / (p * p);
  if (is({0, 0, 2, 2})) return 2.0 * eta * m / (p * p);
  if (is({1, 0, 1, 0})) return 2.0 * loss * m / (p * p);
  // sqrt(eta) restored here; a Kraus-operator expansion confirms it.
  if (is({1, 0, 2, 1})) return 2.0 * std::sqrt(2.0 * eta) * loss * sh * m / (p * p * p);
  if (is({1, 1, 1, 1})) return 2.0 * eta * m / (p * p);
  if (is({1, 1, 2, 2})) return 2.0 * std::pow(eta, 1.5) * sh * sh * sh / (p * p * p * p);
  if (is({2, 0, 2, 0})) return 2.0 * loss * loss * m * m / (p * p * p);
  if (is({2, 1, 2, 1})) return 4.0 * eta * loss * m * m / (p * p * p);
  if (is({2, 2, 2, 2})) return 2.0 * eta * eta * m * m / (p * p * p);
  return 0.0;
}

double thermal_marginal(double r, double eta, int k) {
  if (k < 0 || k > 2) throw std::invalid_argument("thermal marginal is tabulated for k in {0, 1, 2}");
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  const double nbar = 0.5 * eta * (std::cosh(2.0 * r) - 1.0);
  return std::pow(nbar, k) / std::pow(1.0 + nbar, k + 1);
}

}  // namespace cvsteer

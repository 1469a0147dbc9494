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

#ifndef CVSTEER_BISECT_H_
#define CVSTEER_BISECT_H_

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cvsteer {

struct BisectOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
};

/// Locates the sign change of `f` (f > 0 counts as positive) in [lo, hi].
/// Returns std::nullopt when both ends have the same sign.
template <typename F>
std::optional<double> bisect_sign_change(F&& f, double lo, double hi, BisectOptions opts = {}) {
  if (!(lo < hi)) throw std::invalid_argument("bisection bracket must satisfy lo < hi");
  const bool lo_positive = f(lo) > 0.0;
  if ((f(hi) > 0.0) == lo_positive) return std::nullopt;
  for (int it = 0; it < opts.max_iterations && hi - lo > opts.tolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace cvsteer

#endif  // CVSTEER_BISECT_H_

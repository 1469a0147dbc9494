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

#ifndef CVSTEER_STEERING_VERDICT_H_
#define CVSTEER_STEERING_VERDICT_H_

#include <string>
#include <string_view>

namespace cvsteer {

/// Verdicts with margin in [-kMarginTolerance, kMarginTolerance] are
/// reported as "boundary" and count as non-steerable.
inline constexpr double kMarginTolerance = 1e-10;

enum class Criterion { Gaussian, Tloo };

/// BtoA: Bob (mode B) is untrusted and tries to steer Alice (mode A).
/// The Gaussian test for this direction places Omega on the A block.
enum class Direction { BtoA, AtoB };

constexpr Direction reversed(Direction d) { return d == Direction::BtoA ? Direction::AtoB : Direction::BtoA; }

std::string_view to_string(Criterion c);
std::string_view to_string(Direction d);

/// Parses "b-to-a" / "a-to-b" (also "BtoA" / "AtoB"). Throws std::invalid_argument.
Direction parse_direction(std::string_view text);

struct SteeringVerdict {
  Criterion criterion = Criterion::Gaussian;
  Direction direction = Direction::BtoA;
  bool steerable = false;
  /// Positive iff steering is detected.
  double margin = 0.0;
  std::string detail;
};

SteeringVerdict make_verdict(Criterion criterion, Direction direction, double margin, std::string detail = {});

}  // namespace cvsteer

#endif  // CVSTEER_STEERING_VERDICT_H_

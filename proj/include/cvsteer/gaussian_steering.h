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

#ifndef CVSTEER_GAUSSIAN_STEERING_H_
#define CVSTEER_GAUSSIAN_STEERING_H_

#include "cvsteer/gaussian_core.h"
#include "cvsteer/steering_verdict.h"

namespace cvsteer {

/// Signed margin of the Gaussian-measurement criterion: minus the smallest
/// eigenvalue of gamma + i(Omega_A (+) 0_B) for BtoA, or of
/// gamma + i(0_A (+) Omega_B) for AtoB. Does not check physicality.
double gaussian_margin(const TwoModeCovariance& cov, Direction direction);

/// Throws std::domain_error on an unphysical covariance.
SteeringVerdict gaussian_steerable(const TwoModeCovariance& cov, Direction direction);

/// Transmittance at which the BtoA Gaussian margin of a TMSV with loss on B
/// changes sign. Requires r > 0.
double gaussian_loss_boundary(double r);

/// Gain at which the AtoB Gaussian margin of a TMSV amplified on B changes
/// sign; steering A->B holds for 1 <= G below this value. Requires r > 0.
double gaussian_gain_boundary(double r);

}  // namespace cvsteer

#endif  // CVSTEER_GAUSSIAN_STEERING_H_

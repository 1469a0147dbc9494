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

#ifndef CVSTEER_SCAN_H_
#define CVSTEER_SCAN_H_

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cvsteer/fock_rep.h"
#include "cvsteer/gaussian_core.h"
#include "cvsteer/steering_verdict.h"

namespace cvsteer {

/// A criterion family together with its TLOO level (ignored for Gaussian).
struct CriterionSpec {
  Criterion family = Criterion::Gaussian;
  int level = 0;

  static CriterionSpec gaussian() { return {Criterion::Gaussian, 0}; }
  static CriterionSpec tloo(int level) { return {Criterion::Tloo, level}; }

  friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;
};

/// "gaussian", "tloo-n2", "tloo-n3", ...
std::string criterion_name(const CriterionSpec& c);
/// Inverse of criterion_name. Throws std::invalid_argument.
CriterionSpec parse_criterion(std::string_view text);

std::string_view to_string(ChannelKind kind);
ChannelKind parse_channel(std::string_view text);

/// TMSV of squeezing r with the channel applied to mode B.
TwoModeCovariance channel_state(ChannelKind kind, double r, double parameter);

/// Verdict of one criterion on one covariance; TLOO criteria use Fock
/// cutoffs equal to their level on both modes.
SteeringVerdict evaluate_criterion(const TwoModeCovariance& cov, const CriterionSpec& criterion, Direction direction);

struct Probe {
  CriterionSpec criterion;
  Direction direction = Direction::BtoA;
};

/// Inclusive, evenly spaced grid of `steps` points.
struct GridRange {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double at(int i) const { return min + (max - min) * i / (steps - 1); }
};

struct SweepSpec {
  ChannelKind channel = ChannelKind::Loss;
  GridRange r{0.05, 1.4, 120};
  GridRange parameter{0.05, 0.95, 120};
  std::vector<Probe> probes;
};

/// Throws std::invalid_argument on fewer than two steps, an empty range,
/// negative squeezing, a channel parameter outside its domain, or no probes.
void validate(const SweepSpec& spec);

struct SweepRow {
  double r = 0.0;
  double parameter = 0.0;
  CriterionSpec criterion;
  Direction direction = Direction::BtoA;
  double margin = 0.0;
  bool steerable = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Rows are ordered r-major, then parameter, then probe, independent of
/// `threads`.
SweepResult run_sweep(const SweepSpec& spec, int threads = 1);

/// Header r,param,criterion,direction,margin,steerable; 9 significant digits.
void write_csv(std::ostream& out, const SweepResult& result);

struct BoundaryOptions {
  /// Upper end of the gain search range.
  double max_gain = 4.0;
  int coarse_points = 200;
  double tolerance = 1e-8;
};

/// Lowest channel parameter at which the margin of `criterion` changes sign
/// along the TMSV + channel family at squeezing r: eta in (0, 1] for loss,
/// G in [1, max_gain] for gain. std::nullopt if the margin keeps its sign.
std::optional<double> find_boundary(ChannelKind channel, double r, const CriterionSpec& criterion,
                                    Direction direction, const BoundaryOptions& options = {});

/// Detection by `criterion` inside the region where the Gaussian criterion
/// fails, at one squeezing value.
struct BlindRegionPoint {
  double r = 0.0;
  /// Gaussian boundary; std::nullopt if the Gaussian verdict is constant.
  std::optional<double> gaussian_boundary;
  bool blind_region_empty = false;
  bool detected = false;
  /// Parameter where the criterion stops detecting inside the blind region.
  std::optional<double> detection_edge;
  /// |detection_edge - gaussian_boundary|: the epsilon of the amplifier
  /// scenario, or 1/2 - eta* for loss.
  double excess = 0.0;
};

BlindRegionPoint blind_region_detection(ChannelKind channel, double r, const CriterionSpec& criterion,
                                        Direction direction, const BoundaryOptions& options = {});

struct RRangeOptions {
  double r_min = 1e-3;
  double r_max = 2.0;
  double r_step = 1e-3;
  /// Bisection tolerance for refining interval endpoints in r.
  double r_tolerance = 1e-6;
  int threads = 1;
};

struct RInterval {
  double low = 0.0;
  double high = 0.0;
};

struct RRangeResult {
  ChannelKind channel = ChannelKind::Loss;
  CriterionSpec criterion;
  Direction direction = Direction::BtoA;
  /// Maximal squeezing intervals with detection in the Gaussian-blind region.
  std::vector<RInterval> intervals;
  std::vector<BlindRegionPoint> curve;
  double excess_max = 0.0;
  double excess_argmax = 0.0;

  bool empty() const { return intervals.empty(); }
};

/// Scans r on [r_min, r_max] at r_step and refines each interval endpoint
/// by bisection. Throws std::invalid_argument for a Gaussian criterion or
/// invalid options.
RRangeResult find_r_range(ChannelKind channel, const CriterionSpec& criterion, Direction direction,
                          const RRangeOptions& options = {});

/// A loss channel as a beamsplitter: Bob keeps a fraction eta of mode B,
/// Eve the remaining 1 - eta.
struct MonogamyReport {
  double r = 0.0;
  double eta = 0.0;
  /// Gaussian, Bob -> Alice, transmittance eta.
  SteeringVerdict bob;
  /// 2-level TLOO, Eve -> Alice, transmittance 1 - eta.
  SteeringVerdict eve;
  bool simultaneous = false;
};

/// Throws std::invalid_argument unless 0 < eta < 1 and r >= 0.
MonogamyReport monogamy(double r, double eta, int eve_level = 2);

/// {"cutoffs":[nA,nB],"elements":[{"idx":[m1,m2,n1,n2],"val":v},...]}
/// listing elements with |v| > 1e-14 in lexicographic index order.
std::string fock_density_json(const FockDensity& rho, int indent = -1);

}  // namespace cvsteer

#endif  // CVSTEER_SCAN_H_

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

#include "cvsteer/scan.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cvsteer/bisect.h"
#include "cvsteer/gaussian_steering.h"
#include "cvsteer/ng_steering.h"

namespace cvsteer {

namespace {

constexpr double kMinTransmittance = 1e-6;
// Offset into the Gaussian-blind side when probing its edge.
constexpr double kBlindOffset = 1e-7;
constexpr int kBlindScanPoints = 40;

struct ParamRange {
  double lo;
  double hi;
};

ParamRange parameter_range(ChannelKind channel, const BoundaryOptions& options) {
  return channel == ChannelKind::Loss ? ParamRange{kMinTransmittance, 1.0} : ParamRange{1.0, options.max_gain};
}

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(int count, int threads, Body body) {
  threads = std::clamp(threads, 1, std::max(count, 1));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

double steer_indicator(ChannelKind channel, double r, double parameter, const CriterionSpec& criterion,
                       Direction direction) {
  return evaluate_criterion(channel_state(channel, r, parameter), criterion, direction).margin - kMarginTolerance;
}

// First sign change of f scanning from `from` towards `to`, refined by
// bisection.
template <typename F>
std::optional<double> first_sign_change(F&& f, double from, double to, int points, double tolerance) {
  double prev = from;
  const bool start = f(from) > 0.0;
  for (int i = 1; i < points; ++i) {
    const double x = from + (to - from) * i / (points - 1);
    if ((f(x) > 0.0) != start) {
      return bisect_sign_change(f, std::min(prev, x), std::max(prev, x), {tolerance, 200});
    }
    prev = x;
  }
  return std::nullopt;
}

}  // namespace

std::string criterion_name(const CriterionSpec& c) {
  return c.family == Criterion::Gaussian ? "gaussian" : "tloo-n" + std::to_string(c.level);
}

CriterionSpec parse_criterion(std::string_view text) {
  if (text == "gaussian") return CriterionSpec::gaussian();
  constexpr std::string_view prefix = "tloo-n";
  if (text.substr(0, prefix.size()) == prefix && text.size() > prefix.size()) {
    const std::string digits(text.substr(prefix.size()));
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      const int level = std::stoi(digits);
      if (level >= 2 && level <= kMaxHermiteOrder + 1) return CriterionSpec::tloo(level);
    }
  }
  throw std::invalid_argument("unknown criterion '" + std::string(text) + "'");
}

std::string_view to_string(ChannelKind kind) { return kind == ChannelKind::Loss ? "loss" : "gain"; }

ChannelKind parse_channel(std::string_view text) {
  if (text == "loss") return ChannelKind::Loss;
  if (text == "gain") return ChannelKind::Gain;
  throw std::invalid_argument("unknown channel '" + std::string(text) + "' (expected loss or gain)");
}

TwoModeCovariance channel_state(ChannelKind kind, double r, double parameter) {
  const TwoModeCovariance tmsv = tmsv_covariance(r);
  return kind == ChannelKind::Loss ? apply_loss(tmsv, parameter) : apply_gain(tmsv, parameter);
}

SteeringVerdict evaluate_criterion(const TwoModeCovariance& cov, const CriterionSpec& criterion, Direction direction) {
  if (criterion.family == Criterion::Gaussian) return gaussian_steerable(cov, direction);
  const FockDensity rho = fock_density(cov, criterion.level, criterion.level);
  return ng_steerable(rho, criterion.level, criterion.level, direction);
}

void validate(const SweepSpec& spec) {
  auto check_range = [](const GridRange& g, const char* name) {
    if (g.steps < 2) throw std::invalid_argument(std::string(name) + " range needs at least 2 steps");
    if (!(g.min < g.max)) throw std::invalid_argument(std::string(name) + " range must satisfy min < max");
  };
  check_range(spec.r, "r");
  check_range(spec.parameter, "parameter");
  if (spec.r.min < 0.0) throw std::invalid_argument("squeezing must be non-negative");
  if (spec.channel == ChannelKind::Loss) {
    if (!(spec.parameter.min > 0.0 && spec.parameter.max <= 1.0)) {
      throw std::invalid_argument("loss transmittance range must lie in (0, 1]");
    }
  } else if (!(spec.parameter.min >= 1.0)) {
    throw std::invalid_argument("gain range must lie in [1, inf)");
  }
  if (spec.probes.empty()) throw std::invalid_argument("sweep needs at least one criterion");
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  validate(spec);
  const int per_point = static_cast<int>(spec.probes.size());
  const int points = spec.r.steps * spec.parameter.steps;
  SweepResult result;
  result.rows.resize(static_cast<std::size_t>(points) * per_point);
  parallel_for(points, threads, [&](int p) {
    const double r = spec.r.at(p / spec.parameter.steps);
    const double param = spec.parameter.at(p % spec.parameter.steps);
    const TwoModeCovariance cov = channel_state(spec.channel, r, param);
    for (int k = 0; k < per_point; ++k) {
      const Probe& probe = spec.probes[k];
      const SteeringVerdict v = evaluate_criterion(cov, probe.criterion, probe.direction);
      result.rows[static_cast<std::size_t>(p) * per_point + k] =
          SweepRow{r, param, probe.criterion, probe.direction, v.margin, v.steerable};
    }
  });
  return result;
}

void write_csv(std::ostream& out, const SweepResult& result) {
  out << "r,param,criterion,direction,margin,steerable\n";
  char buf[128];
  for (const SweepRow& row : result.rows) {
    std::snprintf(buf, sizeof(buf), "%.9g,%.9g,", row.r, row.parameter);
    out << buf << criterion_name(row.criterion) << ',' << to_string(row.direction) << ',';
    std::snprintf(buf, sizeof(buf), "%.9g,%d\n", row.margin, row.steerable ? 1 : 0);
    out << buf;
  }
}

std::optional<double> find_boundary(ChannelKind channel, double r, const CriterionSpec& criterion,
                                    Direction direction, const BoundaryOptions& options) {
  if (!(r >= 0.0)) throw std::invalid_argument("squeezing must be non-negative");
  if (options.coarse_points < 2) throw std::invalid_argument("boundary search needs at least 2 coarse points");
  const ParamRange range = parameter_range(channel, options);
  auto f = [&](double p) { return steer_indicator(channel, r, p, criterion, direction); };
  return first_sign_change(f, range.lo, range.hi, options.coarse_points, options.tolerance);
}

BlindRegionPoint blind_region_detection(ChannelKind channel, double r, const CriterionSpec& criterion,
                                        Direction direction, const BoundaryOptions& options) {
  BlindRegionPoint point;
  point.r = r;
  const ParamRange range = parameter_range(channel, options);
  auto gaussian = [&](double p) { return steer_indicator(channel, r, p, CriterionSpec::gaussian(), direction); };
  auto candidate = [&](double p) { return steer_indicator(channel, r, p, criterion, direction); };

  point.gaussian_boundary = find_boundary(channel, r, CriterionSpec::gaussian(), direction, options);
  double near = 0.0;
  double far = 0.0;
  if (point.gaussian_boundary) {
    const double gb = *point.gaussian_boundary;
    if (gaussian(std::min(gb + kBlindOffset, range.hi)) > 0.0) {
      near = gb - kBlindOffset;
      far = range.lo;
    } else {
      near = gb + kBlindOffset;
      far = range.hi;
    }
  } else if (gaussian(0.5 * (range.lo + range.hi)) > 0.0) {
    point.blind_region_empty = true;
    return point;
  } else {
    // Gaussian criterion never detects: the whole range is blind.
    near = range.hi;
    far = range.lo;
  }

  // The criterion margin peaks at the edge adjacent to the Gaussian boundary
  // for the channel families in scope.
  point.detected = candidate(near) > 0.0;
  if (!point.detected) return point;
  point.detection_edge = first_sign_change(candidate, near, far, kBlindScanPoints, options.tolerance).value_or(far);
  point.excess = point.gaussian_boundary ? std::abs(*point.detection_edge - *point.gaussian_boundary) : 0.0;
  return point;
}

RRangeResult find_r_range(ChannelKind channel, const CriterionSpec& criterion, Direction direction,
                          const RRangeOptions& options) {
  if (criterion.family != Criterion::Tloo) throw std::invalid_argument("r-range search needs a TLOO criterion");
  if (!(options.r_step > 0.0) || !(options.r_min >= 0.0) || !(options.r_max > options.r_min)) {
    throw std::invalid_argument("invalid r-range options");
  }
  const int count = static_cast<int>(std::floor((options.r_max - options.r_min) / options.r_step + 1e-9)) + 1;

  RRangeResult result;
  result.channel = channel;
  result.criterion = criterion;
  result.direction = direction;
  result.curve.resize(count);
  parallel_for(count, options.threads, [&](int i) {
    result.curve[i] = blind_region_detection(channel, options.r_min + i * options.r_step, criterion, direction);
  });

  auto detected_at = [&](double r) { return blind_region_detection(channel, r, criterion, direction).detected ? 1.0 : -1.0; };
  auto refine = [&](double undetected, double detected) {
    const auto edge = bisect_sign_change(detected_at, std::min(undetected, detected), std::max(undetected, detected),
                                         {options.r_tolerance, 200});
    return edge.value_or(detected);
  };

  for (int i = 0; i < count; ++i) {
    if (!result.curve[i].detected) continue;
    const int start = i;
    while (i + 1 < count && result.curve[i + 1].detected) ++i;
    RInterval interval;
    interval.low = start == 0 ? result.curve[0].r : refine(result.curve[start - 1].r, result.curve[start].r);
    interval.high = i + 1 == count ? result.curve[i].r : refine(result.curve[i + 1].r, result.curve[i].r);
    result.intervals.push_back(interval);
  }
  for (const BlindRegionPoint& p : result.curve) {
    if (p.detected && p.excess > result.excess_max) {
      result.excess_max = p.excess;
      result.excess_argmax = p.r;
    }
  }
  return result;
}

MonogamyReport monogamy(double r, double eta, int eve_level) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("beamsplitter transmittance must lie in (0, 1)");
  if (!(r >= 0.0)) throw std::invalid_argument("squeezing must be non-negative");
  MonogamyReport report;
  report.r = r;
  report.eta = eta;
  report.bob = evaluate_criterion(channel_state(ChannelKind::Loss, r, eta), CriterionSpec::gaussian(), Direction::BtoA);
  report.eve =
      evaluate_criterion(channel_state(ChannelKind::Loss, r, 1.0 - eta), CriterionSpec::tloo(eve_level), Direction::BtoA);
  report.simultaneous = report.bob.steerable && report.eve.steerable;
  return report;
}

std::string fock_density_json(const FockDensity& rho, int indent) {
  nlohmann::ordered_json doc;
  doc["cutoffs"] = {rho.cutoff_a(), rho.cutoff_b()};
  nlohmann::ordered_json elements = nlohmann::ordered_json::array();
  for (int m1 = 0; m1 < rho.cutoff_a(); ++m1)
    for (int m2 = 0; m2 < rho.cutoff_b(); ++m2)
      for (int n1 = 0; n1 < rho.cutoff_a(); ++n1)
        for (int n2 = 0; n2 < rho.cutoff_b(); ++n2) {
          const double v = rho(m1, m2, n1, n2);
          if (std::abs(v) > 1e-14) {
            nlohmann::ordered_json e;
            e["idx"] = {m1, m2, n1, n2};
            e["val"] = v;
            elements.push_back(std::move(e));
          }
        }
  doc["elements"] = std::move(elements);
  return doc.dump(indent);
}

}  // namespace cvsteer

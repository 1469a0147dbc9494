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

// cvsteer: steering tests for lossy and amplified two-mode squeezed states.
//
// Direction convention: "b-to-a" means Bob (mode B, the mode that passes the
// channel) is untrusted and steers Alice (mode A).

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvsteer/fock_rep.h"
#include "cvsteer/scan.h"

namespace {

using namespace cvsteer;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoBoundary = 3;

struct Options {
  std::string channel = "loss";
  double r = 0.5;
  double eta = 0.5;
  double gain = 1.0;
  std::vector<std::string> criteria{"tloo"};
  std::vector<int> levels{2};
  std::vector<std::string> directions{"b-to-a"};
  std::string out;
  std::string format;
  int threads = 1;

  double r_min = 0.05, r_max = 1.4;
  int r_steps = 120;
  double param_min = 0.05, param_max = 0.95;
  int param_steps = 120;
  double max_gain = 4.0;
  double r_step = 1e-3;
  std::vector<int> cutoffs{3, 3};
};

CriterionSpec criterion_from(const std::string& family, int level) {
  if (family == "gaussian") return CriterionSpec::gaussian();
  if (family == "tloo") return CriterionSpec::tloo(level);
  return parse_criterion(family);
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int run_sweep_cmd(const Options& o) {
  SweepSpec spec;
  spec.channel = parse_channel(o.channel);
  spec.r = {o.r_min, o.r_max, o.r_steps};
  spec.parameter = {o.param_min, o.param_max, o.param_steps};
  for (const auto& c : o.criteria) {
    for (const auto& d : o.directions) {
      if (c == "gaussian") {
        spec.probes.push_back({CriterionSpec::gaussian(), parse_direction(d)});
      } else {
        for (int level : o.levels) spec.probes.push_back({criterion_from(c, level), parse_direction(d)});
      }
    }
  }
  const SweepResult result = run_sweep(spec, o.threads);
  Output out(o.out);
  if (o.format.empty() || o.format == "csv" || o.format == "text") {
    write_csv(out.stream(), result);
  } else if (o.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : result.rows) {
      rows.push_back({{"r", row.r},
                      {"param", row.parameter},
                      {"criterion", criterion_name(row.criterion)},
                      {"direction", to_string(row.direction)},
                      {"margin", row.margin},
                      {"steerable", row.steerable}});
    }
    out.stream() << rows.dump(1) << '\n';
  } else {
    throw std::invalid_argument("unknown format '" + o.format + "'");
  }
  return kExitOk;
}

int run_boundary_cmd(const Options& o) {
  const ChannelKind channel = parse_channel(o.channel);
  const CriterionSpec criterion = criterion_from(o.criteria.at(0), o.levels.at(0));
  const Direction direction = parse_direction(o.directions.at(0));
  BoundaryOptions bopts;
  bopts.max_gain = o.max_gain;
  const auto boundary = find_boundary(channel, o.r, criterion, direction, bopts);
  Output out(o.out);
  if (o.format == "json") {
    ordered_json doc{{"channel", to_string(channel)},
                     {"r", o.r},
                     {"criterion", criterion_name(criterion)},
                     {"direction", to_string(direction)}};
    doc["boundary"] = boundary ? ordered_json(*boundary) : ordered_json(nullptr);
    out.stream() << doc.dump(1) << '\n';
  } else if (boundary) {
    out.stream().precision(10);
    out.stream() << "boundary " << *boundary << '\n';
  } else {
    out.stream() << "no boundary\n";
  }
  return boundary ? kExitOk : kExitNoBoundary;
}

int run_rrange_cmd(const Options& o) {
  const ChannelKind channel = parse_channel(o.channel);
  const CriterionSpec criterion = CriterionSpec::tloo(o.levels.at(0));
  const Direction direction = parse_direction(o.directions.at(0));
  RRangeOptions ropts;
  ropts.r_step = o.r_step;
  ropts.r_max = o.r_max;
  ropts.threads = o.threads;
  const RRangeResult result = find_r_range(channel, criterion, direction, ropts);
  Output out(o.out);
  if (o.format == "json") {
    ordered_json doc{{"channel", to_string(channel)},
                     {"criterion", criterion_name(criterion)},
                     {"direction", to_string(direction)}};
    ordered_json intervals = ordered_json::array();
    for (const RInterval& iv : result.intervals) intervals.push_back({iv.low, iv.high});
    doc["intervals"] = std::move(intervals);
    doc["excess_max"] = result.excess_max;
    doc["excess_argmax"] = result.excess_argmax;
    ordered_json curve = ordered_json::array();
    for (const BlindRegionPoint& p : result.curve) {
      if (!p.detected) continue;
      curve.push_back({{"r", p.r},
                       {"gaussian_boundary", p.gaussian_boundary ? ordered_json(*p.gaussian_boundary) : ordered_json()},
                       {"detection_edge", *p.detection_edge},
                       {"excess", p.excess}});
    }
    doc["curve"] = std::move(curve);
    out.stream() << doc.dump(1) << '\n';
    return kExitOk;
  }
  auto& s = out.stream();
  s.precision(6);
  s << std::fixed;
  if (result.empty()) {
    s << "empty: no detection in the Gaussian-blind region\n";
    return kExitOk;
  }
  for (const RInterval& iv : result.intervals) s << "interval " << iv.low << ' ' << iv.high << '\n';
  s << "excess_max " << result.excess_max << " at r " << result.excess_argmax << '\n';
  return kExitOk;
}

int run_monogamy_cmd(const Options& o) {
  const MonogamyReport report = monogamy(o.r, o.eta, o.levels.at(0));
  Output out(o.out);
  auto verdict_json = [](const SteeringVerdict& v) {
    return ordered_json{{"criterion", to_string(v.criterion)},
                        {"direction", to_string(v.direction)},
                        {"steerable", v.steerable},
                        {"margin", v.margin},
                        {"detail", v.detail}};
  };
  if (o.format == "json") {
    ordered_json doc{{"r", report.r},
                     {"eta", report.eta},
                     {"bob_to_alice", verdict_json(report.bob)},
                     {"eve_to_alice", verdict_json(report.eve)},
                     {"simultaneous", report.simultaneous}};
    out.stream() << doc.dump(1) << '\n';
  } else {
    auto& s = out.stream();
    s.precision(9);
    s << "bob->alice gaussian eta=" << report.eta << " steerable=" << report.bob.steerable
      << " margin=" << report.bob.margin << '\n';
    s << "eve->alice tloo eta=" << 1.0 - report.eta << " steerable=" << report.eve.steerable
      << " margin=" << report.eve.margin << '\n';
    s << "simultaneous " << (report.simultaneous ? "yes" : "no") << '\n';
  }
  return kExitOk;
}

int run_fock_dump_cmd(const Options& o) {
  if (o.cutoffs.size() != 2) throw std::invalid_argument("--cutoffs takes two values");
  TwoModeCovariance cov = tmsv_covariance(o.r);
  if (o.channel == "loss") {
    cov = apply_loss(cov, o.eta);
  } else if (o.channel == "gain") {
    cov = apply_gain(cov, o.gain);
  } else if (o.channel != "none") {
    throw std::invalid_argument("unknown channel '" + o.channel + "'");
  }
  const FockDensity rho = fock_density(cov, o.cutoffs[0], o.cutoffs[1]);
  Output out(o.out);
  out.stream() << fock_density_json(rho, 1) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering tests for lossy and amplified two-mode squeezed states.\n"
               "b-to-a: Bob (mode B, after the channel) steers Alice (mode A)."};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output path (default stdout)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_channel = [&](CLI::App* sub, std::vector<std::string> kinds) {
    sub->add_option("--channel", o.channel, "Channel on mode B")->check(CLI::IsMember(std::move(kinds)));
  };
  const auto level_check = CLI::Range(2, kMaxHermiteOrder + 1);
  const auto direction_check = CLI::IsMember({"b-to-a", "a-to-b"});

  auto* sweep = app.add_subcommand("sweep", "Evaluate criteria over an (r, eta|G) grid, CSV output");
  add_common(sweep);
  add_channel(sweep, {"loss", "gain"});
  sweep->add_option("--r-min", o.r_min);
  sweep->add_option("--r-max", o.r_max);
  sweep->add_option("--r-steps", o.r_steps);
  sweep->add_option("--param-min", o.param_min, "Lower eta or G");
  sweep->add_option("--param-max", o.param_max, "Upper eta or G");
  sweep->add_option("--param-steps", o.param_steps);
  sweep->add_option("--criterion", o.criteria, "gaussian and/or tloo")->check(CLI::IsMember({"gaussian", "tloo"}));
  sweep->add_option("--level", o.levels, "TLOO levels")->check(level_check);
  sweep->add_option("--direction", o.directions)->check(direction_check);

  auto* boundary = app.add_subcommand("boundary", "Bisect the channel parameter where a criterion flips");
  add_common(boundary);
  add_channel(boundary, {"loss", "gain"});
  boundary->add_option("--r", o.r, "Squeezing")->required();
  boundary->add_option("--criterion", o.criteria)->check(CLI::IsMember({"gaussian", "tloo"}))->expected(1);
  boundary->add_option("--level", o.levels)->check(level_check)->expected(1);
  boundary->add_option("--direction", o.directions)->check(direction_check)->expected(1);
  boundary->add_option("--max-gain", o.max_gain, "Upper end of the gain search");

  auto* rrange = app.add_subcommand("rrange", "Squeezing range detected where the Gaussian criterion fails");
  add_common(rrange);
  add_channel(rrange, {"loss", "gain"});
  rrange->add_option("--level", o.levels)->check(level_check)->expected(1);
  rrange->add_option("--direction", o.directions)->check(direction_check)->expected(1);
  rrange->add_option("--r-step", o.r_step)->check(CLI::PositiveNumber);
  rrange->add_option("--r-max", o.r_max);

  auto* mono = app.add_subcommand("monogamy", "Bob (Gaussian) and Eve (TLOO) steering Alice through a beamsplitter");
  add_common(mono);
  mono->add_option("--r", o.r)->required();
  mono->add_option("--eta", o.eta, "Bob's transmittance")->required();
  mono->add_option("--level", o.levels, "Eve's TLOO level")->check(level_check)->expected(1);

  auto* dump = app.add_subcommand("fock-dump", "Truncated Fock density matrix as JSON");
  add_common(dump);
  add_channel(dump, {"loss", "gain", "none"});
  dump->add_option("--r", o.r)->required();
  dump->add_option("--eta", o.eta);
  dump->add_option("--gain", o.gain);
  dump->add_option("--cutoffs", o.cutoffs, "Fock cutoffs nA nB")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*sweep) return run_sweep_cmd(o);
    if (*boundary) return run_boundary_cmd(o);
    if (*rrange) return run_rrange_cmd(o);
    if (*mono) return run_monogamy_cmd(o);
    if (*dump) return run_fock_dump_cmd(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitInvalid;
}

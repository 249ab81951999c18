// Copyright 2026 The phasecov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// phasecov: command-line front end for the phase-covariant channel library.
//
// Exit codes: 0 success, 2 channel not completely positive, 3 oracle audit
// failure, 64 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "phasecov/io.hpp"
#include "phasecov/phasecov.hpp"

namespace {

using namespace phasecov;

constexpr int kExitOk = 0;
constexpr int kExitNotCp = 2;
constexpr int kExitAuditFailed = 3;
constexpr int kExitUsage = 64;

struct RunConfig {
  std::vector<double> channel;
  std::string family;
  std::string p_list;
  std::string t_grid;
  std::string format = "csv";
  std::string out_path;
  std::string grid;
  std::string sign = "+";
  std::uint64_t seed = 42;
  long long samples = 1;
};

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error(ErrorCode::OutOfRange, "cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

ChannelParams channel_from(const RunConfig& cfg) {
  for (const double v : cfg.channel) {
    if (!std::isfinite(v)) throw Error(ErrorCode::OutOfRange, "channel parameters must be finite");
  }
  return {cfg.channel.at(0), cfg.channel.at(1), cfg.channel.at(2)};
}

Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  throw Error(ErrorCode::OutOfRange, "sign must be + or -, got '" + s + "'");
}

int cmd_validate(const RunConfig& cfg) {
  const ChannelParams p = channel_from(cfg);
  const CpReport r = validate_cp(p);
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "channel: " << io::format_double(p.lambda1) << ' ' << io::format_double(p.lambda3) << ' '
     << io::format_double(p.lambda_star) << '\n';
  os << "valid: " << (r.valid ? "true" : "false") << '\n';
  os << "slack_a: " << io::format_double(r.slack_a) << '\n';
  os << "slack_b: " << io::format_double(r.slack_b) << '\n';
  if (!r.valid) {
    if (r.slack_a < -kCpTol) os << "violated: condition A (|l*| + |l3| <= 1)\n";
    if (r.slack_b < -kCpTol) os << "violated: condition B (4 l1^2 + l*^2 <= (1 + l3)^2)\n";
    return kExitNotCp;
  }
  os << "non_unitality: " << io::format_double(non_unitality(p).value) << '\n';
  os << "invariant_z: ";
  try {
    os << io::format_double(invariant_state(p).bloch().x3) << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateFixedPoint) throw;
    os << "degenerate\n";
  }
  return kExitOk;
}

int cmd_measure(const RunConfig& cfg) {
  const ChannelParams p = channel_from(cfg);
  if (!is_cp(p)) {
    std::cerr << "phasecov: channel " << p << " is not completely positive\n";
    return kExitNotCp;
  }
  const io::MeasureRecord rec = io::measure_record(p);
  Output out(cfg.out_path);
  if (cfg.format == "json") {
    out.stream() << io::measure_json(rec).dump(2) << '\n';
  } else {
    io::write_measure_csv(out.stream(), rec);
  }
  return kExitOk;
}

int cmd_entanglement(const RunConfig& cfg) {
  const ChannelParams p = channel_from(cfg);
  if (!is_cp(p)) {
    std::cerr << "phasecov: channel " << p << " is not completely positive\n";
    return kExitNotCp;
  }
  const TwoQubitXState rho = evolve_one_sided(p);
  const ConcurrenceSpectrum spectral = concurrence_spectrum(rho);
  const double c_closed = concurrence_closed(p);
  const double c_spectral = concurrence_spectral(rho);
  nlohmann::ordered_json j;
  j["lambda1"] = p.lambda1;
  j["lambda3"] = p.lambda3;
  j["lambda_star"] = p.lambda_star;
  j["concurrence"] = c_closed;
  j["concurrence_spectral"] = c_spectral;
  j["eof"] = entanglement_of_formation(c_closed);
  for (std::size_t k = 0; k < 4; ++k) j["r" + std::to_string(k + 1)] = spectral.r[k];
  Output out(cfg.out_path);
  auto& os = out.stream();
  if (cfg.format == "json") {
    os << j.dump(2) << '\n';
    return kExitOk;
  }
  std::string header;
  std::string row;
  for (const auto& [key, value] : j.items()) {
    header += (header.empty() ? "" : ",") + key;
    row += (row.empty() ? "" : ",") + io::format_double(value.get<double>());
  }
  os << header << '\n' << row << '\n';
  return kExitOk;
}

int cmd_trajectory(const RunConfig& cfg) {
  FamilyKind kind{};
  if (cfg.family == "exp") {
    kind = FamilyKind::ExponentialDecay;
  } else if (cfg.family == "osc") {
    kind = FamilyKind::Oscillation;
  } else {
    throw Error(ErrorCode::OutOfRange, "family must be exp or osc, got '" + cfg.family + "'");
  }
  const std::vector<double> weights =
      cfg.p_list.empty() ? default_mixing_weights() : io::parse_mixing_weights(cfg.p_list);
  const std::vector<double> times =
      cfg.t_grid.empty() ? default_time_grid(kind) : io::parse_time_grid(cfg.t_grid);
  const Sign sign = parse_sign(cfg.sign);

  std::vector<TrajectorySample> rows;
  rows.reserve(weights.size() * times.size());
  std::size_t flagged = 0;
  for (const double p : weights) {
    for (auto& s : run_trajectory({kind, p, sign}, times)) {
      flagged += s.flagged ? 1 : 0;
      rows.push_back(s);
    }
  }
  Output out(cfg.out_path);
  if (cfg.format == "json") {
    out.stream() << io::trajectory_json(rows).dump(2) << '\n';
  } else {
    io::write_trajectory_csv(out.stream(), rows);
  }
  if (flagged > 0) {
    std::cerr << "phasecov: " << flagged
              << " samples where reduced and closed-form values differ by more than "
              << kTrajectoryTol << '\n';
  }
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg) {
  if (cfg.samples < 1) throw Error(ErrorCode::OutOfRange, "nSamples must be >= 1");
  const GridSpec grid = cfg.grid.empty() ? GridSpec{} : io::parse_grid(cfg.grid);
  const AuditSummary s = run_audit(static_cast<std::size_t>(cfg.samples), cfg.seed, grid);
  const bool pass = s.passed();

  Output out(cfg.out_path);
  auto& os = out.stream();
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["samples"] = s.samples;
    j["seed"] = cfg.seed;
    j["grid"] = {grid.n_polar, grid.n_azimuth, grid.refinement};
    j["f_min_max_gap"] = s.f_min_gap;
    j["f_max_max_gap"] = s.f_max_gap;
    j["nu2_squared_max_gap"] = s.nu2_squared_gap;
    j["nu_inf_bloch_max_gap"] = s.nu_inf_bloch_gap;
    j["double_max_max_gap"] = s.double_max_gap;
    j["nu_inf_paper_max_gap"] = s.nu_inf_paper_gap;
    j["nu_inf_paper_worst"] = {s.nu_inf_paper_worst.lambda1, s.nu_inf_paper_worst.lambda3,
                               s.nu_inf_paper_worst.lambda_star};
    j["nu_inf_paper_agreeing_regime_max_gap"] = s.nu_inf_paper_gap_agreeing_regime;
    j["nu_inf_paper_samples_gap_above_1e-3"] = s.paper_gap_above_1e3;
    j["status"] = pass ? "pass" : "fail";
    os << j.dump(2) << '\n';
  } else {
    const auto f = io::format_double;
    os << "samples: " << s.samples << '\n'
       << "seed: " << cfg.seed << '\n'
       << "grid: " << grid.n_polar << ',' << grid.n_azimuth << ',' << grid.refinement << '\n'
       << "max_gap f_min: " << f(s.f_min_gap) << '\n'
       << "max_gap f_max: " << f(s.f_max_gap) << '\n'
       << "max_gap nu2_squared: " << f(s.nu2_squared_gap) << '\n'
       << "max_gap nu_inf_bloch: " << f(s.nu_inf_bloch_gap) << '\n'
       << "max_gap double_max_vs_output_norm: " << f(s.double_max_gap) << '\n'
       << "diagnostic nu_inf_paper max_gap: " << f(s.nu_inf_paper_gap) << " at ("
       << f(s.nu_inf_paper_worst.lambda1) << ", " << f(s.nu_inf_paper_worst.lambda3) << ", "
       << f(s.nu_inf_paper_worst.lambda_star) << ")\n"
       << "diagnostic nu_inf_paper max_gap (|l3| >= |l1| or l* = 0): "
       << f(s.nu_inf_paper_gap_agreeing_regime) << '\n'
       << "diagnostic nu_inf_paper samples with gap > 1e-3: " << s.paper_gap_above_1e3 << '\n'
       << "status: " << (pass ? "pass" : "fail") << '\n';
  }
  return pass ? kExitOk : kExitAuditFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-covariant qubit channels: measures, trajectories, oracle audits"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  const auto add_channel = [&](CLI::App* sub) {
    sub->add_option("lambdas", cfg.channel, "lambda1 lambda3 lambda_star")
        ->expected(3)
        ->required();
  };
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
  };

  auto* validate = app.add_subcommand("validate", "check complete positivity of a channel");
  add_channel(validate);
  validate->add_option("--out", cfg.out_path, "output file (default stdout)");

  auto* measure = app.add_subcommand("measure", "closed-form measures of one channel");
  add_channel(measure);
  add_output(measure);

  auto* entanglement =
      app.add_subcommand("entanglement", "concurrence of the one-sided evolved Bell state");
  add_channel(entanglement);
  add_output(entanglement);

  auto* trajectory = app.add_subcommand("trajectory", "evaluate a dynamical family on a time grid");
  trajectory->add_option("family", cfg.family, "exp or osc")->required();
  trajectory->add_option("--p", cfg.p_list, "comma-separated mixing weights");
  trajectory->add_option("--t", cfg.t_grid, "start:stop:count");
  trajectory->add_option("--sign", cfg.sign, "sign of lambda_star, + or -");
  add_output(trajectory);

  auto* oracle = app.add_subcommand("oracle-check", "audit closed forms against brute force");
  oracle->add_option("nSamples", cfg.samples, "number of random channels")->required();
  oracle->add_option("--seed", cfg.seed, "PRNG seed");
  oracle->add_option("--grid", cfg.grid, "nPolar,nAzimuth,refinement");
  add_output(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(cfg);
    if (*measure) return cmd_measure(cfg);
    if (*entanglement) return cmd_entanglement(cfg);
    if (*trajectory) return cmd_trajectory(cfg);
    if (*oracle) return cmd_oracle_check(cfg);
  } catch (const Error& e) {
    std::cerr << "phasecov: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidChannel ? kExitNotCp : kExitUsage;
  }
  return kExitUsage;
}

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

#pragma once

// Text formats shared by the command-line tool: locale-independent number
// formatting, argument parsers, and the CSV/JSON record layouts.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "phasecov/dynamics.hpp"
#include "phasecov/entanglement.hpp"
#include "phasecov/error.hpp"
#include "phasecov/measures.hpp"
#include "phasecov/oracle.hpp"

namespace phasecov::io {

/// 17 significant digits, '.' separator, independent of the global locale.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw Error(ErrorCode::OutOfRange, "malformed number '" + std::string(s) + "'");
  }
  return v;
}

inline long long parse_integer(std::string_view s) {
  long long v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::OutOfRange, "malformed integer '" + std::string(s) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// "0,0.5,1" -> {0, 0.5, 1}; each weight must lie in [0, 1].
inline std::vector<double> parse_mixing_weights(std::string_view s) {
  std::vector<double> out;
  for (const auto part : split(s, ',')) {
    const double p = parse_double(part);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::OutOfRange, "mixing weight '" + std::string(part) + "' outside [0, 1]");
    }
    out.push_back(p);
  }
  return out;
}

/// "start:stop:count", count points with both endpoints included.
inline std::vector<double> parse_time_grid(std::string_view s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) {
    throw Error(ErrorCode::OutOfRange, "time grid '" + std::string(s) + "' is not start:stop:count");
  }
  const double start = parse_double(parts[0]);
  const double stop = parse_double(parts[1]);
  const long long count = parse_integer(parts[2]);
  if (count < 1 || !(start >= 0.0) || !(stop >= start)) {
    throw Error(ErrorCode::OutOfRange,
                "time grid '" + std::string(s) + "' needs 0 <= start <= stop and count >= 1");
  }
  return linspace(start, stop, static_cast<std::size_t>(count));
}

/// "nPolar,nAzimuth,refinement"
inline GridSpec parse_grid(std::string_view s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) {
    throw Error(ErrorCode::OutOfRange, "grid '" + std::string(s) + "' is not nPolar,nAzimuth,refinement");
  }
  GridSpec g{static_cast<int>(parse_integer(parts[0])), static_cast<int>(parse_integer(parts[1])),
             static_cast<int>(parse_integer(parts[2]))};
  g.validate();
  return g;
}

inline constexpr std::array<std::string_view, 13> kTrajectoryColumns{
    "t",           "p",           "f_min",      "f_max",         "nu2_squared",
    "nu_inf_paper", "nu_inf_bloch", "concurrence", "eof",          "f_min_paper",
    "f_max_paper", "nu2_squared_paper", "nu_inf_trajectory_paper"};

inline std::array<double, 13> trajectory_row(const TrajectorySample& s) {
  return {s.t,           s.p,        s.f_min,        s.f_max,         s.nu2_squared,
          s.nu_inf_paper, s.nu_inf_bloch, s.concurrence, s.eof,        s.paper.f_min,
          s.paper.f_max, s.paper.nu2_squared, s.paper.nu_inf};
}

template <std::size_t N>
void write_csv_line(std::ostream& os, const std::array<std::string_view, N>& cells) {
  for (std::size_t i = 0; i < N; ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

template <std::size_t N>
void write_csv_line(std::ostream& os, const std::array<double, N>& values) {
  for (std::size_t i = 0; i < N; ++i) os << (i ? "," : "") << format_double(values[i]);
  os << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& rows) {
  write_csv_line(os, kTrajectoryColumns);
  for (const auto& r : rows) write_csv_line(os, trajectory_row(r));
}

inline nlohmann::ordered_json trajectory_json(const std::vector<TrajectorySample>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto values = trajectory_row(r);
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < values.size(); ++i) obj[std::string(kTrajectoryColumns[i])] = values[i];
    arr.push_back(std::move(obj));
  }
  return arr;
}

/// One-channel summary emitted by the `measure` command.
struct MeasureRecord {
  ChannelParams params;
  MeasureReport measures;
  double concurrence = 0.0;
  double eof = 0.0;
};

inline MeasureRecord measure_record(const ChannelParams& p) {
  MeasureRecord r{p, evaluate_measures(p), concurrence_closed(p), 0.0};
  // Adding +0 turns a signed zero argument into +0 for output.
  for (ClosedForm* m : {&r.measures.f_min, &r.measures.f_max, &r.measures.nu2_squared,
                        &r.measures.nu_inf_bloch}) {
    m->family.x3 += 0.0;
  }
  r.eof = entanglement_of_formation(r.concurrence);
  return r;
}

inline constexpr std::array<std::string_view, 18> kMeasureColumns{
    "lambda1",     "lambda3",      "lambda_star",   "f_min",       "f_max",
    "nu2_squared", "nu_inf_paper", "nu_inf_bloch",  "concurrence", "eof",
    "f_min_x3",    "f_max_x3",     "nu2_squared_x3", "nu_inf_bloch_x3", "f_min_branch",
    "f_max_branch", "nu2_squared_branch", "nu_inf_bloch_branch"};

inline void write_measure_csv(std::ostream& os, const MeasureRecord& r) {
  write_csv_line(os, kMeasureColumns);
  const auto& m = r.measures;
  const std::array<double, 14> numbers{r.params.lambda1, r.params.lambda3, r.params.lambda_star,
                                       m.f_min.value,    m.f_max.value,    m.nu2_squared.value,
                                       m.nu_inf_paper,   m.nu_inf_bloch.value, r.concurrence,
                                       r.eof,            m.f_min.family.x3, m.f_max.family.x3,
                                       m.nu2_squared.family.x3, m.nu_inf_bloch.family.x3};
  for (std::size_t i = 0; i < numbers.size(); ++i) os << (i ? "," : "") << format_double(numbers[i]);
  os << ',' << to_string(m.f_min.branch) << ',' << to_string(m.f_max.branch) << ','
     << to_string(m.nu2_squared.branch) << ',' << to_string(m.nu_inf_bloch.branch) << '\n';
}

inline nlohmann::ordered_json measure_json(const MeasureRecord& r) {
  const auto& m = r.measures;
  nlohmann::ordered_json j;
  j["lambda1"] = r.params.lambda1;
  j["lambda3"] = r.params.lambda3;
  j["lambda_star"] = r.params.lambda_star;
  j["f_min"] = m.f_min.value;
  j["f_max"] = m.f_max.value;
  j["nu2_squared"] = m.nu2_squared.value;
  j["nu_inf_paper"] = m.nu_inf_paper;
  j["nu_inf_bloch"] = m.nu_inf_bloch.value;
  j["concurrence"] = r.concurrence;
  j["eof"] = r.eof;
  j["f_min_x3"] = m.f_min.family.x3;
  j["f_max_x3"] = m.f_max.family.x3;
  j["nu2_squared_x3"] = m.nu2_squared.family.x3;
  j["nu_inf_bloch_x3"] = m.nu_inf_bloch.family.x3;
  j["f_min_branch"] = to_string(m.f_min.branch);
  j["f_max_branch"] = to_string(m.f_max.branch);
  j["nu2_squared_branch"] = to_string(m.nu2_squared.branch);
  j["nu_inf_bloch_branch"] = to_string(m.nu_inf_bloch.branch);
  return j;
}

}  // namespace phasecov::io

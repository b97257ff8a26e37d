// Copyright 2026 The wgqed Authors
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

// Experiment descriptions as line-oriented `key = value` text.
//
//   # comment
//   mode = homodyne
//   eta_r = 0.75
//   initial = gg
//
// Times (dt, t_max) are in units of T1 = 1/gamma. Later assignments of the
// same key win, which lets presets, files and flags be layered.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wgqed/errors.hpp"
#include "wgqed/model.hpp"
#include "wgqed/trajectories.hpp"

namespace wgqed {

enum class SimMode { Lindblad, Jump, Homodyne, OracleCheck };

inline std::string_view to_string(SimMode m) {
  switch (m) {
    case SimMode::Lindblad: return "lindblad";
    case SimMode::Jump: return "jump";
    case SimMode::Homodyne: return "homodyne";
    case SimMode::OracleCheck: return "oracle_check";
  }
  return "?";
}

struct SimConfig {
  SimMode mode = SimMode::Jump;
  double gamma = 1.0;
  double omega_tilde = 0.0;
  KdParity kd_parity = KdParity::Even;
  double eta_l = 1.0;
  double eta_r = 1.0;
  double dt = 0.005;   // T1 units
  double t_max = 6.0;  // T1 units
  NamedState initial = NamedState::GG;
  std::size_t n_traj = 12;
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";
  bool store_states = true;
  std::size_t save_trajectories = 12;
  HomodyneScheme scheme = HomodyneScheme::Kraus;
  double bell_threshold = 0.98;
  double separable_threshold = 0.02;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct Assignment {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

inline constexpr std::array<std::string_view, 17> kConfigKeys{
    "mode",      "gamma",   "omega_tilde", "kd_parity",    "eta_l",   "eta_r",
    "dt",        "t_max",   "initial",     "n_traj",       "master_seed", "output_dir",
    "store_states", "save_trajectories", "scheme", "bell_threshold", "separable_threshold"};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

inline double parse_double(const Assignment& a) {
  double v = 0.0;
  const char* end = a.value.data() + a.value.size();
  const auto [ptr, ec] = std::from_chars(a.value.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ParseError(a.line, a.key + ": not a number: '" + a.value + "'");
  return v;
}

inline std::uint64_t parse_u64(const Assignment& a) {
  std::uint64_t v = 0;
  const char* end = a.value.data() + a.value.size();
  const auto [ptr, ec] = std::from_chars(a.value.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(a.line, a.key + ": not a nonnegative integer: '" + a.value + "'");
  return v;
}

inline bool parse_bool(const Assignment& a) {
  const std::string v = lower(a.value);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ParseError(a.line, a.key + ": not a boolean: '" + a.value + "'");
}

inline SimMode parse_mode(const Assignment& a) {
  const std::string v = lower(a.value);
  for (SimMode m : {SimMode::Lindblad, SimMode::Jump, SimMode::Homodyne, SimMode::OracleCheck})
    if (v == to_string(m)) return m;
  throw ParseError(a.line, "unknown mode '" + a.value + "'");
}

inline NamedState parse_state(const Assignment& a) {
  const std::string v = lower(a.value);
  for (NamedState s : kAllNamedStates)
    if (v == to_string(s)) return s;
  throw ParseError(a.line, "unknown initial state '" + a.value + "'");
}

inline void apply_defaults(SimConfig& c, SimMode mode) {
  c = SimConfig{};
  c.mode = mode;
  switch (mode) {
    case SimMode::Jump:
      break;
    case SimMode::Homodyne:
      c.eta_l = 0.0;
      c.t_max = 15.0;
      c.n_traj = 2000;
      break;
    case SimMode::Lindblad:
      c.t_max = 15.0;
      c.n_traj = 1;
      break;
    case SimMode::OracleCheck:
      c.eta_l = 0.0;
      c.dt = 0.0025;
      c.t_max = 3.0;
      c.n_traj = 2000;
      break;
  }
}

}  // namespace detail

inline bool is_config_key(std::string_view key) {
  return std::find(kConfigKeys.begin(), kConfigKeys.end(), key) != kConfigKeys.end();
}

inline std::vector<Assignment> parse_assignments(std::string_view text) {
  std::vector<Assignment> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = detail::lower(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (!is_config_key(key)) throw ParseError(line_no, "unknown key '" + key + "'");
    if (value.empty()) throw ParseError(line_no, key + ": missing value");
    out.push_back({key, value, line_no});
  }
  return out;
}

inline void validate(const SimConfig& c) {
  if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) throw RangeError("gamma", "must be positive");
  if (!std::isfinite(c.omega_tilde)) throw RangeError("omega_tilde", "must be finite");
  if (!(c.eta_l >= 0.0 && c.eta_l <= 1.0)) throw RangeError("eta_l", "must lie in [0, 1]");
  if (!(c.eta_r >= 0.0 && c.eta_r <= 1.0)) throw RangeError("eta_r", "must lie in [0, 1]");
  if (!(c.dt > 0.0 && c.dt <= 0.01)) throw RangeError("dt", "must lie in (0, 0.01] T1");
  if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) throw RangeError("t_max", "must be positive");
  if (c.n_traj < 1) throw RangeError("n_traj", "must be at least 1");
  if (!(c.bell_threshold > 0.5 && c.bell_threshold <= 1.0))
    throw RangeError("bell_threshold", "must lie in (0.5, 1]");
  if (!(c.separable_threshold >= 0.0 && c.separable_threshold < 1.0))
    throw RangeError("separable_threshold", "must lie in [0, 1)");
  if (c.output_dir.empty()) throw RangeError("output_dir", "must not be empty");
}

// Defaults depend on the mode: jump runs 6 T1 with both ports at unit
// efficiency; homodyne runs 15 T1 with only the right port monitored.
inline SimConfig resolve_config(std::span<const Assignment> assignments) {
  SimMode mode = SimMode::Jump;
  for (const auto& a : assignments)
    if (a.key == "mode") mode = detail::parse_mode(a);
  SimConfig c;
  detail::apply_defaults(c, mode);

  for (const auto& a : assignments) {
    const std::string& k = a.key;
    if (k == "mode") continue;
    if (k == "gamma") c.gamma = detail::parse_double(a);
    else if (k == "omega_tilde") c.omega_tilde = detail::parse_double(a);
    else if (k == "kd_parity") {
      const std::string v = detail::lower(a.value);
      if (v == "even") c.kd_parity = KdParity::Even;
      else if (v == "odd") c.kd_parity = KdParity::Odd;
      else throw ParseError(a.line, "kd_parity must be 'even' or 'odd'");
    } else if (k == "eta_l") c.eta_l = detail::parse_double(a);
    else if (k == "eta_r") c.eta_r = detail::parse_double(a);
    else if (k == "dt") c.dt = detail::parse_double(a);
    else if (k == "t_max") c.t_max = detail::parse_double(a);
    else if (k == "initial") c.initial = detail::parse_state(a);
    else if (k == "n_traj") c.n_traj = detail::parse_u64(a);
    else if (k == "master_seed") c.master_seed = detail::parse_u64(a);
    else if (k == "output_dir") c.output_dir = a.value;
    else if (k == "store_states") c.store_states = detail::parse_bool(a);
    else if (k == "save_trajectories") c.save_trajectories = detail::parse_u64(a);
    else if (k == "scheme") {
      const std::string v = detail::lower(a.value);
      if (v == "kraus") c.scheme = HomodyneScheme::Kraus;
      else if (v == "euler") c.scheme = HomodyneScheme::EulerMaruyama;
      else throw ParseError(a.line, "scheme must be 'kraus' or 'euler'");
    } else if (k == "bell_threshold") c.bell_threshold = detail::parse_double(a);
    else if (k == "separable_threshold") c.separable_threshold = detail::parse_double(a);
  }
  validate(c);
  return c;
}

inline SimConfig parse_config(std::string_view text) {
  const auto assignments = parse_assignments(text);
  return resolve_config(assignments);
}

// Shortest text that parses back to exactly the same double.
inline std::string exact_number(double v) {
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), r.ptr};
}

// Resolved configuration as parseable text; parse_config(to_config_text(c)) == c.
inline std::string to_config_text(const SimConfig& c) {
  std::string s;
  auto line = [&](std::string_view key, const std::string& value) {
    s.append(key).append(" = ").append(value).append("\n");
  };
  line("mode", std::string(to_string(c.mode)));
  line("gamma", exact_number(c.gamma));
  line("omega_tilde", exact_number(c.omega_tilde));
  line("kd_parity", std::string(to_string(c.kd_parity)));
  line("eta_l", exact_number(c.eta_l));
  line("eta_r", exact_number(c.eta_r));
  line("dt", exact_number(c.dt));
  line("t_max", exact_number(c.t_max));
  line("initial", std::string(to_string(c.initial)));
  line("n_traj", std::to_string(c.n_traj));
  line("master_seed", std::to_string(c.master_seed));
  line("output_dir", c.output_dir);
  line("store_states", c.store_states ? "true" : "false");
  line("save_trajectories", std::to_string(c.save_trajectories));
  line("scheme", std::string(to_string(c.scheme)));
  line("bell_threshold", exact_number(c.bell_threshold));
  line("separable_threshold", exact_number(c.separable_threshold));
  return s;
}

inline constexpr std::array<std::string_view, 9> kPresetNames{"fig2a", "fig2b", "fig4",  "fig5a", "fig5b",
                                                              "fig5c", "fig5d", "fig6", "oracles"};

// Parameters of the published figures. fig6 describes one initial state; the
// CLI expands it over gg, ge, eg and ee.
inline std::optional<std::string> preset_text(std::string_view name) {
  const std::string jump = "mode = jump\nkd_parity = even\ninitial = gg\ndt = 0.005\nt_max = 6\n";
  const std::string homodyne = "mode = homodyne\nkd_parity = even\ninitial = gg\neta_l = 0\ndt = 0.005\nt_max = 15\n";
  if (name == "fig2a") return jump + "eta_l = 1\neta_r = 1\nn_traj = 12\n";
  if (name == "fig2b") return jump + "eta_l = 0.9\neta_r = 0.9\nn_traj = 12\n";
  if (name == "fig4") return jump + "eta_l = 1\neta_r = 1\nn_traj = 1\n";
  if (name == "fig5a") return homodyne + "eta_r = 1\nn_traj = 2000\n";
  if (name == "fig5b") return homodyne + "eta_r = 0.9\nn_traj = 2000\n";
  if (name == "fig5c") return homodyne + "eta_r = 0.75\nn_traj = 2000\n";
  if (name == "fig5d") return homodyne + "eta_r = 0.5\nn_traj = 2000\n";
  if (name == "fig6") return homodyne + "eta_r = 1\nn_traj = 200\n";
  if (name == "oracles") return std::string("mode = oracle_check\n");
  return std::nullopt;
}

inline WaveguideModel model_for(const SimConfig& c) {
  return build_model(c.gamma, c.omega_tilde, c.kd_parity, c.eta_l, c.eta_r);
}

inline TrajectoryConfig trajectory_config_for(const SimConfig& c) {
  TrajectoryConfig t;
  t.mode = c.mode == SimMode::Homodyne ? DetectionMode::Homodyne : DetectionMode::Jump;
  t.dt = c.dt / c.gamma;
  t.t_max = c.t_max / c.gamma;
  t.initial = c.initial;
  t.store_states = c.store_states;
  t.scheme = c.scheme;
  return t;
}

}  // namespace wgqed

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

// Runs a SimConfig end to end and writes its CSV files and manifest.
//
// Output files (all times in units of T1):
//   trajectory_<i>.csv  t, concurrence, p00, p11, p22, p33, re_rho03, im_rho03,
//                       re_rho12, im_rho12, then click_l, click_r (jump) or
//                       I_l, I_r (homodyne)
//   ensemble.csv        t, mean_concurrence, stderr
//   terminal.csv        label, count
//   manifest.txt        resolved config as `key = value`, seeds and version
//                       as comments
//   oracle_check.csv    check, max_abs_error (oracle_check mode only)

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wgqed/config.hpp"
#include "wgqed/ensemble.hpp"
#include "wgqed/lindblad.hpp"
#include "wgqed/measures.hpp"
#include "wgqed/oracles.hpp"
#include "wgqed/trajectories.hpp"

namespace wgqed {

inline constexpr std::string_view kToolVersion = "0.1.0";

// 12 significant digits, '.' separator, independent of the C++ locale.
inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 12);
  return {buf.data(), r.ptr};
}

inline constexpr std::string_view kStateColumns =
    "t,concurrence,p00,p11,p22,p33,re_rho03,im_rho03,re_rho12,im_rho12";

namespace detail {

inline void append_observables(std::string& line, double t_t1, const ObservableSet& o) {
  line += format_number(t_t1);
  line += ',';
  line += format_number(o.concurrence);
  for (double p : o.populations) {
    line += ',';
    line += format_number(p);
  }
  for (cplx z : {o.rho03, o.rho12}) {
    line += ',';
    line += format_number(z.real());
    line += ',';
    line += format_number(z.imag());
  }
}

inline std::size_t grid_index(double t, double dt) { return static_cast<std::size_t>(std::llround(t / dt)); }

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw Error("failed writing " + path.string());
}

}  // namespace detail

inline std::string trajectory_csv(const TrajectoryRecord& rec) {
  const std::size_t n = rec.times.size();
  std::vector<std::array<double, 2>> extra(n, {0.0, 0.0});
  if (rec.mode == DetectionMode::Jump) {
    for (const auto& c : rec.clicks) extra[detail::grid_index(c.time, rec.dt)][index(c.channel)] = 1.0;
  } else {
    for (const auto& s : rec.currents) extra[detail::grid_index(s.time, rec.dt)][index(s.channel)] = s.value;
  }
  std::string out(kStateColumns);
  out += rec.mode == DetectionMode::Jump ? ",click_l,click_r\n" : ",I_l,I_r\n";
  for (std::size_t k = 0; k < n; ++k) {
    std::string line;
    detail::append_observables(line, rec.times[k] * rec.gamma, rec.observables[k]);
    for (double x : extra[k]) {
      line += ',';
      line += rec.mode == DetectionMode::Jump ? (x > 0.0 ? "1" : "0") : format_number(x);
    }
    out += line;
    out += '\n';
  }
  return out;
}

inline std::string ensemble_csv(const std::vector<double>& times_t1, const std::vector<double>& mean,
                                const std::vector<double>& stderr_) {
  std::string out = "t,mean_concurrence,stderr\n";
  for (std::size_t k = 0; k < times_t1.size(); ++k)
    out += format_number(times_t1[k]) + ',' + format_number(mean[k]) + ',' + format_number(stderr_[k]) + '\n';
  return out;
}

inline std::string terminal_csv(const std::optional<std::map<TerminalClass, std::size_t>>& counts,
                                std::size_t n_traj) {
  std::string out = "label,count\n";
  if (!counts) return out + "unclassified," + std::to_string(n_traj) + '\n';
  for (TerminalClass c : kTerminalClasses) out += std::string(to_string(c)) + ',' + std::to_string(counts->at(c)) + '\n';
  return out;
}

inline std::string manifest_text(const SimConfig& c, const std::vector<std::uint64_t>& seeds) {
  std::string out = "# wgqed run manifest\n# tool_version = " + std::string(kToolVersion) + "\n";
  out += "# time unit = T1 = 1/gamma\n";
  out += to_config_text(c);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    out += "# trajectory_seed[" + std::to_string(i) + "] = " + std::to_string(seeds[i]) + '\n';
  return out;
}

struct RunOptions {
  std::size_t workers = 1;
};

namespace detail {

inline void run_lindblad(const SimConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const WaveguideModel model = model_for(c);
  const Evolution ev = evolve(model, named_projector(c.initial), c.dt / c.gamma, c.t_max / c.gamma);
  TrajectoryRecord rec;
  rec.mode = DetectionMode::Jump;
  rec.gamma = c.gamma;
  rec.dt = c.dt / c.gamma;
  for (const auto& s : ev.states) {
    rec.times.push_back(s.time);
    rec.observables.push_back(observables(s.mat));
  }
  // Same layout as conditional runs, without the detector columns.
  std::string csv(kStateColumns);
  csv += '\n';
  std::vector<double> times_t1, conc;
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    std::string line;
    append_observables(line, rec.times[k] * c.gamma, rec.observables[k]);
    csv += line + '\n';
    times_t1.push_back(rec.times[k] * c.gamma);
    conc.push_back(rec.observables[k].concurrence);
  }
  write_file(dir / "trajectory_0.csv", csv);
  write_file(dir / "ensemble.csv", ensemble_csv(times_t1, conc, std::vector<double>(conc.size(), 0.0)));

  std::optional<std::map<TerminalClass, std::size_t>> counts;
  const ClassifyOptions opts{c.bell_threshold, c.separable_threshold};
  if (rec.duration_t1() >= opts.min_time_t1 - 1e-9) {
    counts.emplace();
    for (TerminalClass t : kTerminalClasses) (*counts)[t] = 0;
    ++(*counts)[classify_terminal(rec, opts)];
  }
  write_file(dir / "terminal.csv", terminal_csv(counts, 1));
  write_file(dir / "manifest.txt", manifest_text(c, {}));
  log << "lindblad: " << ev.states.size() << " points, max trace correction "
      << format_number(ev.max_trace_correction) << ", final concurrence " << format_number(conc.back()) << '\n';
}

inline void run_conditional(const SimConfig& c, const RunOptions& run, const std::filesystem::path& dir,
                            std::ostream& log) {
  const WaveguideModel model = model_for(c);
  EnsembleOptions opts;
  opts.workers = run.workers;
  opts.keep_records = std::min(c.save_trajectories, c.n_traj);
  opts.classify = {c.bell_threshold, c.separable_threshold};
  const EnsembleResult res = run_ensemble(model, trajectory_config_for(c), c.master_seed, c.n_traj, opts);

  for (std::size_t i = 0; i < res.records.size(); ++i)
    write_file(dir / ("trajectory_" + std::to_string(i) + ".csv"), trajectory_csv(res.records[i]));
  std::vector<double> times_t1;
  for (double t : res.times) times_t1.push_back(t * c.gamma);
  write_file(dir / "ensemble.csv", ensemble_csv(times_t1, res.mean_concurrence, res.stderr_concurrence));
  write_file(dir / "terminal.csv", terminal_csv(res.terminal_counts, res.n_traj));
  write_file(dir / "manifest.txt", manifest_text(c, res.seeds));
  log << to_string(c.mode) << ": " << res.n_traj << " trajectories, final mean concurrence "
      << format_number(res.mean_concurrence.back()) << " +- " << format_number(res.stderr_concurrence.back())
      << '\n';
  if (res.terminal_counts)
    for (const auto& [label, count] : *res.terminal_counts)
      if (count > 0) log << "  " << to_string(label) << ": " << count << '\n';
}

struct OracleCheckRow {
  std::string check;
  double max_abs_error;
};

inline std::vector<OracleCheckRow> oracle_check(const SimConfig& c, const RunOptions& run) {
  std::vector<OracleCheckRow> rows;
  const double g = c.gamma;
  const WaveguideModel model = build_model(g, 0.0, KdParity::Even, 0.0, 1.0);

  double state_err = 0.0;
  double conc_err = 0.0;
  constexpr int kPoints = 1000;
  for (int k = 0; k < kPoints; ++k) {
    const double t = 10.0 / g * k / (kPoints - 1);
    const Ket numeric = no_jump_propagate(model, named_state(NamedState::GG), t);
    const Ket closed = no_click_state(g, t);
    for (std::size_t i = 0; i < 4; ++i) state_err = std::max(state_err, std::abs(numeric[i] - closed[i]));
    conc_err = std::max(conc_err, std::abs(concurrence_pure(numeric) - no_click_concurrence(g, t)));
  }
  rows.push_back({"no_click_state", state_err});
  rows.push_back({"no_click_concurrence", conc_err});

  TrajectoryConfig tc;
  tc.mode = DetectionMode::Homodyne;
  tc.dt = c.dt / g;
  tc.t_max = c.t_max / g;
  tc.initial = NamedState::GG;
  tc.store_states = false;
  tc.scheme = c.scheme;
  EnsembleOptions opts;
  opts.workers = run.workers;
  const EnsembleResult res = run_ensemble(model, tc, c.master_seed, c.n_traj, opts);
  double mean_err = 0.0;
  double max_z = 0.0;
  for (std::size_t k = 0; k < res.times.size(); ++k) {
    const double d = std::abs(res.mean_concurrence[k] - homodyne_mean_concurrence(model, NamedState::GG, res.times[k]));
    mean_err = std::max(mean_err, d);
    if (res.stderr_concurrence[k] > 0.0) max_z = std::max(max_z, d / res.stderr_concurrence[k]);
  }
  rows.push_back({"homodyne_mean_concurrence", mean_err});
  rows.push_back({"homodyne_mean_concurrence_max_z", max_z});

  rows.push_back({"steady_state_residual", steady_state_residual(model, steady_state_rho().mat)});
  const Evolution ev = evolve(model, named_projector(NamedState::GG), 0.005 / g, 15.0 / g);
  rows.push_back({"lindblad_to_steady_state", trace_distance(ev.states.back().mat, steady_state_rho().mat)});
  return rows;
}

inline void run_oracle_check(const SimConfig& c, const RunOptions& run, const std::filesystem::path& dir,
                             std::ostream& log) {
  const auto rows = oracle_check(c, run);
  std::string csv = "check,max_abs_error\n";
  for (const auto& r : rows) {
    csv += r.check + ',' + format_number(r.max_abs_error) + '\n';
    log << r.check << ": " << format_number(r.max_abs_error) << '\n';
  }
  write_file(dir / "oracle_check.csv", csv);
  write_file(dir / "manifest.txt", manifest_text(c, {}));
}

}  // namespace detail

// Returns a process exit code; diagnostics go to `log`.
inline int run_experiment(const SimConfig& config, const RunOptions& run = {}, std::ostream* log = nullptr) {
  std::ostringstream sink;
  std::ostream& out = log ? *log : sink;
  try {
    validate(config);
    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    switch (config.mode) {
      case SimMode::Lindblad: detail::run_lindblad(config, dir, out); break;
      case SimMode::Jump:
      case SimMode::Homodyne: detail::run_conditional(config, run, dir, out); break;
      case SimMode::OracleCheck: detail::run_oracle_check(config, run, dir, out); break;
    }
    return 0;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace wgqed

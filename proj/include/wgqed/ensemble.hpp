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

// Reproducible ensembles of conditional trajectories. Trajectory i always
// uses seed derive_seed(master_seed, i); trajectories are computed in blocks
// by a pool of workers and reduced in index order, so results are
// bit-identical for any worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "wgqed/errors.hpp"
#include "wgqed/measures.hpp"
#include "wgqed/model.hpp"
#include "wgqed/record.hpp"
#include "wgqed/rng.hpp"
#include "wgqed/trajectories.hpp"

namespace wgqed {

struct EnsembleOptions {
  std::size_t workers = 1;
  std::size_t keep_records = 0;  // keep full records of trajectories 0..keep_records-1
  bool accumulate_states = false;
  ClassifyOptions classify{};
  double convergence_band = 0.95;
  std::size_t block_size = 64;
};

struct EnsembleResult {
  std::size_t n_traj = 0;
  std::vector<double> times;
  std::vector<double> mean_concurrence;
  std::vector<double> stderr_concurrence;
  // Set only when records reach the classification horizon.
  std::optional<std::map<TerminalClass, std::size_t>> terminal_counts;
  std::vector<TerminalClass> terminal_labels;               // per trajectory, when classified
  std::vector<std::optional<double>> convergence_times;     // per trajectory
  std::vector<Mat4> mean_state;                             // when accumulate_states
  std::vector<double> mean_state_stderr;                    // Frobenius-norm standard error of mean_state
  std::vector<std::uint64_t> seeds;
  std::vector<TrajectoryRecord> records;

  double fraction(TerminalClass c) const {
    if (!terminal_counts) return 0.0;
    const auto it = terminal_counts->find(c);
    return it == terminal_counts->end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n_traj);
  }
};

namespace detail {

struct EnsembleAccumulator {
  std::vector<double> sum_c, sum_c2;
  std::vector<Mat4> sum_rho;
  std::vector<double> sum_rho_norm2;

  void add(const TrajectoryRecord& rec, bool states) {
    const std::size_t n = rec.observables.size();
    if (sum_c.empty()) {
      sum_c.assign(n, 0.0);
      sum_c2.assign(n, 0.0);
      if (states) {
        sum_rho.assign(n, Mat4{});
        sum_rho_norm2.assign(n, 0.0);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double c = rec.observables[k].concurrence;
      sum_c[k] += c;
      sum_c2[k] += c * c;
    }
    if (states)
      for (std::size_t k = 0; k < n; ++k) {
        sum_rho[k] += rec.states[k];
        const double f = rec.states[k].frobenius_norm();
        sum_rho_norm2[k] += f * f;
      }
  }
};

inline double standard_error(double sum, double sum2, std::size_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double var = std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1.0));
  return std::sqrt(var / nn);
}

}  // namespace detail

inline EnsembleResult run_ensemble(const WaveguideModel& model, const TrajectoryConfig& config,
                                   std::uint64_t master_seed, std::size_t n_traj,
                                   const EnsembleOptions& options = {}) {
  if (n_traj < 1) throw BadParam("ensemble needs at least one trajectory");
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  const std::size_t block = std::max<std::size_t>(1, options.block_size);

  TrajectoryConfig sim = config;
  sim.store_states = config.store_states || options.accumulate_states;

  EnsembleResult out;
  out.n_traj = n_traj;
  out.seeds.reserve(n_traj);
  for (std::size_t i = 0; i < n_traj; ++i) out.seeds.push_back(derive_seed(master_seed, i));

  detail::EnsembleAccumulator acc;
  bool classified = false;
  std::map<TerminalClass, std::size_t> counts;
  for (TerminalClass c : kTerminalClasses) counts[c] = 0;

  for (std::size_t start = 0; start < n_traj; start += block) {
    const std::size_t len = std::min(block, n_traj - start);
    std::vector<std::optional<TrajectoryRecord>> recs(len);
    std::vector<std::exception_ptr> errors(len);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t j = next.fetch_add(1); j < len; j = next.fetch_add(1)) {
        try {
          recs[j] = simulate_trajectory(model, sim, out.seeds[start + j]);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      }
    };
    if (workers == 1 || len == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < std::min(workers, len); ++w) pool.emplace_back(work);
    }

    for (std::size_t j = 0; j < len; ++j) {
      const long idx = static_cast<long>(start + j);
      if (errors[j]) {
        try {
          std::rethrow_exception(errors[j]);
        } catch (const TrajectoryError& e) {
          throw TrajectoryError(e.time(), e.cause(), idx);
        } catch (const std::exception& e) {
          throw TrajectoryError(0.0, e.what(), idx);
        }
      }
      TrajectoryRecord& rec = *recs[j];
      if (out.times.empty()) out.times = rec.times;
      acc.add(rec, options.accumulate_states);
      if (rec.duration_t1() >= options.classify.min_time_t1 - 1e-9) {
        classified = true;
        const TerminalClass label = classify_terminal(rec, options.classify);
        ++counts[label];
        out.terminal_labels.push_back(label);
      }
      out.convergence_times.push_back(convergence_time(rec, options.convergence_band));
      if (start + j < options.keep_records) {
        if (!config.store_states) rec.states.clear();
        out.records.push_back(std::move(rec));
      }
    }
  }

  const std::size_t npts = acc.sum_c.size();
  const double nn = static_cast<double>(n_traj);
  out.mean_concurrence.resize(npts);
  out.stderr_concurrence.resize(npts);
  for (std::size_t k = 0; k < npts; ++k) {
    out.mean_concurrence[k] = acc.sum_c[k] / nn;
    out.stderr_concurrence[k] = detail::standard_error(acc.sum_c[k], acc.sum_c2[k], n_traj);
  }
  if (options.accumulate_states) {
    out.mean_state.resize(npts);
    out.mean_state_stderr.resize(npts);
    for (std::size_t k = 0; k < npts; ++k) {
      out.mean_state[k] = acc.sum_rho[k] * (1.0 / nn);
      const double m = out.mean_state[k].frobenius_norm();
      out.mean_state_stderr[k] = n_traj < 2 ? 0.0
                                            : std::sqrt(std::max(0.0, (acc.sum_rho_norm2[k] - nn * m * m) /
                                                                          (nn - 1.0)) /
                                                        nn);
    }
  }
  if (classified) out.terminal_counts = std::move(counts);
  return out;
}

// Pointwise average of stored states.
inline std::vector<Mat4> mean_state_series(std::span<const TrajectoryRecord> records) {
  if (records.empty()) throw BadParam("no records to average");
  const std::size_t n = records.front().states.size();
  for (const auto& r : records) {
    if (!r.has_states()) throw MissingStates("record stores observables only");
    if (r.states.size() != n) throw BadParam("records have different lengths");
  }
  std::vector<Mat4> mean(n);
  for (const auto& r : records)
    for (std::size_t k = 0; k < n; ++k) mean[k] += r.states[k];
  const double inv = 1.0 / static_cast<double>(records.size());
  for (auto& m : mean) m = (m * inv).hermitian_part();
  return mean;
}

// Percentile bootstrap interval for the fraction of `labels` equal to `target`.
inline std::pair<double, double> bootstrap_fraction_interval(std::span<const TerminalClass> labels,
                                                             TerminalClass target, std::size_t resamples = 200,
                                                             std::uint64_t seed = 0, double level = 0.95) {
  if (labels.empty()) throw BadParam("no labels");
  RngStream rng(seed);
  const std::size_t n = labels.size();
  std::vector<double> fractions;
  fractions.reserve(resamples);
  for (std::size_t b = 0; b < resamples; ++b) {
    std::size_t hits = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto pick = static_cast<std::size_t>(rng.uniform() * static_cast<double>(n));
      hits += labels[std::min(pick, n - 1)] == target;
    }
    fractions.push_back(static_cast<double>(hits) / static_cast<double>(n));
  }
  std::sort(fractions.begin(), fractions.end());
  const double tail = 0.5 * (1.0 - level);
  auto at = [&](double q) {
    const auto i = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1) + 0.5));
    return fractions[std::min(i, resamples - 1)];
  };
  return {at(tail), at(1.0 - tail)};
}

inline double median(std::vector<double> values) {
  if (values.empty()) throw BadParam("median of empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  const double hi = values[mid];
  if (values.size() % 2 == 1) return hi;
  const double lo = *std::max_element(values.begin(), values.begin() + static_cast<long>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace wgqed

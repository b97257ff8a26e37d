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

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wgqed/errors.hpp"
#include "wgqed/measures.hpp"
#include "wgqed/model.hpp"

namespace wgqed {

enum class DetectionMode { Jump, Homodyne };

inline std::string_view to_string(DetectionMode m) { return m == DetectionMode::Jump ? "jump" : "homodyne"; }

struct ClickEvent {
  double time = 0.0;  // end of the step in which the click was registered
  Channel channel = Channel::Left;
};

// Homodyne current I(t), averaged over the step ending at `time`.
struct CurrentSample {
  double time = 0.0;
  Channel channel = Channel::Right;
  double value = 0.0;
};

struct TrajectoryRecord {
  DetectionMode mode = DetectionMode::Jump;
  std::uint64_t seed = 0;
  double gamma = 1.0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<ObservableSet> observables;  // one per time
  std::vector<Mat4> states;                // one per time, or empty in observables-only mode
  std::vector<ClickEvent> clicks;          // jump mode, in time order
  std::vector<CurrentSample> currents;     // homodyne mode, monitored channels only

  bool has_states() const noexcept { return !states.empty(); }
  double duration_t1() const noexcept { return times.empty() ? 0.0 : times.back() * gamma; }
};

inline TerminalClass classify_terminal(const TrajectoryRecord& record, const ClassifyOptions& opts = {}) {
  if (record.observables.empty() || record.duration_t1() < opts.min_time_t1 - 1e-9)
    throw RecordTooShort("record covers " + std::to_string(record.duration_t1()) + " T1, need " +
                         std::to_string(opts.min_time_t1));
  return classify_state(record.observables.back(), opts);
}

// First time after which concurrence stays inside [band, 1] until the end of
// the record, or nothing if it ends outside the band.
inline std::optional<double> convergence_time(const TrajectoryRecord& record, double band = 0.95) {
  const auto& obs = record.observables;
  std::size_t k = obs.size();
  while (k > 0 && obs[k - 1].concurrence >= band) --k;
  if (k == obs.size()) return std::nullopt;
  return record.times[k];
}

}  // namespace wgqed

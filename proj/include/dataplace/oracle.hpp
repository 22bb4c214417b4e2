/*
 * Copyright 2026 The dataplace Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Brute-force trace simulator. It replays the loop nest one leaf step at a
// time and classifies every datum a unit holds by looking at what was resident
// one step earlier. Only the loop structure of the schedule tree is shared with
// the analytical path; stamps, footprints and classification are recomputed
// here from scratch.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dataplace/analysis.hpp"
#include "dataplace/arch.hpp"
#include "dataplace/mapping.hpp"

namespace dataplace {

struct OracleOptions {
  bool volumes = true;    // false: only the active-PE series
  bool event_log = false;
  std::uint64_t max_steps = std::uint64_t{1} << 20;
};

struct OracleResult {
  VolumeReport volumes;
  std::vector<std::uint32_t> active;  // active leaf units per leaf step
  std::vector<std::string> events;    // "t level unit array element class"

  /// sum(active) / (pe_size * steps), reduced.
  Rational utilization(std::int64_t pe_size) const;
  double mean_active() const;
};

OracleResult simulate(const ScheduleTree& tree, const ArchSpec& arch, const OracleOptions& options = {});

struct VolumeDiff {
  std::string array;
  std::string level;
  std::string field;  // TV | SV | TSV | UV | Total | reqs | missing
  std::uint64_t a = 0;
  std::uint64_t b = 0;
};

/// Empty iff both reports hold the same entries with the same counts.
std::vector<VolumeDiff> diff(const VolumeReport& a, const VolumeReport& b);

}  // namespace dataplace

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


#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dataplace/arch.hpp"
#include "dataplace/intrel.hpp"
#include "dataplace/mapping.hpp"

namespace dataplace {

/// Datum counts of one (level, array): a partition of Total.
struct Volumes {
  std::uint64_t tv = 0;
  std::uint64_t sv = 0;
  std::uint64_t tsv = 0;
  std::uint64_t uv = 0;
  std::uint64_t total = 0;

  Volumes& operator+=(const Volumes& o);
  bool operator==(const Volumes& o) const = default;
};

struct VolumeEntry {
  std::string level;
  std::string array;
  Volumes v;
  std::uint64_t reqs = 0;  // child stamps with at least one unique fetch
};

struct VolumeReport {
  std::vector<VolumeEntry> entries;  // level order, then array order

  const VolumeEntry* find(std::string_view level, std::string_view array) const;
};

/// Classifies the child placements of Theta : p -> [[[sp] -> [tp]] -> [[s] -> [t]]].
///   TV : p held by s at the preceding stamp
///   TSV: p held at the preceding stamp by a unit s0 with (s0 -> s) in connect
///   SV : remaining copies of one parent placement at one stamp, g - 1 per group
///   UV : Total - TV - TSV - SV
/// `previous` is theta at the stamp before the first stamp of Theta, if any.
Volumes reuse_volumes(const IntRelation& placements, const IntRelation& connect,
                      bool multicast = true, const IntRelation* previous = nullptr,
                      std::uint64_t* reqs = nullptr);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// Active units per step over the PE count.
Rational utilization(const ScheduleTree& tree, const ArchSpec& arch);

struct EnergyBreakdown {
  double mac = 0;
  std::vector<std::pair<std::string, double>> on_chip;  // physical non-root levels
  double dram = 0;
  double connect = 0;

  double on_chip_total() const;
  double total() const { return mac + on_chip_total() + dram + connect; }
};

EnergyBreakdown energy(const VolumeReport& volumes, const ArchSpec& arch, const Workload& w,
                       std::uint64_t total_mac, Rational util);

struct TimeBreakdown {
  double comp = 0;
  double dram = 0;
  double on_chip = 0;
  double comm = 0;
  double total = 0;
  std::vector<std::pair<std::string, double>> dma;  // per array
};

TimeBreakdown exec_time(const VolumeReport& volumes, const ArchSpec& arch, const Workload& w,
                        std::uint64_t leaf_steps);

struct CostReport {
  std::string workload;
  std::string arch;
  std::string mapping;
  std::uint64_t total_mac = 0;
  std::uint64_t leaf_steps = 0;
  std::int64_t pe_size = 0;
  double act_pe = 0;
  Rational util;
  TimeBreakdown time;
  EnergyBreakdown energy;
  VolumeReport volumes;
};

struct AnalyzeOptions {
  std::size_t window_rows = std::size_t{1} << 20;
};

VolumeReport reuse_report(const ScheduleTree& tree, const ArchSpec& arch,
                          const AnalyzeOptions& options = {});

CostReport analyze(const ScheduleTree& tree, const ArchSpec& arch, const AnalyzeOptions& options = {});

}  // namespace dataplace

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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataplace/arch.hpp"
#include "dataplace/workload.hpp"

namespace dataplace {

struct LevelMapping {
  std::string level;
  std::vector<std::string> temporal_order;
  std::map<std::string, std::int64_t> temporal_tile;  // T
  std::map<std::string, std::int64_t> spatial_tile;   // S, per instance
  std::optional<std::string> space_x, space_y, simd;
};

struct Mapping {
  std::string name;
  std::vector<LevelMapping> levels;  // outermost first
};

Mapping parse_mapping(std::string_view text, const std::string& source = "");
std::string render_mapping(const Mapping& m);

/// T / S of `dim` at `level`; missing tiles default as in the mapping document.
std::int64_t parallelism(const Mapping& m, const Workload& w, std::string_view level,
                         std::string_view dim);

struct Violation {
  std::string rule;  // dependence | parallelism | capacity | tiling
  std::string level;
  std::string dim;   // dim, axis or array, when relevant
  std::int64_t required = 0;
  std::int64_t available = 0;
  std::string detail;

  std::string to_string() const;
};

std::vector<Violation> check_legality(const Mapping& m, const ArchSpec& a, const Workload& w);

class LegalityError : public Error {
 public:
  explicit LegalityError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

enum class SpaceAxis { kNone, kX, kY, kSimd };

/// One loop of a band: coordinate c in [0, trip) contributes c * stride to `dim`.
struct BandMember {
  std::size_t dim = 0;
  std::int64_t trip = 1;
  std::int64_t stride = 1;
  SpaceAxis axis = SpaceAxis::kNone;
};

/// Mark node of one memory level followed by its time and space bands.
struct TreeLevel {
  std::string name;
  bool is_virtual = false;
  DimAxis layout = DimAxis::kX;
  std::int64_t nx = 1, ny = 1;
  std::vector<BandMember> time;   // temporal_order, trip > 1 only
  std::vector<BandMember> space;  // y, x, simd, trip > 1 only
  std::vector<std::int64_t> tile;  // per-instance tile S by dim

  std::int64_t px() const;  // x extent of this band (x times simd)
  std::int64_t py() const;
};

/// Domain node, then per level: mark, time band, space band; then the leaf band.
struct ScheduleTree {
  Workload workload;
  std::vector<TreeLevel> levels;
  std::vector<BandMember> leaf;

  /// Number of time coordinates visible at `level` (at least 1).
  std::size_t time_arity(std::size_t level) const;
  /// 1 if no space band at or above `level`, else the level's unit arity.
  std::size_t space_arity(std::size_t level) const;
  bool has_space(std::size_t level) const;
  /// Cumulative x / y extent of the unit stamps at `level`.
  std::int64_t units_x(std::size_t level) const;
  std::int64_t units_y(std::size_t level) const;
  /// Leaf stamps: product of all time and leaf trips.
  std::uint64_t leaf_steps() const;
  /// Product of all space trips: active PEs per step.
  std::int64_t active_units() const;

  /// Time stamp of `level` from coordinates of all time members (tree order).
  void time_stamp(std::size_t level, const std::vector<std::vector<std::int64_t>>& time_coords,
                  std::vector<Value>& out) const;
  /// Unit stamp of `level` from coordinates of all space members (tree order).
  void unit_stamp(std::size_t level, const std::vector<std::vector<std::int64_t>>& space_coords,
                  std::vector<Value>& out) const;

  std::string render() const;
};

/// Throws LegalityError when the mapping is illegal.
ScheduleTree build_schedule_tree(const Mapping& m, const ArchSpec& a, const Workload& w);

}  // namespace dataplace

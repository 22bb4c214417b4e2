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
#include <string_view>
#include <vector>

#include "dataplace/arch.hpp"
#include "dataplace/intrel.hpp"
#include "dataplace/mapping.hpp"

// Space-time maps and data placement relations.
//
//   ST_l     : instance -> [[s_l] -> [t_l]]
//   theta_l  : element  -> [[s_l] -> [t_l]]                    = ST_l . access^-1
//   Theta_l  : element  -> [[[s_p] -> [t_p]] -> [[s_l] -> [t_l]]]  (p = parent of l)
//
// The relational functions enumerate the whole iteration domain and are meant
// for small problems and cross-checks. PlacementStream produces Theta in
// windows of consecutive child time stamps from per-tile footprints and scales
// to full-size layers.

namespace dataplace {

IntRelation space_time_map(const ScheduleTree& tree, std::size_t level);
IntRelation theta(const ScheduleTree& tree, std::string_view array, std::size_t level);
IntRelation inter_level(const ScheduleTree& tree, const ArchSpec& arch, std::string_view array,
                        std::size_t child);

/// All unit stamps of a level, e.g. {[1]} without a space band.
IntSet unit_stamps(const ScheduleTree& tree, std::size_t level);

/// Shapes of the Theta relation produced for a child level.
Shape placement_range_shape(const ScheduleTree& tree, std::size_t child);

struct PlacementWindow {
  IntRelation placements;         // Theta over the window's stamps
  IntRelation previous;           // theta at the stamp preceding the window
  std::vector<Value> stamps;      // child time stamps of the window, row-major
  std::vector<Value> prev_stamp;  // empty for the first window
};

class PlacementStream {
 public:
  PlacementStream(const ScheduleTree& tree, const ArchSpec& arch, std::string_view array,
                  std::size_t child, std::size_t max_rows = std::size_t{1} << 20);

  /// Fills the next window; false once every stamp has been produced.
  bool next(PlacementWindow& out);

  std::size_t time_arity() const { return t_arity_; }
  std::size_t unit_arity() const { return s_arity_; }
  std::uint64_t stamp_count() const { return stamp_count_; }

 private:
  struct Member {
    std::size_t level, index;
    std::int64_t trip;
  };

  void emit_stamp(const std::vector<std::int64_t>& tc, IntRelation::Builder* theta_big,
                  IntRelation::Builder* theta_small);
  bool advance(std::vector<std::int64_t>& tc) const;

  const ScheduleTree& tree_;
  std::size_t child_;
  std::size_t array_arity_;
  std::vector<std::int32_t> coef_;      // linear part of the access map
  std::vector<Value> pattern_;          // footprint of one child tile, row-major
  std::vector<Member> time_members_;    // levels 0..child
  std::vector<Member> space_members_;   // levels 0..child
  std::vector<std::vector<std::int64_t>> units_;  // space coordinates per unit
  std::vector<Value> unit_s_, unit_sp_;           // stamps per unit, row-major
  std::size_t s_arity_, t_arity_, sp_arity_, tp_arity_;
  std::size_t max_rows_;
  std::uint64_t stamp_count_ = 1;
  std::vector<std::int64_t> cursor_;
  std::vector<std::int64_t> prev_;
  bool has_prev_ = false;
  bool done_ = false;
  Shape range_shape_;
};

}  // namespace dataplace

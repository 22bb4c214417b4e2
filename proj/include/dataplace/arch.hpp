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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dataplace/intrel.hpp"

namespace dataplace {

enum class DimAxis { kX, kY, kXY };

std::string_view axis_name(DimAxis a);

/// One inter-unit relation of a level (source unit -> receiving unit).
struct ConnectSpec {
  std::string text;
  std::vector<std::string> arrays;  // empty: applies to every array
  IntRelation relation;             // restricted to the grid
  std::vector<std::string> dropped; // pairs whose target left the grid
};

/// Dedicated per-operand buffer inside a level.
struct SubBuffer {
  std::string array;
  std::string name;
  std::int64_t capacity_bytes = 0;
  double read_energy = 0;
  double write_energy = 0;
};

struct MemoryLevel {
  std::string name;
  std::string parent;  // empty for the root
  std::int64_t nx = 1, ny = 1;
  std::optional<DimAxis> dim;
  bool is_virtual = false;
  std::int64_t capacity_bytes = 0;  // 0: unbounded
  double read_energy = 0;
  double write_energy = 0;
  bool multicast = true;
  std::vector<ConnectSpec> connect;
  std::vector<SubBuffer> per_operand;

  std::int64_t units() const { return nx * ny; }
  /// X when ny == 1, XY otherwise, unless set explicitly.
  DimAxis axis() const;
  const SubBuffer* sub_buffer(std::string_view array) const;
};

/// Parent-to-child unit relation between two levels.
struct CrossConnect {
  std::string from;
  std::string to;
  std::string text;
  IntRelation relation;
};

struct HardwareParams {
  double e_act = 0;
  double e_idle = 0;
  double e_multi = 0;
  double e_inter = 0;
  double lat_avg = 1;
  std::int64_t pe_size = 0;  // 0: derived from the leaf grid
  double bus_width = 1;      // datums per cycle
  double f_accel = 1;
  double f_dma = 1;
  double dma_init = 0;
  double dma_cycles_per_byte = 0.25;
};

struct ArchSpec {
  std::string name;
  std::vector<MemoryLevel> levels;  // root first
  std::vector<CrossConnect> cross_connect;
  HardwareParams params;

  std::size_t level_index(std::string_view level) const;
  const MemoryLevel& level(std::string_view name) const { return levels[level_index(name)]; }
  const MemoryLevel& leaf() const { return levels.back(); }
  std::int64_t pe_size() const;
  const CrossConnect* cross(std::string_view from, std::string_view to) const;
};

ArchSpec parse_arch(std::string_view text, const std::string& source = "");
/// Canonical JSON document; parse_arch(render_arch(a)) reproduces a.
std::string render_arch(const ArchSpec& spec);
bool operator==(const ArchSpec& a, const ArchSpec& b);

/// Union of the level's connect relations that apply to `array` (all when empty).
IntRelation connect_relation(const ArchSpec& spec, std::string_view level,
                             std::string_view array = {});

/// Unit-coordinate shape of a level: [x], [y] or [x, y].
std::size_t unit_arity(const MemoryLevel& level);

/// DRAM, global buffer, virtual NoC and per-PE register files on a 14x12 array.
ArchSpec eyeriss_like();

}  // namespace dataplace

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


#include <doctest.h>

#include <filesystem>
#include <string>

#include "dataplace/arch.hpp"
#include "dataplace/error.hpp"
#include "dataplace/presets.hpp"

using namespace dataplace;

namespace {

const char* kParams = R"("params": {"e_act": 1, "e_idle": 0.5, "lat_avg": 1, "bus_width": 4})";

std::string two_level(const std::string& grid, const std::string& connect) {
  return R"({"levels": [
    {"name": "DRAM", "parent": null, "grid": [1], "virtual": false, "capacity_bytes": 0,
     "read_energy": 1, "write_energy": 1, "connect": []},
    {"name": "PE", "parent": "DRAM", "grid": )" + grid + R"(, "virtual": false, "capacity_bytes": 64,
     "read_energy": 1, "write_energy": 1, "connect": )" + connect + "}],\n" + kParams + "}";
}

}  // namespace

TEST_CASE("four-level config with a per-operand scratchpad") {
  const ArchSpec a = parse_arch(R"({
  "name": "four-level",
  "levels": [
    {"name": "L3", "parent": null, "grid": [1, 1], "virtual": false, "capacity_bytes": 0,
     "read_energy": 200, "write_energy": 200, "connect": []},
    {"name": "L2", "parent": "L3", "grid": [1, 1], "virtual": false, "capacity_bytes": 65536,
     "read_energy": 6, "write_energy": 6, "connect": []},
    {"name": "L1", "parent": "L2", "grid": [4, 4], "virtual": false, "capacity_bytes": 512,
     "read_energy": 1, "write_energy": 1,
     "connect": [{"relation": "{[x,y]->[x,y-1]}", "arrays": ["I"]}],
     "per_operand": {"I": {"name": "ifmap_spad", "capacity_bytes": 128}}},
    {"name": "L0", "parent": "L1", "grid": [4, 4], "virtual": true, "capacity_bytes": 0,
     "read_energy": 0, "write_energy": 0, "connect": []}
  ],
  "params": {"e_act": 1}
})");
  CHECK(a.levels.size() == 4);
  CHECK(a.level("L1").sub_buffer("I")->name == "ifmap_spad");
  CHECK(a.level("L1").sub_buffer("W") == nullptr);
  CHECK(cardinality(connect_relation(a, "L1", "I")) == 12);
  CHECK(connect_relation(a, "L1", "W").empty());
  CHECK(a.pe_size() == 16);
}

TEST_CASE("DRAM-only hierarchy") {
  const ArchSpec a = parse_arch(R"({"levels": [
    {"name": "DRAM", "parent": null, "grid": [1], "virtual": false, "capacity_bytes": 0,
     "read_energy": 1, "write_energy": 1, "connect": []}], "params": {}})");
  CHECK(a.levels.size() == 1);
  CHECK(a.pe_size() == 1);
}

TEST_CASE("connect relations are restricted to the grid") {
  // y - 3 only lands inside for y == 3
  const ArchSpec a = parse_arch(two_level("[4, 4]", R"(["{[x,y]->[x,y-3]}"])"));
  const MemoryLevel& pe = a.level("PE");
  CHECK(cardinality(connect_relation(a, "PE", "")) == 4);
  CHECK(pe.connect[0].dropped.size() == 12);
  // y - 5 never does
  const ArchSpec b = parse_arch(two_level("[4, 4]", R"(["{[x,y]->[x,y-5]}"])"));
  CHECK(connect_relation(b, "PE", "").empty());
  CHECK(b.level("PE").connect[0].dropped.size() == 16);

  CHECK(cardinality(connect_relation(parse_arch(two_level("[4, 4]", R"(["{[x,y]->[x,y-1]}"])")), "PE", "")) == 12);
  CHECK(connect_relation(parse_arch(two_level("[4, 4]", "[]")), "PE", "").empty());
  CHECK(cardinality(connect_relation(parse_arch(two_level("[9]", R"(["{[x]->[x-1]}"])")), "PE", "")) == 8);
  // free variables range over the grid; an explicit source outside it is an error
  CHECK_THROWS_AS(parse_arch(two_level("[4, 4]", R"(["{ [4, 0] -> [3, 0] }"])")), ConfigError);
}

TEST_CASE("malformed hierarchies") {
  CHECK_THROWS_AS(parse_arch(R"({"levels": [{"name": "DRAM", "parent": null, "grid": [1], "virtual": false,
    "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": [], "colour": 3}], "params": {}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_arch(R"({"levels": [
    {"name": "DRAM", "parent": null, "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []},
    {"name": "PE", "parent": "GLB", "grid": [2], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []}],
    "params": {}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_arch(R"({"levels": [
    {"name": "A", "parent": "B", "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []},
    {"name": "B", "parent": "A", "grid": [2], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []}],
    "params": {}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_arch(R"({"levels": [
    {"name": "DRAM", "parent": null, "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1}],
    "params": {}})"),
                  ParseError);
}

TEST_CASE("eyeriss-like preset") {
  const ArchSpec e = eyeriss_like();
  CHECK(e.leaf().nx == 14);
  CHECK(e.leaf().ny == 12);
  CHECK(e.pe_size() == 168);
  const MemoryLevel& noc = e.level("NoC");
  CHECK(noc.is_virtual);
  const IntRelation down = parse_relation("{ [x, y] -> [x, y - 1] : 0 <= x < 14 and 1 <= y < 12 }");
  CHECK(connect_relation(e, "NoC", "O") == down);
  CHECK(cardinality(connect_relation(e, "NoC", "I")) == 13 * 11);
  CHECK(cardinality(connect_relation(e, "NoC", "W")) == 13 * 12);
  CHECK(e == load_arch(config_path("arch", "eyeriss")));
}

TEST_CASE("render round-trips every shipped arch") {
  int n = 0;
  for (const auto& f : std::filesystem::directory_iterator(config_dir() + "/arch")) {
    const ArchSpec a = load_arch(f.path().string());
    CHECK(parse_arch(render_arch(a)) == a);
    for (const auto& l : a.levels) {
      for (const auto& c : l.connect) {
        for (std::size_t i = 0; i < c.relation.size(); ++i) {
          Row in = c.relation.in(i), out = c.relation.out(i);
          for (Row r : {in, out}) {
            CHECK(r[0] >= 0);
            CHECK(r[0] < l.nx);
            if (r.size() > 1) {
              CHECK(r[1] >= 0);
              CHECK(r[1] < l.ny);
            }
          }
        }
      }
    }
    ++n;
  }
  CHECK(n >= 16);
}

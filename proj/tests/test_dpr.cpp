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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dataplace/analysis.hpp"
#include "dataplace/dpr.hpp"
#include "dataplace/oracle.hpp"
#include "dataplace/presets.hpp"

using namespace dataplace;

namespace {

using Tup = std::vector<Value>;

// gemm(2,2,2), output stationary on 2x2: i on y, j on x, k in time at RF.
const char* kOs222 = R"({"levels": [{"level": "DRAM"}, {"level": "GLB"},
  {"level": "RF", "temporal_tile": {"i": 2, "j": 2, "k": 1}, "spatial_tile": {"i": 1, "j": 1, "k": 1},
   "space_y": "i", "space_x": "j"}]})";

struct Case {
  ArchSpec arch;
  ScheduleTree tree;
};

Case make(const ArchSpec& a, const Mapping& m, const Workload& w) { return {a, build_schedule_tree(m, a, w)}; }

Case os222() { return make(load_arch(config_path("arch", "os_2x2")), parse_mapping(kOs222), gemm(2, 2, 2)); }

Case preset(const Benchmark& b) { return make(load_arch(b.arch), load_mapping(b.mapping), load_workload(b.workload)); }

IntRelation streamed(const ScheduleTree& t, const ArchSpec& a, const std::string& array, std::size_t child,
                     std::size_t rows, std::size_t& windows) {
  PlacementStream s(t, a, array, child, rows);
  PlacementWindow w;
  IntRelation all(Shape::flat(t.workload.access(array).index_arity()), placement_range_shape(t, child));
  windows = 0;
  while (s.next(w)) {
    all = unite(all, w.placements);
    ++windows;
  }
  return all;
}

}  // namespace

TEST_CASE("space-time maps") {
  const Case c = os222();
  // root: the constant unit stamp
  CHECK(domain(unwrap(range(space_time_map(c.tree, 0)))) == parse_set("{ [1] }"));
  // fully unrolled leaf: every instance gets its own (s, t)
  const IntRelation leaf = space_time_map(c.tree, 2);
  CHECK(cardinality(range(leaf)) == cardinality(iteration_domain(c.tree.workload)));

  const Case four = preset(bench_suite("small")[0]);  // os 4x4
  CHECK(unit_stamps(four.tree, 2) == parse_set("{ [x, y] : 0 <= x < 4 and 0 <= y < 4 }"));
  CHECK(unit_stamps(four.tree, 1) == parse_set("{ [1] }"));
}

TEST_CASE("theta of gemm(2,2,2) output stationary on 2x2") {
  const Case c = os222();
  IntRelation::Builder want(Shape::flat(2), Shape::pair(Shape::flat(2), Shape::flat(1)));
  for (Value i = 0; i < 2; ++i)
    for (Value j = 0; j < 2; ++j)
      for (Value k = 0; k < 2; ++k) want.add(Tup{i, j}, Tup{j, i, k});
  const IntRelation th = theta(c.tree, "C", 2);
  CHECK(th == std::move(want).build());
  CHECK(cardinality(th) == 8);
  // the trace simulator sees the same eight placements
  const OracleResult o = simulate(c.tree, c.arch);
  CHECK(o.volumes.find("RF", "C")->v.total == 8);
  // one parent per child placement
  CHECK(cardinality(inter_level(c.tree, c.arch, "C", 2)) == cardinality(th));

  // DRAM holds every A element at s = [1] and its only time stamp
  const IntRelation dram = theta(c.tree, "A", 0);
  CHECK(dram == parse_relation("{ [i, k] -> [[1] -> [0]] : 0 <= i < 2 and 0 <= k < 2 }"));
}

TEST_CASE("one instance places each element once") {
  const ArchSpec a = load_arch(config_path("arch", "os_2x2"));
  const ScheduleTree t = build_schedule_tree(parse_mapping(R"({"levels": [{"level": "DRAM"}, {"level": "GLB"}, {"level": "RF"}]})"), a,
                                             gemm(1, 1, 1));
  for (const char* arr : {"A", "B", "C"}) {
    for (std::size_t l = 0; l < 3; ++l) CHECK(cardinality(theta(t, arr, l)) == 1);
  }
}

TEST_CASE("single buffer under DRAM: parent is s = [1] at the enclosing stamp") {
  const ArchSpec a = parse_arch(R"({"levels": [
    {"name": "DRAM", "parent": null, "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []},
    {"name": "PE", "parent": "DRAM", "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []}],
    "params": {}})");
  const ScheduleTree t = build_schedule_tree(
      parse_mapping(R"({"levels": [{"level": "DRAM"}, {"level": "PE", "temporal_tile": {"i": 1, "j": 2, "k": 2}}]})"), a,
      gemm(3, 2, 2));
  const IntRelation big = inter_level(t, a, "A", 1);
  CHECK(range_factor_range(big) == theta(t, "A", 1));
  const IntRelation parent = range_factor_domain(big);
  for (std::size_t i = 0; i < parent.size(); ++i) {
    CHECK(parent.out(i)[0] == 1);  // s of the parent
    CHECK(parent.out(i)[1] == 0);  // the root's only time stamp
  }
}

TEST_CASE("diagonal multicast: one parent placement feeds several units at once") {
  const Case c = preset(bench_suite("small")[6]);  // row stationary on 4x4
  REQUIRE(c.arch.levels[2].name == "NoC");
  const IntRelation big = inter_level(c.tree, c.arch, "I", 2);
  // (element, parent unit, parent stamp, child stamp) -> child units
  std::map<Tup, std::set<Tup>> fan;
  const Shape& sh = big.out_shape();
  const std::size_t sp = sh.in().in().arity(), tp = sh.in().out().arity(), s = sh.out().in().arity();
  for (std::size_t i = 0; i < big.size(); ++i) {
    Tup key(big.in(i).begin(), big.in(i).end());
    Row o = big.out(i);
    key.insert(key.end(), o.begin(), o.begin() + static_cast<std::ptrdiff_t>(sp + tp));
    key.insert(key.end(), o.begin() + static_cast<std::ptrdiff_t>(sp + tp + s), o.end());
    fan[key].emplace(o.begin() + static_cast<std::ptrdiff_t>(sp + tp), o.begin() + static_cast<std::ptrdiff_t>(sp + tp + s));
  }
  std::size_t widest = 0;
  for (const auto& [_, units] : fan) widest = std::max(widest, units.size());
  CHECK(widest > 1);
  const OracleResult o = simulate(c.tree, c.arch);
  CHECK(o.volumes.find("NoC", "I")->v.sv > 0);
}

TEST_CASE("placement invariants on the small designs") {
  for (const auto& b : bench_suite("small")) {
    CAPTURE(b.name);
    const Case c = preset(b);
    const Workload& w = c.tree.workload;
    const std::size_t leaf = c.tree.levels.size() - 1;
    for (const auto& arr : w.arrays()) {
      const IntSet touched = range(access_relation(w, arr));
      std::map<Tup, std::uint64_t> per_stamp;  // (s, t) -> elements, summed over levels below
      for (std::size_t l = 0; l <= leaf; ++l) {
        const IntRelation th = theta(c.tree, arr, l);
        CHECK(subtract(domain(th), touched).empty());
        if (l == leaf) CHECK(domain(th) == touched);
        if (l == 0) continue;
        const IntRelation big = inter_level(c.tree, c.arch, arr, l);
        CHECK(range_factor_range(big) == th);
        std::size_t windows = 0;
        CHECK(streamed(c.tree, c.arch, arr, l, 16, windows) == big);
        CHECK(streamed(c.tree, c.arch, arr, l, std::size_t{1} << 20, windows) == big);
      }
    }
    // windowing does not change the counts
    AnalyzeOptions tiny;
    tiny.window_rows = 16;
    const VolumeReport a = reuse_report(c.tree, c.arch), bw = reuse_report(c.tree, c.arch, tiny);
    CHECK(diff(a, bw).empty());
  }
}

TEST_CASE("per-unit residency stays within capacity") {
  for (const auto& b : bench_suite("small")) {
    CAPTURE(b.name);
    const Case c = preset(b);
    const Workload& w = c.tree.workload;
    for (std::size_t l = 1; l < c.tree.levels.size(); ++l) {
      const MemoryLevel& ml = c.arch.levels[l];
      if (ml.is_virtual || ml.capacity_bytes == 0) continue;
      std::map<Tup, std::uint64_t> held;
      for (const auto& arr : w.arrays()) {
        const IntRelation th = theta(c.tree, arr, l);
        for (std::size_t i = 0; i < th.size(); ++i) held[Tup(th.out(i).begin(), th.out(i).end())] += 1;
      }
      for (const auto& [st, n] : held) {
        CHECK(static_cast<std::int64_t>(n) * w.element_bits() / 8 <= ml.capacity_bytes);
      }
    }
  }
}

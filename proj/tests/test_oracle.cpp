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

#include <numeric>

#include "dataplace/analysis.hpp"
#include "dataplace/error.hpp"
#include "dataplace/oracle.hpp"
#include "dataplace/presets.hpp"

using namespace dataplace;

namespace {

ArchSpec single_pe() {
  return parse_arch(R"({"levels": [
    {"name": "DRAM", "parent": null, "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []},
    {"name": "PE", "parent": "DRAM", "grid": [1], "virtual": false, "capacity_bytes": 0, "read_energy": 1, "write_energy": 1, "connect": []}],
    "params": {}})");
}

}  // namespace

TEST_CASE("trace of gemm(2,2,2) output stationary") {
  const ArchSpec a = load_arch(config_path("arch", "os_2x2"));
  const ScheduleTree t = build_schedule_tree(parse_mapping(R"({"levels": [{"level": "DRAM"}, {"level": "GLB"},
    {"level": "RF", "temporal_tile": {"i": 2, "j": 2, "k": 1}, "spatial_tile": {"i": 1, "j": 1, "k": 1},
     "space_y": "i", "space_x": "j"}]})"),
                                             a, gemm(2, 2, 2));
  const OracleResult o = simulate(t, a);
  const VolumeEntry* c = o.volumes.find("RF", "C");
  REQUIRE(c);
  CHECK(c->v == Volumes{4, 0, 0, 4, 8});
  CHECK(o.active.size() == 2);
  CHECK(o.utilization(a.pe_size()) == Rational{1, 1});
}

TEST_CASE("one element on one PE over four steps") {
  // gemm(1,1,4): C[0,0] stays put while k walks
  const ArchSpec a = single_pe();
  const ScheduleTree t = build_schedule_tree(
      parse_mapping(R"({"levels": [{"level": "DRAM"}, {"level": "PE", "temporal_tile": {"i": 1, "j": 1, "k": 1}}]})"), a,
      gemm(1, 1, 4));
  const OracleResult o = simulate(t, a);
  const VolumeEntry* c = o.volumes.find("PE", "C");
  REQUIRE(c);
  CHECK(c->v.total == 4);
  CHECK(c->v.tv == 3);
  CHECK(c->v.uv == 1);
  CHECK(c->reqs == 1);
  // A walks along k: a fresh element each step
  CHECK(o.volumes.find("PE", "A")->v.uv == 4);
  CHECK(o.volumes.find("PE", "A")->reqs == 4);
}

TEST_CASE("volume diff") {
  const ArchSpec a = load_arch(config_path("arch", "os_2x2"));
  const ScheduleTree t = build_schedule_tree(load_mapping(config_path("mapping", "os_gemm8_2x2")), a, gemm(8, 8, 8));
  const VolumeReport r = reuse_report(t, a);
  CHECK(diff(r, r).empty());
  VolumeReport s = r;
  s.entries[1].v.tv += 1;
  const auto d = diff(r, s);
  REQUIRE(d.size() == 1);
  CHECK(d[0].field == "TV");
  CHECK(d[0].level == r.entries[1].level);
  CHECK(d[0].array == r.entries[1].array);
  CHECK(d[0].b == d[0].a + 1);
  s = r;
  s.entries.pop_back();
  const auto m = diff(r, s);
  REQUIRE(m.size() == 1);
  CHECK(m[0].field == "missing");
}

TEST_CASE("event log is deterministic") {
  const Benchmark b = bench_suite("small")[7];  // shidiannao style 4x4
  const ArchSpec a = load_arch(b.arch);
  const ScheduleTree t = build_schedule_tree(load_mapping(b.mapping), a, load_workload(b.workload));
  OracleOptions opt;
  opt.event_log = true;
  const OracleResult x = simulate(t, a, opt), y = simulate(t, a, opt);
  CHECK(!x.events.empty());
  CHECK(x.events == y.events);
  // one event per placement
  std::uint64_t total = 0;
  for (const auto& e : x.volumes.entries) total += e.v.total;
  CHECK(x.events.size() == total);
}

TEST_CASE("mean active units match the analysis") {
  for (const auto& b : bench_suite("small")) {
    CAPTURE(b.name);
    const ArchSpec a = load_arch(b.arch);
    const ScheduleTree t = build_schedule_tree(load_mapping(b.mapping), a, load_workload(b.workload));
    const OracleResult o = simulate(t, a, {.volumes = false});
    CHECK(o.volumes.entries.empty());
    CHECK(o.mean_active() == doctest::Approx(static_cast<double>(t.active_units())));
    CHECK(o.utilization(a.pe_size()) == utilization(t, a));
  }
}

TEST_CASE("step budget") {
  const ArchSpec a = single_pe();
  const ScheduleTree t = build_schedule_tree(
      parse_mapping(R"({"levels": [{"level": "DRAM"}, {"level": "PE", "temporal_tile": {"i": 1, "j": 1, "k": 1}}]})"), a,
      gemm(4, 4, 4));
  OracleOptions opt;
  opt.max_steps = 63;
  CHECK_THROWS_AS(simulate(t, a, opt), BudgetExceeded);
  opt.max_steps = 64;
  CHECK_NOTHROW(simulate(t, a, opt));
}

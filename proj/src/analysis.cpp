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


#include "dataplace/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "dataplace/dpr.hpp"

namespace dataplace {

Volumes& Volumes::operator+=(const Volumes& o) {
  tv += o.tv;
  sv += o.sv;
  tsv += o.tsv;
  uv += o.uv;
  total += o.total;
  return *this;
}

const VolumeEntry* VolumeReport::find(std::string_view level, std::string_view array) const {
  for (const auto& e : entries) {
    if (e.level == level && e.array == array) return &e;
  }
  return nullptr;
}

namespace {

using Tuple = std::vector<Value>;

Tuple to_tuple(Row r) { return Tuple(r.begin(), r.end()); }

}  // namespace

Volumes reuse_volumes(const IntRelation& placements, const IntRelation& connect, bool multicast,
                      const IntRelation* previous, std::uint64_t* reqs) {
  const Shape& range_shape = placements.out_shape();
  if (!range_shape.is_pair() || !range_shape.in().is_pair() || !range_shape.out().is_pair()) {
    throw StructuralError("reuse_volumes: placements must map to [[[sp] -> [tp]] -> [[s] -> [t]]]");
  }
  const Shape& st = range_shape.out();
  const std::size_t s_arity = st.in().arity();
  if (!connect.empty() && (connect.in_arity() != s_arity || connect.out_arity() != s_arity)) {
    throw StructuralError("reuse_volumes: connect arity " + std::to_string(connect.in_arity()) +
                          " does not match unit arity " + std::to_string(s_arity));
  }

  Volumes v;
  v.total = cardinality(placements);
  if (v.total == 0) return v;

  // theta over the window, plus the stamp before it for lookups
  const IntRelation th = range_factor_range(placements);
  const IntRelation th_all = previous ? unite(th, *previous) : th;
  const IntSet stamps = range(unwrap(range(th_all)));
  std::map<Tuple, Tuple> pred;
  {
    const IntRelation p = lex_closest_pred(stamps);
    for (std::size_t i = 0; i < p.size(); ++i) pred.emplace(to_tuple(p.in(i)), to_tuple(p.out(i)));
  }
  std::map<Tuple, std::vector<Tuple>> senders;
  for (std::size_t i = 0; i < connect.size(); ++i) {
    senders[to_tuple(connect.out(i))].push_back(to_tuple(connect.in(i)));
  }

  // R-transfer relations: [[s] -> [t-]] -> [[s] -> [t]] and the neighbour variant
  const IntRelation unit_time = unwrap(range(th));
  IntRelation::Builder rt(st, st), rst(st, st);
  Tuple from, to;
  for (std::size_t i = 0; i < unit_time.size(); ++i) {
    const Tuple t = to_tuple(unit_time.out(i));
    auto it = pred.find(t);
    if (it == pred.end()) continue;
    to = to_tuple(unit_time.row(i));
    from = to_tuple(unit_time.in(i));
    from.insert(from.end(), it->second.begin(), it->second.end());
    rt.add(from, to);
    auto nb = senders.find(to_tuple(unit_time.in(i)));
    if (nb == senders.end()) continue;
    for (const Tuple& s0 : nb->second) {
      from = s0;
      from.insert(from.end(), it->second.begin(), it->second.end());
      rst.add(from, to);
    }
  }
  const IntRelation tv = intersect(th, compose(std::move(rt).build(), th_all));
  const IntRelation tsv = subtract(intersect(th, compose(std::move(rst).build(), th_all)), tv);
  v.tv = cardinality(tv);
  v.tsv = cardinality(tsv);

  // what is left is fetched from the parent; copies of one parent placement
  // at one stamp form a multicast group
  const IntRelation rest = intersect_range_factor_range(placements, subtract(th, unite(tv, tsv)));
  const std::size_t sp = range_shape.in().in().arity(), tp = range_shape.in().out().arity();
  const std::size_t ta = st.out().arity();
  std::vector<std::size_t> group_keys, time_keys;
  for (std::size_t k = 0; k < sp + tp; ++k) group_keys.push_back(k);
  for (std::size_t k = 0; k < ta; ++k) {
    group_keys.push_back(sp + tp + s_arity + k);
    time_keys.push_back(sp + tp + s_arity + k);
  }
  const std::uint64_t groups = cardinality(project_range(rest, group_keys));
  v.sv = multicast ? cardinality(rest) - groups : 0;
  v.uv = v.total - v.tv - v.tsv - v.sv;
  if (reqs) *reqs = cardinality(range(project_range(rest, time_keys)));
  return v;
}

Rational utilization(const ScheduleTree& tree, const ArchSpec& arch) {
  Rational r{tree.active_units(), arch.pe_size()};
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

VolumeReport reuse_report(const ScheduleTree& tree, const ArchSpec& arch, const AnalyzeOptions& options) {
  VolumeReport report;
  const Workload& w = tree.workload;
  for (std::size_t l = 1; l < tree.levels.size(); ++l) {
    const MemoryLevel& ml = arch.levels[l];
    for (const auto& array : w.arrays()) {
      const IntRelation conn = connect_relation(arch, ml.name, array);
      VolumeEntry e{ml.name, array, {}, 0};
      PlacementStream stream(tree, arch, array, l, options.window_rows);
      PlacementWindow win;
      bool first = true;
      while (stream.next(win)) {
        std::uint64_t reqs = 0;
        e.v += reuse_volumes(win.placements, conn, ml.multicast, first ? nullptr : &win.previous, &reqs);
        e.reqs += reqs;
        first = false;
      }
      report.entries.push_back(std::move(e));
    }
  }
  return report;
}

double EnergyBreakdown::on_chip_total() const {
  double s = 0;
  for (const auto& [_, e] : on_chip) s += e;
  return s;
}

EnergyBreakdown energy(const VolumeReport& volumes, const ArchSpec& arch, const Workload& w,
                       std::uint64_t total_mac, Rational util) {
  const HardwareParams& p = arch.params;
  EnergyBreakdown e;
  const double m = static_cast<double>(total_mac);
  // (U e_act + (1 - U) e_idle) M, arranged so e_act == e_idle cancels exactly
  e.mac = p.e_idle * m + (p.e_act - p.e_idle) * m * static_cast<double>(util.num) /
                             static_cast<double>(util.den);

  auto vol = [&](std::size_t level, const std::string& array) -> Volumes {
    if (level >= arch.levels.size()) {
      Volumes mac;  // the MAC units read every operand once per operation
      mac.uv = total_mac;
      mac.total = total_mac;
      return mac;
    }
    const VolumeEntry* ve = volumes.find(arch.levels[level].name, array);
    if (!ve) throw ConfigError("energy: no volumes for " + arch.levels[level].name + "/" + array);
    return ve->v;
  };

  for (std::size_t l = 1; l < arch.levels.size(); ++l) {
    const MemoryLevel& ml = arch.levels[l];
    if (ml.is_virtual) continue;
    double level_e = 0;
    for (const auto& array : w.arrays()) {
      const SubBuffer* sb = ml.sub_buffer(array);
      const double ew = sb ? sb->write_energy : ml.write_energy;
      const double er = sb ? sb->read_energy : ml.read_energy;
      const Volumes own = vol(l, array), child = vol(l + 1, array);
      level_e += ew * static_cast<double>(own.uv) + er * static_cast<double>(child.uv + child.tv);
    }
    e.on_chip.emplace_back(ml.name, level_e);
  }
  if (arch.levels.size() > 1) {
    const MemoryLevel& root = arch.levels[0];
    for (const auto& array : w.arrays()) {
      const Volumes v1 = vol(1, array);
      e.dram += root.write_energy * static_cast<double>(v1.uv) +
                root.read_energy * static_cast<double>(v1.uv + v1.tv);
    }
  }
  for (const auto& ve : volumes.entries) {
    e.connect += p.e_multi * static_cast<double>(ve.v.sv) + p.e_inter * static_cast<double>(ve.v.tsv);
  }
  return e;
}

TimeBreakdown exec_time(const VolumeReport& volumes, const ArchSpec& arch, const Workload& w,
                        std::uint64_t leaf_steps) {
  const HardwareParams& p = arch.params;
  if (p.bus_width <= 0) throw ConfigError("exec_time: bus_width must be positive");
  if (p.f_dma <= 0) throw ConfigError("exec_time: f_dma must be positive");
  TimeBreakdown t;
  t.comp = static_cast<double>(leaf_steps) * p.lat_avg;
  const double bytes_per_datum = static_cast<double>(w.element_bits()) / 8.0;
  if (arch.levels.size() > 1) {
    const std::string& first = arch.levels[1].name;
    const std::string& leaf = arch.levels.back().name;
    for (const auto& array : w.arrays()) {
      const VolumeEntry* v1 = volumes.find(first, array);
      const VolumeEntry* vl = volumes.find(leaf, array);
      if (!v1 || !vl) throw ConfigError("exec_time: missing volumes for " + array);
      const double dma = (static_cast<double>(v1->reqs) * p.dma_init +
                          p.dma_cycles_per_byte * static_cast<double>(v1->v.uv) * bytes_per_datum) *
                         p.f_accel / p.f_dma;
      t.dma.emplace_back(array, dma);
      t.dram += dma;
      const double multicast = static_cast<double>(vl->v.sv) / p.bus_width;
      const double unicast =
          std::max<double>(static_cast<double>(vl->v.total) - static_cast<double>(vl->v.sv) -
                               static_cast<double>(vl->v.tv),
                           0.0) /
          p.bus_width;
      t.on_chip += multicast + unicast;
    }
  }
  t.comm = std::max(t.dram, t.on_chip);
  t.total = std::max(t.comp, t.comm);
  return t;
}

CostReport analyze(const ScheduleTree& tree, const ArchSpec& arch, const AnalyzeOptions& options) {
  CostReport r;
  r.workload = tree.workload.name();
  r.arch = arch.name;
  r.total_mac = tree.workload.instances();
  r.leaf_steps = tree.leaf_steps();
  r.pe_size = arch.pe_size();
  r.act_pe = static_cast<double>(tree.active_units());
  r.util = utilization(tree, arch);
  r.volumes = reuse_report(tree, arch, options);
  r.energy = energy(r.volumes, arch, tree.workload, r.total_mac, r.util);
  r.time = exec_time(r.volumes, arch, tree.workload, r.leaf_steps);
  return r;
}

}  // namespace dataplace

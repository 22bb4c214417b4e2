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


#include "dataplace/arch.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json_util.hpp"

namespace dataplace {

using detail::Json;

std::string_view axis_name(DimAxis a) {
  switch (a) {
    case DimAxis::kX: return "X";
    case DimAxis::kY: return "Y";
    case DimAxis::kXY: return "XY";
  }
  return "?";
}

DimAxis MemoryLevel::axis() const {
  if (dim) return *dim;
  return ny == 1 ? DimAxis::kX : DimAxis::kXY;
}

const SubBuffer* MemoryLevel::sub_buffer(std::string_view array) const {
  for (const auto& b : per_operand) {
    if (b.array == array) return &b;
  }
  return nullptr;
}

std::size_t unit_arity(const MemoryLevel& level) {
  return level.axis() == DimAxis::kXY ? 2 : 1;
}

std::size_t ArchSpec::level_index(std::string_view name) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].name == name) return i;
  }
  throw ConfigError("unknown memory level '" + std::string(name) + "'");
}

std::int64_t ArchSpec::pe_size() const {
  return params.pe_size > 0 ? params.pe_size : leaf().units();
}

const CrossConnect* ArchSpec::cross(std::string_view from, std::string_view to) const {
  for (const auto& c : cross_connect) {
    if (c.from == from && c.to == to) return &c;
  }
  return nullptr;
}

namespace {

std::vector<std::pair<Value, Value>> unit_box(const MemoryLevel& l) {
  switch (l.axis()) {
    case DimAxis::kX: return {{0, static_cast<Value>(l.nx)}};
    case DimAxis::kY: return {{0, static_cast<Value>(l.ny)}};
    case DimAxis::kXY: return {{0, static_cast<Value>(l.nx)}, {0, static_cast<Value>(l.ny)}};
  }
  return {};
}

bool in_box(Row t, const std::vector<std::pair<Value, Value>>& box) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < box[i].first || t[i] >= box[i].second) return false;
  }
  return true;
}

// Parses a connect relation over unit coordinates; sources must lie in the
// source grid, pairs with a target outside the target grid are dropped.
IntRelation parse_unit_relation(const std::string& text, const MemoryLevel& from,
                                const MemoryLevel& to, const std::string& source,
                                std::vector<std::string>* dropped) {
  ParseOptions opt;
  opt.source = source;
  opt.in_shape = Shape::flat(unit_arity(from));
  opt.out_shape = Shape::flat(unit_arity(to));
  opt.in_box = unit_box(from);
  IntRelation raw = parse_relation(text, opt);
  const auto src_box = unit_box(from), dst_box = unit_box(to);
  IntRelation::Builder kept(raw.in_shape(), raw.out_shape());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!in_box(raw.in(i), src_box)) {
      throw ConfigError(source + ": connect source " + tuple_to_string(raw.in(i), raw.in_shape()) +
                        " lies outside the grid of " + from.name);
    }
    if (in_box(raw.out(i), dst_box)) {
      kept.add_row(raw.row(i));
    } else if (dropped) {
      dropped->push_back(tuple_to_string(raw.in(i), raw.in_shape()) + " -> " +
                         tuple_to_string(raw.out(i), raw.out_shape()));
    }
  }
  return std::move(kept).build();
}

DimAxis parse_axis(const detail::Doc& doc, const std::string& s) {
  if (s == "X") return DimAxis::kX;
  if (s == "Y") return DimAxis::kY;
  if (s == "XY") return DimAxis::kXY;
  doc.fail("dim", "dim must be X, Y or XY, not '" + s + "'");
}

double non_negative(const detail::Doc& doc, const Json& obj, const char* key, double fallback) {
  const double v = doc.get_or<double>(obj, key, fallback);
  if (v < 0) doc.fail(key, std::string(key) + " must be non-negative");
  return v;
}

}  // namespace

ArchSpec parse_arch(std::string_view text, const std::string& source) {
  const detail::Doc doc{text, source};
  const Json j = detail::parse_json(text, source);
  doc.only(j, {"name", "levels", "cross_connect", "params"}, "arch");

  ArchSpec spec;
  spec.name = doc.get_or<std::string>(j, "name", "");
  const Json& levels = doc.required(j, "levels", "arch");
  if (!levels.is_array() || levels.empty()) doc.fail("levels", "levels must be a non-empty list");

  std::vector<MemoryLevel> parsed;
  std::vector<std::pair<const Json*, MemoryLevel*>> connect_src;
  for (const Json& lj : levels) {
    doc.only(lj,
             {"name", "parent", "grid", "dim", "virtual", "capacity_bytes", "read_energy",
              "write_energy", "multicast", "connect", "per_operand"},
             "level");
    MemoryLevel l;
    for (const char* key : {"name", "parent", "grid", "virtual", "capacity_bytes", "read_energy",
                            "write_energy", "connect"}) {
      doc.required(lj, key, "level");
    }
    l.name = doc.get<std::string>(lj["name"], "name");
    if (!lj["parent"].is_null()) l.parent = doc.get<std::string>(lj["parent"], "parent");
    const auto grid = doc.get<std::vector<std::int64_t>>(lj["grid"], "grid");
    if (grid.empty() || grid.size() > 2) doc.fail("grid", "grid must be [nx] or [nx, ny]");
    l.nx = grid[0];
    l.ny = grid.size() > 1 ? grid[1] : 1;
    if (l.nx < 1 || l.ny < 1 || l.nx > 65536 || l.ny > 65536) {
      doc.fail("grid", "grid counts of " + l.name + " must be in [1, 65536]");
    }
    if (auto it = lj.find("dim"); it != lj.end()) l.dim = parse_axis(doc, doc.get<std::string>(*it, "dim"));
    if (l.axis() == DimAxis::kX && l.ny != 1) doc.fail("dim", l.name + ": dim X requires ny == 1");
    if (l.axis() == DimAxis::kY && l.nx != 1) doc.fail("dim", l.name + ": dim Y requires nx == 1");
    l.is_virtual = doc.get<bool>(lj["virtual"], "virtual");
    l.capacity_bytes = doc.get<std::int64_t>(lj["capacity_bytes"], "capacity_bytes");
    if (l.capacity_bytes < 0) doc.fail("capacity_bytes", "capacity_bytes must be non-negative");
    l.read_energy = non_negative(doc, lj, "read_energy", 0);
    l.write_energy = non_negative(doc, lj, "write_energy", 0);
    l.multicast = doc.get_or<bool>(lj, "multicast", true);
    if (auto it = lj.find("per_operand"); it != lj.end()) {
      if (!it->is_object()) doc.fail("per_operand", "per_operand must be an object");
      for (const auto& [array, bj] : it->items()) {
        doc.only(bj, {"name", "capacity_bytes", "read_energy", "write_energy"}, "per_operand");
        SubBuffer b;
        b.array = array;
        b.name = doc.get_or<std::string>(bj, "name", array);
        b.capacity_bytes = doc.get_or<std::int64_t>(bj, "capacity_bytes", 0);
        if (b.capacity_bytes < 0) doc.fail("capacity_bytes", "capacity_bytes must be non-negative");
        b.read_energy = non_negative(doc, bj, "read_energy", l.read_energy);
        b.write_energy = non_negative(doc, bj, "write_energy", l.write_energy);
        l.per_operand.push_back(std::move(b));
      }
    }
    for (const auto& other : parsed) {
      if (other.name == l.name) doc.fail("name", "duplicate level name '" + l.name + "'");
    }
    parsed.push_back(std::move(l));
  }

  // Order root -> leaf by following parent links; the hierarchy must be a chain.
  std::vector<const MemoryLevel*> roots;
  for (const auto& l : parsed) {
    if (l.parent.empty()) roots.push_back(&l);
    if (!l.parent.empty() &&
        std::none_of(parsed.begin(), parsed.end(), [&](const MemoryLevel& p) { return p.name == l.parent; })) {
      throw ConfigError(source + ": level '" + l.name + "' has unknown parent '" + l.parent + "'");
    }
  }
  if (roots.size() != 1) {
    throw ConfigError(source + ": expected exactly one root level, found " + std::to_string(roots.size()));
  }
  std::vector<std::size_t> order;
  std::string current = roots[0]->name;
  while (true) {
    std::size_t idx = 0;
    for (; idx < parsed.size(); ++idx) {
      if (parsed[idx].name == current) break;
    }
    order.push_back(idx);
    std::vector<std::size_t> children;
    for (std::size_t c = 0; c < parsed.size(); ++c) {
      if (parsed[c].parent == current) children.push_back(c);
    }
    if (children.empty()) break;
    if (children.size() > 1) {
      throw ConfigError(source + ": level '" + current + "' has several children; only chains are supported");
    }
    current = parsed[children[0]].name;
  }
  if (order.size() != parsed.size()) {
    throw ConfigError(source + ": levels unreachable from the root (cycle in the hierarchy)");
  }
  for (std::size_t idx : order) spec.levels.push_back(parsed[idx]);

  // Connect relations need the grid of each level.
  for (const Json& lj : levels) {
    MemoryLevel& l = spec.levels[spec.level_index(lj["name"].get<std::string>())];
    const Json& cj = lj["connect"];
    if (!cj.is_array()) doc.fail("connect", "connect must be a list");
    for (const Json& entry : cj) {
      ConnectSpec c;
      if (entry.is_string()) {
        c.text = entry.get<std::string>();
      } else {
        doc.only(entry, {"relation", "arrays"}, "connect");
        c.text = doc.get<std::string>(doc.required(entry, "relation", "connect"), "relation");
        c.arrays = doc.get_or<std::vector<std::string>>(entry, "arrays", {});
      }
      c.relation = parse_unit_relation(c.text, l, l, source + ":" + l.name + ".connect", &c.dropped);
      l.connect.push_back(std::move(c));
    }
  }

  if (auto it = j.find("cross_connect"); it != j.end()) {
    for (const Json& cj : *it) {
      doc.only(cj, {"from", "to", "relation"}, "cross_connect");
      CrossConnect c;
      c.from = doc.get<std::string>(doc.required(cj, "from", "cross_connect"), "from");
      c.to = doc.get<std::string>(doc.required(cj, "to", "cross_connect"), "to");
      c.text = doc.get<std::string>(doc.required(cj, "relation", "cross_connect"), "relation");
      const MemoryLevel& from = spec.level(c.from);
      const MemoryLevel& to = spec.level(c.to);
      if (to.parent != from.name) {
        throw ConfigError(source + ": cross_connect " + c.from + " -> " + c.to +
                          " must link a level to its direct child");
      }
      c.relation = parse_unit_relation(c.text, from, to, source + ":cross_connect", nullptr);
      spec.cross_connect.push_back(std::move(c));
    }
  }

  const Json& pj = doc.required(j, "params", "arch");
  doc.only(pj,
           {"e_act", "e_idle", "e_multi", "e_inter", "lat_avg", "pe_size", "bus_width", "f_accel",
            "f_dma", "dma_init", "dma_cycles_per_byte"},
           "params");
  HardwareParams& p = spec.params;
  p.e_act = non_negative(doc, pj, "e_act", 0);
  p.e_idle = non_negative(doc, pj, "e_idle", 0);
  p.e_multi = non_negative(doc, pj, "e_multi", 0);
  p.e_inter = non_negative(doc, pj, "e_inter", 0);
  p.lat_avg = non_negative(doc, pj, "lat_avg", 1);
  p.pe_size = doc.get_or<std::int64_t>(pj, "pe_size", 0);
  p.bus_width = non_negative(doc, pj, "bus_width", 1);
  p.f_accel = non_negative(doc, pj, "f_accel", 1);
  p.f_dma = non_negative(doc, pj, "f_dma", 1);
  p.dma_init = non_negative(doc, pj, "dma_init", 0);
  p.dma_cycles_per_byte = non_negative(doc, pj, "dma_cycles_per_byte", 0.25);
  if (p.pe_size != 0 && p.pe_size != spec.leaf().units()) {
    throw ConfigError(source + ": params.pe_size " + std::to_string(p.pe_size) +
                      " does not match the leaf grid (" + std::to_string(spec.leaf().units()) + ")");
  }
  return spec;
}

std::string render_arch(const ArchSpec& spec) {
  Json j;
  j["name"] = spec.name;
  Json levels = Json::array();
  for (const auto& l : spec.levels) {
    Json lj;
    lj["name"] = l.name;
    lj["parent"] = l.parent.empty() ? Json(nullptr) : Json(l.parent);
    lj["grid"] = {l.nx, l.ny};
    if (l.dim) lj["dim"] = std::string(axis_name(*l.dim));
    lj["virtual"] = l.is_virtual;
    lj["capacity_bytes"] = l.capacity_bytes;
    lj["read_energy"] = l.read_energy;
    lj["write_energy"] = l.write_energy;
    lj["multicast"] = l.multicast;
    Json cj = Json::array();
    for (const auto& c : l.connect) {
      if (c.arrays.empty()) {
        cj.push_back(c.text);
      } else {
        cj.push_back({{"relation", c.text}, {"arrays", c.arrays}});
      }
    }
    lj["connect"] = cj;
    if (!l.per_operand.empty()) {
      Json po = Json::object();
      for (const auto& b : l.per_operand) {
        po[b.array] = {{"name", b.name},
                       {"capacity_bytes", b.capacity_bytes},
                       {"read_energy", b.read_energy},
                       {"write_energy", b.write_energy}};
      }
      lj["per_operand"] = po;
    }
    levels.push_back(lj);
  }
  j["levels"] = levels;
  if (!spec.cross_connect.empty()) {
    Json cc = Json::array();
    for (const auto& c : spec.cross_connect) {
      cc.push_back({{"from", c.from}, {"to", c.to}, {"relation", c.text}});
    }
    j["cross_connect"] = cc;
  }
  const HardwareParams& p = spec.params;
  j["params"] = {{"e_act", p.e_act},
                 {"e_idle", p.e_idle},
                 {"e_multi", p.e_multi},
                 {"e_inter", p.e_inter},
                 {"lat_avg", p.lat_avg},
                 {"pe_size", p.pe_size},
                 {"bus_width", p.bus_width},
                 {"f_accel", p.f_accel},
                 {"f_dma", p.f_dma},
                 {"dma_init", p.dma_init},
                 {"dma_cycles_per_byte", p.dma_cycles_per_byte}};
  return j.dump(2) + "\n";
}

bool operator==(const ArchSpec& a, const ArchSpec& b) { return render_arch(a) == render_arch(b); }

IntRelation connect_relation(const ArchSpec& spec, std::string_view level, std::string_view array) {
  const MemoryLevel& l = spec.level(level);
  const std::size_t k = unit_arity(l);
  IntRelation out(Shape::flat(k), Shape::flat(k));
  for (const auto& c : l.connect) {
    if (!array.empty() && !c.arrays.empty() &&
        std::find(c.arrays.begin(), c.arrays.end(), array) == c.arrays.end()) {
      continue;
    }
    out = unite(out, c.relation);
  }
  return out;
}

ArchSpec eyeriss_like() {
  static const char* kDoc = R"({
  "name": "eyeriss-like",
  "levels": [
    {"name": "DRAM", "parent": null, "grid": [1, 1], "virtual": false, "capacity_bytes": 0,
     "read_energy": 200.0, "write_energy": 200.0, "connect": []},
    {"name": "GLB", "parent": "DRAM", "grid": [1, 1], "virtual": false, "capacity_bytes": 262144,
     "read_energy": 6.0, "write_energy": 6.0, "connect": []},
    {"name": "NoC", "parent": "GLB", "grid": [14, 12], "virtual": true, "capacity_bytes": 0,
     "read_energy": 0.0, "write_energy": 0.0, "connect": [
       {"relation": "{ [x, y] -> [x - 1, y + 1] }", "arrays": ["I"]},
       {"relation": "{ [x, y] -> [x - 1, y] }", "arrays": ["W"]},
       {"relation": "{ [x, y] -> [x, y - 1] }", "arrays": ["O"]}]},
    {"name": "RF", "parent": "NoC", "grid": [14, 12], "virtual": false, "capacity_bytes": 2048,
     "read_energy": 1.0, "write_energy": 1.0, "connect": [],
     "per_operand": {
       "I": {"name": "ifmap_spad", "capacity_bytes": 512, "read_energy": 1.0, "write_energy": 1.0},
       "W": {"name": "filter_spad", "capacity_bytes": 1024, "read_energy": 1.0, "write_energy": 1.0},
       "O": {"name": "psum_spad", "capacity_bytes": 512, "read_energy": 1.0, "write_energy": 1.0}}}
  ],
  "params": {"e_act": 2.0, "e_idle": 0.2, "e_multi": 0.5, "e_inter": 0.3, "lat_avg": 1.0,
             "pe_size": 168, "bus_width": 16.0, "f_accel": 200000000.0, "f_dma": 200000000.0,
             "dma_init": 20.0, "dma_cycles_per_byte": 0.25}
})";
  return parse_arch(kDoc, "eyeriss_like");
}

}  // namespace dataplace

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


#include "dataplace/mapping.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json_util.hpp"

namespace dataplace {

using detail::Json;

Mapping parse_mapping(std::string_view text, const std::string& source) {
  const detail::Doc doc{text, source};
  const Json j = detail::parse_json(text, source);
  doc.only(j, {"name", "levels"}, "mapping");
  Mapping m;
  m.name = doc.get_or<std::string>(j, "name", "");
  const Json& levels = doc.required(j, "levels", "mapping");
  if (!levels.is_array()) doc.fail("levels", "levels must be a list");
  for (const Json& lj : levels) {
    doc.only(lj,
             {"level", "temporal_order", "temporal_tile", "spatial_tile", "space_x", "space_y",
              "simd"},
             "mapping level");
    LevelMapping l;
    l.level = doc.get<std::string>(doc.required(lj, "level", "mapping level"), "level");
    l.temporal_order = doc.get_or<std::vector<std::string>>(lj, "temporal_order", {});
    l.temporal_tile = doc.get_or<std::map<std::string, std::int64_t>>(lj, "temporal_tile", {});
    l.spatial_tile = doc.get_or<std::map<std::string, std::int64_t>>(lj, "spatial_tile", {});
    auto opt = [&](const char* key) -> std::optional<std::string> {
      auto it = lj.find(key);
      if (it == lj.end() || it->is_null()) return std::nullopt;
      return doc.get<std::string>(*it, key);
    };
    l.space_x = opt("space_x");
    l.space_y = opt("space_y");
    l.simd = opt("simd");
    m.levels.push_back(std::move(l));
  }
  return m;
}

std::string render_mapping(const Mapping& m) {
  Json j;
  j["name"] = m.name;
  Json levels = Json::array();
  for (const auto& l : m.levels) {
    Json lj;
    lj["level"] = l.level;
    lj["temporal_order"] = l.temporal_order;
    lj["temporal_tile"] = l.temporal_tile;
    lj["spatial_tile"] = l.spatial_tile;
    if (l.space_x) lj["space_x"] = *l.space_x;
    if (l.space_y) lj["space_y"] = *l.space_y;
    if (l.simd) lj["simd"] = *l.simd;
    levels.push_back(lj);
  }
  j["levels"] = levels;
  return j.dump(2) + "\n";
}

std::string Violation::to_string() const {
  std::ostringstream os;
  os << "[" << rule << "] level " << level;
  if (!dim.empty()) os << ", " << dim;
  os << ": required " << required << ", available " << available;
  if (!detail.empty()) os << " (" << detail << ")";
  return os.str();
}

LegalityError::LegalityError(std::vector<Violation> violations)
    : Error([&] {
        std::string s = "illegal mapping:";
        for (const auto& v : violations) s += "\n  " + v.to_string();
        return s;
      }()),
      violations_(std::move(violations)) {}

namespace {

// Tiles with defaults filled in; structural problems become tiling violations.
struct Resolved {
  std::vector<std::vector<std::int64_t>> T, S;  // [level][dim]
  std::vector<std::vector<std::size_t>> order;
  std::vector<std::optional<std::size_t>> sx, sy, simd;
  std::vector<Violation> violations;
};

Resolved resolve(const Mapping& m, const ArchSpec& a, const Workload& w) {
  if (m.levels.size() != a.levels.size()) {
    throw ConfigError("mapping has " + std::to_string(m.levels.size()) + " levels, arch " +
                      a.name + " has " + std::to_string(a.levels.size()));
  }
  for (std::size_t l = 0; l < m.levels.size(); ++l) {
    if (m.levels[l].level != a.levels[l].name) {
      throw ConfigError("mapping level " + std::to_string(l) + " is '" + m.levels[l].level +
                        "', expected '" + a.levels[l].name + "'");
    }
  }
  const std::size_t D = w.depth();
  Resolved r;
  auto bad = [&](const std::string& level, const std::string& dim, std::int64_t req,
                 std::int64_t avail, const std::string& detail) {
    r.violations.push_back({"tiling", level, dim, req, avail, detail});
  };
  for (std::size_t l = 0; l < m.levels.size(); ++l) {
    const LevelMapping& lm = m.levels[l];
    std::vector<std::int64_t> T(D), S(D);
    for (std::size_t d = 0; d < D; ++d) T[d] = l == 0 ? w.dims()[d].extent : r.S[l - 1][d];
    for (const auto& [name, v] : lm.temporal_tile) {
      if (!w.has_dim(name)) {
        bad(lm.level, name, 0, 0, "unknown dim in temporal_tile");
        continue;
      }
      T[w.dim_index(name)] = v;
    }
    S = T;
    for (const auto& [name, v] : lm.spatial_tile) {
      if (!w.has_dim(name)) {
        bad(lm.level, name, 0, 0, "unknown dim in spatial_tile");
        continue;
      }
      S[w.dim_index(name)] = v;
    }
    for (std::size_t d = 0; d < D; ++d) {
      const std::string& dn = w.dims()[d].name;
      if (T[d] < 1 || S[d] < 1) {
        bad(lm.level, dn, 1, std::min(T[d], S[d]), "tile sizes must be positive");
        T[d] = std::max<std::int64_t>(T[d], 1);
        S[d] = std::max<std::int64_t>(S[d], 1);
        continue;
      }
      if (l == 0 && T[d] != w.dims()[d].extent) {
        bad(lm.level, dn, w.dims()[d].extent, T[d], "outermost temporal tile must equal the extent");
      }
      if (T[d] % S[d] != 0) bad(lm.level, dn, T[d], S[d], "spatial tile does not divide temporal tile");
      if (l > 0 && r.S[l - 1][d] % T[d] != 0) {
        bad(lm.level, dn, r.S[l - 1][d], T[d], "temporal tile does not divide the parent tile");
      }
    }
    std::vector<std::size_t> order;
    if (lm.temporal_order.empty()) {
      order.resize(D);
      std::iota(order.begin(), order.end(), 0);
    } else {
      std::set<std::size_t> seen;
      for (const auto& name : lm.temporal_order) {
        if (!w.has_dim(name)) {
          bad(lm.level, name, 0, 0, "unknown dim in temporal_order");
          continue;
        }
        const std::size_t d = w.dim_index(name);
        if (!seen.insert(d).second) bad(lm.level, name, 1, 2, "dim repeated in temporal_order");
        order.push_back(d);
      }
      if (seen.size() != D) {
        bad(lm.level, "", static_cast<std::int64_t>(D), static_cast<std::int64_t>(seen.size()),
            "temporal_order must list every dim once");
        for (std::size_t d = 0; d < D; ++d) {
          if (!seen.count(d)) order.push_back(d);
        }
      }
    }
    auto axis_dim = [&](const std::optional<std::string>& name) -> std::optional<std::size_t> {
      if (!name) return std::nullopt;
      if (!w.has_dim(*name)) {
        bad(lm.level, *name, 0, 0, "unknown dim on a space axis");
        return std::nullopt;
      }
      return w.dim_index(*name);
    };
    auto sx = axis_dim(lm.space_x), sy = axis_dim(lm.space_y), sm = axis_dim(lm.simd);
    if ((sx && sy && *sx == *sy) || (sx && sm && *sx == *sm) || (sy && sm && *sy == *sm)) {
      bad(lm.level, "", 1, 2, "a dim is mapped to more than one space axis");
    }
    for (std::size_t d = 0; d < D; ++d) {
      const bool assigned = (sx && *sx == d) || (sy && *sy == d) || (sm && *sm == d);
      if (T[d] / S[d] > 1 && !assigned) {
        bad(lm.level, w.dims()[d].name, T[d] / S[d], 1, "parallel dim not mapped to a space axis");
      }
    }
    r.T.push_back(T);
    r.S.push_back(S);
    r.order.push_back(order);
    r.sx.push_back(sx);
    r.sy.push_back(sy);
    r.simd.push_back(sm);
  }
  return r;
}

std::int64_t par(const Resolved& r, std::size_t l, std::optional<std::size_t> d) {
  return d ? r.T[l][*d] / r.S[l][*d] : 1;
}

}  // namespace

std::int64_t parallelism(const Mapping& m, const Workload& w, std::string_view level,
                         std::string_view dim) {
  const std::size_t d = w.dim_index(dim);
  std::vector<std::int64_t> S(w.depth());
  for (std::size_t i = 0; i < w.depth(); ++i) S[i] = w.dims()[i].extent;
  for (const auto& lm : m.levels) {
    std::vector<std::int64_t> T = S;
    for (const auto& [n, v] : lm.temporal_tile) {
      if (w.has_dim(n)) T[w.dim_index(n)] = v;
    }
    S = T;
    for (const auto& [n, v] : lm.spatial_tile) {
      if (w.has_dim(n)) S[w.dim_index(n)] = v;
    }
    if (lm.level == level) {
      if (T[d] < 1 || S[d] < 1 || T[d] % S[d] != 0) {
        throw ConfigError("parallelism: tiles of " + std::string(dim) + " at " + lm.level +
                          " do not divide");
      }
      return T[d] / S[d];
    }
  }
  throw ConfigError("parallelism: unknown level '" + std::string(level) + "'");
}

std::vector<Violation> check_legality(const Mapping& m, const ArchSpec& a, const Workload& w) {
  Resolved r = resolve(m, a, w);
  std::vector<Violation> out = r.violations;
  if (!out.empty()) return out;

  // parallelism: cumulative units per axis must fit the level grid
  std::int64_t cx = 1, cy = 1;
  for (std::size_t l = 0; l < a.levels.size(); ++l) {
    const MemoryLevel& ml = a.levels[l];
    cx *= par(r, l, r.sx[l]) * par(r, l, r.simd[l]);
    cy *= par(r, l, r.sy[l]);
    if (cx > ml.nx) out.push_back({"parallelism", ml.name, "x", cx, ml.nx, "units along x"});
    if (cy > ml.ny) out.push_back({"parallelism", ml.name, "y", cy, ml.ny, "units along y"});
  }

  // capacity: per-instance footprint of every operand
  const std::int64_t bits = w.element_bits();
  for (std::size_t l = 1; l < a.levels.size(); ++l) {
    const MemoryLevel& ml = a.levels[l];
    if (ml.is_virtual) continue;
    std::int64_t shared = 0;
    for (const auto& array : w.arrays()) {
      const auto elems = static_cast<std::int64_t>(footprint_size(w, array, r.S[l]));
      const std::int64_t bytes = (elems * bits + 7) / 8;
      const SubBuffer* sb = ml.sub_buffer(array);
      if (sb) {
        if (sb->capacity_bytes > 0 && bytes > sb->capacity_bytes) {
          out.push_back({"capacity", ml.name + "." + sb->name, array, bytes, sb->capacity_bytes,
                         "operand tile bytes"});
        }
      } else {
        shared += bytes;
      }
    }
    if (ml.capacity_bytes > 0 && shared > ml.capacity_bytes) {
      out.push_back({"capacity", ml.name, "", shared, ml.capacity_bytes, "tile bytes"});
    }
  }

  // dependence: a spatially split reduction needs an accumulation path
  const std::string& written = w.written_array();
  for (std::size_t d : w.reduction_dims()) {
    for (std::size_t l = 0; l < a.levels.size(); ++l) {
      const std::int64_t p = r.T[l][d] / r.S[l][d];
      if (p <= 1) continue;
      const MemoryLevel& ml = a.levels[l];
      const bool via_connect = !connect_relation(a, ml.name, written).empty();
      const bool via_parent = l > 0 && !a.levels[l - 1].is_virtual;
      if (!via_connect && !via_parent) {
        out.push_back({"dependence", ml.name, w.dims()[d].name, p, 1,
                       "reduction split across units without connect or physical parent for " +
                           written});
      }
    }
  }
  return out;
}

std::int64_t TreeLevel::px() const {
  std::int64_t p = 1;
  for (const auto& b : space) {
    if (b.axis == SpaceAxis::kX || b.axis == SpaceAxis::kSimd) p *= b.trip;
  }
  return p;
}

std::int64_t TreeLevel::py() const {
  std::int64_t p = 1;
  for (const auto& b : space) {
    if (b.axis == SpaceAxis::kY) p *= b.trip;
  }
  return p;
}

std::size_t ScheduleTree::time_arity(std::size_t level) const {
  std::size_t n = 0;
  for (std::size_t l = 0; l <= level; ++l) n += levels[l].time.size();
  return std::max<std::size_t>(n, 1);
}

bool ScheduleTree::has_space(std::size_t level) const {
  for (std::size_t l = 0; l <= level; ++l) {
    if (!levels[l].space.empty()) return true;
  }
  return false;
}

std::size_t ScheduleTree::space_arity(std::size_t level) const {
  if (!has_space(level)) return 1;
  return levels[level].layout == DimAxis::kXY ? 2 : 1;
}

std::int64_t ScheduleTree::units_x(std::size_t level) const {
  std::int64_t n = 1;
  for (std::size_t l = 0; l <= level; ++l) n *= levels[l].px();
  return n;
}

std::int64_t ScheduleTree::units_y(std::size_t level) const {
  std::int64_t n = 1;
  for (std::size_t l = 0; l <= level; ++l) n *= levels[l].py();
  return n;
}

std::uint64_t ScheduleTree::leaf_steps() const {
  std::uint64_t n = 1;
  for (const auto& l : levels) {
    for (const auto& b : l.time) n *= static_cast<std::uint64_t>(b.trip);
  }
  for (const auto& b : leaf) n *= static_cast<std::uint64_t>(b.trip);
  return n;
}

std::int64_t ScheduleTree::active_units() const {
  std::int64_t n = 1;
  for (const auto& l : levels) {
    for (const auto& b : l.space) n *= b.trip;
  }
  return n;
}

void ScheduleTree::time_stamp(std::size_t level,
                              const std::vector<std::vector<std::int64_t>>& time_coords,
                              std::vector<Value>& out) const {
  out.clear();
  for (std::size_t l = 0; l <= level; ++l) {
    for (std::int64_t c : time_coords[l]) out.push_back(static_cast<Value>(c));
  }
  if (out.empty()) out.push_back(0);
}

void ScheduleTree::unit_stamp(std::size_t level,
                              const std::vector<std::vector<std::int64_t>>& space_coords,
                              std::vector<Value>& out) const {
  out.clear();
  if (!has_space(level)) {
    out.push_back(1);
    return;
  }
  std::int64_t x = 0, y = 0;
  for (std::size_t l = 0; l <= level; ++l) {
    const TreeLevel& tl = levels[l];
    std::int64_t lx = 0, ly = 0;
    for (std::size_t i = 0; i < tl.space.size(); ++i) {
      const BandMember& b = tl.space[i];
      const std::int64_t c = space_coords[l][i];
      if (b.axis == SpaceAxis::kY) {
        ly = ly * b.trip + c;
      } else {
        lx = lx * b.trip + c;
      }
    }
    x = x * tl.px() + lx;
    y = y * tl.py() + ly;
  }
  switch (levels[level].layout) {
    case DimAxis::kX: out.push_back(static_cast<Value>(x)); break;
    case DimAxis::kY: out.push_back(static_cast<Value>(y)); break;
    case DimAxis::kXY:
      out.push_back(static_cast<Value>(x));
      out.push_back(static_cast<Value>(y));
      break;
  }
}

namespace {

std::string member_text(const Workload& w, const BandMember& b) {
  std::string s = w.dims()[b.dim].name + " " + std::to_string(b.trip) + "x" + std::to_string(b.stride);
  switch (b.axis) {
    case SpaceAxis::kX: s += " @x"; break;
    case SpaceAxis::kY: s += " @y"; break;
    case SpaceAxis::kSimd: s += " @simd"; break;
    case SpaceAxis::kNone: break;
  }
  return s;
}

}  // namespace

std::string ScheduleTree::render() const {
  std::ostringstream os;
  os << "domain: { S[";
  for (std::size_t d = 0; d < workload.depth(); ++d) os << (d ? ", " : "") << workload.dims()[d].name;
  os << "] :";
  for (std::size_t d = 0; d < workload.depth(); ++d) {
    os << (d ? " and" : "") << " 0 <= " << workload.dims()[d].name << " < " << workload.dims()[d].extent;
  }
  os << " }\n";
  std::string indent = "  ";
  for (const auto& l : levels) {
    os << indent << "mark: " << l.name << (l.is_virtual ? " (virtual)" : "") << "\n";
    indent += "  ";
    auto band = [&](const char* kind, const std::vector<BandMember>& members) {
      if (members.empty()) return;
      os << indent << "band(" << kind << "):";
      for (std::size_t i = 0; i < members.size(); ++i) {
        os << (i ? ", " : " ") << member_text(workload, members[i]);
      }
      os << "\n";
      indent += "  ";
    };
    band("time", l.time);
    band("space", l.space);
  }
  if (!leaf.empty()) {
    os << indent << "band(leaf):";
    for (std::size_t i = 0; i < leaf.size(); ++i) os << (i ? ", " : " ") << member_text(workload, leaf[i]);
    os << "\n";
  }
  return os.str();
}

ScheduleTree build_schedule_tree(const Mapping& m, const ArchSpec& a, const Workload& w) {
  auto violations = check_legality(m, a, w);
  if (!violations.empty()) throw LegalityError(std::move(violations));
  Resolved r = resolve(m, a, w);
  ScheduleTree tree;
  tree.workload = w;
  for (std::size_t l = 0; l < a.levels.size(); ++l) {
    const MemoryLevel& ml = a.levels[l];
    TreeLevel tl;
    tl.name = ml.name;
    tl.is_virtual = ml.is_virtual;
    tl.layout = ml.axis();
    tl.nx = ml.nx;
    tl.ny = ml.ny;
    tl.tile = r.S[l];
    for (std::size_t d : r.order[l]) {
      const std::int64_t outer = l == 0 ? w.dims()[d].extent : r.S[l - 1][d];
      const std::int64_t trip = outer / r.T[l][d];
      if (trip > 1) tl.time.push_back({d, trip, r.T[l][d], SpaceAxis::kNone});
    }
    auto add_space = [&](std::optional<std::size_t> d, SpaceAxis axis) {
      if (!d) return;
      const std::int64_t p = r.T[l][*d] / r.S[l][*d];
      if (p > 1) tl.space.push_back({*d, p, r.S[l][*d], axis});
    };
    add_space(r.sy[l], SpaceAxis::kY);
    add_space(r.sx[l], SpaceAxis::kX);
    add_space(r.simd[l], SpaceAxis::kSimd);
    tree.levels.push_back(std::move(tl));
  }
  for (std::size_t d : r.order.back()) {
    const std::int64_t trip = r.S.back()[d];
    if (trip > 1) tree.leaf.push_back({d, trip, 1, SpaceAxis::kNone});
  }
  return tree;
}

}  // namespace dataplace

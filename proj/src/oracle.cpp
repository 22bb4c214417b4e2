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


#include "dataplace/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "dataplace/error.hpp"
#include "dataplace/intrel.hpp"

namespace dataplace {

namespace {

using Stamp = std::vector<Value>;

struct Loop {
  std::size_t level;  // tree level; levels.size() for the leaf band
  std::size_t dim;
  std::int64_t trip, stride;
  SpaceAxis axis;
};

std::string stamp_text(const Stamp& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

// Interns stamps of one level as small integers.
struct StampTable {
  std::map<Stamp, std::uint32_t> ids;
  std::vector<Stamp> stamps;

  std::uint32_t intern(const Stamp& s) {
    auto [it, fresh] = ids.emplace(s, static_cast<std::uint32_t>(stamps.size()));
    if (fresh) stamps.push_back(s);
    return it->second;
  }
  const std::uint32_t* find(const Stamp& s) const {
    auto it = ids.find(s);
    return it == ids.end() ? nullptr : &it->second;
  }
};

// Residency bookkeeping for one (level, array).
struct Track {
  std::string array;
  std::size_t array_index = 0;
  std::vector<std::uint64_t> cur, prev;
  std::vector<std::vector<std::uint32_t>> senders;  // by receiving unit id
  bool multicast = true;
  VolumeEntry entry;
};

}  // namespace

Rational OracleResult::utilization(std::int64_t pe_size) const {
  std::int64_t sum = 0;
  for (auto a : active) sum += a;
  Rational r{sum, pe_size * static_cast<std::int64_t>(active.size())};
  if (r.den == 0) return {0, 1};
  const std::int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

double OracleResult::mean_active() const {
  if (active.empty()) return 0;
  double sum = 0;
  for (auto a : active) sum += a;
  return sum / static_cast<double>(active.size());
}

OracleResult simulate(const ScheduleTree& tree, const ArchSpec& arch, const OracleOptions& options) {
  const Workload& w = tree.workload;
  const std::size_t nl = tree.levels.size();
  if (arch.levels.size() != nl) throw ConfigError("oracle: arch and schedule tree level counts differ");

  std::vector<Loop> time, space;
  for (std::size_t l = 0; l < nl; ++l) {
    for (const auto& b : tree.levels[l].time) time.push_back({l, b.dim, b.trip, b.stride, b.axis});
    for (const auto& b : tree.levels[l].space) space.push_back({l, b.dim, b.trip, b.stride, b.axis});
  }
  for (const auto& b : tree.leaf) time.push_back({nl, b.dim, b.trip, b.stride, b.axis});

  std::uint64_t steps = 1;
  for (const auto& t : time) {
    steps *= static_cast<std::uint64_t>(t.trip);
    if (steps > options.max_steps) throw BudgetExceeded(steps, options.max_steps, "oracle leaf steps");
  }
  // time members visible at each level
  std::vector<std::size_t> visible(nl, 0);
  for (std::size_t l = 0; l < nl; ++l) {
    for (const auto& t : time) visible[l] += t.level <= l;
  }

  // Every combination of space coordinates is one leaf unit.
  std::size_t combos = 1;
  for (const auto& s : space) combos *= static_cast<std::size_t>(s.trip);
  std::vector<std::vector<std::int64_t>> offset(combos, std::vector<std::int64_t>(w.depth(), 0));
  std::vector<std::vector<std::uint32_t>> unit(nl, std::vector<std::uint32_t>(combos));
  std::vector<std::vector<std::uint32_t>> parent(nl, std::vector<std::uint32_t>(combos));
  std::vector<StampTable> units(nl), parents(nl);
  {
    std::vector<std::int64_t> c(space.size(), 0);
    for (std::size_t k = 0; k < combos; ++k) {
      for (std::size_t i = 0; i < space.size(); ++i) offset[k][space[i].dim] += c[i] * space[i].stride;
      std::int64_t x = 0, y = 0;
      bool any = false;
      for (std::size_t l = 0; l < nl; ++l) {
        std::int64_t xc = 0, sc = 0, yc = 0, xt = 1, st = 1, yt = 1;
        for (std::size_t i = 0; i < space.size(); ++i) {
          if (space[i].level != l) continue;
          any = true;
          switch (space[i].axis) {
            case SpaceAxis::kX: xc = c[i]; xt = space[i].trip; break;
            case SpaceAxis::kSimd: sc = c[i]; st = space[i].trip; break;
            case SpaceAxis::kY: yc = c[i]; yt = space[i].trip; break;
            case SpaceAxis::kNone: break;
          }
        }
        x = x * xt * st + xc * st + sc;
        y = y * yt + yc;
        Stamp s;
        if (!any) {
          s = {1};
        } else if (tree.levels[l].layout == DimAxis::kX) {
          s = {static_cast<Value>(x)};
        } else if (tree.levels[l].layout == DimAxis::kY) {
          s = {static_cast<Value>(y)};
        } else {
          s = {static_cast<Value>(x), static_cast<Value>(y)};
        }
        unit[l][k] = units[l].intern(s);
      }
      for (std::size_t i = space.size(); i-- > 0;) {
        if (++c[i] < space[i].trip) break;
        c[i] = 0;
      }
    }
  }
  for (std::size_t l = 1; l < nl; ++l) {
    const CrossConnect* cc = arch.cross(arch.levels[l - 1].name, arch.levels[l].name);
    for (std::size_t k = 0; k < combos; ++k) {
      if (!cc) {
        parent[l][k] = parents[l].intern(units[l - 1].stamps[unit[l - 1][k]]);
        continue;
      }
      const Stamp& s = units[l].stamps[unit[l][k]];
      std::vector<Stamp> from;
      for (std::size_t r = 0; r < cc->relation.size(); ++r) {
        Row out = cc->relation.out(r);
        if (std::equal(out.begin(), out.end(), s.begin(), s.end())) {
          from.emplace_back(cc->relation.in(r).begin(), cc->relation.in(r).end());
        }
      }
      if (from.size() != 1) {
        throw ConfigError("cross_connect " + cc->from + " -> " + cc->to + ": unit " + stamp_text(s) +
                          " has " + std::to_string(from.size()) + " parents, expected exactly one");
      }
      parent[l][k] = parents[l].intern(from[0]);
    }
  }

  // parent unit of every child unit
  std::vector<std::vector<std::uint32_t>> up(nl);
  for (std::size_t l = 1; l < nl; ++l) {
    up[l].resize(units[l].stamps.size());
    for (std::size_t k = 0; k < combos; ++k) up[l][unit[l][k]] = parent[l][k];
  }

  // Element linearization per array.
  const auto& arrays = w.arrays();
  std::vector<std::vector<std::int64_t>> extents;
  std::vector<const AccessFunction*> access;
  for (const auto& a : arrays) {
    extents.push_back(w.array_extents(a));
    access.push_back(&w.access(a));
  }
  auto element = [&](std::size_t a, const std::vector<std::int64_t>& it) {
    const AccessFunction& f = *access[a];
    std::uint64_t lin = 0;
    for (std::size_t r = 0; r < f.index_arity(); ++r) {
      std::int64_t v = f.offset[r];
      for (std::size_t d = 0; d < w.depth(); ++d) v += static_cast<std::int64_t>(f.coef[r * w.depth() + d]) * it[d];
      lin = lin * static_cast<std::uint64_t>(extents[a][r]) + static_cast<std::uint64_t>(v);
    }
    return lin;
  };
  auto element_text = [&](std::size_t a, std::uint64_t lin) {
    Stamp idx(extents[a].size());
    for (std::size_t r = idx.size(); r-- > 0;) {
      idx[r] = static_cast<Value>(lin % static_cast<std::uint64_t>(extents[a][r]));
      lin /= static_cast<std::uint64_t>(extents[a][r]);
    }
    return stamp_text(idx);
  };

  std::vector<std::vector<Track>> tracks(nl);
  if (options.volumes) {
    for (std::size_t l = 1; l < nl; ++l) {
      for (std::size_t a = 0; a < arrays.size(); ++a) {
        Track tr;
        tr.array = arrays[a];
        tr.array_index = a;
        tr.multicast = arch.levels[l].multicast;
        tr.entry.level = arch.levels[l].name;
        tr.entry.array = arrays[a];
        tr.senders.resize(units[l].stamps.size());
        const IntRelation conn = connect_relation(arch, arch.levels[l].name, arrays[a]);
        const std::size_t arity = units[l].stamps[0].size();
        if (!conn.empty() && (conn.in_arity() != arity || conn.out_arity() != arity)) {
          throw StructuralError("oracle: connect arity " + std::to_string(conn.in_arity()) +
                                " does not match unit arity " + std::to_string(arity));
        }
        for (std::size_t r = 0; r < conn.size(); ++r) {
          const std::uint32_t* from = units[l].find(Stamp(conn.in(r).begin(), conn.in(r).end()));
          const std::uint32_t* to = units[l].find(Stamp(conn.out(r).begin(), conn.out(r).end()));
          if (from && to) tr.senders[*to].push_back(*from);
        }
        tracks[l].push_back(std::move(tr));
      }
    }
  }

  OracleResult result;
  result.active.reserve(steps);
  std::vector<std::int64_t> tc(time.size(), 0), base(w.depth()), it(w.depth());
  std::vector<char> busy(units[nl - 1].stamps.size());

  auto compact = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };

  // Classifies the residency of stamp `t` at level l against the stamp before.
  auto close = [&](std::size_t l, const std::vector<std::int64_t>& t) {
    for (Track& tr : tracks[l]) {
      compact(tr.cur);
      const std::uint64_t ns = units[l].stamps.size();
      std::vector<std::pair<std::uint64_t, std::uint64_t>> rest;  // (element, parent unit), key
      auto log = [&](std::uint64_t key, const char* cls) {
        if (!options.event_log) return;
        Stamp ts(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(visible[l]));
        if (ts.empty()) ts = {0};
        result.events.push_back("t=" + stamp_text(ts) + " level=" + tr.entry.level +
                                " unit=" + stamp_text(units[l].stamps[key % ns]) + " array=" + tr.array +
                                " element=" + element_text(tr.array_index, key / ns) + " class=" + cls);
      };
      for (std::uint64_t key : tr.cur) {
        const std::uint64_t e = key / ns, s = key % ns;
        if (std::binary_search(tr.prev.begin(), tr.prev.end(), key)) {
          ++tr.entry.v.tv;
          log(key, "TV");
          continue;
        }
        bool forwarded = false;
        for (std::uint32_t s0 : tr.senders[s]) {
          if (std::binary_search(tr.prev.begin(), tr.prev.end(), e * ns + s0)) {
            forwarded = true;
            break;
          }
        }
        if (forwarded) {
          ++tr.entry.v.tsv;
          log(key, "TSV");
          continue;
        }
        rest.push_back({e * parents[l].stamps.size() + up[l][s], key});
      }
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size(); ++i) {
        const bool lead = i == 0 || rest[i].first != rest[i - 1].first;
        if (lead || !tr.multicast) {
          ++tr.entry.v.uv;
          log(rest[i].second, "UV");
        } else {
          ++tr.entry.v.sv;
          log(rest[i].second, "SV");
        }
      }
      if (!rest.empty()) ++tr.entry.reqs;
      tr.entry.v.total += tr.cur.size();
      tr.prev.swap(tr.cur);
      tr.cur.clear();
    }
  };

  for (std::uint64_t step = 0; step < steps; ++step) {
    std::fill(base.begin(), base.end(), 0);
    for (std::size_t i = 0; i < time.size(); ++i) base[time[i].dim] += tc[i] * time[i].stride;
    std::uint32_t active = 0;
    for (std::size_t k = 0; k < combos; ++k) {
      bool inside = true;
      for (std::size_t d = 0; d < w.depth(); ++d) {
        it[d] = base[d] + offset[k][d];
        inside = inside && it[d] < w.dims()[d].extent;
      }
      if (!inside) continue;
      const std::uint32_t leaf_unit = unit[nl - 1][k];
      if (!busy[leaf_unit]) {
        busy[leaf_unit] = 1;
        ++active;
      }
      for (std::size_t l = 1; l < nl && options.volumes; ++l) {
        const std::uint64_t ns = units[l].stamps.size();
        for (Track& tr : tracks[l]) {
          tr.cur.push_back(element(tr.array_index, it) * ns + unit[l][k]);
          if (tr.cur.size() > (std::size_t{1} << 22)) compact(tr.cur);
        }
      }
    }
    result.active.push_back(active);
    std::fill(busy.begin(), busy.end(), 0);

    // advance the leaf odometer; levels whose stamp changed are closed
    const std::vector<std::int64_t> before = tc;
    std::size_t changed = 0;
    for (std::size_t i = time.size(); i-- > 0;) {
      if (++tc[i] < time[i].trip) {
        changed = i;
        break;
      }
      tc[i] = 0;
    }
    const bool last = step + 1 == steps;
    if (!options.volumes) continue;
    for (std::size_t l = 1; l < nl; ++l) {
      if (last || changed < visible[l]) close(l, before);
    }
  }

  for (std::size_t l = 1; l < nl; ++l) {
    for (Track& tr : tracks[l]) result.volumes.entries.push_back(std::move(tr.entry));
  }
  return result;
}

std::vector<VolumeDiff> diff(const VolumeReport& a, const VolumeReport& b) {
  std::vector<VolumeDiff> out;
  auto fields = [](const VolumeEntry& e) {
    return std::vector<std::pair<const char*, std::uint64_t>>{{"TV", e.v.tv},   {"SV", e.v.sv},
                                                              {"TSV", e.v.tsv}, {"UV", e.v.uv},
                                                              {"Total", e.v.total}, {"reqs", e.reqs}};
  };
  for (const auto& ea : a.entries) {
    const VolumeEntry* eb = b.find(ea.level, ea.array);
    if (!eb) {
      out.push_back({ea.array, ea.level, "missing", 1, 0});
      continue;
    }
    const auto fa = fields(ea), fb = fields(*eb);
    for (std::size_t i = 0; i < fa.size(); ++i) {
      if (fa[i].second != fb[i].second) out.push_back({ea.array, ea.level, fa[i].first, fa[i].second, fb[i].second});
    }
  }
  for (const auto& eb : b.entries) {
    if (!a.find(eb.level, eb.array)) out.push_back({eb.array, eb.level, "missing", 0, 1});
  }
  return out;
}

}  // namespace dataplace

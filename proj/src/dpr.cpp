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


#include "dataplace/dpr.hpp"

#include <map>

namespace dataplace {

namespace {

using Coords = std::vector<std::vector<std::int64_t>>;

// Parent unit of every child unit; the tree hierarchy unless a cross-level
// connect between the two levels overrides it.
class ParentUnits {
 public:
  ParentUnits(const ScheduleTree& tree, const ArchSpec& arch, std::size_t child) : tree_(tree), child_(child) {
    const CrossConnect* cc = arch.cross(tree.levels[child - 1].name, tree.levels[child].name);
    if (!cc) return;
    if (!tree.has_space(child - 1) || !tree.has_space(child)) {
      throw ConfigError("cross_connect " + cc->from + " -> " + cc->to +
                        " requires space bands at both levels");
    }
    if (cc->relation.in_arity() != tree.space_arity(child - 1) ||
        cc->relation.out_arity() != tree.space_arity(child)) {
      throw StructuralError("cross_connect " + cc->from + " -> " + cc->to + ": arity mismatch");
    }
    IntRelation inv = inverse(cc->relation);
    IntSet units = unit_stamps(tree, child);
    for (std::size_t i = 0; i < units.size(); ++i) {
      IntSet one = IntSet::from_rows(units.shape(), std::vector<Value>(units[i].begin(), units[i].end()));
      IntSet parents = apply(inv, one);
      if (parents.size() != 1) {
        throw ConfigError("cross_connect " + cc->from + " -> " + cc->to + ": unit " +
                          tuple_to_string(units[i], units.shape()) + " has " +
                          std::to_string(parents.size()) + " parents, expected exactly one");
      }
      override_[std::vector<Value>(units[i].begin(), units[i].end())] =
          std::vector<Value>(parents[0].begin(), parents[0].end());
    }
  }

  void lookup(const Coords& space, const std::vector<Value>& child_stamp, std::vector<Value>& out) const {
    if (override_.empty()) {
      tree_.unit_stamp(child_ - 1, space, out);
    } else {
      out = override_.at(child_stamp);
    }
  }

 private:
  const ScheduleTree& tree_;
  std::size_t child_;
  std::map<std::vector<Value>, std::vector<Value>> override_;
};

Coords empty_coords(const ScheduleTree& tree, bool time) {
  Coords c(tree.levels.size());
  for (std::size_t l = 0; l < tree.levels.size(); ++l) {
    c[l].assign(time ? tree.levels[l].time.size() : tree.levels[l].space.size(), 0);
  }
  return c;
}

// Odometer over the given members of a coordinate table.
bool step(Coords& c, const std::vector<std::pair<std::size_t, std::size_t>>& members,
          const std::vector<std::int64_t>& trips) {
  for (std::size_t m = members.size(); m-- > 0;) {
    auto& v = c[members[m].first][members[m].second];
    if (++v < trips[m]) return true;
    v = 0;
  }
  return false;
}

// Calls fn(iteration, time coords, space coords) for every instance.
template <typename Fn>
void for_each_instance(const ScheduleTree& tree, Fn&& fn) {
  const Workload& w = tree.workload;
  if (w.instances() > enumeration_budget()) {
    throw BudgetExceeded(w.instances(), enumeration_budget(), "space-time map of " + w.name());
  }
  Coords tc = empty_coords(tree, true), sc = empty_coords(tree, false);
  std::vector<std::pair<std::size_t, std::size_t>> tm, sm;
  std::vector<std::int64_t> tt, st;
  for (std::size_t l = 0; l < tree.levels.size(); ++l) {
    for (std::size_t i = 0; i < tree.levels[l].time.size(); ++i) {
      tm.emplace_back(l, i);
      tt.push_back(tree.levels[l].time[i].trip);
    }
    for (std::size_t i = 0; i < tree.levels[l].space.size(); ++i) {
      sm.emplace_back(l, i);
      st.push_back(tree.levels[l].space[i].trip);
    }
  }
  std::vector<std::int64_t> leaf(tree.leaf.size(), 0);
  std::vector<std::int64_t> it(w.depth());
  do {
    do {
      std::fill(leaf.begin(), leaf.end(), 0);
      while (true) {
        std::fill(it.begin(), it.end(), 0);
        for (std::size_t l = 0; l < tree.levels.size(); ++l) {
          const TreeLevel& tl = tree.levels[l];
          for (std::size_t i = 0; i < tl.time.size(); ++i) it[tl.time[i].dim] += tc[l][i] * tl.time[i].stride;
          for (std::size_t i = 0; i < tl.space.size(); ++i) it[tl.space[i].dim] += sc[l][i] * tl.space[i].stride;
        }
        for (std::size_t i = 0; i < leaf.size(); ++i) it[tree.leaf[i].dim] += leaf[i];
        fn(it, tc, sc);
        bool wrapped = true;
        for (std::size_t m = leaf.size(); m-- > 0;) {
          if (++leaf[m] < tree.leaf[m].trip) {
            wrapped = false;
            break;
          }
          leaf[m] = 0;
        }
        if (wrapped) break;
      }
    } while (step(sc, sm, st));
  } while (step(tc, tm, tt));
}

Shape st_shape(const ScheduleTree& tree, std::size_t level) {
  return Shape::pair(Shape::flat(tree.space_arity(level)), Shape::flat(tree.time_arity(level)));
}

}  // namespace

Shape placement_range_shape(const ScheduleTree& tree, std::size_t child) {
  if (child == 0 || child >= tree.levels.size()) throw ConfigError("placement: level has no parent");
  return Shape::pair(st_shape(tree, child - 1), st_shape(tree, child));
}

IntSet unit_stamps(const ScheduleTree& tree, std::size_t level) {
  Coords sc = empty_coords(tree, false);
  std::vector<std::pair<std::size_t, std::size_t>> sm;
  std::vector<std::int64_t> st;
  for (std::size_t l = 0; l <= level; ++l) {
    for (std::size_t i = 0; i < tree.levels[l].space.size(); ++i) {
      sm.emplace_back(l, i);
      st.push_back(tree.levels[l].space[i].trip);
    }
  }
  IntSet::Builder b(Shape::flat(tree.space_arity(level)));
  std::vector<Value> s;
  do {
    tree.unit_stamp(level, sc, s);
    b.add(s);
  } while (step(sc, sm, st));
  return std::move(b).build();
}

IntRelation space_time_map(const ScheduleTree& tree, std::size_t level) {
  if (level >= tree.levels.size()) throw ConfigError("space_time_map: unknown level");
  IntRelation::Builder b(Shape::flat(tree.workload.depth()), st_shape(tree, level));
  std::vector<Value> row, s, t;
  for_each_instance(tree, [&](const std::vector<std::int64_t>& it, const Coords& tc, const Coords& sc) {
    tree.unit_stamp(level, sc, s);
    tree.time_stamp(level, tc, t);
    row.assign(it.begin(), it.end());
    row.insert(row.end(), s.begin(), s.end());
    row.insert(row.end(), t.begin(), t.end());
    b.add_row(row);
  });
  return std::move(b).build();
}

IntRelation theta(const ScheduleTree& tree, std::string_view array, std::size_t level) {
  return compose(space_time_map(tree, level), inverse(access_relation(tree.workload, array)));
}

IntRelation inter_level(const ScheduleTree& tree, const ArchSpec& arch, std::string_view array,
                        std::size_t child) {
  const Shape range = placement_range_shape(tree, child);
  ParentUnits parents(tree, arch, child);
  IntRelation::Builder b(Shape::flat(tree.workload.depth()), range);
  std::vector<Value> row, s, t, sp, tp;
  for_each_instance(tree, [&](const std::vector<std::int64_t>& it, const Coords& tc, const Coords& sc) {
    tree.unit_stamp(child, sc, s);
    tree.time_stamp(child, tc, t);
    parents.lookup(sc, s, sp);
    tree.time_stamp(child - 1, tc, tp);
    row.assign(it.begin(), it.end());
    row.insert(row.end(), sp.begin(), sp.end());
    row.insert(row.end(), tp.begin(), tp.end());
    row.insert(row.end(), s.begin(), s.end());
    row.insert(row.end(), t.begin(), t.end());
    b.add_row(row);
  });
  return compose(std::move(b).build(), inverse(access_relation(tree.workload, array)));
}

PlacementStream::PlacementStream(const ScheduleTree& tree, const ArchSpec& arch,
                                 std::string_view array, std::size_t child, std::size_t max_rows)
    : tree_(tree), child_(child), max_rows_(max_rows) {
  range_shape_ = placement_range_shape(tree, child);
  const Workload& w = tree.workload;
  const AccessFunction& a = w.access(array);
  array_arity_ = a.index_arity();
  coef_ = a.coef;
  IntSet fp = footprint(w, array, tree.levels[child].tile);
  pattern_ = fp.data();
  s_arity_ = tree.space_arity(child);
  t_arity_ = tree.time_arity(child);
  sp_arity_ = tree.space_arity(child - 1);
  tp_arity_ = tree.time_arity(child - 1);

  for (std::size_t l = 0; l <= child; ++l) {
    for (std::size_t i = 0; i < tree.levels[l].time.size(); ++i) {
      time_members_.push_back({l, i, tree.levels[l].time[i].trip});
      stamp_count_ *= static_cast<std::uint64_t>(tree.levels[l].time[i].trip);
    }
    for (std::size_t i = 0; i < tree.levels[l].space.size(); ++i) {
      space_members_.push_back({l, i, tree.levels[l].space[i].trip});
    }
  }

  // Enumerate units once: space coordinates, stamps and parent stamps.
  ParentUnits parents(tree, arch, child);
  Coords sc = empty_coords(tree, false);
  std::vector<std::pair<std::size_t, std::size_t>> sm;
  std::vector<std::int64_t> st;
  for (const auto& m : space_members_) {
    sm.emplace_back(m.level, m.index);
    st.push_back(m.trip);
  }
  std::vector<Value> s, sp;
  do {
    std::vector<std::int64_t> base(w.depth(), 0);
    for (std::size_t l = 0; l <= child; ++l) {
      const TreeLevel& tl = tree.levels[l];
      for (std::size_t i = 0; i < tl.space.size(); ++i) base[tl.space[i].dim] += sc[l][i] * tl.space[i].stride;
    }
    tree.unit_stamp(child, sc, s);
    parents.lookup(sc, s, sp);
    units_.push_back(std::move(base));
    unit_s_.insert(unit_s_.end(), s.begin(), s.end());
    unit_sp_.insert(unit_sp_.end(), sp.begin(), sp.end());
  } while (step(sc, sm, st));

  cursor_.assign(time_members_.size(), 0);
}

bool PlacementStream::advance(std::vector<std::int64_t>& tc) const {
  for (std::size_t m = time_members_.size(); m-- > 0;) {
    if (++tc[m] < time_members_[m].trip) return true;
    tc[m] = 0;
  }
  return false;
}

void PlacementStream::emit_stamp(const std::vector<std::int64_t>& tc, IntRelation::Builder* theta_big,
                                 IntRelation::Builder* theta_small) {
  const Workload& w = tree_.workload;
  const std::size_t D = w.depth();
  std::vector<std::int64_t> base_t(D, 0);
  std::vector<Value> t, tp;
  for (std::size_t m = 0; m < time_members_.size(); ++m) {
    const BandMember& b = tree_.levels[time_members_[m].level].time[time_members_[m].index];
    base_t[b.dim] += tc[m] * b.stride;
    t.push_back(static_cast<Value>(tc[m]));
    if (time_members_[m].level < child_) tp.push_back(static_cast<Value>(tc[m]));
  }
  if (t.empty()) t.push_back(0);
  if (tp.empty()) tp.push_back(0);

  const std::size_t n_pat = array_arity_ == 0 ? 0 : pattern_.size() / array_arity_;
  const std::size_t width = array_arity_ + (theta_big ? sp_arity_ + tp_arity_ : 0) + s_arity_ + t_arity_;
  std::vector<Value> row(width);
  std::vector<std::int64_t> delta(array_arity_);
  for (std::size_t u = 0; u < units_.size(); ++u) {
    for (std::size_t r = 0; r < array_arity_; ++r) {
      std::int64_t v = 0;
      for (std::size_t d = 0; d < D; ++d) v += coef_[r * D + d] * (base_t[d] + units_[u][d]);
      delta[r] = v;
    }
    std::size_t pos = array_arity_;
    if (theta_big) {
      for (std::size_t k = 0; k < sp_arity_; ++k) row[pos++] = unit_sp_[u * sp_arity_ + k];
      for (Value v : tp) row[pos++] = v;
    }
    for (std::size_t k = 0; k < s_arity_; ++k) row[pos++] = unit_s_[u * s_arity_ + k];
    for (Value v : t) row[pos++] = v;
    for (std::size_t p = 0; p < n_pat; ++p) {
      for (std::size_t r = 0; r < array_arity_; ++r) {
        row[r] = static_cast<Value>(pattern_[p * array_arity_ + r] + delta[r]);
      }
      if (theta_big) {
        theta_big->add_row(row);
      } else {
        theta_small->add_row(row);
      }
    }
  }
}

bool PlacementStream::next(PlacementWindow& out) {
  if (done_) return false;
  const Shape in = Shape::flat(array_arity_);
  IntRelation::Builder big(in, range_shape_);
  IntRelation::Builder small(in, range_shape_.out());
  out.stamps.clear();
  out.prev_stamp.clear();
  if (has_prev_) {
    emit_stamp(prev_, nullptr, &small);
    for (std::int64_t c : prev_) out.prev_stamp.push_back(static_cast<Value>(c));
    if (prev_.empty()) out.prev_stamp.push_back(0);
  }
  std::size_t rows = 0;
  const std::size_t per_stamp = units_.size() * (array_arity_ ? pattern_.size() / array_arity_ : 0);
  while (true) {
    emit_stamp(cursor_, &big, nullptr);
    for (std::int64_t c : cursor_) out.stamps.push_back(static_cast<Value>(c));
    if (cursor_.empty()) out.stamps.push_back(0);
    rows += per_stamp;
    prev_ = cursor_;
    has_prev_ = true;
    if (!advance(cursor_)) {
      done_ = true;
      break;
    }
    if (rows + per_stamp > max_rows_) break;
  }
  out.placements = std::move(big).build();
  out.previous = std::move(small).build();
  return true;
}

}  // namespace dataplace

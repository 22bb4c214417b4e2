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

#include "dataplace/intrel.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "dataplace/kernels/kernels.hpp"

namespace dataplace {

namespace {

std::atomic<std::size_t> g_budget{kDefaultEnumerationBudget};

void check_budget(std::size_t rows, const char* what) {
  const std::size_t limit = g_budget.load(std::memory_order_relaxed);
  if (rows > limit) throw BudgetExceeded(rows, limit, what);
}

using Unsigned128 = unsigned __int128;

// Sorts rows of `width` values and removes duplicates, in place.
//
// Rows whose per-column value ranges pack into 128 bits are sorted as
// integer keys (packing preserves lexicographic order); everything else
// goes through an index sort with the dispatched lex_compare kernel.
template <typename Key>
void packed_canonicalize(std::vector<Value>& data, std::size_t width, std::size_t n,
                         const std::vector<Value>& lo, const std::vector<int>& bits) {
  std::vector<Key> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Value* row = data.data() + i * width;
    Key key = 0;
    for (std::size_t c = 0; c < width; ++c) {
      key = (key << bits[c]) |
            static_cast<Key>(static_cast<std::uint32_t>(row[c] - lo[c]));
    }
    keys[i] = key;
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  data.resize(keys.size() * width);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    Key key = keys[i];
    Value* row = data.data() + i * width;
    for (std::size_t c = width; c-- > 0;) {
      const Key mask = (Key{1} << bits[c]) - 1;
      row[c] = static_cast<Value>(static_cast<std::uint32_t>(key & mask)) + lo[c];
      key >>= bits[c];
    }
  }
}

bool strictly_sorted(const std::vector<Value>& data, std::size_t width, std::size_t n) {
  for (std::size_t i = 1; i < n; ++i) {
    if (kernels::lex_compare(data.data() + (i - 1) * width, data.data() + i * width,
                             width) >= 0) {
      return false;
    }
  }
  return true;
}

void canonicalize(std::vector<Value>& data, std::size_t width) {
  if (width == 0) {
    data.clear();
    return;
  }
  const std::size_t n = data.size() / width;
  if (n <= 1 || strictly_sorted(data, width, n)) return;

  std::vector<Value> lo(width), hi(width);
  for (std::size_t c = 0; c < width; ++c) lo[c] = hi[c] = data[c];
  for (std::size_t i = 1; i < n; ++i) {
    const Value* row = data.data() + i * width;
    for (std::size_t c = 0; c < width; ++c) {
      lo[c] = std::min(lo[c], row[c]);
      hi[c] = std::max(hi[c], row[c]);
    }
  }
  std::vector<int> bits(width);
  int total_bits = 0;
  for (std::size_t c = 0; c < width; ++c) {
    const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi[c]) - lo[c]);
    int b = 0;
    while (b < 33 && (span >> b) != 0) ++b;
    bits[c] = b;
    total_bits += b;
  }
  if (total_bits <= 64) {
    packed_canonicalize<std::uint64_t>(data, width, n, lo, bits);
    return;
  }
  if (total_bits <= 128) {
    packed_canonicalize<Unsigned128>(data, width, n, lo, bits);
    return;
  }

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  const Value* base = data.data();
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return kernels::lex_compare(base + a * width, base + b * width, width) < 0;
  });
  std::vector<Value> out;
  out.reserve(data.size());
  const Value* prev = nullptr;
  for (std::uint32_t idx : order) {
    const Value* row = base + idx * width;
    if (prev != nullptr && kernels::lex_compare(prev, row, width) == 0) continue;
    out.insert(out.end(), row, row + width);
    prev = row;
  }
  data.swap(out);
}

enum class MergeOp { kUnion, kIntersect, kSubtract };

// Merges two canonical row tables.
std::vector<Value> merge_rows(const std::vector<Value>& a, const std::vector<Value>& b,
                              std::size_t width, MergeOp op) {
  std::vector<Value> out;
  if (width == 0) return out;
  const std::size_t na = a.size() / width;
  const std::size_t nb = b.size() / width;
  out.reserve(op == MergeOp::kUnion ? a.size() + b.size() : a.size());
  std::size_t i = 0, j = 0;
  auto emit = [&](const std::vector<Value>& src, std::size_t idx) {
    out.insert(out.end(), src.begin() + idx * width, src.begin() + (idx + 1) * width);
  };
  while (i < na && j < nb) {
    const int c = kernels::lex_compare(a.data() + i * width, b.data() + j * width, width);
    if (c < 0) {
      if (op != MergeOp::kIntersect) emit(a, i);
      ++i;
    } else if (c > 0) {
      if (op == MergeOp::kUnion) emit(b, j);
      ++j;
    } else {
      if (op != MergeOp::kSubtract) emit(a, i);
      ++i;
      ++j;
    }
  }
  if (op != MergeOp::kIntersect) {
    for (; i < na; ++i) emit(a, i);
  }
  if (op == MergeOp::kUnion) {
    for (; j < nb; ++j) emit(b, j);
  }
  return out;
}

// First row index in [0, n) whose `prefix`-long prefix is >= key.
std::size_t lower_bound_prefix(const std::vector<Value>& data, std::size_t width,
                               std::size_t n, const Value* key, std::size_t prefix) {
  std::size_t lo = 0, hi = n;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (kernels::lex_compare(data.data() + mid * width, key, prefix) < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void require_same(const Shape& a, const Shape& b, const char* op) {
  if (a != b) {
    throw StructuralError(std::string(op) + ": shape mismatch " + a.to_string() +
                          " vs " + b.to_string());
  }
}

}  // namespace

IntSet make_set_unchecked(Shape shape, std::vector<Value> data, bool nullary);
IntRelation make_relation_unchecked(Shape in, Shape out, std::vector<Value> data,
                                    std::size_t nullary);

IntSet make_set_unchecked(Shape shape, std::vector<Value> data, bool nullary) {
  IntSet s(std::move(shape));
  s.data_ = std::move(data);
  s.nullary_ = s.arity() == 0 && nullary;
  check_budget(s.size(), "set");
  return s;
}

IntRelation make_relation_unchecked(Shape in, Shape out, std::vector<Value> data,
                                    std::size_t nullary) {
  IntRelation r(std::move(in), std::move(out));
  r.data_ = std::move(data);
  r.nullary_ = r.width() == 0 ? std::min<std::size_t>(nullary, 1) : 0;
  check_budget(r.size(), "relation");
  return r;
}

std::size_t enumeration_budget() { return g_budget.load(std::memory_order_relaxed); }

void set_enumeration_budget(std::size_t limit) {
  g_budget.store(limit, std::memory_order_relaxed);
}

ScopedBudget::ScopedBudget(std::size_t limit) : previous_(enumeration_budget()) {
  set_enumeration_budget(limit);
}

ScopedBudget::~ScopedBudget() { set_enumeration_budget(previous_); }

// ---------------------------------------------------------------------------
// Shape

Shape Shape::flat(std::size_t arity) {
  Shape s;
  s.arity_ = arity;
  return s;
}

Shape Shape::pair(Shape in, Shape out) {
  Shape s;
  s.arity_ = in.arity() + out.arity();
  s.parts_.reserve(2);
  s.parts_.push_back(std::move(in));
  s.parts_.push_back(std::move(out));
  return s;
}

const Shape& Shape::in() const {
  if (!is_pair()) throw StructuralError("shape " + to_string() + " is not a pair");
  return parts_[0];
}

const Shape& Shape::out() const {
  if (!is_pair()) throw StructuralError("shape " + to_string() + " is not a pair");
  return parts_[1];
}

bool Shape::operator==(const Shape& other) const {
  return arity_ == other.arity_ && parts_ == other.parts_;
}

std::string Shape::to_string() const {
  if (is_pair()) return "[" + parts_[0].to_string() + " -> " + parts_[1].to_string() + "]";
  return "[" + std::to_string(arity_) + "]";
}

// ---------------------------------------------------------------------------
// IntSet

IntSet IntSet::from_rows(Shape shape, std::vector<Value> rows) {
  if (shape.arity() == 0) {
    if (!rows.empty()) throw StructuralError("nullary set given values");
    return make_set_unchecked(std::move(shape), {}, false);
  }
  if (rows.size() % shape.arity() != 0) {
    throw StructuralError("row data is not a multiple of arity " +
                          std::to_string(shape.arity()));
  }
  check_budget(rows.size() / shape.arity(), "set");
  canonicalize(rows, shape.arity());
  return make_set_unchecked(std::move(shape), std::move(rows), false);
}

IntSet IntSet::box(std::span<const Value> lo, std::span<const Value> hi) {
  if (lo.size() != hi.size()) throw StructuralError("box bounds differ in arity");
  const std::size_t arity = lo.size();
  std::uint64_t count = 1;
  for (std::size_t c = 0; c < arity; ++c) {
    if (hi[c] <= lo[c]) return IntSet(Shape::flat(arity));
    count *= static_cast<std::uint64_t>(hi[c] - lo[c]);
    check_budget(count, "box");
  }
  if (arity == 0) return make_set_unchecked(Shape::flat(0), {}, true);
  std::vector<Value> data;
  data.reserve(count * arity);
  std::vector<Value> cur(lo.begin(), lo.end());
  for (std::uint64_t i = 0; i < count; ++i) {
    data.insert(data.end(), cur.begin(), cur.end());
    for (std::size_t c = arity; c-- > 0;) {
      if (++cur[c] < hi[c]) break;
      cur[c] = lo[c];
    }
  }
  return make_set_unchecked(Shape::flat(arity), std::move(data), false);
}

bool IntSet::contains(Row tuple) const {
  if (tuple.size() != arity()) return false;
  if (arity() == 0) return nullary_;
  const std::size_t n = size();
  const std::size_t i = lower_bound_prefix(data_, arity(), n, tuple.data(), arity());
  return i < n && kernels::lex_compare(data_.data() + i * arity(), tuple.data(), arity()) == 0;
}

bool IntSet::operator==(const IntSet& other) const {
  return shape_ == other.shape_ && data_ == other.data_ && nullary_ == other.nullary_;
}

void IntSet::Builder::add(Row tuple) {
  if (tuple.size() != shape_.arity()) {
    throw StructuralError("tuple arity " + std::to_string(tuple.size()) +
                          " does not match set arity " + std::to_string(shape_.arity()));
  }
  if (shape_.arity() == 0) {
    nullary_ = true;
    return;
  }
  data_.insert(data_.end(), tuple.begin(), tuple.end());
  if ((data_.size() / shape_.arity() & 0xFFFF) == 0) check_budget(rows(), "set builder");
}

IntSet IntSet::Builder::build() && {
  if (shape_.arity() == 0) return make_set_unchecked(std::move(shape_), {}, nullary_);
  check_budget(rows(), "set");
  canonicalize(data_, shape_.arity());
  return make_set_unchecked(std::move(shape_), std::move(data_), false);
}

// ---------------------------------------------------------------------------
// IntRelation

IntRelation IntRelation::from_rows(Shape in, Shape out, std::vector<Value> rows) {
  const std::size_t width = in.arity() + out.arity();
  if (width == 0) {
    if (!rows.empty()) throw StructuralError("nullary relation given values");
    return make_relation_unchecked(std::move(in), std::move(out), {}, 0);
  }
  if (rows.size() % width != 0) {
    throw StructuralError("row data is not a multiple of width " + std::to_string(width));
  }
  check_budget(rows.size() / width, "relation");
  canonicalize(rows, width);
  return make_relation_unchecked(std::move(in), std::move(out), std::move(rows), 0);
}

std::size_t IntRelation::size() const {
  return width() == 0 ? nullary_ : data_.size() / width();
}

bool IntRelation::contains(Row in, Row out) const {
  if (in.size() != in_arity() || out.size() != out_arity()) return false;
  if (width() == 0) return nullary_ > 0;
  std::vector<Value> key(in.begin(), in.end());
  key.insert(key.end(), out.begin(), out.end());
  const std::size_t n = size();
  const std::size_t i = lower_bound_prefix(data_, width(), n, key.data(), width());
  return i < n && kernels::lex_compare(data_.data() + i * width(), key.data(), width()) == 0;
}

bool IntRelation::operator==(const IntRelation& other) const {
  return in_ == other.in_ && out_ == other.out_ && data_ == other.data_ &&
         nullary_ == other.nullary_;
}

void IntRelation::Builder::add(Row in, Row out) {
  if (in.size() != in_.arity() || out.size() != out_.arity()) {
    throw StructuralError("pair arity does not match relation " + in_.to_string() +
                          " -> " + out_.to_string());
  }
  if (in_.arity() + out_.arity() == 0) {
    nullary_rows_ = 1;
    return;
  }
  data_.insert(data_.end(), in.begin(), in.end());
  data_.insert(data_.end(), out.begin(), out.end());
  if ((rows() & 0xFFFF) == 0) check_budget(rows(), "relation builder");
}

void IntRelation::Builder::add_row(Row row) {
  const std::size_t width = in_.arity() + out_.arity();
  if (row.size() != width) throw StructuralError("row width mismatch");
  if (width == 0) {
    nullary_rows_ = 1;
    return;
  }
  data_.insert(data_.end(), row.begin(), row.end());
  if ((rows() & 0xFFFF) == 0) check_budget(rows(), "relation builder");
}

std::size_t IntRelation::Builder::rows() const {
  const std::size_t width = in_.arity() + out_.arity();
  return width == 0 ? nullary_rows_ : data_.size() / width;
}

IntRelation IntRelation::Builder::build() && {
  const std::size_t width = in_.arity() + out_.arity();
  check_budget(rows(), "relation");
  if (width > 0) canonicalize(data_, width);
  return make_relation_unchecked(std::move(in_), std::move(out_), std::move(data_),
                                 nullary_rows_);
}

// ---------------------------------------------------------------------------
// Operations

IntSet unite(const IntSet& a, const IntSet& b) {
  require_same(a.shape(), b.shape(), "union");
  if (a.arity() == 0) return make_set_unchecked(a.shape(), {}, !a.empty() || !b.empty());
  return make_set_unchecked(a.shape(), merge_rows(a.data(), b.data(), a.arity(), MergeOp::kUnion),
                            false);
}

IntSet intersect(const IntSet& a, const IntSet& b) {
  require_same(a.shape(), b.shape(), "intersect");
  if (a.arity() == 0) return make_set_unchecked(a.shape(), {}, !a.empty() && !b.empty());
  return make_set_unchecked(a.shape(),
                            merge_rows(a.data(), b.data(), a.arity(), MergeOp::kIntersect), false);
}

IntSet subtract(const IntSet& a, const IntSet& b) {
  require_same(a.shape(), b.shape(), "subtract");
  if (a.arity() == 0) return make_set_unchecked(a.shape(), {}, !a.empty() && b.empty());
  return make_set_unchecked(a.shape(),
                            merge_rows(a.data(), b.data(), a.arity(), MergeOp::kSubtract), false);
}

namespace {

IntRelation merge_relations(const IntRelation& a, const IntRelation& b, MergeOp op,
                            const char* name) {
  require_same(a.in_shape(), b.in_shape(), name);
  require_same(a.out_shape(), b.out_shape(), name);
  if (a.width() == 0) {
    const bool x = !a.empty(), y = !b.empty();
    const bool r = op == MergeOp::kUnion ? (x || y) : op == MergeOp::kIntersect ? (x && y) : (x && !y);
    return make_relation_unchecked(a.in_shape(), a.out_shape(), {}, r ? 1 : 0);
  }
  return make_relation_unchecked(a.in_shape(), a.out_shape(),
                                 merge_rows(a.data(), b.data(), a.width(), op), 0);
}

}  // namespace

IntRelation unite(const IntRelation& a, const IntRelation& b) {
  return merge_relations(a, b, MergeOp::kUnion, "union");
}

IntRelation intersect(const IntRelation& a, const IntRelation& b) {
  return merge_relations(a, b, MergeOp::kIntersect, "intersect");
}

IntRelation subtract(const IntRelation& a, const IntRelation& b) {
  return merge_relations(a, b, MergeOp::kSubtract, "subtract");
}

IntRelation compose(const IntRelation& f, const IntRelation& g) {
  if (g.out_arity() != f.in_arity() || g.out_shape() != f.in_shape()) {
    throw StructuralError("compose: output " + g.out_shape().to_string() +
                          " of the inner relation does not match input " +
                          f.in_shape().to_string() + " of the outer relation");
  }
  IntRelation::Builder out(g.in_shape(), f.out_shape());
  const std::size_t mid = g.out_arity();
  const std::size_t nf = f.size();
  const std::size_t fw = f.width();
  if (mid == 0) {
    // Every pair of g joins every pair of f.
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < nf; ++j) out.add(g.in(i), f.out(j));
    }
    return std::move(out).build();
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Row b = g.out(i);
    std::size_t j = lower_bound_prefix(f.data(), fw, nf, b.data(), mid);
    for (; j < nf && kernels::lex_compare(f.data().data() + j * fw, b.data(), mid) == 0; ++j) {
      out.add(g.in(i), f.out(j));
    }
  }
  return std::move(out).build();
}

IntRelation inverse(const IntRelation& r) {
  IntRelation::Builder out(r.out_shape(), r.in_shape());
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.add(r.out(i), r.in(i));
  return std::move(out).build();
}

std::uint64_t cardinality(const IntSet& s) { return s.size(); }
std::uint64_t cardinality(const IntRelation& r) { return r.size(); }

IntSet domain(const IntRelation& r) {
  if (r.in_arity() == 0) return make_set_unchecked(r.in_shape(), {}, !r.empty());
  std::vector<Value> data;
  const Value* prev = nullptr;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Row in = r.in(i);
    if (prev != nullptr && kernels::lex_compare(prev, in.data(), in.size()) == 0) continue;
    data.insert(data.end(), in.begin(), in.end());
    prev = in.data();
  }
  return make_set_unchecked(r.in_shape(), std::move(data), false);
}

IntSet range(const IntRelation& r) {
  IntSet::Builder out(r.out_shape());
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.add(r.out(i));
  return std::move(out).build();
}

IntSet apply(const IntRelation& r, const IntSet& s) {
  require_same(r.in_shape(), s.shape(), "apply");
  IntSet::Builder out(r.out_shape());
  const std::size_t w = r.width();
  const std::size_t n = r.size();
  if (r.in_arity() == 0) {
    if (!s.empty()) {
      for (std::size_t j = 0; j < n; ++j) out.add(r.out(j));
    }
    return std::move(out).build();
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Row key = s[i];
    std::size_t j = lower_bound_prefix(r.data(), w, n, key.data(), key.size());
    for (; j < n && kernels::lex_compare(r.data().data() + j * w, key.data(), key.size()) == 0;
         ++j) {
      out.add(r.out(j));
    }
  }
  return std::move(out).build();
}

IntSet wrap(const IntRelation& r) {
  // Rows are already canonical as `in ++ out`.
  return make_set_unchecked(Shape::pair(r.in_shape(), r.out_shape()), r.data(), !r.empty());
}

IntRelation unwrap(const IntSet& s) {
  if (!s.shape().is_pair()) {
    throw StructuralError("unwrap: set shape " + s.shape().to_string() + " is not a wrapped pair");
  }
  return make_relation_unchecked(s.shape().in(), s.shape().out(), s.data(), s.empty() ? 0 : 1);
}

IntRelation lex_lt(const IntSet& s) {
  const std::size_t n = s.size();
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  check_budget(pairs, "lex_lt");
  IntRelation::Builder out(s.shape(), s.shape());
  out.reserve(pairs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.add(s[i], s[j]);
  }
  return std::move(out).build();
}

IntRelation lex_closest_pred(const IntSet& s) {
  IntRelation::Builder out(s.shape(), s.shape());
  out.reserve(s.size());
  for (std::size_t i = 1; i < s.size(); ++i) out.add(s[i], s[i - 1]);
  return std::move(out).build();
}

IntRelation identity(const IntSet& s) {
  IntRelation::Builder out(s.shape(), s.shape());
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out.add(s[i], s[i]);
  if (s.arity() == 0 && !s.empty()) out.add(Row{}, Row{});
  return std::move(out).build();
}

IntRelation intersect_domain(const IntRelation& r, const IntSet& s) {
  require_same(r.in_shape(), s.shape(), "intersect_domain");
  IntRelation::Builder out(r.in_shape(), r.out_shape());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (s.contains(r.in(i))) out.add_row(r.row(i));
  }
  return std::move(out).build();
}

IntRelation intersect_range(const IntRelation& r, const IntSet& s) {
  require_same(r.out_shape(), s.shape(), "intersect_range");
  IntRelation::Builder out(r.in_shape(), r.out_shape());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (s.contains(r.out(i))) out.add_row(r.row(i));
  }
  return std::move(out).build();
}

namespace {

IntRelation range_factor(const IntRelation& r, bool keep_domain_part) {
  if (!r.out_shape().is_pair()) {
    throw StructuralError("range factor: output shape " + r.out_shape().to_string() +
                          " is not a wrapped pair");
  }
  const Shape& part = keep_domain_part ? r.out_shape().in() : r.out_shape().out();
  const std::size_t offset = keep_domain_part ? 0 : r.out_shape().in().arity();
  IntRelation::Builder out(r.in_shape(), part);
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.add(r.in(i), r.out(i).subspan(offset, part.arity()));
  }
  return std::move(out).build();
}

}  // namespace

IntRelation range_factor_domain(const IntRelation& r) { return range_factor(r, true); }
IntRelation range_factor_range(const IntRelation& r) { return range_factor(r, false); }

IntRelation intersect_range_factor_range(const IntRelation& r, const IntRelation& factor) {
  if (!r.out_shape().is_pair()) {
    throw StructuralError("intersect_range_factor_range: range is not a wrapped pair");
  }
  require_same(r.in_shape(), factor.in_shape(), "intersect_range_factor_range");
  require_same(r.out_shape().out(), factor.out_shape(), "intersect_range_factor_range");
  const std::size_t skip = r.out_shape().in().arity();
  IntRelation::Builder out(r.in_shape(), r.out_shape());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (factor.contains(r.in(i), r.out(i).subspan(skip))) out.add_row(r.row(i));
  }
  return std::move(out).build();
}

IntRelation project_range(const IntRelation& r, std::span<const std::size_t> keep) {
  for (std::size_t k : keep) {
    if (k >= r.out_arity()) throw StructuralError("project_range: position out of range");
  }
  IntRelation::Builder out(r.in_shape(), Shape::flat(keep.size()));
  out.reserve(r.size());
  std::vector<Value> buf(keep.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Row o = r.out(i);
    for (std::size_t k = 0; k < keep.size(); ++k) buf[k] = o[keep[k]];
    out.add(r.in(i), buf);
  }
  return std::move(out).build();
}

}  // namespace dataplace

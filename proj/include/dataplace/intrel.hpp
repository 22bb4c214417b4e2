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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataplace/error.hpp"

// Bounded integer sets and relations by explicit enumeration.
//
// Every value stores its tuples as contiguous int32 rows kept in canonical
// form: lexicographically sorted, no duplicates. Relations store each pair
// as one row `in ++ out`, so the canonical order is by input tuple first.
//
// Composition convention, used everywhere in this code base:
//   compose(f, g) = { a -> c : a -> b in g and b -> c in f }
// i.e. the right operand is applied first.

namespace dataplace {

using Value = std::int32_t;

/// Maximum number of tuples any single set or relation may hold.
std::size_t enumeration_budget();
void set_enumeration_budget(std::size_t limit);

/// Restores the previous budget on destruction.
class ScopedBudget {
 public:
  explicit ScopedBudget(std::size_t limit);
  ~ScopedBudget();
  ScopedBudget(const ScopedBudget&) = delete;
  ScopedBudget& operator=(const ScopedBudget&) = delete;

 private:
  std::size_t previous_;
};

inline constexpr std::size_t kDefaultEnumerationBudget = 5'000'000;

/// Nesting descriptor over flat tuple positions: either a flat run of
/// `arity` coordinates, or a wrapped pair `[[in] -> [out]]`.
class Shape {
 public:
  Shape() = default;

  static Shape flat(std::size_t arity);
  static Shape pair(Shape in, Shape out);

  bool is_pair() const { return !parts_.empty(); }
  std::size_t arity() const { return arity_; }
  const Shape& in() const;
  const Shape& out() const;

  bool operator==(const Shape& other) const;
  bool operator!=(const Shape& other) const { return !(*this == other); }

  /// e.g. "[2]" or "[[1] -> [3]]".
  std::string to_string() const;

 private:
  std::size_t arity_ = 0;
  std::vector<Shape> parts_;
};

using Row = std::span<const Value>;

class IntSet {
 public:
  IntSet() = default;
  explicit IntSet(Shape shape) : shape_(std::move(shape)) {}

  /// Takes arbitrary rows (row-major, shape.arity() values each) and
  /// canonicalizes them.
  static IntSet from_rows(Shape shape, std::vector<Value> rows);

  /// All integer points lo <= x < hi (per coordinate).
  static IntSet box(std::span<const Value> lo, std::span<const Value> hi);

  const Shape& shape() const { return shape_; }
  std::size_t arity() const { return shape_.arity(); }
  std::size_t size() const { return arity() == 0 ? (nullary_ ? 1 : 0) : data_.size() / arity(); }
  bool empty() const { return size() == 0; }

  Row operator[](std::size_t i) const { return Row(data_.data() + i * arity(), arity()); }
  bool contains(Row tuple) const;

  const std::vector<Value>& data() const { return data_; }

  bool operator==(const IntSet& other) const;
  bool operator!=(const IntSet& other) const { return !(*this == other); }

  class Builder {
   public:
    explicit Builder(Shape shape) : shape_(std::move(shape)) {}
    void reserve(std::size_t rows) { data_.reserve(rows * shape_.arity()); }
    void add(Row tuple);
    void add(std::initializer_list<Value> tuple) { add(Row(tuple.begin(), tuple.size())); }
    std::size_t rows() const { return shape_.arity() == 0 ? nullary_ : data_.size() / shape_.arity(); }
    IntSet build() &&;

   private:
    Shape shape_;
    std::vector<Value> data_;
    bool nullary_ = false;
  };

 private:
  friend class Builder;
  friend IntSet make_set_unchecked(Shape, std::vector<Value>, bool);

  Shape shape_;
  std::vector<Value> data_;
  bool nullary_ = false;  // a 0-arity set is either {} or {[]}
};

class IntRelation {
 public:
  IntRelation() = default;
  IntRelation(Shape in, Shape out) : in_(std::move(in)), out_(std::move(out)) {}

  static IntRelation from_rows(Shape in, Shape out, std::vector<Value> rows);

  const Shape& in_shape() const { return in_; }
  const Shape& out_shape() const { return out_; }
  std::size_t in_arity() const { return in_.arity(); }
  std::size_t out_arity() const { return out_.arity(); }
  std::size_t width() const { return in_arity() + out_arity(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  Row in(std::size_t i) const { return Row(data_.data() + i * width(), in_arity()); }
  Row out(std::size_t i) const {
    return Row(data_.data() + i * width() + in_arity(), out_arity());
  }
  Row row(std::size_t i) const { return Row(data_.data() + i * width(), width()); }
  bool contains(Row in, Row out) const;

  const std::vector<Value>& data() const { return data_; }

  bool operator==(const IntRelation& other) const;
  bool operator!=(const IntRelation& other) const { return !(*this == other); }

  class Builder {
   public:
    Builder(Shape in, Shape out) : in_(std::move(in)), out_(std::move(out)) {}
    void reserve(std::size_t rows) { data_.reserve(rows * (in_.arity() + out_.arity())); }
    void add(Row in, Row out);
    void add(std::initializer_list<Value> in, std::initializer_list<Value> out) {
      add(Row(in.begin(), in.size()), Row(out.begin(), out.size()));
    }
    /// Appends a full `in ++ out` row.
    void add_row(Row row);
    std::size_t rows() const;
    IntRelation build() &&;

   private:
    Shape in_;
    Shape out_;
    std::vector<Value> data_;
    std::size_t nullary_rows_ = 0;
  };

 private:
  friend IntRelation make_relation_unchecked(Shape, Shape, std::vector<Value>, std::size_t);

  Shape in_;
  Shape out_;
  std::vector<Value> data_;
  std::size_t nullary_ = 0;  // number of pairs when width() == 0 (0 or 1)
};

// Set algebra. Operands must agree in shape; otherwise StructuralError.
IntSet unite(const IntSet& a, const IntSet& b);
IntSet intersect(const IntSet& a, const IntSet& b);
IntSet subtract(const IntSet& a, const IntSet& b);
IntRelation unite(const IntRelation& a, const IntRelation& b);
IntRelation intersect(const IntRelation& a, const IntRelation& b);
IntRelation subtract(const IntRelation& a, const IntRelation& b);

/// { a -> c : a -> b in g and b -> c in f }.
IntRelation compose(const IntRelation& f, const IntRelation& g);
IntRelation inverse(const IntRelation& r);

std::uint64_t cardinality(const IntSet& s);
std::uint64_t cardinality(const IntRelation& r);

IntSet domain(const IntRelation& r);
IntSet range(const IntRelation& r);
/// Image of `s` under `r`.
IntSet apply(const IntRelation& r, const IntSet& s);

/// { [[a] -> [b]] : a -> b in r }.
IntSet wrap(const IntRelation& r);
/// Inverse of wrap; the set's shape must be a pair.
IntRelation unwrap(const IntSet& s);

/// { x -> y : x, y in s and x <lex y }.
IntRelation lex_lt(const IntSet& s);
/// { x -> y : y is the immediate lexicographic predecessor of x in s }.
IntRelation lex_closest_pred(const IntSet& s);

/// { x -> x : x in s }.
IntRelation identity(const IntSet& s);

/// Restricts the input (output) side of r to tuples in s.
IntRelation intersect_domain(const IntRelation& r, const IntSet& s);
IntRelation intersect_range(const IntRelation& r, const IntSet& s);

/// For r whose output shape is a pair [[u] -> [v]]: { a -> u } and { a -> v }.
IntRelation range_factor_domain(const IntRelation& r);
IntRelation range_factor_range(const IntRelation& r);

/// For r : a -> [[u] -> [v]], keeps the pairs with (a -> v) in factor.
IntRelation intersect_range_factor_range(const IntRelation& r, const IntRelation& factor);

/// Keeps the listed flat output positions (in order); result output is flat.
IntRelation project_range(const IntRelation& r, std::span<const std::size_t> keep);

// Brace notation, e.g. "{ [x, y] -> [x, y - 1] : 0 <= x < 4 and 1 <= y < 4 }".
// Disjuncts are separated by ';'. Every variable must be bounded, either by
// single-variable guards or by `in_box` for variables that appear directly
// as input-tuple coordinates.
struct ParseOptions {
  std::string source;                                     // for diagnostics
  std::optional<Shape> in_shape;                          // required to parse "{ }"
  std::optional<Shape> out_shape;                         // relations only
  std::vector<std::pair<Value, Value>> in_box;            // half-open per input position
};

IntSet parse_set(std::string_view text, const ParseOptions& options = {});
IntRelation parse_relation(std::string_view text, const ParseOptions& options = {});

std::string to_string(const IntSet& s);
std::string to_string(const IntRelation& r);
std::string tuple_to_string(Row values, const Shape& shape);

}  // namespace dataplace

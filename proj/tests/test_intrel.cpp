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

#include <random>
#include <set>
#include <vector>

#include "dataplace/intrel.hpp"
#include "support/properties.hpp"

using namespace dataplace;

namespace {

using Tup = std::vector<Value>;
using Pairs = std::set<std::pair<Tup, Tup>>;

Pairs naive(const IntRelation& r) {
  Pairs out;
  for (size_t i = 0; i < r.size(); ++i) {
    out.emplace(Tup(r.in(i).begin(), r.in(i).end()), Tup(r.out(i).begin(), r.out(i).end()));
  }
  return out;
}

std::set<Tup> naive(const IntSet& s) {
  std::set<Tup> out;
  for (size_t i = 0; i < s.size(); ++i) out.emplace(s[i].begin(), s[i].end());
  return out;
}

IntRelation random_rel(std::mt19937& rng, size_t a, size_t b, int range, size_t n) {
  std::uniform_int_distribution<Value> v(-range, range);
  IntRelation::Builder bld(Shape::flat(a), Shape::flat(b));
  for (size_t i = 0; i < n; ++i) {
    Tup x(a), y(b);
    for (auto& e : x) e = v(rng);
    for (auto& e : y) e = v(rng);
    bld.add(x, y);
  }
  return std::move(bld).build();
}

IntSet random_set(std::mt19937& rng, size_t a, int range, size_t n) {
  std::uniform_int_distribution<Value> v(-range, range);
  IntSet::Builder bld(Shape::flat(a));
  for (size_t i = 0; i < n; ++i) {
    Tup x(a);
    for (auto& e : x) e = v(rng);
    bld.add(x);
  }
  return std::move(bld).build();
}

}  // namespace

TEST_CASE("canonical form: sorted and unique") {
  std::mt19937 rng(1);
  for (int t = 0; t < 1000; ++t) {
    // wide ranges exercise the unpacked path
    IntSet s = random_set(rng, 1 + t % 6, t % 2 ? 3 : 2000000000, rng() % 40);
    auto ref = naive(s);
    REQUIRE(ref.size() == s.size());
    size_t i = 0;
    for (const auto& tup : ref) {
      CHECK(Tup(s[i].begin(), s[i].end()) == tup);
      ++i;
    }
  }
}

TEST_CASE("set algebra matches naive") {
  std::mt19937 rng(2);
  for (int t = 0; t < 1000; ++t) {
    const size_t a = 1 + t % 3;
    IntSet x = random_set(rng, a, 2, rng() % 20), y = random_set(rng, a, 2, rng() % 20);
    auto nx = naive(x), ny = naive(y);
    std::set<Tup> u = nx, i, d;
    u.insert(ny.begin(), ny.end());
    for (auto& e : nx) (ny.count(e) ? i : d).insert(e);
    CHECK(naive(unite(x, y)) == u);
    CHECK(naive(intersect(x, y)) == i);
    CHECK(naive(subtract(x, y)) == d);
  }
}

TEST_CASE("compose, inverse, domain, range match naive") {
  std::mt19937 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const size_t a = 1 + t % 2, b = 1 + (t / 2) % 2, c = 1 + (t / 4) % 2;
    IntRelation g = random_rel(rng, a, b, 2, rng() % 25);
    IntRelation f = random_rel(rng, b, c, 2, rng() % 25);
    Pairs ref;
    for (auto& [x, y] : naive(g))
      for (auto& [y2, z] : naive(f))
        if (y == y2) ref.emplace(x, z);
    CHECK(naive(compose(f, g)) == ref);
    Pairs inv;
    for (auto& [x, y] : naive(g)) inv.emplace(y, x);
    CHECK(naive(inverse(g)) == inv);
    std::set<Tup> dom, ran;
    for (auto& [x, y] : naive(g)) {
      dom.insert(x);
      ran.insert(y);
    }
    CHECK(naive(domain(g)) == dom);
    CHECK(naive(range(g)) == ran);
  }
}

TEST_CASE("compose is associative") {
  std::mt19937 rng(4);
  for (int t = 0; t < 1000; ++t) {
    IntRelation h = random_rel(rng, 1, 1, 3, rng() % 15);
    IntRelation g = random_rel(rng, 1, 1, 3, rng() % 15);
    IntRelation f = random_rel(rng, 1, 1, 3, rng() % 15);
    CHECK(compose(f, compose(g, h)) == compose(compose(f, g), h));
  }
}

TEST_CASE("lex_closest_pred and lex_lt") {
  std::mt19937 rng(5);
  for (int t = 0; t < 1000; ++t) {
    IntSet s = random_set(rng, 1 + t % 3, 3, rng() % 15);
    auto ns = naive(s);
    std::vector<Tup> v(ns.begin(), ns.end());
    Pairs pred, lt;
    for (size_t i = 1; i < v.size(); ++i) pred.emplace(v[i], v[i - 1]);
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j) lt.emplace(v[i], v[j]);
    CHECK(naive(lex_closest_pred(s)) == pred);
    CHECK(naive(lex_lt(s)) == lt);
  }
}

TEST_CASE("wrap/unwrap and range factors") {
  std::mt19937 rng(6);
  for (int t = 0; t < 200; ++t) {
    IntRelation r = random_rel(rng, 2, 1, 2, rng() % 20);
    IntSet w = wrap(r);
    CHECK(w.shape() == Shape::pair(Shape::flat(2), Shape::flat(1)));
    CHECK(unwrap(w) == r);
    IntRelation x = random_rel(rng, 1, 3, 2, rng() % 20);
    IntRelation nested = compose(identity(wrap(r)), identity(wrap(r)));
    (void)nested;
    // a -> [[u] -> [v]] built from x with u = first coord, v = rest
    IntRelation::Builder b(Shape::flat(1), Shape::pair(Shape::flat(1), Shape::flat(2)));
    for (size_t i = 0; i < x.size(); ++i) b.add(x.in(i), x.out(i));
    IntRelation p = std::move(b).build();
    std::set<std::pair<Tup, Tup>> fd, fr;
    for (auto& [a, o] : naive(x)) {
      fd.emplace(a, Tup{o[0]});
      fr.emplace(a, Tup{o[1], o[2]});
    }
    CHECK(naive(range_factor_domain(p)) == fd);
    CHECK(naive(range_factor_range(p)) == fr);
  }
}

TEST_CASE("shape mismatch raises StructuralError") {
  IntSet a = IntSet::from_rows(Shape::flat(1), {1, 2});
  IntSet b = IntSet::from_rows(Shape::flat(2), {1, 2});
  CHECK_THROWS_AS(unite(a, b), StructuralError);
  IntRelation f = IntRelation::from_rows(Shape::flat(1), Shape::flat(1), {0, 1});
  IntRelation g = IntRelation::from_rows(Shape::flat(1), Shape::flat(2), {0, 1, 2});
  CHECK_THROWS_AS(compose(f, g), StructuralError);
}

TEST_CASE("budget is enforced") {
  ScopedBudget limit(100);
  CHECK_THROWS_AS(parse_set("{ [x, y] : 0 <= x < 20 and 0 <= y < 20 }"), BudgetExceeded);
  CHECK_NOTHROW(parse_set("{ [x] : 0 <= x < 50 }"));
}

TEST_CASE("parse and render") {
  IntRelation r = parse_relation("{ [x, y] -> [x, y - 1] : 0 <= x < 2 and 1 <= y < 3 }");
  CHECK(to_string(r) == "{ [0, 1] -> [0, 0]; [0, 2] -> [0, 1]; [1, 1] -> [1, 0]; [1, 2] -> [1, 1] }");
  CHECK(parse_relation(to_string(r)) == r);

  IntSet s = parse_set("{ [i, 2i + 1] : 0 <= i <= 2; [7, 7] }");
  CHECK(to_string(s) == "{ [0, 1]; [1, 3]; [2, 5]; [7, 7] }");

  IntSet n = parse_set("{ [[i] -> [j]] : 0 <= i < 2 and j = i + 3 }");
  CHECK(n.shape() == Shape::pair(Shape::flat(1), Shape::flat(1)));
  CHECK(to_string(n) == "{ [[0] -> [3]]; [[1] -> [4]] }");
  CHECK(parse_set(to_string(n)) == n);

  ParseOptions box;
  box.in_box = {{0, 3}};
  CHECK(to_string(parse_relation("{ [x] -> [x + 1] }", box)) ==
        "{ [0] -> [1]; [1] -> [2]; [2] -> [3] }");

  ParseOptions empty;
  empty.in_shape = Shape::flat(2);
  CHECK(to_string(parse_set("{ }", empty)) == "{ }");
}

TEST_CASE("parse errors carry location") {
  try {
    parse_set("{ [x] :\n 0 <= x < 3 and ? }", ParseOptions{"t.txt", {}, {}, {}});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 17);
    CHECK(std::string(e.what()).rfind("t.txt:2:17", 0) == 0);
  }
  CHECK_THROWS_AS(parse_set("{ [x] : x >= 0 }"), ParseError);
  CHECK_THROWS_AS(parse_set("{ [x] -> [x] : 0 <= x < 2 }"), ParseError);
}

TEST_CASE("algebraic laws hold on 1000 random cases each") {
  CHECK(props::compose_associative(1000, 11).ok());
  CHECK(props::inverse_involution(1000, 12).ok());
  CHECK(props::inclusion_exclusion(1000, 13).ok());
  CHECK(props::pred_size_law(1000, 14).ok());
}

TEST_CASE("worked examples") {
  auto S = [](const char* t) { return parse_set(t); };
  auto R = [](const char* t) { return parse_relation(t); };
  ParseOptions one;
  one.in_shape = Shape::flat(1);
  const IntSet none = parse_set("{ }", one);

  SUBCASE("set algebra") {
    const IntSet a = S("{ [0]; [1] }");
    CHECK(intersect(a, a) == a);
    CHECK(intersect(a, none).empty());
    CHECK(subtract(a, S("{ [1] }")) == S("{ [0] }"));
    CHECK(subtract(a, a).empty());
    CHECK(subtract(a, none) == a);
  }
  SUBCASE("compose applies the right operand first") {
    CHECK(compose(R("{ [1] -> [5] }"), R("{ [0] -> [1] }")) == R("{ [0] -> [5] }"));
    CHECK(compose(R("{ [1] -> [5] }"), R("{ [0] -> [2] }")).empty());
    const IntRelation r = R("{ [x] -> [x + 2] : 0 <= x < 4 }");
    CHECK(compose(identity(range(r)), r) == r);
  }
  SUBCASE("inverse") {
    CHECK(inverse(R("{ [1, 2] -> [3] }")) == R("{ [3] -> [1, 2] }"));
    ParseOptions o;
    o.in_shape = Shape::flat(1);
    o.out_shape = Shape::flat(2);
    CHECK(inverse(parse_relation("{ }", o)).empty());
  }
  SUBCASE("cardinality") {
    CHECK(cardinality(S("{ [x, y] : 0 <= x < 4 and 0 <= y < 4 }")) == 16);
    CHECK(cardinality(none) == 0);
  }
  SUBCASE("domain, range, apply") {
    CHECK(domain(R("{ [0] -> [1] }")) == S("{ [0] }"));
    CHECK(apply(R("{ [0] -> [1]; [0] -> [2] }"), S("{ [0] }")) == S("{ [1]; [2] }"));
    ParseOptions o;
    o.in_shape = Shape::flat(1);
    o.out_shape = Shape::flat(1);
    CHECK(range(parse_relation("{ }", o)).empty());
  }
  SUBCASE("wrap and unwrap") {
    const IntRelation r = R("{ [0] -> [1] }");
    CHECK(wrap(r) == S("{ [[0] -> [1]] }"));
    CHECK(unwrap(wrap(r)) == r);
    ParseOptions o;
    o.in_shape = Shape::flat(1);
    o.out_shape = Shape::flat(1);
    const IntSet w = wrap(parse_relation("{ }", o));
    CHECK(w.empty());
    CHECK(w.shape().is_pair());
    CHECK_THROWS_AS(unwrap(S("{ [0, 1] }")), StructuralError);
  }
  SUBCASE("lexicographic order") {
    CHECK(lex_closest_pred(S("{ [0]; [1]; [2] }")) == R("{ [1] -> [0]; [2] -> [1] }"));
    CHECK(lex_closest_pred(S("{ [0, 1]; [1, 0] }")) == R("{ [1, 0] -> [0, 1] }"));
    CHECK(lex_lt(S("{ [0]; [1] }")) == R("{ [0] -> [1] }"));
    CHECK(lex_closest_pred(none).empty());
  }
}

TEST_CASE("range-factor filtering and projection") {
  // a -> [[u] -> [v]]
  IntRelation::Builder b(Shape::flat(1), Shape::pair(Shape::flat(1), Shape::flat(1)));
  b.add(std::vector<Value>{0}, std::vector<Value>{10, 1});
  b.add(std::vector<Value>{0}, std::vector<Value>{11, 2});
  b.add(std::vector<Value>{1}, std::vector<Value>{10, 1});
  const IntRelation p = std::move(b).build();
  const IntRelation keep = parse_relation("{ [0] -> [2]; [1] -> [1] }");
  const IntRelation f = intersect_range_factor_range(p, keep);
  CHECK(cardinality(f) == 2);
  CHECK(range_factor_range(f) == keep);

  const std::vector<std::size_t> first{0};
  CHECK(project_range(p, first) == parse_relation("{ [0] -> [10]; [0] -> [11]; [1] -> [10] }"));
}

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


#include "properties.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "dataplace/analysis.hpp"
#include "dataplace/intrel.hpp"
#include "dataplace/presets.hpp"

namespace dataplace::props {

namespace {

IntRelation random_rel(std::mt19937& rng, std::size_t a, std::size_t b, Value range, std::size_t n) {
  std::uniform_int_distribution<Value> v(-range, range);
  IntRelation::Builder bld(Shape::flat(a), Shape::flat(b));
  std::vector<Value> x(a), y(b);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& e : x) e = v(rng);
    for (auto& e : y) e = v(rng);
    bld.add(x, y);
  }
  return std::move(bld).build();
}

IntSet random_set(std::mt19937& rng, std::size_t a, Value range, std::size_t n) {
  std::uniform_int_distribution<Value> v(-range, range);
  IntSet::Builder bld(Shape::flat(a));
  std::vector<Value> x(a);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& e : x) e = v(rng);
    bld.add(x);
  }
  return std::move(bld).build();
}

}  // namespace

Outcome compose_associative(int cases, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Outcome o;
  for (int t = 0; t < cases; ++t) {
    const std::size_t a = 1 + t % 2, b = 1 + (t / 2) % 2, c = 1 + (t / 4) % 2, d = 1 + (t / 8) % 2;
    const IntRelation h = random_rel(rng, a, b, 2, rng() % 30);
    const IntRelation g = random_rel(rng, b, c, 2, rng() % 30);
    const IntRelation f = random_rel(rng, c, d, 2, rng() % 30);
    ++o.cases;
    o.held += compose(f, compose(g, h)) == compose(compose(f, g), h);
  }
  return o;
}

Outcome inverse_involution(int cases, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Outcome o;
  for (int t = 0; t < cases; ++t) {
    const IntRelation r = random_rel(rng, 1 + t % 3, 1 + (t / 3) % 3, 3, rng() % 40);
    const IntRelation inv = inverse(r);
    ++o.cases;
    o.held += inverse(inv) == r && cardinality(inv) == cardinality(r) && inv.in_arity() == r.out_arity();
  }
  return o;
}

Outcome inclusion_exclusion(int cases, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Outcome o;
  for (int t = 0; t < cases; ++t) {
    const std::size_t k = 1 + t % 3;
    ++o.cases;
    if (t % 2) {
      const IntSet a = random_set(rng, k, 2, rng() % 40), b = random_set(rng, k, 2, rng() % 40);
      o.held += cardinality(unite(a, b)) + cardinality(intersect(a, b)) == cardinality(a) + cardinality(b);
    } else {
      const IntRelation a = random_rel(rng, k, 1, 2, rng() % 40), b = random_rel(rng, k, 1, 2, rng() % 40);
      o.held += cardinality(unite(a, b)) + cardinality(intersect(a, b)) == cardinality(a) + cardinality(b);
    }
  }
  return o;
}

Outcome pred_size_law(int cases, std::uint32_t seed) {
  std::mt19937 rng(seed);
  Outcome o;
  for (int t = 0; t < cases; ++t) {
    const IntSet s = random_set(rng, 1 + t % 4, 3, 1 + rng() % 30);
    const IntRelation pred = lex_closest_pred(s);
    const IntRelation later = inverse(lex_lt(s));  // x -> every earlier y
    ++o.cases;
    o.held += cardinality(pred) + 1 == cardinality(s) && intersect(pred, later) == pred;
  }
  return o;
}

}  // namespace dataplace::props

namespace dataplace::props {

namespace {

struct Design {
  ArchSpec arch;
  Workload w;
  CostReport r;
};

const std::vector<Design>& small_designs() {
  static const std::vector<Design> d = [] {
    std::vector<Design> out;
    for (const auto& b : bench_suite("small")) {
      ArchSpec a = load_arch(b.arch);
      Workload w = load_workload(b.workload);
      const ScheduleTree t = build_schedule_tree(load_mapping(b.mapping), a, w);
      CostReport r = analyze(t, a);
      out.push_back({std::move(a), std::move(w), std::move(r)});
    }
    return out;
  }();
  return d;
}

void randomize(std::mt19937& rng, ArchSpec& a) {
  std::uniform_real_distribution<double> e(0.0, 10.0), pos(0.5, 64.0), f(1e6, 1e9);
  HardwareParams& p = a.params;
  p.e_act = e(rng);
  p.e_idle = e(rng);
  p.e_multi = e(rng);
  p.e_inter = e(rng);
  p.lat_avg = pos(rng);
  p.bus_width = pos(rng);
  p.f_accel = f(rng);
  p.f_dma = f(rng);
  p.dma_init = e(rng) * 10;
  p.dma_cycles_per_byte = e(rng);
  for (auto& l : a.levels) {
    l.read_energy = e(rng);
    l.write_energy = e(rng);
    for (auto& sb : l.per_operand) {
      sb.read_energy = e(rng);
      sb.write_energy = e(rng);
    }
  }
}

// Pointers to every energy coefficient the model reads.
std::vector<double*> coefficients(ArchSpec& a) {
  std::vector<double*> c{&a.params.e_act, &a.params.e_idle, &a.params.e_multi, &a.params.e_inter};
  for (auto& l : a.levels) {
    c.push_back(&l.read_energy);
    c.push_back(&l.write_energy);
    for (auto& sb : l.per_operand) {
      c.push_back(&sb.read_energy);
      c.push_back(&sb.write_energy);
    }
  }
  return c;
}

bool one_case(std::mt19937& rng, const Design& d) {
  ArchSpec a = d.arch;
  randomize(rng, a);
  const CostReport& r = d.r;
  const TimeBreakdown t = exec_time(r.volumes, a, d.w, r.leaf_steps);
  if (t.total != std::max(t.comp, t.comm) || t.comm != std::max(t.dram, t.on_chip)) return false;

  const EnergyBreakdown base = energy(r.volumes, a, d.w, r.total_mac, r.util);
  if (base.total() < 0) return false;

  ArchSpec flat = a;
  flat.params.e_idle = flat.params.e_act;
  const double m1 = energy(r.volumes, flat, d.w, r.total_mac, r.util).mac;
  const double m2 = energy(r.volumes, flat, d.w, r.total_mac, Rational{1, 7}).mac;
  if (m1 != m2) return false;

  ArchSpec bumped = a;
  std::vector<double*> c = coefficients(bumped);
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  *c[pick(rng)] += std::uniform_real_distribution<double>(0.0, 5.0)(rng);
  if (energy(r.volumes, bumped, d.w, r.total_mac, r.util).total() < base.total() - 1e-9) return false;

  for (const auto& e : r.volumes.entries) {
    if (e.v.tv + e.v.sv + e.v.tsv + e.v.uv != e.v.total) return false;
  }
  return true;
}

}  // namespace

Outcome cost_identities(int cases, std::uint32_t seed) {
  std::mt19937 rng(seed);
  const auto& designs = small_designs();
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    ++o.cases;
    if (one_case(rng, designs[static_cast<std::size_t>(i) % designs.size()])) ++o.held;
  }
  return o;
}

}  // namespace dataplace::props

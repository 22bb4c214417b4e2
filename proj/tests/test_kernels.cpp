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
#include <vector>

#include "dataplace/kernels/kernels.hpp"

using namespace dataplace;

TEST_CASE("affine_eval scalar and avx2 agree") {
  if (!kernels::isa_available(kernels::Isa::kAvx2)) return;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int32_t> val(-1000, 1000);
  std::uniform_int_distribution<int32_t> co(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t in_dims = 1 + trial % 5, out_dims = 1 + trial % 4, n = trial * 3 % 67;
    std::vector<std::vector<int32_t>> in(in_dims, std::vector<int32_t>(n));
    for (auto& c : in) for (auto& v : c) v = val(rng);
    std::vector<int32_t> coef(in_dims * out_dims), off(out_dims);
    for (auto& v : coef) v = co(rng);
    for (auto& v : off) v = val(rng);
    std::vector<const int32_t*> inp;
    for (auto& c : in) inp.push_back(c.data());
    std::vector<std::vector<int32_t>> a(out_dims, std::vector<int32_t>(n)), b = a;
    std::vector<int32_t*> ap, bp;
    for (auto& c : a) ap.push_back(c.data());
    for (auto& c : b) bp.push_back(c.data());
    kernels::scalar::affine_eval(inp.data(), in_dims, n, coef.data(), off.data(), out_dims, ap.data());
    kernels::avx2::affine_eval(inp.data(), in_dims, n, coef.data(), off.data(), out_dims, bp.data());
    CHECK(a == b);
  }
}

TEST_CASE("lex_compare scalar and avx2 agree") {
  if (!kernels::isa_available(kernels::Isa::kAvx2)) return;
  std::mt19937 rng(11);
  std::uniform_int_distribution<int32_t> val(-2, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    const size_t w = trial % 40;
    std::vector<int32_t> x(w), y(w);
    for (size_t i = 0; i < w; ++i) x[i] = y[i] = val(rng);
    if (w && trial % 3) y[rng() % w] = val(rng);
    const int s = kernels::scalar::lex_compare(x.data(), y.data(), w);
    const int v = kernels::avx2::lex_compare(x.data(), y.data(), w);
    CHECK((s > 0) == (v > 0));
    CHECK((s < 0) == (v < 0));
  }
}

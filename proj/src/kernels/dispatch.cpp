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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "dataplace/kernels/kernels.hpp"

namespace dataplace::kernels {
namespace {

struct Table {
  Isa isa;
  AffineEvalFn affine_eval;
  LexCompareFn lex_compare;
};

constexpr Table kScalarTable{Isa::kScalar, &scalar::affine_eval, &scalar::lex_compare};
#if defined(DATAPLACE_HAVE_AVX2)
constexpr Table kAvx2Table{Isa::kAvx2, &avx2::affine_eval, &avx2::lex_compare};
#endif

const Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return &kScalarTable;
    case Isa::kAvx2:
#if defined(DATAPLACE_HAVE_AVX2)
      return &kAvx2Table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const Table* detect() {
  if (const char* env = std::getenv("DATAPLACE_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &kScalarTable;
    if (want == "avx2" && isa_available(Isa::kAvx2)) return table_for(Isa::kAvx2);
  }
  if (isa_available(Isa::kAvx2)) return table_for(Isa::kAvx2);
  return &kScalarTable;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{detect()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
#if defined(DATAPLACE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  if (isa == Isa::kAvx2) return __builtin_cpu_supports("avx2");
#endif
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed)->isa; }

void force_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw std::invalid_argument("ISA not available: " + std::string(isa_name(isa)));
  }
  current().store(table_for(isa), std::memory_order_relaxed);
}

void affine_eval(const std::int32_t* const* in_cols, std::size_t in_dims,
                 std::size_t n, const std::int32_t* coef,
                 const std::int32_t* offset, std::size_t out_dims,
                 std::int32_t* const* out_cols) {
  current().load(std::memory_order_relaxed)
      ->affine_eval(in_cols, in_dims, n, coef, offset, out_dims, out_cols);
}

int lex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t width) {
  return current().load(std::memory_order_relaxed)->lex_compare(a, b, width);
}

}  // namespace dataplace::kernels

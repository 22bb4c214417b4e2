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
#include <string_view>

// Data-parallel inner loops used by the integer-set engine and the footprint
// generators. Every kernel has a scalar reference implementation; vector
// variants must produce bit-identical results and are selected once at
// startup from the host CPU features (overridable with DATAPLACE_SIMD).

namespace dataplace::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

// Affine evaluation over a structure-of-arrays batch:
//   out_cols[r][i] = offset[r] + sum_c coef[r * in_dims + c] * in_cols[c][i]
// for r < out_dims, i < n. Arithmetic is two's-complement wrapping int32.
using AffineEvalFn = void (*)(const std::int32_t* const* in_cols,
                              std::size_t in_dims, std::size_t n,
                              const std::int32_t* coef,
                              const std::int32_t* offset,
                              std::size_t out_dims, std::int32_t* const* out_cols);

// Three-way lexicographic comparison of two rows of `width` int32 values.
// Returns <0, 0 or >0.
using LexCompareFn = int (*)(const std::int32_t* a, const std::int32_t* b,
                             std::size_t width);

namespace scalar {
void affine_eval(const std::int32_t* const* in_cols, std::size_t in_dims,
                 std::size_t n, const std::int32_t* coef,
                 const std::int32_t* offset, std::size_t out_dims,
                 std::int32_t* const* out_cols);
int lex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t width);
}  // namespace scalar

#if defined(DATAPLACE_HAVE_AVX2)
namespace avx2 {
void affine_eval(const std::int32_t* const* in_cols, std::size_t in_dims,
                 std::size_t n, const std::int32_t* coef,
                 const std::int32_t* offset, std::size_t out_dims,
                 std::int32_t* const* out_cols);
int lex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t width);
}  // namespace avx2
#endif

/// True when `isa` was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// The ISA the dispatched entry points currently use.
Isa active_isa();

/// Re-points the dispatched entry points. Throws if `isa` is unavailable.
void force_isa(Isa isa);

// Dispatched entry points.
void affine_eval(const std::int32_t* const* in_cols, std::size_t in_dims,
                 std::size_t n, const std::int32_t* coef,
                 const std::int32_t* offset, std::size_t out_dims,
                 std::int32_t* const* out_cols);
int lex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t width);

}  // namespace dataplace::kernels

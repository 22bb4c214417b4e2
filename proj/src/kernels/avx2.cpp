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

#include <immintrin.h>

#include "dataplace/kernels/kernels.hpp"

namespace dataplace::kernels::avx2 {

void affine_eval(const std::int32_t* const* in_cols, std::size_t in_dims,
                 std::size_t n, const std::int32_t* coef,
                 const std::int32_t* offset, std::size_t out_dims,
                 std::int32_t* const* out_cols) {
  const std::size_t vec_end = n & ~std::size_t{7};
  for (std::size_t r = 0; r < out_dims; ++r) {
    const std::int32_t* row = coef + r * in_dims;
    std::int32_t* out = out_cols[r];
    const __m256i base = _mm256_set1_epi32(offset[r]);
    std::size_t i = 0;
    for (; i < vec_end; i += 8) {
      __m256i acc = base;
      for (std::size_t c = 0; c < in_dims; ++c) {
        const std::int32_t k = row[c];
        if (k == 0) continue;
        const __m256i v =
            _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in_cols[c] + i));
        acc = k == 1 ? _mm256_add_epi32(acc, v)
                     : _mm256_add_epi32(acc, _mm256_mullo_epi32(v, _mm256_set1_epi32(k)));
      }
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
    }
    for (; i < n; ++i) {
      std::uint32_t acc = static_cast<std::uint32_t>(offset[r]);
      for (std::size_t c = 0; c < in_dims; ++c) {
        acc += static_cast<std::uint32_t>(row[c]) *
               static_cast<std::uint32_t>(in_cols[c][i]);
      }
      out[i] = static_cast<std::int32_t>(acc);
    }
  }
}

int lex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t width) {
  std::size_t i = 0;
  for (; i + 8 <= width; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const unsigned eq = static_cast<unsigned>(
        _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb))));
    if (eq != 0xFFu) {
      const std::size_t j = i + static_cast<std::size_t>(__builtin_ctz(~eq));
      return a[j] < b[j] ? -1 : 1;
    }
  }
  for (; i < width; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace dataplace::kernels::avx2

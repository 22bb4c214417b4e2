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

#include "dataplace/kernels/kernels.hpp"

namespace dataplace::kernels::scalar {

void affine_eval(const std::int32_t* const* in_cols, std::size_t in_dims,
                 std::size_t n, const std::int32_t* coef,
                 const std::int32_t* offset, std::size_t out_dims,
                 std::int32_t* const* out_cols) {
  for (std::size_t r = 0; r < out_dims; ++r) {
    const std::int32_t* row = coef + r * in_dims;
    std::int32_t* out = out_cols[r];
    const auto base = static_cast<std::uint32_t>(offset[r]);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t acc = base;
      for (std::size_t c = 0; c < in_dims; ++c) {
        acc += static_cast<std::uint32_t>(row[c]) *
               static_cast<std::uint32_t>(in_cols[c][i]);
      }
      out[i] = static_cast<std::int32_t>(acc);
    }
  }
}

int lex_compare(const std::int32_t* a, const std::int32_t* b, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace dataplace::kernels::scalar

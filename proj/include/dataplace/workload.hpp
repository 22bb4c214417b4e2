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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dataplace/intrel.hpp"

namespace dataplace {

struct DimSpec {
  std::string name;
  std::int64_t extent = 1;
};

enum class AccessKind { kRead, kWrite };

/// index = coef * iteration + offset, coef is row-major [index_dims x loop_dims].
struct AccessFunction {
  std::string array;
  AccessKind kind = AccessKind::kRead;
  std::vector<std::int32_t> coef;
  std::vector<std::int32_t> offset;

  std::size_t index_arity() const { return offset.size(); }
};

class Workload {
 public:
  Workload() = default;
  Workload(std::string name, std::vector<DimSpec> dims, std::vector<AccessFunction> accesses,
           int element_bits = 16);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<DimSpec>& dims() const { return dims_; }
  const std::vector<AccessFunction>& accesses() const { return accesses_; }
  int element_bits() const { return element_bits_; }
  std::size_t depth() const { return dims_.size(); }
  std::uint64_t instances() const;

  /// Index of a loop dim; throws ConfigError if unknown.
  std::size_t dim_index(std::string_view name) const;
  bool has_dim(std::string_view name) const;

  /// Distinct array names in order of first appearance; the position is the array id.
  const std::vector<std::string>& arrays() const { return arrays_; }
  int array_id(std::string_view array) const;
  /// The access map used for placement (every access of one array shares it).
  const AccessFunction& access(std::string_view array) const;
  const std::string& written_array() const;
  /// Loop dims that do not index the written array.
  std::vector<std::size_t> reduction_dims() const;
  /// Per index position: one past the largest index touched.
  std::vector<std::int64_t> array_extents(std::string_view array) const;

  /// {op, dims, element_bits} document, keys sorted.
  std::string to_json() const;

  bool operator==(const Workload& other) const { return to_json() == other.to_json(); }

 private:
  std::string name_;
  std::string op_;
  std::vector<std::int64_t> op_args_;
  std::vector<DimSpec> dims_;
  std::vector<AccessFunction> accesses_;
  std::vector<std::string> arrays_;
  int element_bits_ = 16;

  friend Workload gemm(std::int64_t, std::int64_t, std::int64_t, int);
  friend Workload conv2d(std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::int64_t,
                         std::int64_t, std::int64_t, std::int64_t, int);
};

/// C[i,j] += A[i,k] * B[k,j].
Workload gemm(std::int64_t I, std::int64_t J, std::int64_t K, int element_bits = 16);

/// O[n,k,oy,ox] += I[n,c,stride*oy+s,stride*ox+r] * W[k,c,s,r].
Workload conv2d(std::int64_t N, std::int64_t K, std::int64_t C, std::int64_t Oy, std::int64_t Ox,
                std::int64_t R, std::int64_t S, std::int64_t stride, int element_bits = 16);

/// gemm-256, alexnet-conv2, mobilenetv2-2, resnet50-1 (and small variants used in tests).
Workload builtin_workload(std::string_view name);
std::vector<std::string> builtin_workload_names();

Workload parse_workload(std::string_view text, const std::string& source = "");

IntSet iteration_domain(const Workload& w);
/// instance -> [array_id, index..., 0 padding].
IntRelation read_relation(const Workload& w);
IntRelation write_relation(const Workload& w);
/// instance -> index for one array.
IntRelation access_relation(const Workload& w, std::string_view array);

/// Distinct indices of `array` touched by the box [0, extents) of iterations.
IntSet footprint(const Workload& w, std::string_view array, const std::vector<std::int64_t>& extents);
/// cardinality(footprint(...)) without materializing the product.
std::uint64_t footprint_size(const Workload& w, std::string_view array,
                             const std::vector<std::int64_t>& extents);

}  // namespace dataplace

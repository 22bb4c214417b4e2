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

#include <string>
#include <string_view>
#include <vector>

#include "dataplace/analysis.hpp"

namespace dataplace {

inline constexpr const char* kVersion = "0.1.0";

std::string sha256_hex(std::string_view data);

struct InputDigest {
  std::string role;    // arch | mapping | workload
  std::string source;  // path or builtin name
  std::string sha256;
};

/// Key-sorted JSON. Cycles and counts are integers (cycles rounded up),
/// energies and ratios carry six decimals. Ends with a newline.
std::string report_json(const CostReport& r, const std::vector<InputDigest>& inputs);

/// level,array,TV,SV,TSV,UV,Total,reqs
std::string volumes_csv(const CostReport& r);
/// component,level,energy_pj
std::string energy_csv(const CostReport& r);

}  // namespace dataplace

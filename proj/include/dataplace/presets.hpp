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

#include "dataplace/arch.hpp"
#include "dataplace/mapping.hpp"
#include "dataplace/workload.hpp"

namespace dataplace {

/// $DATAPLACE_CONFIG_DIR, else the configs/ directory of the source tree.
std::string config_dir();
/// configs/<kind>/<name>.json
std::string config_path(std::string_view kind, std::string_view name);

/// Whole file; ConfigError if it cannot be read.
std::string read_file(const std::string& path);

ArchSpec load_arch(const std::string& path);
Mapping load_mapping(const std::string& path);
/// A builtin name, or a path to a workload document.
Workload load_workload(const std::string& name_or_path);

struct Benchmark {
  std::string name;
  std::string arch;      // file paths
  std::string mapping;
  std::string workload;  // builtin name or path
};

/// gemm, conv, all (the six full-size designs), small (trace-sized variants).
std::vector<Benchmark> bench_suite(std::string_view suite);
std::vector<std::string> bench_suite_names();

}  // namespace dataplace

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


#include "dataplace/presets.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dataplace/error.hpp"

namespace dataplace {

std::string config_dir() {
  if (const char* env = std::getenv("DATAPLACE_CONFIG_DIR"); env && *env) return env;
  return DATAPLACE_CONFIG_DIR;
}

std::string config_path(std::string_view kind, std::string_view name) {
  return config_dir() + "/" + std::string(kind) + "/" + std::string(name) + ".json";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ArchSpec load_arch(const std::string& path) { return parse_arch(read_file(path), path); }

Mapping load_mapping(const std::string& path) { return parse_mapping(read_file(path), path); }

Workload load_workload(const std::string& name_or_path) {
  for (const auto& n : builtin_workload_names()) {
    if (n == name_or_path) return builtin_workload(n);
  }
  if (!std::filesystem::exists(name_or_path)) {
    std::string known;
    for (const auto& n : builtin_workload_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown workload '" + name_or_path + "' (builtins: " + known + ")");
  }
  return parse_workload(read_file(name_or_path), name_or_path);
}

namespace {

Benchmark preset(std::string name, const char* arch, const char* mapping, const char* workload) {
  return {std::move(name), config_path("arch", arch), config_path("mapping", mapping), workload};
}

std::vector<Benchmark> gemm_suite() {
  return {preset("os-ij-gemm", "os_8x8", "os_gemm256", "gemm-256"),
          preset("ws-kj-gemm", "ws_kj_8x8", "ws_gemm256", "gemm-256"),
          preset("vector-j-gemm", "vector_64", "vector_gemm256", "gemm-256")};
}

std::vector<Benchmark> conv_suite() {
  return {preset("rs-alexnet-conv2", "eyeriss", "rs_alexnet", "alexnet-conv2"),
          preset("ws-kc-mobilenetv2-2", "ws_kc_8x8", "ws_kc_mobilenet", "mobilenetv2-2"),
          preset("shidiannao-resnet50-1", "shidiannao_8x8", "shidiannao_resnet", "resnet50-1")};
}

std::vector<Benchmark> small_suite() {
  return {preset("os-gemm8-4x4", "os_4x4", "os_gemm8_4x4", "gemm-8"),
          preset("os-gemm8-2x2", "os_2x2", "os_gemm8_2x2", "gemm-8"),
          preset("ws-gemm8-4x4", "ws_kj_4x4", "ws_gemm8_4x4", "gemm-8"),
          preset("ws-gemm8-2x2", "ws_kj_2x2", "ws_gemm8_2x2", "gemm-8"),
          preset("vector-gemm8-16", "vector_16", "vector_gemm8_16", "gemm-8"),
          preset("vector-gemm8-4", "vector_4", "vector_gemm8_4", "gemm-8"),
          preset("rs-conv-small-4x4", "rs_4x4", "rs_conv_small", "conv-small"),
          preset("sd-conv-small-4x4", "shidiannao_4x4", "sd_conv_small_4x4", "conv-small"),
          preset("sd-conv-small-2x2", "shidiannao_2x2", "sd_conv_small_2x2", "conv-small")};
}

}  // namespace

std::vector<std::string> bench_suite_names() { return {"all", "conv", "gemm", "small"}; }

std::vector<Benchmark> bench_suite(std::string_view suite) {
  if (suite == "gemm") return gemm_suite();
  if (suite == "conv") return conv_suite();
  if (suite == "small") return small_suite();
  if (suite == "all") {
    auto all = gemm_suite();
    for (auto& b : conv_suite()) all.push_back(std::move(b));
    return all;
  }
  std::string known;
  for (const auto& n : bench_suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigError("unknown suite '" + std::string(suite) + "' (available: " + known + ")");
}

}  // namespace dataplace

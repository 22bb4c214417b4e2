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


#include "dataplace/report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "dataplace/error.hpp"

namespace dataplace {

using Json = nlohmann::json;

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

namespace {

std::uint64_t cycles(double c) { return static_cast<std::uint64_t>(std::ceil(c - 1e-9)); }

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// nlohmann keeps object keys sorted; only the float format needs care.
void emit(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad + "  " + Json(it.key()).dump() + ": ";
        emit(it.value(), indent + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad + "  ";
        emit(j[i], indent + 1, out);
        out += i + 1 < j.size() ? ",\n" : "\n";
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += fixed6(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string report_json(const CostReport& r, const std::vector<InputDigest>& inputs) {
  Json j;
  j["workload"] = r.workload;
  j["arch"] = r.arch;
  j["mapping"] = r.mapping;
  j["total_mac"] = r.total_mac;
  j["leaf_steps"] = r.leaf_steps;
  j["pe_size"] = r.pe_size;
  j["act_pe_avg"] = r.act_pe;
  j["util"] = {{"num", r.util.num}, {"den", r.util.den}, {"value", r.util.value()}};

  Json dma = Json::object();
  for (const auto& [a, c] : r.time.dma) dma[a] = cycles(c);
  j["cycles"] = {{"comp", cycles(r.time.comp)},   {"dram", cycles(r.time.dram)},
                 {"on_chip", cycles(r.time.on_chip)}, {"comm", cycles(r.time.comm)},
                 {"total", cycles(r.time.total)}, {"dma", dma}};

  Json on_chip = Json::object();
  for (const auto& [l, e] : r.energy.on_chip) on_chip[l] = e;
  j["energy_pj"] = {{"mac", r.energy.mac},         {"on_chip", on_chip},
                    {"dram", r.energy.dram},       {"connect", r.energy.connect},
                    {"total", r.energy.total()}};

  Json vols = Json::array();
  for (const auto& e : r.volumes.entries) {
    vols.push_back({{"level", e.level},  {"array", e.array}, {"TV", e.v.tv},     {"SV", e.v.sv},
                    {"TSV", e.v.tsv},    {"UV", e.v.uv},     {"Total", e.v.total}, {"reqs", e.reqs}});
  }
  j["volumes"] = vols;

  Json in = Json::array();
  for (const auto& d : inputs) in.push_back({{"role", d.role}, {"source", d.source}, {"sha256", d.sha256}});
  j["provenance"] = {
      {"tool", "dataplace"},
      {"version", kVersion},
      {"inputs", in},
      {"classification", "each child placement is counted once with priority TV > TSV > SV"},
      {"partition", "UV = Total - TV - SV - TSV"},
      {"connect_energy", "e_multi * SV + e_inter * TSV"},
  };

  std::string out;
  emit(j, 0, out);
  return out + "\n";
}

std::string volumes_csv(const CostReport& r) {
  std::string out = "level,array,TV,SV,TSV,UV,Total,reqs\n";
  for (const auto& e : r.volumes.entries) {
    out += e.level + "," + e.array + "," + std::to_string(e.v.tv) + "," + std::to_string(e.v.sv) + "," +
           std::to_string(e.v.tsv) + "," + std::to_string(e.v.uv) + "," + std::to_string(e.v.total) + "," +
           std::to_string(e.reqs) + "\n";
  }
  return out;
}

std::string energy_csv(const CostReport& r) {
  std::string out = "component,level,energy_pj\n";
  out += "mac,," + fixed6(r.energy.mac) + "\n";
  for (const auto& [l, e] : r.energy.on_chip) out += "on_chip," + l + "," + fixed6(e) + "\n";
  out += "dram,," + fixed6(r.energy.dram) + "\n";
  out += "connect,," + fixed6(r.energy.connect) + "\n";
  out += "total,," + fixed6(r.energy.total()) + "\n";
  return out;
}

}  // namespace dataplace

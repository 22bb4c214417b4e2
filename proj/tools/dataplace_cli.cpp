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


// dataplace: legality check, reuse analysis, trace cross-check and benchmark
// runs from JSON configs.
//
// Exit codes: 0 ok, 2 legality violation, 3 parse or config error, 4 oracle
// mismatch, 5 enumeration budget exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "dataplace/analysis.hpp"
#include "dataplace/dpr.hpp"
#include "dataplace/error.hpp"
#include "dataplace/intrel.hpp"
#include "dataplace/oracle.hpp"
#include "dataplace/presets.hpp"
#include "dataplace/report.hpp"

using namespace dataplace;

namespace {

enum Exit { kOk = 0, kIllegal = 2, kConfig = 3, kMismatch = 4, kBudget = 5 };

struct Inputs {
  std::string arch, mapping, workload;
};

struct Loaded {
  ArchSpec arch;
  Mapping mapping;
  Workload workload;
  std::vector<InputDigest> digests;
};

Loaded load(const Inputs& in) {
  Loaded l{load_arch(in.arch), load_mapping(in.mapping), load_workload(in.workload), {}};
  l.digests.push_back({"arch", in.arch, sha256_hex(read_file(in.arch))});
  l.digests.push_back({"mapping", in.mapping, sha256_hex(read_file(in.mapping))});
  const bool file = std::filesystem::exists(in.workload);
  l.digests.push_back({"workload", in.workload,
                       sha256_hex(file ? read_file(in.workload) : l.workload.to_json())});
  return l;
}

// Written next to the target first so readers never see a partial file.
void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + tmp);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

int report_violations(const std::vector<Violation>& v) {
  for (const auto& x : v) std::cerr << "violation: " << x.to_string() << "\n";
  return v.empty() ? kOk : kIllegal;
}

struct AnalyzeArgs {
  Inputs in;
  std::string report, csv;
  bool check_only = false, with_oracle = false;
  int verbose = 0;
};

int run_analyze(const AnalyzeArgs& a) {
  Loaded l = load(a.in);
  if (int rc = report_violations(check_legality(l.mapping, l.arch, l.workload)); rc || a.check_only) {
    if (!rc) std::cout << "legal\n";
    return rc;
  }
  const ScheduleTree tree = build_schedule_tree(l.mapping, l.arch, l.workload);
  if (a.verbose) std::cerr << tree.render();
  CostReport r = analyze(tree, l.arch);
  r.mapping = l.mapping.name;
  const std::string json = report_json(r, l.digests);
  std::ostream& status = a.report.empty() ? std::cerr : std::cout;
  if (a.report.empty()) {
    std::cout << json;
  } else {
    write_atomic(a.report, json);
  }
  if (!a.csv.empty()) {
    write_atomic(a.csv + "_volumes.csv", volumes_csv(r));
    write_atomic(a.csv + "_energy.csv", energy_csv(r));
  }
  if (a.with_oracle) {
    const OracleResult o = simulate(tree, l.arch);
    const auto d = diff(r.volumes, o.volumes);
    for (const auto& x : d) {
      status << "mismatch: " << x.level << " " << x.array << " " << x.field << " analysis=" << x.a
             << " oracle=" << x.b << "\n";
    }
    const bool util_ok = o.utilization(l.arch.pe_size()) == r.util;
    if (!util_ok) status << "mismatch: utilization\n";
    status << "volumes: " << (d.empty() && util_ok ? "MATCH" : "MISMATCH") << "\n";
    if (!d.empty() || !util_ok) return kMismatch;
  }
  return kOk;
}

int run_bench(const std::string& suite, const std::string& out_dir) {
  const auto entries = bench_suite(suite);
  std::filesystem::create_directories(out_dir);
  for (const auto& b : entries) {
    Loaded l = load({b.arch, b.mapping, b.workload});
    if (int rc = report_violations(check_legality(l.mapping, l.arch, l.workload))) return rc;
    const ScheduleTree tree = build_schedule_tree(l.mapping, l.arch, l.workload);
    CostReport r = analyze(tree, l.arch);
    r.mapping = l.mapping.name;
    const std::string stem = out_dir + "/" + b.name;
    write_atomic(stem + ".json", report_json(r, l.digests));
    write_atomic(stem + "_volumes.csv", volumes_csv(r));
    write_atomic(stem + "_energy.csv", energy_csv(r));
    std::printf("%s: util %lld/%lld cycles %.0f energy %.6f pJ\n", b.name.c_str(),
                static_cast<long long>(r.util.num), static_cast<long long>(r.util.den),
                std::ceil(r.time.total), r.energy.total());
  }
  return kOk;
}

int run_dump(const Inputs& in, const std::string& what, const std::string& level,
             const std::string& array) {
  Loaded l = load(in);
  if (int rc = report_violations(check_legality(l.mapping, l.arch, l.workload))) return rc;
  const ScheduleTree tree = build_schedule_tree(l.mapping, l.arch, l.workload);
  const std::size_t li = l.arch.level_index(level);
  if (what == "tree") {
    std::cout << tree.render();
  } else if (what == "st") {
    std::cout << to_string(space_time_map(tree, li)) << "\n";
  } else if (what == "theta") {
    std::cout << to_string(theta(tree, array, li)) << "\n";
  } else {
    if (li == 0) throw ConfigError("Theta needs a child level (not the root)");
    std::cout << to_string(inter_level(tree, l.arch, array, li)) << "\n";
  }
  return kOk;
}

void apply_budget_env() {
  const char* env = std::getenv("DATAPLACE_BUDGET");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw ConfigError(std::string("DATAPLACE_BUDGET must be a positive integer, got '") + env + "'");
  set_enumeration_budget(static_cast<std::size_t>(v));
}

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--arch", in.arch, "architecture config (JSON)")->required();
  cmd->add_option("--mapping", in.mapping, "mapping config (JSON)")->required();
  cmd->add_option("--workload", in.workload, "builtin workload name or workload config (JSON)")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dataplace: data placement and reuse analysis for accelerator mappings"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  AnalyzeArgs an;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "check legality and write a cost report");
  add_inputs(analyze_cmd, an.in);
  analyze_cmd->add_option("--report", an.report, "write the JSON report here (default: stdout)");
  analyze_cmd->add_option("--csv", an.csv, "write <prefix>_volumes.csv and <prefix>_energy.csv");
  analyze_cmd->add_flag("--check-only", an.check_only, "stop after the legality check");
  analyze_cmd->add_flag("--with-oracle", an.with_oracle, "cross-check volumes against the trace simulator");
  analyze_cmd->add_flag("-v,--verbose", an.verbose, "print the schedule tree");

  Inputs check_in;
  CLI::App* check_cmd = app.add_subcommand("check", "legality check only");
  add_inputs(check_cmd, check_in);

  std::string suite, out_dir = "bench_out";
  CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  bench_cmd->add_option("suite", suite, "gemm | conv | all | small")->required();
  bench_cmd->add_option("--out", out_dir, "output directory");

  Inputs dump_in;
  std::string what = "Theta", level, array;
  CLI::App* dump_cmd = app.add_subcommand("dump-dpr", "print a placement relation in brace notation");
  add_inputs(dump_cmd, dump_in);
  dump_cmd->add_option("--what", what, "tree | st | theta | Theta")
      ->check(CLI::IsMember({"tree", "st", "theta", "Theta"}));
  dump_cmd->add_option("--level", level, "memory level name")->required();
  dump_cmd->add_option("--array", array, "array name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    apply_budget_env();
    if (*analyze_cmd) return run_analyze(an);
    if (*check_cmd) {
      AnalyzeArgs c;
      c.in = check_in;
      c.check_only = true;
      return run_analyze(c);
    }
    if (*bench_cmd) return run_bench(suite, out_dir);
    if (*dump_cmd) {
      if (what != "tree" && what != "st" && array.empty()) throw ConfigError("--array is required for " + what);
      return run_dump(dump_in, what, level, array);
    }
  } catch (const LegalityError& e) {
    for (const auto& v : e.violations()) std::cerr << "violation: " << v.to_string() << "\n";
    return kIllegal;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise DATAPLACE_BUDGET)\n";
    return kBudget;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kOk;
}

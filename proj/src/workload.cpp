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
#include "dataplace/workload.hpp"

#include <algorithm>
#include <map>

#include "dataplace/kernels/kernels.hpp"
#include "json_util.hpp"

namespace dataplace {

namespace {

AccessFunction make_access(std::string array, AccessKind kind, std::size_t loops,
                           std::vector<std::vector<std::pair<std::size_t, std::int32_t>>> rows) {
  AccessFunction a;
  a.array = std::move(array);
  a.kind = kind;
  a.coef.assign(rows.size() * loops, 0);
  a.offset.assign(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (auto [dim, k] : rows[r]) a.coef[r * loops + dim] = k;
  }
  return a;
}

void require_positive(std::int64_t v, const char* what) {
  if (v < 1) throw ConfigError(std::string("workload: ") + what + " must be >= 1");
  if (v > (std::int64_t{1} << 30)) throw ConfigError(std::string("workload: ") + what + " too large");
}

// Enumerates the domain in SoA batches and evaluates the affine map.
template <typename Sink>
void for_each_image(const Workload& w, const std::vector<std::int32_t>& coef,
                    const std::vector<std::int32_t>& offset, Sink&& sink) {
  const std::size_t depth = w.depth();
  const std::size_t outs = offset.size();
  constexpr std::size_t kBatch = 4096;
  std::vector<std::vector<std::int32_t>> in(depth, std::vector<std::int32_t>(kBatch));
  std::vector<std::vector<std::int32_t>> out(outs, std::vector<std::int32_t>(kBatch));
  std::vector<const std::int32_t*> in_ptr(depth);
  std::vector<std::int32_t*> out_ptr(outs);
  for (std::size_t d = 0; d < depth; ++d) in_ptr[d] = in[d].data();
  for (std::size_t r = 0; r < outs; ++r) out_ptr[r] = out[r].data();

  std::vector<std::int32_t> it(depth, 0);
  const std::uint64_t total = w.instances();
  std::uint64_t done = 0;
  while (done < total) {
    const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(kBatch, total - done));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < depth; ++d) in[d][i] = it[d];
      for (std::size_t d = depth; d-- > 0;) {
        if (++it[d] < w.dims()[d].extent) break;
        it[d] = 0;
      }
    }
    kernels::affine_eval(in_ptr.data(), depth, n, coef.data(), offset.data(), outs,
                         out_ptr.data());
    for (std::size_t i = 0; i < n; ++i) sink(in, out, i);
    done += n;
  }
}

void check_domain_budget(const Workload& w, const char* what) {
  if (w.instances() > enumeration_budget()) {
    throw BudgetExceeded(w.instances(), enumeration_budget(), what);
  }
}

IntRelation tagged_relation(const Workload& w, AccessKind kind) {
  check_domain_budget(w, "access relation");
  std::size_t width = 0;
  for (const auto& a : w.accesses()) width = std::max(width, a.index_arity());
  IntRelation::Builder b(Shape::flat(w.depth()), Shape::flat(1 + width));
  std::vector<Value> row(w.depth() + 1 + width);
  for (const auto& a : w.accesses()) {
    if (a.kind != kind) continue;
    const Value id = w.array_id(a.array);
    for_each_image(w, a.coef, a.offset, [&](const auto& in, const auto& out, std::size_t i) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t d = 0; d < w.depth(); ++d) row[d] = in[d][i];
      row[w.depth()] = id;
      for (std::size_t r = 0; r < a.index_arity(); ++r) row[w.depth() + 1 + r] = out[r][i];
      b.add_row(row);
    });
  }
  return std::move(b).build();
}

}  // namespace

Workload::Workload(std::string name, std::vector<DimSpec> dims,
                   std::vector<AccessFunction> accesses, int element_bits)
    : name_(std::move(name)),
      dims_(std::move(dims)),
      accesses_(std::move(accesses)),
      element_bits_(element_bits) {
  if (element_bits_ < 1) throw ConfigError("workload: element_bits must be >= 1");
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    require_positive(dims_[i].extent, dims_[i].name.c_str());
    for (std::size_t j = 0; j < i; ++j) {
      if (dims_[i].name == dims_[j].name) throw ConfigError("workload: duplicate dim " + dims_[i].name);
    }
  }
  bool has_write = false;
  for (const auto& a : accesses_) {
    if (a.coef.size() != a.index_arity() * dims_.size()) {
      throw ConfigError("workload: access map of " + a.array + " has the wrong arity");
    }
    has_write |= a.kind == AccessKind::kWrite;
    if (std::find(arrays_.begin(), arrays_.end(), a.array) == arrays_.end()) {
      arrays_.push_back(a.array);
    }
  }
  if (!has_write) throw ConfigError("workload: no write access");
  for (const auto& a : accesses_) {
    const AccessFunction& first = access(a.array);
    if (first.coef != a.coef || first.offset != a.offset) {
      throw ConfigError("workload: accesses of " + a.array + " use different maps");
    }
  }
}

std::uint64_t Workload::instances() const {
  std::uint64_t n = 1;
  for (const auto& d : dims_) n *= static_cast<std::uint64_t>(d.extent);
  return n;
}

std::size_t Workload::dim_index(std::string_view name) const {
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name == name) return i;
  }
  throw ConfigError("unknown dim '" + std::string(name) + "' in workload " + name_);
}

bool Workload::has_dim(std::string_view name) const {
  return std::any_of(dims_.begin(), dims_.end(), [&](const DimSpec& d) { return d.name == name; });
}

int Workload::array_id(std::string_view array) const {
  for (std::size_t i = 0; i < arrays_.size(); ++i) {
    if (arrays_[i] == array) return static_cast<int>(i);
  }
  throw ConfigError("unknown array '" + std::string(array) + "' in workload " + name_);
}

const AccessFunction& Workload::access(std::string_view array) const {
  for (const auto& a : accesses_) {
    if (a.array == array) return a;
  }
  throw ConfigError("unknown array '" + std::string(array) + "' in workload " + name_);
}

const std::string& Workload::written_array() const {
  for (const auto& a : accesses_) {
    if (a.kind == AccessKind::kWrite) return a.array;
  }
  throw ConfigError("workload: no write access");
}

std::vector<std::size_t> Workload::reduction_dims() const {
  const AccessFunction& wa = access(written_array());
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < depth(); ++d) {
    bool used = false;
    for (std::size_t r = 0; r < wa.index_arity(); ++r) used |= wa.coef[r * depth() + d] != 0;
    if (!used) out.push_back(d);
  }
  return out;
}

std::vector<std::int64_t> Workload::array_extents(std::string_view array) const {
  const AccessFunction& a = access(array);
  std::vector<std::int64_t> out(a.index_arity());
  for (std::size_t r = 0; r < a.index_arity(); ++r) {
    std::int64_t hi = a.offset[r];
    for (std::size_t d = 0; d < depth(); ++d) {
      const std::int64_t k = a.coef[r * depth() + d];
      if (k > 0) hi += k * (dims_[d].extent - 1);
    }
    out[r] = hi + 1;
  }
  return out;
}

std::string Workload::to_json() const {
  detail::Json j;
  j["name"] = name_;
  j["op"] = op_;
  j["element_bits"] = element_bits_;
  detail::Json dims = detail::Json::object();
  if (op_ == "gemm") {
    dims["i"] = op_args_[0];
    dims["j"] = op_args_[1];
    dims["k"] = op_args_[2];
  } else {
    static const char* kKeys[] = {"n", "k", "c", "oy", "ox", "r", "s", "stride"};
    for (std::size_t i = 0; i < 8; ++i) dims[kKeys[i]] = op_args_[i];
  }
  j["dims"] = dims;
  return j.dump(2);
}

Workload gemm(std::int64_t I, std::int64_t J, std::int64_t K, int element_bits) {
  require_positive(I, "I");
  require_positive(J, "J");
  require_positive(K, "K");
  enum { i, j, k };
  std::vector<AccessFunction> acc = {
      make_access("C", AccessKind::kRead, 3, {{{i, 1}}, {{j, 1}}}),
      make_access("A", AccessKind::kRead, 3, {{{i, 1}}, {{k, 1}}}),
      make_access("B", AccessKind::kRead, 3, {{{k, 1}}, {{j, 1}}}),
      make_access("C", AccessKind::kWrite, 3, {{{i, 1}}, {{j, 1}}}),
  };
  Workload w("gemm-" + std::to_string(I) + "x" + std::to_string(J) + "x" + std::to_string(K),
             {{"i", I}, {"j", J}, {"k", K}}, std::move(acc), element_bits);
  w.op_ = "gemm";
  w.op_args_ = {I, J, K};
  // A, B, C ids in that order
  w.arrays_ = {"A", "B", "C"};
  return w;
}

Workload conv2d(std::int64_t N, std::int64_t K, std::int64_t C, std::int64_t Oy, std::int64_t Ox,
                std::int64_t R, std::int64_t S, std::int64_t stride, int element_bits) {
  require_positive(stride, "stride");
  enum { n, k, c, oy, ox, r, s };
  const auto st = static_cast<std::int32_t>(stride);
  std::vector<AccessFunction> acc = {
      make_access("O", AccessKind::kRead, 7, {{{n, 1}}, {{k, 1}}, {{oy, 1}}, {{ox, 1}}}),
      make_access("I", AccessKind::kRead, 7,
                  {{{n, 1}}, {{c, 1}}, {{oy, st}, {s, 1}}, {{ox, st}, {r, 1}}}),
      make_access("W", AccessKind::kRead, 7, {{{k, 1}}, {{c, 1}}, {{s, 1}}, {{r, 1}}}),
      make_access("O", AccessKind::kWrite, 7, {{{n, 1}}, {{k, 1}}, {{oy, 1}}, {{ox, 1}}}),
  };
  Workload w("conv2d", {{"n", N}, {"k", K}, {"c", C}, {"oy", Oy}, {"ox", Ox}, {"r", R}, {"s", S}},
             std::move(acc), element_bits);
  w.op_ = "conv2d";
  w.op_args_ = {N, K, C, Oy, Ox, R, S, stride};
  w.arrays_ = {"I", "W", "O"};
  return w;
}

namespace {

struct Builtin {
  const char* name;
  Workload (*make)();
};

const Builtin kBuiltins[] = {
    {"gemm-256", [] { return gemm(256, 256, 256); }},
    {"gemm-8", [] { return gemm(8, 8, 8); }},
    // layer shapes from the original network publications
    {"alexnet-conv2", [] { return conv2d(1, 256, 48, 27, 27, 5, 5, 1); }},
    {"alexnet-conv2-quarter", [] { return conv2d(1, 64, 12, 27, 27, 5, 5, 1); }},
    {"mobilenetv2-2", [] { return conv2d(1, 16, 32, 112, 112, 1, 1, 1); }},
    {"resnet50-1", [] { return conv2d(1, 64, 3, 112, 112, 7, 7, 2); }},
    {"conv-small", [] { return conv2d(1, 1, 1, 4, 4, 3, 3, 1); }},
};

}  // namespace

Workload builtin_workload(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) {
      Workload w = b.make();
      detail::Json j = detail::Json::parse(w.to_json());
      j["name"] = std::string(name);
      return parse_workload(j.dump(), std::string(name));
    }
  }
  std::string known;
  for (const auto& b : kBuiltins) known += std::string(known.empty() ? "" : ", ") + b.name;
  throw ConfigError("unknown builtin workload '" + std::string(name) + "' (known: " + known + ")");
}

std::vector<std::string> builtin_workload_names() {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins) out.emplace_back(b.name);
  return out;
}

Workload parse_workload(std::string_view text, const std::string& source) {
  const detail::Doc doc{text, source};
  const detail::Json j = detail::parse_json(text, source);
  doc.only(j, {"name", "op", "dims", "element_bits"}, "workload");
  const auto op = doc.get<std::string>(doc.required(j, "op", "workload"), "op");
  const detail::Json& dims = doc.required(j, "dims", "workload");
  const int bits = doc.get_or<int>(j, "element_bits", 16);
  auto dim = [&](const char* key, std::int64_t fallback, bool needed) {
    auto it = dims.find(key);
    if (it == dims.end()) {
      if (needed) doc.fail("dims", std::string("missing dim '") + key + "'");
      return fallback;
    }
    return doc.get<std::int64_t>(*it, key);
  };
  Workload w;
  try {
    if (op == "gemm") {
      doc.only(dims, {"i", "j", "k"}, "dims");
      w = gemm(dim("i", 1, true), dim("j", 1, true), dim("k", 1, true), bits);
    } else if (op == "conv2d") {
      doc.only(dims, {"n", "k", "c", "oy", "ox", "r", "s", "stride"}, "dims");
      w = conv2d(dim("n", 1, false), dim("k", 1, true), dim("c", 1, true), dim("oy", 1, true),
                 dim("ox", 1, true), dim("r", 1, true), dim("s", 1, true), dim("stride", 1, false),
                 bits);
    } else {
      doc.fail("op", "unknown op '" + op + "' (expected gemm or conv2d)");
    }
  } catch (const ConfigError& e) {
    throw ParseError(source, 0, 0, e.what());
  }
  if (auto it = j.find("name"); it != j.end()) w.set_name(doc.get<std::string>(*it, "name"));
  return w;
}

IntSet iteration_domain(const Workload& w) {
  check_domain_budget(w, "iteration domain");
  std::vector<Value> lo(w.depth(), 0), hi(w.depth());
  for (std::size_t d = 0; d < w.depth(); ++d) hi[d] = static_cast<Value>(w.dims()[d].extent);
  return IntSet::box(lo, hi);
}

IntRelation read_relation(const Workload& w) { return tagged_relation(w, AccessKind::kRead); }
IntRelation write_relation(const Workload& w) { return tagged_relation(w, AccessKind::kWrite); }

IntRelation access_relation(const Workload& w, std::string_view array) {
  check_domain_budget(w, "access relation");
  const AccessFunction& a = w.access(array);
  IntRelation::Builder b(Shape::flat(w.depth()), Shape::flat(a.index_arity()));
  std::vector<Value> row(w.depth() + a.index_arity());
  for_each_image(w, a.coef, a.offset, [&](const auto& in, const auto& out, std::size_t i) {
    for (std::size_t d = 0; d < w.depth(); ++d) row[d] = in[d][i];
    for (std::size_t r = 0; r < a.index_arity(); ++r) row[w.depth() + r] = out[r][i];
    b.add_row(row);
  });
  return std::move(b).build();
}

namespace {

// Index rows split into groups that share no loop dim; the footprint is the
// product of the per-group footprints.
struct Component {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> dims;
  std::vector<std::vector<Value>> points;  // distinct values of `rows`
};

std::vector<Component> footprint_components(const Workload& w, const AccessFunction& a,
                                            const std::vector<std::int64_t>& extents) {
  const std::size_t depth = w.depth();
  if (extents.size() != depth) throw StructuralError("footprint: extent arity mismatch");
  std::vector<int> group(a.index_arity());
  for (std::size_t r = 0; r < group.size(); ++r) group[r] = static_cast<int>(r);
  auto find = [&](int x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  for (std::size_t d = 0; d < depth; ++d) {
    int first = -1;
    for (std::size_t r = 0; r < a.index_arity(); ++r) {
      if (a.coef[r * depth + d] == 0) continue;
      if (first < 0) {
        first = static_cast<int>(r);
      } else {
        group[find(static_cast<int>(r))] = find(first);
      }
    }
  }
  std::map<int, Component> by_root;
  for (std::size_t r = 0; r < a.index_arity(); ++r) by_root[find(static_cast<int>(r))].rows.push_back(r);
  std::vector<Component> out;
  for (auto& [_, c] : by_root) {
    for (std::size_t d = 0; d < depth; ++d) {
      bool used = false;
      for (std::size_t r : c.rows) used |= a.coef[r * depth + d] != 0;
      if (used) c.dims.push_back(d);
    }
    std::uint64_t n = 1;
    for (std::size_t d : c.dims) n *= static_cast<std::uint64_t>(extents[d]);
    if (n > enumeration_budget()) throw BudgetExceeded(n, enumeration_budget(), "footprint of " + a.array);
    std::vector<Value> data;
    data.reserve(n * c.rows.size());
    std::vector<std::int64_t> it(c.dims.size(), 0);
    for (std::uint64_t k = 0; k < n; ++k) {
      for (std::size_t r : c.rows) {
        std::int64_t v = a.offset[r];
        for (std::size_t q = 0; q < c.dims.size(); ++q) v += a.coef[r * depth + c.dims[q]] * it[q];
        data.push_back(static_cast<Value>(v));
      }
      for (std::size_t q = c.dims.size(); q-- > 0;) {
        if (++it[q] < extents[c.dims[q]]) break;
        it[q] = 0;
      }
    }
    IntSet pts = IntSet::from_rows(Shape::flat(c.rows.size()), std::move(data));
    for (std::size_t i = 0; i < pts.size(); ++i) c.points.emplace_back(pts[i].begin(), pts[i].end());
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

IntSet footprint(const Workload& w, std::string_view array, const std::vector<std::int64_t>& extents) {
  const AccessFunction& a = w.access(array);
  const auto comps = footprint_components(w, a, extents);
  const std::uint64_t n = footprint_size(w, array, extents);
  if (n > enumeration_budget()) throw BudgetExceeded(n, enumeration_budget(), "footprint of " + a.array);
  std::vector<Value> data;
  data.reserve(n * a.index_arity());
  std::vector<std::size_t> pick(comps.size(), 0);
  std::vector<Value> row(a.index_arity());
  for (std::uint64_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const auto& pt = comps[c].points[pick[c]];
      for (std::size_t q = 0; q < comps[c].rows.size(); ++q) row[comps[c].rows[q]] = pt[q];
    }
    data.insert(data.end(), row.begin(), row.end());
    for (std::size_t c = comps.size(); c-- > 0;) {
      if (++pick[c] < comps[c].points.size()) break;
      pick[c] = 0;
    }
  }
  return IntSet::from_rows(Shape::flat(a.index_arity()), std::move(data));
}

std::uint64_t footprint_size(const Workload& w, std::string_view array,
                             const std::vector<std::int64_t>& extents) {
  std::uint64_t n = 1;
  for (const auto& c : footprint_components(w, w.access(array), extents)) n *= c.points.size();
  return n;
}

}  // namespace dataplace

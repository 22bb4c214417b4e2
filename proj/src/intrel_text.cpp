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

// Text form of sets and relations.
//
//   relation  := '{' [ disjunct (';' disjunct)* ] '}'
//   disjunct  := tuple [ '->' tuple ] [ ':' guard ('and' guard)* ]
//   tuple     := [ name ] '[' ( tuple '->' tuple | [ expr (',' expr)* ] ) ']'
//   guard     := expr ( cmp expr )+          cmp in < <= > >= = == !=
//   expr      := affine combination of integers and variables
//
// Variables are enumerated over the box obtained by propagating guard bounds.

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <memory>
#include <set>

#include "dataplace/intrel.hpp"

namespace dataplace {

namespace {

enum class Tok {
  kEnd, kIdent, kInt, kLBrace, kRBrace, kLBracket, kRBracket, kLParen, kRParen,
  kComma, kSemi, kColon, kArrow, kPlus, kMinus, kStar, kLt, kLe, kGt, kGe, kEq, kNe,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::int64_t value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& source) : text_(text), source_(source) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '\'')) {
          advance();
        }
        t.kind = Tok::kIdent;
        t.text = std::string(text_.substr(start, pos_ - start));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          v = v * 10 + (text_[pos_] - '0');
          if (v > std::numeric_limits<Value>::max()) fail(t, "integer literal out of range");
          advance();
        }
        t.kind = Tok::kInt;
        t.value = v;
      } else {
        t.kind = symbol(t);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool next_is(char c) const { return pos_ + 1 < text_.size() && text_[pos_ + 1] == c; }

  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    throw ParseError(source_, at.line, at.column, what);
  }

  Tok symbol(const Token& at) {
    const char c = text_[pos_];
    auto one = [&](Tok k) {
      advance();
      return k;
    };
    auto two = [&](Tok k) {
      advance();
      advance();
      return k;
    };
    switch (c) {
      case '{': return one(Tok::kLBrace);
      case '}': return one(Tok::kRBrace);
      case '[': return one(Tok::kLBracket);
      case ']': return one(Tok::kRBracket);
      case '(': return one(Tok::kLParen);
      case ')': return one(Tok::kRParen);
      case ',': return one(Tok::kComma);
      case ';': return one(Tok::kSemi);
      case ':': return one(Tok::kColon);
      case '+': return one(Tok::kPlus);
      case '*': return one(Tok::kStar);
      case '-': return next_is('>') ? two(Tok::kArrow) : one(Tok::kMinus);
      case '<': return next_is('=') ? two(Tok::kLe) : one(Tok::kLt);
      case '>': return next_is('=') ? two(Tok::kGe) : one(Tok::kGt);
      case '=': return next_is('=') ? two(Tok::kEq) : one(Tok::kEq);
      case '!':
        if (next_is('=')) return two(Tok::kNe);
        break;
      default:
        break;
    }
    fail(at, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Affine {
  std::map<std::string, std::int64_t> coef;
  std::int64_t constant = 0;

  bool is_constant() const { return coef.empty(); }

  Affine& add(const Affine& o, std::int64_t scale) {
    for (const auto& [v, k] : o.coef) {
      const std::int64_t sum = coef[v] + scale * k;
      if (sum == 0) {
        coef.erase(v);
      } else {
        coef[v] = sum;
      }
    }
    constant += scale * o.constant;
    return *this;
  }
};

struct TupleExpr {
  std::vector<Affine> items;              // flat form
  std::unique_ptr<TupleExpr> in, out;     // wrapped form

  bool is_pair() const { return in != nullptr; }

  Shape shape() const {
    return is_pair() ? Shape::pair(in->shape(), out->shape()) : Shape::flat(items.size());
  }

  void flatten(std::vector<const Affine*>& dst) const {
    if (is_pair()) {
      in->flatten(dst);
      out->flatten(dst);
    } else {
      for (const auto& a : items) dst.push_back(&a);
    }
  }
};

enum class Cmp { kLt, kLe, kGt, kGe, kEq, kNe };

// lhs - rhs `cmp` 0
struct Guard {
  Affine diff;
  Cmp cmp;
  std::size_t line, column;
};

struct Disjunct {
  TupleExpr in;
  std::unique_ptr<TupleExpr> out;
  std::vector<Guard> guards;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::string& source)
      : toks_(std::move(tokens)), source_(source) {}

  std::vector<Disjunct> parse() {
    expect(Tok::kLBrace, "'{'");
    std::vector<Disjunct> out;
    if (peek().kind != Tok::kRBrace) {
      out.push_back(disjunct());
      while (accept(Tok::kSemi)) {
        if (peek().kind == Tok::kRBrace) break;
        out.push_back(disjunct());
      }
    }
    expect(Tok::kRBrace, "'}'");
    if (peek().kind != Tok::kEnd) fail(peek(), "trailing input after '}'");
    return out;
  }

  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    throw ParseError(source_, at.line, at.column, what);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return toks_[pos_++];
  }

  Disjunct disjunct() {
    Disjunct d;
    d.in = tuple();
    if (accept(Tok::kArrow)) d.out = std::make_unique<TupleExpr>(tuple());
    if (accept(Tok::kColon)) {
      guard_chain(d.guards);
      while (peek().kind == Tok::kIdent && peek().text == "and") {
        ++pos_;
        guard_chain(d.guards);
      }
    }
    return d;
  }

  bool starts_tuple() const {
    return peek().kind == Tok::kLBracket ||
           (peek().kind == Tok::kIdent && peek(1).kind == Tok::kLBracket);
  }

  TupleExpr tuple() {
    if (peek().kind == Tok::kIdent && peek(1).kind == Tok::kLBracket) ++pos_;  // tuple name
    expect(Tok::kLBracket, "'['");
    TupleExpr t;
    if (starts_tuple()) {
      t.in = std::make_unique<TupleExpr>(tuple());
      expect(Tok::kArrow, "'->' inside wrapped tuple");
      t.out = std::make_unique<TupleExpr>(tuple());
      expect(Tok::kRBracket, "']'");
      return t;
    }
    if (accept(Tok::kRBracket)) return t;
    t.items.push_back(expr());
    while (accept(Tok::kComma)) t.items.push_back(expr());
    expect(Tok::kRBracket, "']'");
    return t;
  }

  static bool is_cmp(Tok k) {
    return k == Tok::kLt || k == Tok::kLe || k == Tok::kGt || k == Tok::kGe || k == Tok::kEq ||
           k == Tok::kNe;
  }

  void guard_chain(std::vector<Guard>& out) {
    Affine lhs = expr();
    if (!is_cmp(peek().kind)) fail(peek(), "expected comparison operator");
    while (is_cmp(peek().kind)) {
      const Token& op = toks_[pos_++];
      Affine rhs = expr();
      Guard g;
      g.diff = lhs;
      g.diff.add(rhs, -1);
      g.line = op.line;
      g.column = op.column;
      switch (op.kind) {
        case Tok::kLt: g.cmp = Cmp::kLt; break;
        case Tok::kLe: g.cmp = Cmp::kLe; break;
        case Tok::kGt: g.cmp = Cmp::kGt; break;
        case Tok::kGe: g.cmp = Cmp::kGe; break;
        case Tok::kEq: g.cmp = Cmp::kEq; break;
        default: g.cmp = Cmp::kNe; break;
      }
      out.push_back(std::move(g));
      lhs = std::move(rhs);
    }
  }

  Affine expr() {
    Affine acc;
    bool negate = false;
    if (accept(Tok::kMinus)) {
      negate = true;
    } else {
      accept(Tok::kPlus);
    }
    acc.add(term(), negate ? -1 : 1);
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const bool minus = toks_[pos_++].kind == Tok::kMinus;
      acc.add(term(), minus ? -1 : 1);
    }
    return acc;
  }

  Affine term() {
    const Token& at = peek();
    Affine acc = factor();
    while (true) {
      const bool juxtaposed = acc.is_constant() && peek().kind == Tok::kIdent && peek().text != "and";
      if (!juxtaposed && !accept(Tok::kStar)) break;
      Affine rhs = factor();
      if (acc.is_constant()) {
        Affine scaled;
        acc = scaled.add(rhs, acc.constant);
      } else if (rhs.is_constant()) {
        Affine scaled;
        acc = scaled.add(acc, rhs.constant);
      } else {
        fail(at, "non-affine product");
      }
    }
    return acc;
  }

  Affine factor() {
    const Token& t = peek();
    if (accept(Tok::kInt)) {
      Affine a;
      a.constant = t.value;
      return a;
    }
    if (t.kind == Tok::kIdent && t.text != "and") {
      ++pos_;
      Affine a;
      a.coef[t.text] = 1;
      return a;
    }
    if (accept(Tok::kLParen)) {
      Affine a = expr();
      expect(Tok::kRParen, "')'");
      return a;
    }
    if (accept(Tok::kMinus)) {
      Affine a;
      return a.add(factor(), -1);
    }
    fail(t, "expected integer, variable or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::string& source_;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t eval(const Affine& a, const std::map<std::string, std::int64_t>& env) {
  std::int64_t v = a.constant;
  for (const auto& [name, k] : a.coef) v += k * env.at(name);
  return v;
}

bool holds(const Guard& g, const std::map<std::string, std::int64_t>& env) {
  const std::int64_t v = eval(g.diff, env);
  switch (g.cmp) {
    case Cmp::kLt: return v < 0;
    case Cmp::kLe: return v <= 0;
    case Cmp::kGt: return v > 0;
    case Cmp::kGe: return v >= 0;
    case Cmp::kEq: return v == 0;
    case Cmp::kNe: return v != 0;
  }
  return false;
}

struct Bounds {
  std::int64_t lo = std::numeric_limits<std::int64_t>::min();
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();  // inclusive
};

// Tightens `b` from k*x + c `cmp` 0.
void tighten(Bounds& b, std::int64_t k, std::int64_t c, Cmp cmp) {
  // Normalize to k*x + c <= 0 and/or >= 0.
  auto upper = [&](std::int64_t kk, std::int64_t cc) {  // kk*x + cc <= 0
    if (kk > 0) {
      b.hi = std::min(b.hi, floor_div(-cc, kk));
    } else {
      b.lo = std::max(b.lo, ceil_div(-cc, kk));
    }
  };
  switch (cmp) {
    case Cmp::kLe: upper(k, c); break;
    case Cmp::kLt: upper(k, c + 1); break;
    case Cmp::kGe: upper(-k, -c); break;
    case Cmp::kGt: upper(-k, -c + 1); break;
    case Cmp::kEq:
      upper(k, c);
      upper(-k, -c);
      break;
    case Cmp::kNe: break;
  }
}

struct Enumerated {
  Shape in_shape;
  std::optional<Shape> out_shape;
  std::vector<Value> rows;  // in ++ out
  bool nullary_hit = false;
};

Enumerated enumerate(std::string_view text, const ParseOptions& options, bool want_relation) {
  const std::string& src = options.source;
  Parser parser(Lexer(text, src).run(), src);
  std::vector<Disjunct> disjuncts = parser.parse();

  Enumerated result;
  if (disjuncts.empty()) {
    if (!options.in_shape) {
      throw ParseError(src, 0, 0, "cannot infer the shape of an empty set; supply it");
    }
    result.in_shape = *options.in_shape;
    if (want_relation) {
      if (!options.out_shape) {
        throw ParseError(src, 0, 0, "cannot infer the shape of an empty relation; supply it");
      }
      result.out_shape = *options.out_shape;
    }
    return result;
  }

  for (std::size_t di = 0; di < disjuncts.size(); ++di) {
    const Disjunct& d = disjuncts[di];
    if (want_relation != (d.out != nullptr)) {
      throw ParseError(src, 0, 0,
                       want_relation ? "expected a relation '[..] -> [..]'"
                                     : "expected a set, found a relation");
    }
    Shape in_shape = d.in.shape();
    std::optional<Shape> out_shape;
    if (d.out) out_shape = d.out->shape();
    if (di == 0) {
      result.in_shape = in_shape;
      result.out_shape = out_shape;
      if (options.in_shape && *options.in_shape != in_shape) {
        throw ParseError(src, 0, 0, "tuple shape " + in_shape.to_string() +
                                        " does not match expected " +
                                        options.in_shape->to_string());
      }
      if (want_relation && options.out_shape && *options.out_shape != *out_shape) {
        throw ParseError(src, 0, 0, "output shape " + out_shape->to_string() +
                                        " does not match expected " +
                                        options.out_shape->to_string());
      }
    } else if (in_shape != result.in_shape || out_shape != result.out_shape) {
      throw ParseError(src, 0, 0, "disjuncts disagree in tuple shape");
    }

    std::vector<const Affine*> in_items, out_items;
    d.in.flatten(in_items);
    if (d.out) d.out->flatten(out_items);

    std::set<std::string> vars;
    for (const Affine* a : in_items) for (const auto& [v, _] : a->coef) vars.insert(v);
    for (const Affine* a : out_items) for (const auto& [v, _] : a->coef) vars.insert(v);
    for (const Guard& g : d.guards) for (const auto& [v, _] : g.diff.coef) vars.insert(v);

    std::map<std::string, Bounds> bounds;
    for (const auto& v : vars) bounds[v] = Bounds{};
    for (std::size_t pos = 0; pos < in_items.size() && pos < options.in_box.size(); ++pos) {
      const Affine& a = *in_items[pos];
      if (a.constant == 0 && a.coef.size() == 1 && a.coef.begin()->second == 1) {
        Bounds& b = bounds[a.coef.begin()->first];
        b.lo = std::max<std::int64_t>(b.lo, options.in_box[pos].first);
        b.hi = std::min<std::int64_t>(b.hi, options.in_box[pos].second - 1);
      }
    }
    // Interval propagation: bound each variable from a guard once all the
    // other variables in that guard are bounded.
    constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
    constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
    auto bounded = [&](const std::string& v) {
      return bounds[v].lo != kMin && bounds[v].hi != kMax;
    };
    for (int round = 0; round < 8; ++round) {
      bool changed = false;
      for (const Guard& g : d.guards) {
        for (const auto& [v, k] : g.diff.coef) {
          std::int64_t rlo = g.diff.constant, rhi = g.diff.constant;
          bool ok = true;
          for (const auto& [w, kw] : g.diff.coef) {
            if (w == v) continue;
            if (!bounded(w)) {
              ok = false;
              break;
            }
            const Bounds& bw = bounds[w];
            rlo += std::min(kw * bw.lo, kw * bw.hi);
            rhi += std::max(kw * bw.lo, kw * bw.hi);
          }
          if (!ok) continue;
          const Bounds before = bounds[v];
          Bounds& b = bounds[v];
          switch (g.cmp) {
            case Cmp::kLe:
            case Cmp::kLt: tighten(b, k, rlo, g.cmp); break;
            case Cmp::kGe:
            case Cmp::kGt: tighten(b, k, rhi, g.cmp); break;
            case Cmp::kEq:
              tighten(b, k, rlo, Cmp::kLe);
              tighten(b, k, rhi, Cmp::kGe);
              break;
            case Cmp::kNe: break;
          }
          changed |= before.lo != b.lo || before.hi != b.hi;
        }
      }
      if (!changed) break;
    }

    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<std::int64_t> lo, hi;
    std::uint64_t count = 1;
    bool empty_box = false;
    for (const auto& v : names) {
      const Bounds& b = bounds[v];
      if (b.lo == std::numeric_limits<std::int64_t>::min() ||
          b.hi == std::numeric_limits<std::int64_t>::max()) {
        throw ParseError(src, 0, 0, "variable '" + v + "' is not bounded");
      }
      lo.push_back(b.lo);
      hi.push_back(b.hi);
      if (b.hi < b.lo) {
        empty_box = true;
      } else {
        count *= static_cast<std::uint64_t>(b.hi - b.lo + 1);
        if (count > enumeration_budget()) {
          throw BudgetExceeded(count, enumeration_budget(), "parsing " + src);
        }
      }
    }
    if (empty_box) continue;

    std::map<std::string, std::int64_t> env;
    for (std::size_t i = 0; i < names.size(); ++i) env[names[i]] = lo[i];
    std::vector<Value> buf;
    for (std::uint64_t it = 0; it < count; ++it) {
      bool ok = std::all_of(d.guards.begin(), d.guards.end(),
                            [&](const Guard& g) { return holds(g, env); });
      if (ok) {
        buf.clear();
        for (const Affine* a : in_items) buf.push_back(static_cast<Value>(eval(*a, env)));
        for (const Affine* a : out_items) buf.push_back(static_cast<Value>(eval(*a, env)));
        if (buf.empty()) result.nullary_hit = true;
        result.rows.insert(result.rows.end(), buf.begin(), buf.end());
      }
      for (std::size_t i = names.size(); i-- > 0;) {
        if (++env[names[i]] <= hi[i]) break;
        env[names[i]] = lo[i];
      }
    }
  }
  return result;
}

}  // namespace

IntSet parse_set(std::string_view text, const ParseOptions& options) {
  Enumerated e = enumerate(text, options, false);
  if (e.in_shape.arity() == 0) {
    IntSet::Builder b(e.in_shape);
    if (e.nullary_hit) b.add(Row{});
    return std::move(b).build();
  }
  return IntSet::from_rows(e.in_shape, std::move(e.rows));
}

IntRelation parse_relation(std::string_view text, const ParseOptions& options) {
  Enumerated e = enumerate(text, options, true);
  Shape out = e.out_shape.value_or(Shape::flat(0));
  if (e.in_shape.arity() + out.arity() == 0) {
    IntRelation::Builder b(e.in_shape, out);
    if (e.nullary_hit) b.add(Row{}, Row{});
    return std::move(b).build();
  }
  return IntRelation::from_rows(e.in_shape, out, std::move(e.rows));
}

std::string tuple_to_string(Row values, const Shape& shape) {
  if (shape.is_pair()) {
    const std::size_t k = shape.in().arity();
    return "[" + tuple_to_string(values.subspan(0, k), shape.in()) + " -> " +
           tuple_to_string(values.subspan(k), shape.out()) + "]";
  }
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out + "]";
}

std::string to_string(const IntSet& s) {
  if (s.empty()) return "{ }";
  std::string out = "{ ";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += "; ";
    out += tuple_to_string(s.arity() == 0 ? Row{} : s[i], s.shape());
  }
  return out + " }";
}

std::string to_string(const IntRelation& r) {
  if (r.empty()) return "{ }";
  std::string out = "{ ";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += "; ";
    if (r.width() == 0) {
      out += "[] -> []";
      continue;
    }
    out += tuple_to_string(r.in(i), r.in_shape()) + " -> " +
           tuple_to_string(r.out(i), r.out_shape());
  }
  return out + " }";
}

}  // namespace dataplace

// Copyright 2026 The p4aeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "p4aeq/confrel/text.hpp"

#include <cctype>

namespace p4aeq {

namespace {

std::string strip_tag(const std::string& name) {
  if (name.size() > 2 && (name.starts_with("l.") || name.starts_with("r."))) return name.substr(2);
  return name;
}

}  // namespace

std::string Namer::header(HeaderId id, Side) const { return "h" + std::to_string(id); }

std::string Namer::state(StateRef q, Side) const {
  if (q.is_accept()) return "accept";
  if (q.is_reject()) return "reject";
  return "q" + std::to_string(q.index());
}

std::string SumNamer::header(HeaderId id, Side) const {
  if (id >= sum_.headers().size()) return Namer::header(id, Side::Left);
  return strip_tag(sum_.header(id).name);
}

std::string SumNamer::state(StateRef q, Side) const { return strip_tag(sum_.state_name(q)); }

std::string render(const BitExpr& e, const Namer& names) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BitExpr::Lit>) {
          return n.bits.empty() ? "eps" : "0b" + n.bits.to_string();
        } else if constexpr (std::is_same_v<T, BitExpr::Buf>) {
          return std::string("buf") + side_marker(n.side);
        } else if constexpr (std::is_same_v<T, BitExpr::Hdr>) {
          return names.header(n.id, n.side) + side_marker(n.side);
        } else if constexpr (std::is_same_v<T, BitExpr::Var>) {
          return "$x" + std::to_string(n.id);
        } else if constexpr (std::is_same_v<T, BitExpr::Slice>) {
          std::string base = render(n.base, names);
          if (n.base.template as<BitExpr::Concat>()) base = "(" + base + ")";
          return base + "[" + std::to_string(n.lo) + ":" + std::to_string(n.hi) + "]";
        } else {
          std::string out;
          for (std::size_t i = 0; i < n.parts.size(); ++i) {
            if (i) out += " ++ ";
            out += render(n.parts[i], names);
          }
          return out;
        }
      },
      e.node());
}

namespace {

std::string render_formula(const Formula& f, const Namer& names, bool top) {
  auto join = [&](const std::vector<Formula>& ts, const char* op, const char* empty) {
    if (ts.empty()) return std::string(empty);
    std::string out = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (i) out += op;
      out += render_formula(ts[i], names, false);
    }
    return out + ")";
  };
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::Bottom>) {
          return "false";
        } else if constexpr (std::is_same_v<T, Formula::Top>) {
          return "true";
        } else if constexpr (std::is_same_v<T, Formula::Eq>) {
          std::string s = render(n.lhs, names) + " = " + render(n.rhs, names);
          return top ? s : "(" + s + ")";
        } else if constexpr (std::is_same_v<T, Formula::StateIs>) {
          return std::string("state") + side_marker(n.side) + "(" + names.state(n.state, n.side) + ")";
        } else if constexpr (std::is_same_v<T, Formula::BufLen>) {
          return std::string("buflen") + side_marker(n.side) + "(" + std::to_string(n.length) + ")";
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          if (n.rhs.is_bottom()) return "!" + render_formula(n.lhs, names, false);
          std::string s = render_formula(n.lhs, names, false) + " -> " + render_formula(n.rhs, names, false);
          return top ? s : "(" + s + ")";
        } else if constexpr (std::is_same_v<T, Formula::And>) {
          return join(n.terms, " & ", "true");
        } else {
          return join(n.terms, " | ", "false");
        }
      },
      f.node());
}

}  // namespace

std::string render(const Formula& f, const Namer& names) { return render_formula(f, names, true); }

std::string render(const GuardedFormula& g, const Namer& names) {
  return render(g.as_formula(), names);
}

std::string render(const Template& t, Side side, const Namer& names) {
  return "<" + names.state(t.state, side) + ", " + std::to_string(t.buflen) + ">";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Automaton& sum) : s_(text), sum_(sum) {}

  Formula parse() {
    Formula f = implication();
    ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw FormulaParseError(pos_, msg); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    ws();
    return s_.substr(pos_).starts_with(tok);
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  }
  std::string ident() {
    ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }
  std::size_t number() {
    ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoull(std::string(s_.substr(start, pos_ - start)));
  }
  Side side() {
    if (pos_ < s_.size() && s_[pos_] == '<') {
      ++pos_;
      return Side::Left;
    }
    if (pos_ < s_.size() && s_[pos_] == '>' ) {
      ++pos_;
      return Side::Right;
    }
    fail("expected side marker '<' or '>'");
  }

  std::optional<HeaderId> find_header(const std::string& name, Side sd) const {
    if (auto h = sum_.find_header((sd == Side::Left ? "l." : "r.") + name)) return h;
    return sum_.find_header(name);
  }
  StateRef find_state(const std::string& name, Side sd) {
    if (auto q = sum_.find_state((sd == Side::Left ? "l." : "r.") + name)) return *q;
    if (auto q = sum_.find_state(name)) return *q;
    fail("unknown state '" + name + "'");
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implies(lhs, implication());
    return lhs;
  }
  Formula disjunction() {
    std::vector<Formula> ts{conjunction()};
    while (accept("|")) ts.push_back(conjunction());
    return ts.size() == 1 ? ts.front() : Formula::disj(std::move(ts));
  }
  Formula conjunction() {
    std::vector<Formula> ts{unary()};
    while (accept("&")) ts.push_back(unary());
    return ts.size() == 1 ? ts.front() : Formula::conj(std::move(ts));
  }
  Formula unary() {
    if (accept("!")) return Formula::implies(unary(), Formula::bottom());
    return atom();
  }
  bool keyword(std::string_view kw) {
    ws();
    if (!s_.substr(pos_).starts_with(kw)) return false;
    const std::size_t end = pos_ + kw.size();
    if (end < s_.size() && ident_char(s_[end])) return false;
    pos_ = end;
    return true;
  }
  Formula atom() {
    if (keyword("true")) return Formula::top();
    if (keyword("false")) return Formula::bottom();
    ws();
    const std::size_t save = pos_;
    if (s_.substr(pos_).starts_with("state") && pos_ + 5 < s_.size() &&
        (s_[pos_ + 5] == '<' || s_[pos_ + 5] == '>')) {
      pos_ += 5;
      const Side sd = side();
      expect("(");
      const std::string name = ident();
      expect(")");
      return Formula::state_is(find_state(name, sd), sd);
    }
    if (s_.substr(pos_).starts_with("buflen") && pos_ + 6 < s_.size() &&
        (s_[pos_ + 6] == '<' || s_[pos_ + 6] == '>')) {
      pos_ += 6;
      const Side sd = side();
      expect("(");
      const std::size_t n = number();
      expect(")");
      return Formula::buflen(n, sd);
    }
    if (peek("(")) {
      // Either a parenthesized formula or an equation whose left operand
      // starts with a parenthesized bit expression.
      try {
        return equation();
      } catch (const FormulaParseError&) {
        pos_ = save;
      }
      expect("(");
      Formula f = implication();
      expect(")");
      return f;
    }
    return equation();
  }
  Formula equation() {
    BitExpr lhs = bit_concat();
    expect("=");
    BitExpr rhs = bit_concat();
    return Formula::eq(lhs, rhs);
  }

  BitExpr bit_concat() {
    std::vector<BitExpr> parts{bit_postfix()};
    while (accept("++")) parts.push_back(bit_postfix());
    return parts.size() == 1 ? parts.front() : BitExpr::concat(std::move(parts));
  }
  BitExpr bit_postfix() {
    BitExpr e = bit_primary();
    while (accept("[")) {
      const std::size_t lo = number();
      expect(":");
      const std::size_t hi = number();
      expect("]");
      e = BitExpr::slice(e, lo, hi);
    }
    return e;
  }
  BitExpr bit_primary() {
    if (accept("(")) {
      BitExpr e = bit_concat();
      expect(")");
      return e;
    }
    if (accept("$x")) return BitExpr::var(static_cast<VarId>(number()));
    if (keyword("eps")) return BitExpr::empty();
    ws();
    if (s_.substr(pos_).starts_with("0b")) {
      pos_ += 2;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) ++pos_;
      return BitExpr::lit(BitVec::from_string(s_.substr(start, pos_ - start)));
    }
    if (s_.substr(pos_).starts_with("0x")) {
      pos_ += 2;
      BitVec bits;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isxdigit(static_cast<unsigned char>(s_[pos_]))) {
        const int d = std::stoi(std::string(1, s_[pos_]), nullptr, 16);
        for (int b = 3; b >= 0; --b) bits.push_back(((d >> b) & 1) != 0);
        ++pos_;
      }
      if (start == pos_) fail("empty hex literal");
      return BitExpr::lit(bits);
    }
    const std::string name = ident();
    const Side sd = side();
    if (name == "buf") return BitExpr::buf(sd);
    auto h = find_header(name, sd);
    if (!h) fail("unknown header '" + name + "'");
    return BitExpr::hdr(*h, sd, sum_.header(*h).size);
  }

  std::string_view s_;
  const Automaton& sum_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const Automaton& sum) { return Parser(text, sum).parse(); }

std::optional<GuardedFormula> as_guarded(const Formula& f) {
  const auto* imp = f.as<Formula::Implies>();
  if (!imp) return std::nullopt;
  const auto* g = imp->lhs.as<Formula::And>();
  if (!g || g->terms.size() != 4) return std::nullopt;
  std::optional<StateRef> ql, qr;
  std::optional<std::size_t> nl, nr;
  for (const Formula& t : g->terms) {
    if (const auto* s = t.as<Formula::StateIs>()) {
      (s->side == Side::Left ? ql : qr) = s->state;
    } else if (const auto* b = t.as<Formula::BufLen>()) {
      (b->side == Side::Left ? nl : nr) = b->length;
    } else {
      return std::nullopt;
    }
  }
  if (!ql || !qr || !nl || !nr || !is_pure(imp->rhs)) return std::nullopt;
  return GuardedFormula{{*ql, *nl}, {*qr, *nr}, imp->rhs};
}

}  // namespace p4aeq

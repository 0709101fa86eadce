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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "p4aeq/core/semantics.hpp"
#include "p4aeq/frontend/source.hpp"

namespace p4aeq {

std::string SourceDiagnostic::str() const {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

namespace {

std::string join_diagnostics(const std::string& origin, const std::vector<SourceDiagnostic>& diags) {
  std::string out;
  for (const SourceDiagnostic& d : diags) {
    if (!out.empty()) out += '\n';
    out += origin + ":" + d.str();
  }
  return out;
}

}  // namespace

SourceError::SourceError(std::string origin, std::vector<SourceDiagnostic> diags)
    : std::runtime_error(join_diagnostics(origin, diags)), diags_(std::move(diags)) {}

bool is_reserved_word(std::string_view name) {
  static constexpr std::string_view kWords[] = {
      "accept", "reject", "state",  "header", "extract", "select",
      "goto",   "buf",    "eps",    "true",   "false",   "buflen",
  };
  return std::find(std::begin(kWords), std::end(kWords), name) != std::end(kWords);
}

namespace {

enum class Tok {
  Ident,
  Number,  // any alphanumeric run starting with a digit; meaning depends on context
  Wildcard,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Assign,  // := or <-
  Arrow,   // =>
  Concat,  // ++
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

struct SyntaxError {
  SourcePos pos;
  std::string message;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Wildcard: return "'_'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Assign: return "':='";
    case Tok::Arrow: return "'=>'";
    case Tok::Concat: return "'++'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  SourcePos pos;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
      ++i;
    }
  };
  auto is_ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back({text == "_" ? Tok::Wildcard : Tok::Ident, std::move(text), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j])) != 0) ++j;
      std::string text(src.substr(i, j - i));
      advance(j - i);
      out.push_back({Tok::Number, std::move(text), start});
      continue;
    }
    auto two = [&](std::string_view s) { return src.substr(i, 2) == s; };
    Tok kind;
    std::size_t len = 1;
    if (two(":=") || two("<-")) {
      kind = Tok::Assign;
      len = 2;
    } else if (two("=>")) {
      kind = Tok::Arrow;
      len = 2;
    } else if (two("++")) {
      kind = Tok::Concat;
      len = 2;
    } else {
      switch (c) {
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semi; break;
        case ':': kind = Tok::Colon; break;
        default: throw SyntaxError{start, std::string("unexpected character '") + c + "'"};
      }
    }
    std::string text(src.substr(i, len));
    advance(len);
    out.push_back({kind, std::move(text), start});
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

// Parse tree with names unresolved; resolution needs the whole file.
struct PExpr {
  enum class Kind { Name, Literal, Slice, Concat } kind;
  SourcePos pos;
  std::string name;
  BitVec bits;
  std::size_t lo = 0;
  std::size_t hi = 0;
  std::shared_ptr<const PExpr> a;
  std::shared_ptr<const PExpr> b;
};

struct PStmt {
  bool is_extract = false;
  SourcePos pos;
  std::string header;
  SourcePos header_pos;
  std::size_t width = 0;  // extract only
  std::shared_ptr<const PExpr> value;
};

struct PCase {
  SourcePos pos;
  std::vector<std::optional<BitVec>> patterns;
  std::string target;
  SourcePos target_pos;
};

struct PState {
  std::string name;
  SourcePos pos;
  std::vector<PStmt> stmts;
  bool is_select = false;
  std::string goto_target;
  SourcePos goto_pos;
  std::vector<std::shared_ptr<const PExpr>> select_exprs;
  std::vector<PCase> cases;
};

struct PHeader {
  std::string name;
  std::size_t size;
  SourcePos pos;
};

struct PFile {
  std::vector<PHeader> decls;
  std::vector<PState> states;
  // Every header mention in source order, for stable id assignment.
  std::vector<std::pair<std::string, SourcePos>> mentions;
};

std::optional<BitVec> parse_bits(const std::string& text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    if (text.size() == 2) return std::nullopt;
    BitVec out;
    for (std::size_t k = 2; k < text.size(); ++k) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[k])));
      unsigned v;
      if (c >= '0' && c <= '9') {
        v = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        v = static_cast<unsigned>(c - 'a' + 10);
      } else {
        return std::nullopt;
      }
      for (int b = 3; b >= 0; --b) out.push_back(((v >> b) & 1U) != 0);
    }
    return out;
  }
  std::string_view body = text;
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) body.remove_prefix(2);
  if (!std::all_of(body.begin(), body.end(), [](char c) { return c == '0' || c == '1'; })) {
    return std::nullopt;
  }
  return BitVec::from_string(body);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PFile file() {
    PFile f;
    file_ = &f;
    while (peek().kind != Tok::End) {
      if (is_word("header") && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon) {
        advance();
        const Token name = expect_name("header name");
        expect(Tok::Colon);
        const std::size_t size = number("header size");
        accept(Tok::Semi);
        f.decls.push_back({name.text, size, name.pos});
        f.mentions.emplace_back(name.text, name.pos);
        continue;
      }
      f.states.push_back(state());
    }
    return f;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_word(std::string_view w, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == w;
  }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    advance();
    return true;
  }
  [[noreturn]] void fail(const Token& at, const std::string& what) const {
    std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
    throw SyntaxError{at.pos, "expected " + what + ", found " + found};
  }
  Token expect(Tok t) {
    if (peek().kind != t) fail(peek(), describe(t));
    return advance();
  }
  Token expect_name(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), what);
    Token t = advance();
    return t;
  }
  std::size_t number(const std::string& what) {
    if (peek().kind != Tok::Number) fail(peek(), what);
    const Token t = advance();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      throw SyntaxError{t.pos, "'" + t.text + "' is not a decimal number"};
    }
    return v;
  }
  BitVec literal() {
    const Token t = expect(Tok::Number);
    auto bits = parse_bits(t.text);
    if (!bits) throw SyntaxError{t.pos, "'" + t.text + "' is not a binary or hex literal"};
    return *bits;
  }

  PState state() {
    if (is_word("state") && peek(1).kind == Tok::Ident) advance();
    const Token name = expect_name("state name");
    PState st;
    st.name = name.text;
    st.pos = name.pos;
    expect(Tok::LBrace);
    while (true) {
      if (is_word("goto")) {
        advance();
        const Token target = expect_name("goto target");
        st.goto_target = target.text;
        st.goto_pos = target.pos;
        accept(Tok::Semi);
        break;
      }
      if (is_word("select") && peek(1).kind == Tok::LParen) {
        select(st);
        break;
      }
      if (is_word("extract") && peek(1).kind == Tok::LParen) {
        PStmt s;
        s.is_extract = true;
        s.pos = advance().pos;
        expect(Tok::LParen);
        const Token h = expect_name("header name");
        s.header = h.text;
        s.header_pos = h.pos;
        file_->mentions.emplace_back(h.text, h.pos);
        expect(Tok::Comma);
        s.width = number("extract width");
        expect(Tok::RParen);
        accept(Tok::Semi);
        st.stmts.push_back(std::move(s));
        continue;
      }
      if (peek().kind == Tok::Ident && peek(1).kind == Tok::Assign) {
        PStmt s;
        const Token h = advance();
        s.pos = h.pos;
        s.header = h.text;
        s.header_pos = h.pos;
        file_->mentions.emplace_back(h.text, h.pos);
        advance();
        s.value = expr();
        accept(Tok::Semi);
        st.stmts.push_back(std::move(s));
        continue;
      }
      fail(peek(), "a statement, 'goto' or 'select'");
    }
    expect(Tok::RBrace);
    return st;
  }

  void select(PState& st) {
    st.is_select = true;
    advance();
    expect(Tok::LParen);
    st.select_exprs.push_back(expr());
    while (accept(Tok::Comma)) st.select_exprs.push_back(expr());
    expect(Tok::RParen);
    expect(Tok::LBrace);
    while (!accept(Tok::RBrace)) {
      PCase c;
      c.pos = peek().pos;
      if (accept(Tok::LParen)) {
        c.patterns.push_back(pattern());
        while (accept(Tok::Comma)) c.patterns.push_back(pattern());
        expect(Tok::RParen);
      } else {
        c.patterns.push_back(pattern());
      }
      expect(Tok::Arrow);
      if (is_word("goto") && peek(1).kind == Tok::Ident) advance();
      const Token target = expect_name("select target");
      c.target = target.text;
      c.target_pos = target.pos;
      accept(Tok::Semi);
      st.cases.push_back(std::move(c));
    }
    accept(Tok::Semi);
  }

  std::optional<BitVec> pattern() {
    if (accept(Tok::Wildcard)) return std::nullopt;
    if (peek().kind != Tok::Number) fail(peek(), "a pattern (literal or '_')");
    return literal();
  }

  std::shared_ptr<const PExpr> expr() {
    auto lhs = postfix();
    while (peek().kind == Tok::Concat) {
      const SourcePos p = advance().pos;
      auto rhs = postfix();
      auto e = std::make_shared<PExpr>();
      e->kind = PExpr::Kind::Concat;
      e->pos = p;
      e->a = lhs;
      e->b = rhs;
      lhs = e;
    }
    return lhs;
  }

  std::shared_ptr<const PExpr> postfix() {
    auto base = primary();
    while (peek().kind == Tok::LBracket) {
      const SourcePos p = advance().pos;
      auto e = std::make_shared<PExpr>();
      e->kind = PExpr::Kind::Slice;
      e->pos = p;
      e->lo = number("slice bound");
      expect(Tok::Colon);
      e->hi = number("slice bound");
      expect(Tok::RBracket);
      e->a = base;
      base = e;
    }
    return base;
  }

  std::shared_ptr<const PExpr> primary() {
    auto e = std::make_shared<PExpr>();
    e->pos = peek().pos;
    if (accept(Tok::LParen)) {
      auto inner = expr();
      expect(Tok::RParen);
      return inner;
    }
    if (peek().kind == Tok::Number) {
      e->kind = PExpr::Kind::Literal;
      e->bits = literal();
      return e;
    }
    if (peek().kind == Tok::Ident) {
      const Token t = advance();
      e->kind = PExpr::Kind::Name;
      e->name = t.text;
      file_->mentions.emplace_back(t.text, t.pos);
      return e;
    }
    fail(peek(), "an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  PFile* file_ = nullptr;
};

// Turns the parse tree into an Automaton, reporting positioned type errors.
class Resolver {
 public:
  explicit Resolver(const PFile& f) : f_(f) {}

  std::optional<Automaton> run() {
    assign_header_ids();
    infer_sizes();
    if (!diags_.empty()) return std::nullopt;
    Automaton aut;
    for (std::size_t i = 0; i < order_.size(); ++i) aut.add_header(order_[i], *sizes_[i]);
    declare_states(aut);
    if (!diags_.empty()) return std::nullopt;
    for (std::size_t i = 0; i < f_.states.size(); ++i) build_state(aut, f_.states[i], StateRef::user(static_cast<std::uint32_t>(i)));
    if (f_.states.empty()) error({}, "no states defined");
    if (!diags_.empty()) return std::nullopt;
    for (const Diagnostic& d : typecheck(aut)) {
      SourcePos p{};
      if (!d.state.empty()) {
        for (const PState& st : f_.states) {
          if (st.name == d.state) p = st.pos;
        }
      }
      error(p, d.state.empty() ? d.message : "state '" + d.state + "': " + d.message);
    }
    if (!diags_.empty()) return std::nullopt;
    return aut;
  }

  std::vector<SourceDiagnostic> take_diagnostics() { return std::move(diags_); }

 private:
  void error(SourcePos p, std::string msg) { diags_.push_back({p, std::move(msg)}); }

  void assign_header_ids() {
    for (const auto& [name, pos] : f_.mentions) {
      if (ids_.contains(name)) continue;
      if (is_reserved_word(name)) {
        error(pos, "'" + name + "' is reserved and cannot name a header");
      }
      ids_.emplace(name, order_.size());
      order_.push_back(name);
      first_pos_.push_back(pos);
    }
    sizes_.assign(order_.size(), std::nullopt);
    size_origin_.assign(order_.size(), SourcePos{});
  }

  void fix_size(const std::string& name, std::size_t size, SourcePos at, const char* how) {
    const std::size_t id = ids_.at(name);
    if (size == 0) {
      error(at, "header '" + name + "' cannot have size 0");
      return;
    }
    if (!sizes_[id]) {
      sizes_[id] = size;
      size_origin_[id] = at;
      return;
    }
    if (*sizes_[id] != size) {
      error(at, std::string(how) + " gives header '" + name + "' size " + std::to_string(size) +
                    ", but it has size " + std::to_string(*sizes_[id]) + " (from line " +
                    std::to_string(size_origin_[id].line) + ")");
    }
  }

  // Width of an expression under the sizes known so far, or nullopt.
  std::optional<std::size_t> width(const PExpr& e) const {
    switch (e.kind) {
      case PExpr::Kind::Name: {
        auto it = ids_.find(e.name);
        return it == ids_.end() ? std::nullopt : sizes_[it->second];
      }
      case PExpr::Kind::Literal: return e.bits.size();
      case PExpr::Kind::Slice: {
        if (e.lo > e.hi) return std::nullopt;
        return e.hi - e.lo + 1;
      }
      case PExpr::Kind::Concat: {
        auto l = width(*e.a);
        auto r = width(*e.b);
        if (!l || !r) return std::nullopt;
        return *l + *r;
      }
    }
    return std::nullopt;
  }

  void infer_sizes() {
    std::map<std::string, bool> declared;
    for (const PHeader& h : f_.decls) {
      if (declared[h.name]) {
        error(h.pos, "header '" + h.name + "' declared twice");
        continue;
      }
      declared[h.name] = true;
      fix_size(h.name, h.size, h.pos, "declaration");
    }
    for (const PState& st : f_.states) {
      for (const PStmt& s : st.stmts) {
        if (s.is_extract) fix_size(s.header, s.width, s.pos, "extract");
      }
    }
    // Headers that are only ever assigned take the width of their value.
    bool changed = true;
    while (changed) {
      changed = false;
      for (const PState& st : f_.states) {
        for (const PStmt& s : st.stmts) {
          if (s.is_extract) continue;
          const std::size_t id = ids_.at(s.header);
          if (sizes_[id]) continue;
          if (auto w = width(*s.value); w && *w > 0) {
            sizes_[id] = *w;
            size_origin_[id] = s.pos;
            changed = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < order_.size(); ++i) {
      if (!sizes_[i]) {
        error(first_pos_[i], "cannot infer the size of header '" + order_[i] +
                                 "'; declare it with 'header " + order_[i] + " : N;'");
      }
    }
  }

  void declare_states(Automaton& aut) {
    for (const PState& st : f_.states) {
      if (is_reserved_word(st.name)) {
        error(st.pos, "'" + st.name + "' is reserved and cannot name a state");
        continue;
      }
      if (aut.find_state(st.name)) {
        error(st.pos, "state '" + st.name + "' defined twice");
        continue;
      }
      aut.add_state(State{st.name, {}, Goto{StateRef::reject()}});
    }
  }

  std::optional<StateRef> target(const Automaton& aut, const std::string& name, SourcePos p) {
    if (auto q = aut.find_state(name)) return q;
    error(p, "unknown state '" + name + "'");
    return std::nullopt;
  }

  std::optional<Expr> expr(const Automaton& aut, const PExpr& e) {
    switch (e.kind) {
      case PExpr::Kind::Name: return Expr::header(static_cast<HeaderId>(ids_.at(e.name)));
      case PExpr::Kind::Literal: return Expr::literal(e.bits);
      case PExpr::Kind::Slice: {
        auto base = expr(aut, *e.a);
        if (!base) return std::nullopt;
        const std::size_t w = width_of(*base, aut);
        if (e.lo > e.hi) {
          error(e.pos, "slice [" + std::to_string(e.lo) + ":" + std::to_string(e.hi) +
                           "] has its lower bound above its upper bound");
          return std::nullopt;
        }
        if (e.hi >= w) {
          error(e.pos, "slice [" + std::to_string(e.lo) + ":" + std::to_string(e.hi) +
                           "] is out of range for a " + std::to_string(w) + "-bit value");
          return std::nullopt;
        }
        return Expr::slice(*base, e.lo, e.hi);
      }
      case PExpr::Kind::Concat: {
        auto l = expr(aut, *e.a);
        auto r = expr(aut, *e.b);
        if (!l || !r) return std::nullopt;
        return Expr::concat(*l, *r);
      }
    }
    return std::nullopt;
  }

  void build_state(Automaton& aut, const PState& ps, StateRef q) {
    if (!aut.find_state(ps.name) || *aut.find_state(ps.name) != q) return;
    State st;
    st.name = ps.name;
    for (const PStmt& s : ps.stmts) {
      const auto h = static_cast<HeaderId>(ids_.at(s.header));
      if (s.is_extract) {
        st.ops.emplace_back(Extract{h});
        continue;
      }
      auto v = expr(aut, *s.value);
      if (!v) continue;
      const std::size_t w = width_of(*v, aut);
      if (w != aut.header(h).size) {
        error(s.pos, "assigning a " + std::to_string(w) + "-bit value to " +
                         std::to_string(aut.header(h).size) + "-bit header '" + s.header + "'");
        continue;
      }
      st.ops.emplace_back(Assign{h, *v});
    }
    if (!ps.is_select) {
      if (auto t = target(aut, ps.goto_target, ps.goto_pos)) st.trans = Goto{*t};
    } else {
      Select sel;
      std::vector<std::size_t> widths;
      bool ok = true;
      for (const auto& e : ps.select_exprs) {
        auto v = expr(aut, *e);
        if (!v) {
          ok = false;
          continue;
        }
        widths.push_back(width_of(*v, aut));
        sel.exprs.push_back(*v);
      }
      for (const PCase& c : ps.cases) {
        auto t = target(aut, c.target, c.target_pos);
        if (c.patterns.size() != ps.select_exprs.size()) {
          error(c.pos, "case has " + std::to_string(c.patterns.size()) + " patterns, select has " +
                           std::to_string(ps.select_exprs.size()) + " expressions");
          continue;
        }
        SelectCase sc;
        for (std::size_t i = 0; i < c.patterns.size(); ++i) {
          if (!c.patterns[i]) {
            sc.patterns.push_back(Pattern::wildcard());
            continue;
          }
          if (ok && c.patterns[i]->size() != widths[i]) {
            error(c.pos, "pattern " + std::to_string(i + 1) + " has width " +
                             std::to_string(c.patterns[i]->size()) + ", expression has width " +
                             std::to_string(widths[i]));
          }
          sc.patterns.push_back(Pattern::match(*c.patterns[i]));
        }
        if (t) {
          sc.target = *t;
          sel.cases.push_back(std::move(sc));
        }
      }
      st.trans = std::move(sel);
    }
    aut.state_mut(q) = std::move(st);
  }

  const PFile& f_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::vector<std::string> order_;
  std::vector<SourcePos> first_pos_;
  std::vector<std::optional<std::size_t>> sizes_;
  std::vector<SourcePos> size_origin_;
  std::vector<SourceDiagnostic> diags_;
};

}  // namespace

ParseResult parse_source(std::string_view text) {
  ParseResult out;
  PFile file;
  try {
    file = Parser(lex(text)).file();
  } catch (const SyntaxError& e) {
    out.diagnostics.push_back({e.pos, e.message});
    return out;
  }
  Resolver r(file);
  out.automaton = r.run();
  out.diagnostics = r.take_diagnostics();
  if (!out.diagnostics.empty()) out.automaton.reset();
  return out;
}

Automaton parse_source_or_throw(std::string_view text, const std::string& origin) {
  ParseResult r = parse_source(text);
  if (!r.ok()) throw SourceError(origin, std::move(r.diagnostics));
  return std::move(*r.automaton);
}

Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SourceError(path, {{SourcePos{0, 0}, "cannot open file"}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_source_or_throw(ss.str(), path);
}

}  // namespace p4aeq

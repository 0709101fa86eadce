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

#include "p4aeq/confrel/formula.hpp"

#include <algorithm>
#include <set>

namespace p4aeq {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::optional<std::size_t> slice_width(std::optional<std::size_t> base, std::size_t lo,
                                       std::size_t hi) {
  if (!base) return std::nullopt;
  if (*base == 0) return 0;
  lo = std::min(lo, *base - 1);
  hi = std::min(hi, *base - 1);
  return lo > hi ? 0 : hi - lo + 1;
}

}  // namespace

BitExpr::BitExpr(Node n) {
  auto rep = std::make_shared<Rep>();
  rep->hash = n.index();
  std::visit(overloaded{
                 [&](const Lit& x) {
                   rep->width = x.bits.size();
                   rep->hash = mix(mix(rep->hash, x.bits.size()), x.bits.hash());
                 },
                 [&](const Buf& x) {
                   rep->width = x.width;
                   rep->hash = mix(mix(rep->hash, static_cast<std::size_t>(x.side)),
                                   x.width ? *x.width + 1 : 0);
                 },
                 [&](const Hdr& x) {
                   rep->width = x.width;
                   rep->hash = mix(mix(rep->hash, x.id), static_cast<std::size_t>(x.side));
                 },
                 [&](const Var& x) {
                   rep->width = 1;
                   rep->hash = mix(rep->hash, x.id);
                 },
                 [&](const Slice& x) {
                   rep->width = slice_width(x.base.width(), x.lo, x.hi);
                   rep->hash = mix(mix(mix(rep->hash, x.base.hash()), x.lo), x.hi);
                 },
                 [&](const Concat& x) {
                   std::size_t total = 0;
                   bool known = true;
                   for (const BitExpr& p : x.parts) {
                     rep->hash = mix(rep->hash, p.hash());
                     if (auto w = p.width()) {
                       total += *w;
                     } else {
                       known = false;
                     }
                   }
                   if (known) rep->width = total;
                 },
             },
             n);
  rep->node = std::move(n);
  node_ = std::move(rep);
}

BitExpr BitExpr::lit(BitVec bits) { return BitExpr(Lit{std::move(bits)}); }
BitExpr BitExpr::buf(Side side, std::optional<std::size_t> width) { return BitExpr(Buf{side, width}); }
BitExpr BitExpr::hdr(HeaderId id, Side side, std::size_t width) { return BitExpr(Hdr{id, side, width}); }
BitExpr BitExpr::var(VarId id) { return BitExpr(Var{id}); }
BitExpr BitExpr::slice(BitExpr base, std::size_t lo, std::size_t hi) {
  return BitExpr(Slice{std::move(base), lo, hi});
}
BitExpr BitExpr::concat(std::vector<BitExpr> parts) { return BitExpr(Concat{std::move(parts)}); }

bool operator==(const BitExpr& a, const BitExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == std::strong_ordering::equal;
}

std::strong_ordering compare(const BitExpr& a, const BitExpr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = a.node();
  const auto& y = b.node();
  if (x.index() != y.index()) return x.index() <=> y.index();
  return std::visit(
      [&](const auto& l) -> std::strong_ordering {
        using T = std::decay_t<decltype(l)>;
        const T& r = std::get<T>(y);
        if constexpr (std::is_same_v<T, BitExpr::Lit>) {
          return l.bits <=> r.bits;
        } else if constexpr (std::is_same_v<T, BitExpr::Buf>) {
          if (l.side != r.side) return l.side <=> r.side;
          return l.width <=> r.width;
        } else if constexpr (std::is_same_v<T, BitExpr::Hdr>) {
          if (l.side != r.side) return l.side <=> r.side;
          if (l.id != r.id) return l.id <=> r.id;
          return l.width <=> r.width;
        } else if constexpr (std::is_same_v<T, BitExpr::Var>) {
          return l.id <=> r.id;
        } else if constexpr (std::is_same_v<T, BitExpr::Slice>) {
          if (auto c = compare(l.base, r.base); c != 0) return c;
          if (l.lo != r.lo) return l.lo <=> r.lo;
          return l.hi <=> r.hi;
        } else {
          if (l.parts.size() != r.parts.size()) return l.parts.size() <=> r.parts.size();
          for (std::size_t i = 0; i < l.parts.size(); ++i) {
            if (auto c = compare(l.parts[i], r.parts[i]); c != 0) return c;
          }
          return std::strong_ordering::equal;
        }
      },
      x);
}

Formula::Formula(Node n) {
  auto rep = std::make_shared<Rep>();
  std::size_t h = mix(0x51ed270b, n.index());
  std::visit(overloaded{
                 [&](const Bottom&) {},
                 [&](const Top&) {},
                 [&](const Eq& x) { h = mix(mix(h, x.lhs.hash()), x.rhs.hash()); },
                 [&](const StateIs& x) {
                   h = mix(mix(h, static_cast<std::size_t>(x.state.raw() + 3)),
                           static_cast<std::size_t>(x.side));
                 },
                 [&](const BufLen& x) { h = mix(mix(h, x.length), static_cast<std::size_t>(x.side)); },
                 [&](const Implies& x) { h = mix(mix(h, x.lhs.hash()), x.rhs.hash()); },
                 [&](const And& x) {
                   for (const Formula& t : x.terms) h = mix(h, t.hash());
                 },
                 [&](const Or& x) {
                   for (const Formula& t : x.terms) h = mix(h, t.hash());
                 },
             },
             n);
  rep->hash = h;
  rep->node = std::move(n);
  node_ = std::move(rep);
}

Formula Formula::bottom() {
  static const Formula f{Bottom{}};
  return f;
}
Formula Formula::top() {
  static const Formula f{Top{}};
  return f;
}
Formula Formula::eq(BitExpr lhs, BitExpr rhs) { return Formula(Eq{std::move(lhs), std::move(rhs)}); }
Formula Formula::state_is(StateRef q, Side side) { return Formula(StateIs{q, side}); }
Formula Formula::buflen(std::size_t n, Side side) { return Formula(BufLen{n, side}); }
Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(Implies{std::move(lhs), std::move(rhs)});
}
Formula Formula::conj(std::vector<Formula> terms) { return Formula(And{std::move(terms)}); }
Formula Formula::disj(std::vector<Formula> terms) { return Formula(Or{std::move(terms)}); }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == std::strong_ordering::equal;
}

std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = a.node();
  const auto& y = b.node();
  if (x.index() != y.index()) return x.index() <=> y.index();
  auto seq = [](const std::vector<Formula>& l, const std::vector<Formula>& r) {
    if (l.size() != r.size()) return l.size() <=> r.size();
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (auto c = compare(l[i], r[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  };
  return std::visit(
      [&](const auto& l) -> std::strong_ordering {
        using T = std::decay_t<decltype(l)>;
        const T& r = std::get<T>(y);
        if constexpr (std::is_same_v<T, Formula::Eq>) {
          if (auto c = compare(l.lhs, r.lhs); c != 0) return c;
          return compare(l.rhs, r.rhs);
        } else if constexpr (std::is_same_v<T, Formula::StateIs>) {
          if (l.side != r.side) return l.side <=> r.side;
          return l.state <=> r.state;
        } else if constexpr (std::is_same_v<T, Formula::BufLen>) {
          if (l.side != r.side) return l.side <=> r.side;
          return l.length <=> r.length;
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          if (auto c = compare(l.lhs, r.lhs); c != 0) return c;
          return compare(l.rhs, r.rhs);
        } else if constexpr (std::is_same_v<T, Formula::And> || std::is_same_v<T, Formula::Or>) {
          return seq(l.terms, r.terms);
        } else {
          return std::strong_ordering::equal;
        }
      },
      x);
}

// ---------------------------------------------------------------------------
// Smart constructors

BitExpr mk_slice(const BitExpr& base, std::size_t lo, std::size_t hi) {
  const auto w = base.width();
  if (!w) return BitExpr::slice(base, lo, hi);
  if (*w == 0) return BitExpr::empty();
  lo = std::min(lo, *w - 1);
  hi = std::min(hi, *w - 1);
  if (lo > hi) return BitExpr::empty();
  if (lo == 0 && hi == *w - 1) return base;

  if (const auto* l = base.as<BitExpr::Lit>()) return BitExpr::lit(l->bits.slice(lo, hi));
  if (const auto* s = base.as<BitExpr::Slice>()) {
    const auto bw = s->base.width();
    if (bw && s->lo <= s->hi && s->hi < *bw) return mk_slice(s->base, s->lo + lo, s->lo + hi);
  }
  if (const auto* c = base.as<BitExpr::Concat>()) {
    std::vector<BitExpr> pieces;
    std::size_t off = 0;
    for (const BitExpr& p : c->parts) {
      const std::size_t pw = *p.width();
      const std::size_t end = off + pw;  // exclusive
      if (pw > 0 && end > lo && off <= hi) {
        const std::size_t plo = lo > off ? lo - off : 0;
        const std::size_t phi = std::min(hi, end - 1) - off;
        pieces.push_back(mk_slice(p, plo, phi));
      }
      off = end;
    }
    return mk_concat(std::move(pieces));
  }
  return BitExpr::slice(base, lo, hi);
}

BitExpr mk_concat(std::vector<BitExpr> parts) {
  std::vector<BitExpr> flat;
  flat.reserve(parts.size());
  auto push = [&](const BitExpr& p) {
    if (p.width() == std::optional<std::size_t>{0}) return;
    if (!flat.empty()) {
      const BitExpr& prev = flat.back();
      const auto* a = prev.as<BitExpr::Lit>();
      const auto* b = p.as<BitExpr::Lit>();
      if (a && b) {
        flat.back() = BitExpr::lit(a->bits.concat(b->bits));
        return;
      }
      const auto* sa = prev.as<BitExpr::Slice>();
      const auto* sb = p.as<BitExpr::Slice>();
      if (sa && sb && sa->base == sb->base && sa->base.width() && sa->hi + 1 == sb->lo &&
          sb->hi < *sa->base.width() && sa->lo <= sa->hi && sb->lo <= sb->hi) {
        flat.back() = mk_slice(sa->base, sa->lo, sb->hi);
        return;
      }
    }
    flat.push_back(p);
  };
  for (const BitExpr& p : parts) {
    if (const auto* c = p.as<BitExpr::Concat>()) {
      for (const BitExpr& q : c->parts) push(q);
    } else {
      push(p);
    }
  }
  if (flat.empty()) return BitExpr::empty();
  if (flat.size() == 1) return flat.front();
  return BitExpr::concat(std::move(flat));
}

namespace {

// Offsets at which `e` splits into concatenation parts; nullopt if any part
// width is unknown.
std::optional<std::vector<std::size_t>> part_boundaries(const BitExpr& e) {
  std::vector<std::size_t> out{0};
  if (const auto* c = e.as<BitExpr::Concat>()) {
    std::size_t off = 0;
    for (const BitExpr& p : c->parts) {
      if (!p.width()) return std::nullopt;
      off += *p.width();
      out.push_back(off);
    }
  } else {
    if (!e.width()) return std::nullopt;
    out.push_back(*e.width());
  }
  return out;
}

}  // namespace

Formula mk_eq(const BitExpr& lhs, const BitExpr& rhs) {
  if (lhs == rhs) return Formula::top();
  const auto wl = lhs.width();
  const auto wr = rhs.width();
  if (wl && wr && *wl != *wr) return Formula::bottom();
  if (wl && *wl == 0 && wr && *wr == 0) return Formula::top();
  const auto* ll = lhs.as<BitExpr::Lit>();
  const auto* rl = rhs.as<BitExpr::Lit>();
  if (ll && rl) return ll->bits == rl->bits ? Formula::top() : Formula::bottom();

  if (wl && wr && (lhs.as<BitExpr::Concat>() || rhs.as<BitExpr::Concat>())) {
    auto bl = part_boundaries(lhs);
    auto br = part_boundaries(rhs);
    if (bl && br) {
      std::set<std::size_t> cuts(bl->begin(), bl->end());
      cuts.insert(br->begin(), br->end());
      std::vector<std::size_t> pts(cuts.begin(), cuts.end());
      if (pts.size() > 2) {
        std::vector<Formula> terms;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
          if (pts[i] == pts[i + 1]) continue;
          terms.push_back(mk_eq(mk_slice(lhs, pts[i], pts[i + 1] - 1),
                                mk_slice(rhs, pts[i], pts[i + 1] - 1)));
        }
        return mk_and(std::move(terms));
      }
    }
  }
  if (compare(lhs, rhs) > 0) return Formula::eq(rhs, lhs);
  return Formula::eq(lhs, rhs);
}

Formula mk_not(const Formula& f) { return mk_implies(f, Formula::bottom()); }

Formula mk_implies(const Formula& lhs, const Formula& rhs) {
  if (lhs.is_bottom() || rhs.is_top()) return Formula::top();
  if (lhs.is_top()) return rhs;
  if (lhs == rhs) return Formula::top();
  if (rhs.is_bottom()) {
    if (const auto* inner = lhs.as<Formula::Implies>(); inner && inner->rhs.is_bottom()) {
      return inner->lhs;
    }
    return Formula::implies(lhs, rhs);
  }
  if (const auto* a = lhs.as<Formula::And>()) {
    for (const Formula& t : a->terms) {
      if (t == rhs) return Formula::top();
    }
  }
  // a ⟹ (b ⟹ c) becomes (a ∧ b) ⟹ c.
  if (const auto* r = rhs.as<Formula::Implies>(); r && !r->rhs.is_bottom()) {
    return mk_implies(mk_and({lhs, r->lhs}), r->rhs);
  }
  return Formula::implies(lhs, rhs);
}

namespace {

std::vector<Formula> normalize_terms(std::vector<Formula> terms, bool is_and) {
  std::vector<Formula> flat;
  for (Formula& t : terms) {
    const std::vector<Formula>* nested = nullptr;
    if (is_and) {
      if (const auto* a = t.as<Formula::And>()) nested = &a->terms;
    } else {
      if (const auto* o = t.as<Formula::Or>()) nested = &o->terms;
    }
    if (nested) {
      flat.insert(flat.end(), nested->begin(), nested->end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  std::sort(flat.begin(), flat.end(), [](const Formula& a, const Formula& b) { return compare(a, b) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  return flat;
}

bool has_complement(const std::vector<Formula>& terms) {
  for (const Formula& t : terms) {
    const auto* n = t.as<Formula::Implies>();
    if (!n || !n->rhs.is_bottom()) continue;
    if (std::binary_search(terms.begin(), terms.end(), n->lhs,
                           [](const Formula& a, const Formula& b) { return compare(a, b) < 0; })) {
      return true;
    }
  }
  return false;
}

}  // namespace

Formula mk_and(std::vector<Formula> terms) {
  std::vector<Formula> kept;
  for (Formula& t : normalize_terms(std::move(terms), true)) {
    if (t.is_bottom()) return Formula::bottom();
    if (!t.is_top()) kept.push_back(std::move(t));
  }
  if (kept.empty()) return Formula::top();
  if (kept.size() == 1) return kept.front();
  if (has_complement(kept)) return Formula::bottom();
  return Formula::conj(std::move(kept));
}

Formula mk_or(std::vector<Formula> terms) {
  std::vector<Formula> kept;
  for (Formula& t : normalize_terms(std::move(terms), false)) {
    if (t.is_top()) return Formula::top();
    if (!t.is_bottom()) kept.push_back(std::move(t));
  }
  if (kept.empty()) return Formula::bottom();
  if (kept.size() == 1) return kept.front();
  if (has_complement(kept)) return Formula::top();
  return Formula::disj(std::move(kept));
}

// ---------------------------------------------------------------------------
// Traversals

BitExpr substitute(const BitExpr& e, const SideSubstitution& sub) {
  return std::visit(
      overloaded{
          [&](const BitExpr::Lit&) { return e; },
          [&](const BitExpr::Var&) { return e; },
          [&](const BitExpr::Buf& b) {
            if (b.side == sub.side && sub.buffer) return *sub.buffer;
            return e;
          },
          [&](const BitExpr::Hdr& h) {
            if (h.side == sub.side && sub.headers && h.id < sub.headers->size()) {
              if (const auto& r = (*sub.headers)[h.id]) return *r;
            }
            return e;
          },
          [&](const BitExpr::Slice& s) { return mk_slice(substitute(s.base, sub), s.lo, s.hi); },
          [&](const BitExpr::Concat& c) {
            std::vector<BitExpr> parts;
            parts.reserve(c.parts.size());
            for (const BitExpr& p : c.parts) parts.push_back(substitute(p, sub));
            return mk_concat(std::move(parts));
          },
      },
      e.node());
}

Formula substitute(const Formula& f, const SideSubstitution& sub) {
  return std::visit(
      overloaded{
          [&](const Formula::Bottom&) { return f; },
          [&](const Formula::Top&) { return f; },
          [&](const Formula::StateIs&) { return f; },
          [&](const Formula::BufLen&) { return f; },
          [&](const Formula::Eq& x) { return mk_eq(substitute(x.lhs, sub), substitute(x.rhs, sub)); },
          [&](const Formula::Implies& x) {
            return mk_implies(substitute(x.lhs, sub), substitute(x.rhs, sub));
          },
          [&](const Formula::And& x) {
            std::vector<Formula> ts;
            for (const Formula& t : x.terms) ts.push_back(substitute(t, sub));
            return mk_and(std::move(ts));
          },
          [&](const Formula::Or& x) {
            std::vector<Formula> ts;
            for (const Formula& t : x.terms) ts.push_back(substitute(t, sub));
            return mk_or(std::move(ts));
          },
      },
      f.node());
}

BitExpr simplify(const BitExpr& e) { return substitute(e, SideSubstitution{}); }
Formula simplify(const Formula& f) { return substitute(f, SideSubstitution{}); }

Formula to_primitive(const Formula& f) {
  const Formula bot = Formula::bottom();
  auto neg = [&](Formula x) { return Formula::implies(std::move(x), bot); };
  return std::visit(
      overloaded{
          [&](const Formula::Top&) { return Formula::implies(bot, bot); },
          [&](const Formula::Implies& x) {
            return Formula::implies(to_primitive(x.lhs), to_primitive(x.rhs));
          },
          [&](const Formula::And& x) {
            // a ∧ b = ¬(a ⟹ ¬b); the empty conjunction is ⊤.
            if (x.terms.empty()) return Formula::implies(bot, bot);
            Formula acc = to_primitive(x.terms.back());
            for (std::size_t i = x.terms.size() - 1; i-- > 0;) {
              acc = neg(Formula::implies(to_primitive(x.terms[i]), neg(acc)));
            }
            return acc;
          },
          [&](const Formula::Or& x) {
            // a ∨ b = ¬a ⟹ b; the empty disjunction is ⊥.
            if (x.terms.empty()) return bot;
            Formula acc = to_primitive(x.terms.back());
            for (std::size_t i = x.terms.size() - 1; i-- > 0;) {
              acc = Formula::implies(neg(to_primitive(x.terms[i])), acc);
            }
            return acc;
          },
          [&](const auto&) { return f; },
      },
      f.node());
}

bool is_pure(const Formula& f) {
  return std::visit(overloaded{
                        [](const Formula::StateIs&) { return false; },
                        [](const Formula::BufLen&) { return false; },
                        [](const Formula::Implies& x) { return is_pure(x.lhs) && is_pure(x.rhs); },
                        [](const Formula::And& x) {
                          return std::all_of(x.terms.begin(), x.terms.end(),
                                             [](const Formula& t) { return is_pure(t); });
                        },
                        [](const Formula::Or& x) {
                          return std::all_of(x.terms.begin(), x.terms.end(),
                                             [](const Formula& t) { return is_pure(t); });
                        },
                        [](const auto&) { return true; },
                    },
                    f.node());
}

namespace {

void collect_vars(const BitExpr& e, std::set<VarId>& out) {
  std::visit(overloaded{
                 [&](const BitExpr::Var& v) { out.insert(v.id); },
                 [&](const BitExpr::Slice& s) { collect_vars(s.base, out); },
                 [&](const BitExpr::Concat& c) {
                   for (const BitExpr& p : c.parts) collect_vars(p, out);
                 },
                 [](const auto&) {},
             },
             e.node());
}

void collect_vars(const Formula& f, std::set<VarId>& out) {
  std::visit(overloaded{
                 [&](const Formula::Eq& x) {
                   collect_vars(x.lhs, out);
                   collect_vars(x.rhs, out);
                 },
                 [&](const Formula::Implies& x) {
                   collect_vars(x.lhs, out);
                   collect_vars(x.rhs, out);
                 },
                 [&](const Formula::And& x) {
                   for (const Formula& t : x.terms) collect_vars(t, out);
                 },
                 [&](const Formula::Or& x) {
                   for (const Formula& t : x.terms) collect_vars(t, out);
                 },
                 [](const auto&) {},
             },
             f.node());
}

}  // namespace

std::vector<VarId> free_vars(const Formula& f) {
  std::set<VarId> s;
  collect_vars(f, s);
  return {s.begin(), s.end()};
}

std::vector<VarId> free_vars(const BitExpr& e) {
  std::set<VarId> s;
  collect_vars(e, s);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Templates

Formula template_assertion(const Template& t, Side side) {
  return Formula::conj({Formula::state_is(t.state, side), Formula::buflen(t.buflen, side)});
}

Formula GuardedFormula::as_formula() const {
  return Formula::implies(Formula::conj({Formula::state_is(left.state, Side::Left),
                                         Formula::buflen(left.buflen, Side::Left),
                                         Formula::state_is(right.state, Side::Right),
                                         Formula::buflen(right.buflen, Side::Right)}),
                          body);
}

std::size_t GuardedFormula::hash() const {
  std::size_t h = std::hash<Template>{}(left);
  h = mix(h, std::hash<Template>{}(right));
  return mix(h, body.hash());
}

Formula annotate_buffers(const Formula& body, std::size_t left_len, std::size_t right_len) {
  auto as_buf = [](Side side, std::size_t n) {
    return n == 0 ? BitExpr::empty() : BitExpr::buf(side, n);
  };
  SideSubstitution l{Side::Left, as_buf(Side::Left, left_len), nullptr};
  SideSubstitution r{Side::Right, as_buf(Side::Right, right_len), nullptr};
  return substitute(substitute(body, l), r);
}

GuardedFormula guard_simplified(const Template& left, const Template& right, const Formula& body) {
  return guard(left, right, annotate_buffers(body, left.buflen, right.buflen));
}

GuardedFormula guard(const Template& left, const Template& right, Formula body) {
  if (!is_pure(body)) throw NotPure("guarded body mentions a state or buffer length");
  return GuardedFormula{left, right, std::move(body)};
}

}  // namespace p4aeq

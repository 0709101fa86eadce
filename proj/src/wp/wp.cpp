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

#include "p4aeq/wp/wp.hpp"

#include <algorithm>

namespace p4aeq {

std::size_t remaining_bits(const Template& t, const Automaton& aut) {
  if (!t.state.is_user()) return 0;
  return aut.opsize(t.state) - t.buflen;
}

std::size_t leap_size(const Template& left, const Template& right, const Automaton& aut) {
  const bool lu = left.state.is_user();
  const bool ru = right.state.is_user();
  if (!lu && !ru) return 1;
  if (!ru) return remaining_bits(left, aut);
  if (!lu) return remaining_bits(right, aut);
  return std::min(remaining_bits(left, aut), remaining_bits(right, aut));
}

BitExpr symbolic_expr(const Expr& e, const SymbolicStore& st, Side side, const Automaton& aut) {
  return std::visit(
      [&](const auto& n) -> BitExpr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          if (n.id < st.size() && st[n.id]) return *st[n.id];
          return BitExpr::hdr(n.id, side, aut.header(n.id).size);
        } else if constexpr (std::is_same_v<T, Expr::Literal>) {
          return BitExpr::lit(n.bits);
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          return mk_slice(symbolic_expr(n.base, st, side, aut), n.lo, n.hi);
        } else {
          return mk_concat({symbolic_expr(n.left, st, side, aut), symbolic_expr(n.right, st, side, aut)});
        }
      },
      e.node());
}

SymbolicStore symbolic_exec_op(const OpBlock& op, SymbolicStore st, const BitExpr& buf, Side side,
                               const Automaton& aut) {
  const std::size_t need = opsize(op, aut);
  if (buf.width() != std::optional<std::size_t>{need}) {
    throw WidthError("operation block reads " + std::to_string(need) + " bits but the buffer has " +
                     (buf.width() ? std::to_string(*buf.width()) : std::string("unknown")) + " bits");
  }
  st.resize(aut.headers().size());
  std::size_t offset = 0;
  for (const Statement& s : op) {
    if (const auto* ex = std::get_if<Extract>(&s)) {
      const std::size_t sz = aut.header(ex->header).size;
      st[ex->header] = mk_slice(buf, offset, offset + sz - 1);
      offset += sz;
    } else {
      const auto& as = std::get<Assign>(s);
      st[as.header] = symbolic_expr(as.value, st, side, aut);
    }
  }
  return st;
}

Formula symbolic_trans_cond(const Transition& tz, const SymbolicStore& st, StateRef target, Side side,
                            const Automaton& aut) {
  if (const auto* g = std::get_if<Goto>(&tz)) return g->target == target ? Formula::top() : Formula::bottom();
  const auto& sel = std::get<Select>(tz);
  std::vector<BitExpr> values;
  values.reserve(sel.exprs.size());
  for (const Expr& e : sel.exprs) values.push_back(symbolic_expr(e, st, side, aut));

  std::vector<Formula> earlier_miss;  // ¬match_j for every case j seen so far
  std::vector<Formula> routes;
  for (const SelectCase& c : sel.cases) {
    std::vector<Formula> eqs;
    for (std::size_t i = 0; i < c.patterns.size() && i < values.size(); ++i) {
      if (!c.patterns[i].is_wildcard()) eqs.push_back(mk_eq(values[i], BitExpr::lit(*c.patterns[i].exact)));
    }
    Formula match = mk_and(std::move(eqs));
    if (c.target == target) {
      std::vector<Formula> conds = earlier_miss;
      conds.push_back(match);
      routes.push_back(mk_and(std::move(conds)));
    }
    earlier_miss.push_back(mk_not(match));
  }
  if (target.is_reject()) routes.push_back(mk_and(std::move(earlier_miss)));
  return mk_or(std::move(routes));
}

namespace {

BitExpr bits_of(std::span<const VarId> xs) {
  std::vector<BitExpr> parts;
  parts.reserve(xs.size());
  for (VarId x : xs) parts.push_back(BitExpr::var(x));
  return mk_concat(std::move(parts));
}

}  // namespace

namespace {

Formula wp_side_shared(const Formula& phi, Side side, const Template& src, const Template& dst,
                       std::span<const VarId> xs, const Automaton& aut) {
  if (!src.state.is_user()) {
    if (dst != Template::reject()) return Formula::top();
    return substitute(phi, SideSubstitution{side, BitExpr::empty(), nullptr});
  }
  const std::size_t rem = remaining_bits(src, aut);
  const std::size_t k = xs.size();
  if (k == 0 || k > rem) throw WidthError("leap of " + std::to_string(k) + " bits from a template with " +
                                          std::to_string(rem) + " bits remaining");
  const BitExpr read = mk_concat({BitExpr::buf(side, src.buflen), bits_of(xs)});
  if (k < rem) {
    if (dst != Template{src.state, src.buflen + k}) return Formula::top();
    return substitute(phi, SideSubstitution{side, read, nullptr});
  }
  if (dst.buflen != 0) return Formula::top();
  const State& st = aut.state(src.state);
  const auto targets = transition_targets(st.trans);
  if (std::find(targets.begin(), targets.end(), dst.state) == targets.end()) return Formula::top();
  const SymbolicStore post = symbolic_exec_op(st.ops, SymbolicStore(aut.headers().size()), read, side, aut);
  const Formula cond = symbolic_trans_cond(st.trans, post, dst.state, side, aut);
  if (cond.is_bottom()) return Formula::top();
  return mk_implies(cond, substitute(phi, SideSubstitution{side, BitExpr::empty(), &post}));
}

}  // namespace

Formula wp_side(const Formula& phi, Side side, const Template& src, const Template& dst,
                std::span<const VarId> xs, const Automaton& aut) {
  const std::vector<VarId> used = free_vars(phi);
  for (VarId x : xs) {
    if (std::binary_search(used.begin(), used.end(), x)) {
      throw FreshnessError("$x" + std::to_string(x) + " already occurs in the formula");
    }
  }
  return wp_side_shared(phi, side, src, dst, xs, aut);
}

std::vector<GuardedFormula> wp(const GuardedFormula& psi, std::span<const TemplatePair> candidates,
                               bool leaps, VarSupply& vars, const Automaton& aut) {
  std::vector<GuardedFormula> out;
  for (const TemplatePair& p : candidates) {
    const std::size_t k = leaps ? leap_size(p.left, p.right, aut) : 1;
    std::vector<VarId> xs(k);
    for (VarId& x : xs) x = vars.fresh();
    const Formula right = wp_side(psi.body, Side::Right, p.right, psi.right, xs, aut);
    if (right.is_top()) continue;
    // The left side reads the same bits the right side just consumed.
    const Formula both = wp_side_shared(right, Side::Left, p.left, psi.left, xs, aut);
    if (both.is_top()) continue;
    GuardedFormula g = guard_simplified(p.left, p.right, both);
    if (g.body.is_top()) continue;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace p4aeq

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

#include "p4aeq/confrel/eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace p4aeq {

BitVec eval_bit_expr(const BitExpr& e, const Configuration& cl, const Configuration& cr,
                     const Valuation& v) {
  return std::visit(
      [&](const auto& n) -> BitVec {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BitExpr::Lit>) {
          return n.bits;
        } else if constexpr (std::is_same_v<T, BitExpr::Buf>) {
          return n.side == Side::Left ? cl.buffer : cr.buffer;
        } else if constexpr (std::is_same_v<T, BitExpr::Hdr>) {
          return (n.side == Side::Left ? cl.store : cr.store).at(n.id);
        } else if constexpr (std::is_same_v<T, BitExpr::Var>) {
          auto it = v.find(n.id);
          if (it == v.end()) throw std::out_of_range("valuation misses $x" + std::to_string(n.id));
          return BitVec(1, it->second);
        } else if constexpr (std::is_same_v<T, BitExpr::Slice>) {
          return eval_bit_expr(n.base, cl, cr, v).slice(n.lo, n.hi);
        } else {
          BitVec out;
          for (const BitExpr& p : n.parts) out = out.concat(eval_bit_expr(p, cl, cr, v));
          return out;
        }
      },
      e.node());
}

bool holds(const Formula& f, const Configuration& cl, const Configuration& cr, const Valuation& v) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::Bottom>) {
          return false;
        } else if constexpr (std::is_same_v<T, Formula::Top>) {
          return true;
        } else if constexpr (std::is_same_v<T, Formula::Eq>) {
          return eval_bit_expr(n.lhs, cl, cr, v) == eval_bit_expr(n.rhs, cl, cr, v);
        } else if constexpr (std::is_same_v<T, Formula::StateIs>) {
          return (n.side == Side::Left ? cl.state : cr.state) == n.state;
        } else if constexpr (std::is_same_v<T, Formula::BufLen>) {
          return (n.side == Side::Left ? cl.buffer : cr.buffer).size() == n.length;
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          return !holds(n.lhs, cl, cr, v) || holds(n.rhs, cl, cr, v);
        } else if constexpr (std::is_same_v<T, Formula::And>) {
          return std::all_of(n.terms.begin(), n.terms.end(),
                             [&](const Formula& t) { return holds(t, cl, cr, v); });
        } else {
          return std::any_of(n.terms.begin(), n.terms.end(),
                             [&](const Formula& t) { return holds(t, cl, cr, v); });
        }
      },
      f.node());
}

bool denotes(const Formula& f, const Configuration& cl, const Configuration& cr) {
  const std::vector<VarId> vars = free_vars(f);
  if (vars.size() > 24) throw std::length_error("too many variables to enumerate");
  const std::uint64_t total = std::uint64_t{1} << vars.size();
  Valuation v;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = ((bits >> i) & 1U) != 0;
    if (!holds(f, cl, cr, v)) return false;
  }
  return true;
}

bool denotes(const GuardedFormula& g, const Configuration& cl, const Configuration& cr) {
  if (template_of(cl) != g.left || template_of(cr) != g.right) return true;
  return denotes(g.body, cl, cr);
}

Template template_of(const Configuration& c) { return {c.state, c.buffer.size()}; }

}  // namespace p4aeq

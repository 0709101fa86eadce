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

#include "p4aeq/core/semantics.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace p4aeq {

Store zero_store(const Automaton& aut) {
  Store s;
  s.reserve(aut.headers().size());
  for (const Header& h : aut.headers()) s.emplace_back(h.size);
  return s;
}

std::size_t width_of(const Expr& e, const Automaton& aut) {
  return std::visit(
      [&](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          if (n.id >= aut.headers().size()) {
            throw TypeError("unknown header #" + std::to_string(n.id));
          }
          return aut.header(n.id).size;
        } else if constexpr (std::is_same_v<T, Expr::Literal>) {
          return n.bits.size();
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          const std::size_t w = width_of(n.base, aut);
          if (n.lo > n.hi) {
            throw TypeError("slice [" + std::to_string(n.lo) + ":" + std::to_string(n.hi) +
                            "] has lower bound above upper bound");
          }
          if (n.hi >= w) {
            throw TypeError("slice [" + std::to_string(n.lo) + ":" + std::to_string(n.hi) +
                            "] out of range for width " + std::to_string(w));
          }
          return n.hi - n.lo + 1;
        } else {
          return width_of(n.left, aut) + width_of(n.right, aut);
        }
      },
      e.node());
}

BitVec eval_expr(const Expr& e, const Store& s) {
  return std::visit(
      [&](const auto& n) -> BitVec {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          return s.at(n.id);
        } else if constexpr (std::is_same_v<T, Expr::Literal>) {
          return n.bits;
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          return eval_expr(n.base, s).slice(n.lo, n.hi);
        } else {
          return eval_expr(n.left, s).concat(eval_expr(n.right, s));
        }
      },
      e.node());
}

std::size_t opsize(const OpBlock& op, const Automaton& aut) {
  std::size_t total = 0;
  for (const Statement& st : op) {
    if (const auto* ex = std::get_if<Extract>(&st)) total += aut.header(ex->header).size;
  }
  return total;
}

std::pair<Store, BitVec> exec_op(const OpBlock& op, Store s, const BitVec& w, const Automaton& aut,
                                 bool strict) {
  if (strict && w.size() != opsize(op, aut)) {
    throw ArityError("operation block needs " + std::to_string(opsize(op, aut)) + " bits, got " +
                     std::to_string(w.size()));
  }
  std::size_t offset = 0;
  for (const Statement& st : op) {
    if (const auto* ex = std::get_if<Extract>(&st)) {
      const std::size_t sz = aut.header(ex->header).size;
      if (offset + sz > w.size()) {
        throw ArityError("extract(" + aut.header(ex->header).name + ") runs past the input");
      }
      s.at(ex->header) = w.take(offset, sz);
      offset += sz;
    } else {
      const auto& as = std::get<Assign>(st);
      BitVec v = eval_expr(as.value, s);
      if (v.size() != aut.header(as.header).size) {
        throw ArityError("assignment to " + aut.header(as.header).name + " has width " +
                         std::to_string(v.size()) + ", expected " +
                         std::to_string(aut.header(as.header).size));
      }
      s.at(as.header) = std::move(v);
    }
  }
  return {std::move(s), w.take(offset, w.size() - offset)};
}

StateRef eval_transition(const Transition& tz, const Store& s) {
  if (const auto* g = std::get_if<Goto>(&tz)) return g->target;
  const auto& sel = std::get<Select>(tz);
  std::vector<BitVec> values;
  values.reserve(sel.exprs.size());
  for (const Expr& e : sel.exprs) values.push_back(eval_expr(e, s));
  for (const SelectCase& c : sel.cases) {
    bool all = c.patterns.size() == values.size();
    for (std::size_t i = 0; all && i < values.size(); ++i) {
      const Pattern& p = c.patterns[i];
      if (!p.is_wildcard() && *p.exact != values[i]) all = false;
    }
    if (all) return c.target;
  }
  return StateRef::reject();
}

std::vector<StateRef> transition_targets(const Transition& tz) {
  std::set<StateRef> out;
  if (const auto* g = std::get_if<Goto>(&tz)) {
    out.insert(g->target);
  } else {
    for (const SelectCase& c : std::get<Select>(tz).cases) out.insert(c.target);
    out.insert(StateRef::reject());
  }
  return {out.begin(), out.end()};
}

namespace {

bool valid_target(StateRef q, const Automaton& aut) {
  return !q.is_user() || q.index() < aut.num_states();
}

}  // namespace

std::vector<Diagnostic> typecheck(const Automaton& aut) {
  std::vector<Diagnostic> out;
  if (aut.num_states() == 0) out.push_back({"", "automaton has no states"});
  std::unordered_set<std::string> names;
  for (const Header& h : aut.headers()) {
    if (h.size == 0) out.push_back({"", "header '" + h.name + "' has size 0"});
    if (!names.insert(h.name).second) out.push_back({"", "duplicate header '" + h.name + "'"});
  }
  std::unordered_set<std::string> state_names;
  for (const State& st : aut.states()) {
    const std::string& where = st.name;
    if (!state_names.insert(st.name).second) out.push_back({where, "duplicate state name"});
    std::size_t bits = 0;
    for (const Statement& s : st.ops) {
      if (const auto* ex = std::get_if<Extract>(&s)) {
        if (ex->header >= aut.headers().size()) {
          out.push_back({where, "extract of unknown header"});
          continue;
        }
        bits += aut.header(ex->header).size;
      } else {
        const auto& as = std::get<Assign>(s);
        if (as.header >= aut.headers().size()) {
          out.push_back({where, "assignment to unknown header"});
          continue;
        }
        try {
          const std::size_t w = width_of(as.value, aut);
          if (w != aut.header(as.header).size) {
            out.push_back({where, "assignment to '" + aut.header(as.header).name + "' has width " +
                                      std::to_string(w) + ", header has " +
                                      std::to_string(aut.header(as.header).size)});
          }
        } catch (const TypeError& err) {
          out.push_back({where, err.what()});
        }
      }
    }
    if (bits == 0) out.push_back({where, "state makes no progress (extracts no bits)"});

    if (const auto* g = std::get_if<Goto>(&st.trans)) {
      if (!valid_target(g->target, aut)) out.push_back({where, "goto to undeclared state"});
    } else {
      const auto& sel = std::get<Select>(st.trans);
      std::vector<std::size_t> widths;
      for (const Expr& e : sel.exprs) {
        try {
          widths.push_back(width_of(e, aut));
        } catch (const TypeError& err) {
          out.push_back({where, err.what()});
          widths.push_back(0);
        }
      }
      for (const SelectCase& c : sel.cases) {
        if (!valid_target(c.target, aut)) out.push_back({where, "select case targets undeclared state"});
        if (c.patterns.size() != sel.exprs.size()) {
          out.push_back({where, "select case has " + std::to_string(c.patterns.size()) +
                                    " patterns for " + std::to_string(sel.exprs.size()) +
                                    " expressions"});
          continue;
        }
        for (std::size_t i = 0; i < c.patterns.size(); ++i) {
          const Pattern& p = c.patterns[i];
          if (!p.is_wildcard() && widths[i] != 0 && p.exact->size() != widths[i]) {
            out.push_back({where, "pattern " + p.exact->to_string() + " has width " +
                                      std::to_string(p.exact->size()) + ", expression has " +
                                      std::to_string(widths[i])});
          }
        }
      }
    }
  }
  return out;
}

Configuration initial_configuration(StateRef q, Store s) { return {q, std::move(s), BitVec{}}; }

Configuration step(const Configuration& c, bool bit, const Automaton& aut) {
  if (!c.state.is_user()) return {StateRef::reject(), c.store, BitVec{}};
  BitVec w = c.buffer;
  w.push_back(bit);
  const State& st = aut.state(c.state);
  const std::size_t need = opsize(st.ops, aut);
  if (w.size() < need) return {c.state, c.store, std::move(w)};
  auto [store, rest] = exec_op(st.ops, c.store, w, aut);
  const StateRef next = eval_transition(st.trans, store);
  return {next, std::move(store), BitVec{}};
}

Configuration multi_step(Configuration c, const BitVec& w, const Automaton& aut) {
  for (std::size_t i = 0; i < w.size(); ++i) c = step(c, w[i], aut);
  return c;
}

bool is_accepting(const Configuration& c) { return c.state.is_accept() && c.buffer.empty(); }

bool accepts(StateRef q, const Store& s, const BitVec& w, const Automaton& aut) {
  return is_accepting(multi_step(initial_configuration(q, s), w, aut));
}

namespace {

Expr rename_expr(const Expr& e, const std::vector<HeaderId>& map) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          return Expr::header(map.at(n.id));
        } else if constexpr (std::is_same_v<T, Expr::Literal>) {
          return e;
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          return Expr::slice(rename_expr(n.base, map), n.lo, n.hi);
        } else {
          return Expr::concat(rename_expr(n.left, map), rename_expr(n.right, map));
        }
      },
      e.node());
}

void append_side(const Automaton& src, const std::string& prefix, Automaton& dst,
                 std::vector<HeaderId>& header_map, std::vector<StateRef>& state_map) {
  for (const Header& h : src.headers()) header_map.push_back(dst.add_header(prefix + h.name, h.size));
  const auto base = static_cast<std::uint32_t>(dst.num_states());
  for (std::uint32_t i = 0; i < src.num_states(); ++i) state_map.push_back(StateRef::user(base + i));
  auto map_state = [&](StateRef q) { return q.is_user() ? state_map.at(q.index()) : q; };
  for (const State& st : src.states()) {
    State out;
    out.name = prefix + st.name;
    for (const Statement& s : st.ops) {
      if (const auto* ex = std::get_if<Extract>(&s)) {
        out.ops.emplace_back(Extract{header_map.at(ex->header)});
      } else {
        const auto& as = std::get<Assign>(s);
        out.ops.emplace_back(Assign{header_map.at(as.header), rename_expr(as.value, header_map)});
      }
    }
    if (const auto* g = std::get_if<Goto>(&st.trans)) {
      out.trans = Goto{map_state(g->target)};
    } else {
      const auto& sel = std::get<Select>(st.trans);
      Select ns;
      for (const Expr& e : sel.exprs) ns.exprs.push_back(rename_expr(e, header_map));
      for (const SelectCase& c : sel.cases) ns.cases.push_back({c.patterns, map_state(c.target)});
      out.trans = std::move(ns);
    }
    dst.add_state(std::move(out));
  }
}

}  // namespace

SummedAutomaton disjoint_sum(const Automaton& left, const Automaton& right) {
  SummedAutomaton out;
  out.left = left;
  out.right = right;
  append_side(left, "l.", out.automaton, out.maps.left_headers, out.maps.left_states);
  append_side(right, "r.", out.automaton, out.maps.right_headers, out.maps.right_states);
  return out;
}

}  // namespace p4aeq

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

#include <sstream>

#include "p4aeq/frontend/source.hpp"

namespace p4aeq {

namespace {

std::string bits(const BitVec& v) { return "0b" + v.to_string(); }

void print_expr(std::ostream& out, const Expr& e, const Automaton& aut, bool right_operand) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          out << aut.header(n.id).name;
        } else if constexpr (std::is_same_v<T, Expr::Literal>) {
          out << bits(n.bits);
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          const bool wrap = std::holds_alternative<Expr::Concat>(n.base.node());
          if (wrap) out << '(';
          print_expr(out, n.base, aut, false);
          if (wrap) out << ')';
          out << '[' << n.lo << ':' << n.hi << ']';
        } else {
          // ++ is parsed left-associatively, so a concatenation on the right
          // needs parentheses to keep its shape.
          if (right_operand) out << '(';
          print_expr(out, n.left, aut, false);
          out << " ++ ";
          print_expr(out, n.right, aut, true);
          if (right_operand) out << ')';
        }
      },
      e.node());
}

}  // namespace

std::string pretty_print(const Automaton& aut) {
  if (aut.num_states() == 0) throw std::invalid_argument("cannot print an automaton with no states");
  std::ostringstream out;
  for (const Header& h : aut.headers()) out << "header " << h.name << " : " << h.size << ";\n";
  for (const State& st : aut.states()) {
    out << "\nstate " << st.name << " {\n";
    for (const Statement& s : st.ops) {
      if (const auto* ex = std::get_if<Extract>(&s)) {
        const Header& h = aut.header(ex->header);
        out << "  extract(" << h.name << ", " << h.size << ");\n";
      } else {
        const auto& as = std::get<Assign>(s);
        out << "  " << aut.header(as.header).name << " := ";
        print_expr(out, as.value, aut, false);
        out << ";\n";
      }
    }
    if (const auto* g = std::get_if<Goto>(&st.trans)) {
      out << "  goto " << aut.state_name(g->target) << ";\n";
    } else {
      const auto& sel = std::get<Select>(st.trans);
      out << "  select(";
      for (std::size_t i = 0; i < sel.exprs.size(); ++i) {
        if (i > 0) out << ", ";
        print_expr(out, sel.exprs[i], aut, false);
      }
      out << ") {\n";
      for (const SelectCase& c : sel.cases) {
        out << "    (";
        for (std::size_t i = 0; i < c.patterns.size(); ++i) {
          if (i > 0) out << ", ";
          out << (c.patterns[i].is_wildcard() ? "_" : bits(*c.patterns[i].exact));
        }
        out << ") => " << aut.state_name(c.target) << "\n";
      }
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace p4aeq

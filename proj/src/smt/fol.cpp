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

#include "p4aeq/smt/fol.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace p4aeq {

FilteredEntailment template_filter(std::span<const GuardedFormula> R, const GuardedFormula& psi) {
  FilteredEntailment out{psi.left, psi.right, {}, psi.body};
  for (const GuardedFormula& g : R) {
    if (g.left == psi.left && g.right == psi.right) out.premises.push_back(g.body);
  }
  return out;
}

bool FolBvQuery::quantified() const {
  return std::any_of(premises.begin(), premises.end(), [](const FolPremise& p) { return !p.bound.empty(); });
}

namespace {

const char* side_prefix(Side s) { return s == Side::Left ? "l" : "r"; }

std::string sanitize(const std::string& name) {
  std::string base = name;
  if (base.size() > 2 && (base.starts_with("l.") || base.starts_with("r."))) base = base.substr(2);
  std::string out;
  for (char c : base) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ? c : '_');
  }
  return out;
}

using VarKey = std::tuple<int, int, std::uint32_t>;  // kind, side, id

void collect(const BitExpr& e, std::map<VarKey, FolVar>& out, const Automaton& aut) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BitExpr::Hdr>) {
          const VarKey k{0, static_cast<int>(n.side), n.id};
          if (!out.contains(k)) {
            out[k] = FolVar{FolVar::Kind::Header, n.side, n.id, n.width,
                            std::string(side_prefix(n.side)) + "_hdr_" + sanitize(aut.header(n.id).name)};
          }
        } else if constexpr (std::is_same_v<T, BitExpr::Buf>) {
          if (!n.width || *n.width == 0) throw InternalError("buffer without a guard-fixed width");
          const VarKey k{1, static_cast<int>(n.side), 0};
          out[k] = FolVar{FolVar::Kind::Buffer, n.side, 0, *n.width, std::string(side_prefix(n.side)) + "_buf"};
        } else if constexpr (std::is_same_v<T, BitExpr::Var>) {
          // bit variables are handled per formula
        } else if constexpr (std::is_same_v<T, BitExpr::Slice>) {
          collect(n.base, out, aut);
        } else if constexpr (std::is_same_v<T, BitExpr::Concat>) {
          for (const BitExpr& p : n.parts) collect(p, out, aut);
        }
      },
      e.node());
}

void collect(const Formula& f, std::map<VarKey, FolVar>& out, const Automaton& aut) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Formula::Eq>) {
          collect(n.lhs, out, aut);
          collect(n.rhs, out, aut);
        } else if constexpr (std::is_same_v<T, Formula::Implies>) {
          collect(n.lhs, out, aut);
          collect(n.rhs, out, aut);
        } else if constexpr (std::is_same_v<T, Formula::And> || std::is_same_v<T, Formula::Or>) {
          for (const Formula& t : n.terms) collect(t, out, aut);
        } else if constexpr (std::is_same_v<T, Formula::StateIs> || std::is_same_v<T, Formula::BufLen>) {
          throw InternalError("state or buffer-length assertion reached the bitvector encoding");
        }
      },
      f.node());
}

}  // namespace

FolBvQuery to_fol_bv(const FilteredEntailment& fe, const Automaton& aut) {
  FolBvQuery q;
  std::map<VarKey, FolVar> vars;
  auto prepare = [&](const Formula& f) {
    if (!is_pure(f)) throw InternalError("state or buffer-length assertion reached the bitvector encoding");
    Formula g = annotate_buffers(f, fe.left.buflen, fe.right.buflen);
    collect(g, vars, aut);
    return g;
  };
  for (const Formula& p : fe.premises) {
    Formula body = prepare(p);
    if (body.is_top()) continue;
    q.premises.push_back({free_vars(body), body});
  }
  q.conclusion = prepare(fe.conclusion);
  for (VarId x : free_vars(q.conclusion)) {
    vars[VarKey{2, 0, x}] = FolVar{FolVar::Kind::Bit, Side::Left, x, 1, "x" + std::to_string(x)};
  }
  for (auto& [k, v] : vars) q.free.push_back(v);
  return q;
}

namespace {

struct Printer {
  const FolBvQuery& q;
  std::map<std::pair<int, std::uint32_t>, std::string> names;  // (kind|side, id) for headers/buffers
  const std::string* bit_prefix = nullptr;

  std::string name_of_var(VarId x) const {
    return (bit_prefix ? *bit_prefix : std::string()) + "x" + std::to_string(x);
  }

  std::string term(const BitExpr& e) const {
    return std::visit(
        [&](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, BitExpr::Lit>) {
            if (n.bits.empty()) throw InternalError("empty bitvector reached the SMT encoding");
            return "#b" + n.bits.to_string();
          } else if constexpr (std::is_same_v<T, BitExpr::Buf>) {
            return std::string(side_prefix(n.side)) + "_buf";
          } else if constexpr (std::is_same_v<T, BitExpr::Hdr>) {
            return names.at({static_cast<int>(n.side), n.id});
          } else if constexpr (std::is_same_v<T, BitExpr::Var>) {
            return name_of_var(n.id);
          } else if constexpr (std::is_same_v<T, BitExpr::Slice>) {
            const std::size_t w = *n.base.width();
            if (w == 0 || n.lo > n.hi || n.hi >= w) throw InternalError("unnormalized slice in SMT encoding");
            return "((_ extract " + std::to_string(w - 1 - n.lo) + " " + std::to_string(w - 1 - n.hi) + ") " +
                   term(n.base) + ")";
          } else {
            std::string out = term(n.parts.back());
            for (std::size_t i = n.parts.size() - 1; i-- > 0;) {
              out = "(concat " + term(n.parts[i]) + " " + out + ")";
            }
            return out;
          }
        },
        e.node());
  }

  std::string formula(const Formula& f) const {
    auto nary = [&](const char* op, const std::vector<Formula>& ts, const char* unit) {
      if (ts.empty()) return std::string(unit);
      if (ts.size() == 1) return formula(ts.front());
      std::string out = std::string("(") + op;
      for (const Formula& t : ts) out += " " + formula(t);
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
            if (n.lhs.width() != n.rhs.width()) return "false";
            return "(= " + term(n.lhs) + " " + term(n.rhs) + ")";
          } else if constexpr (std::is_same_v<T, Formula::Implies>) {
            if (n.rhs.is_bottom()) return "(not " + formula(n.lhs) + ")";
            return "(=> " + formula(n.lhs) + " " + formula(n.rhs) + ")";
          } else if constexpr (std::is_same_v<T, Formula::And>) {
            return nary("and", n.terms, "true");
          } else if constexpr (std::is_same_v<T, Formula::Or>) {
            return nary("or", n.terms, "false");
          } else {
            throw InternalError("state or buffer-length assertion reached the SMT encoding");
          }
        },
        f.node());
  }
};

}  // namespace

std::string serialize_smtlib(const FolBvQuery& q, std::span<const std::string> comments) {
  std::string out;
  for (const std::string& c : comments) out += "; " + c + "\n";
  out += "(set-logic " + q.logic() + ")\n";
  Printer pr{q, {}, nullptr};
  for (const FolVar& v : q.free) {
    if (v.kind == FolVar::Kind::Header) pr.names[{static_cast<int>(v.side), v.id}] = v.name;
    out += "(declare-const " + v.name + " (_ BitVec " + std::to_string(v.width) + "))\n";
  }
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    const FolPremise& p = q.premises[i];
    if (p.bound.empty()) {
      parts.push_back(pr.formula(p.body));
      continue;
    }
    const std::string prefix = "p" + std::to_string(i) + "_";
    pr.bit_prefix = &prefix;
    std::string binders;
    for (VarId x : p.bound) {
      if (!binders.empty()) binders += " ";
      binders += "(" + pr.name_of_var(x) + " (_ BitVec 1))";
    }
    parts.push_back("(forall (" + binders + ") " + pr.formula(p.body) + ")");
    pr.bit_prefix = nullptr;
  }
  parts.push_back("(not " + pr.formula(q.conclusion) + ")");
  if (parts.size() == 1) {
    out += "(assert " + parts.front() + ")\n";
  } else {
    out += "(assert (and";
    for (const std::string& p : parts) out += "\n  " + p;
    out += "))\n";
  }
  out += "(check-sat)\n(exit)\n";
  return out;
}

}  // namespace p4aeq

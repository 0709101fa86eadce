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

// Symbolic weakest preconditions over template-guarded formulas.

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "p4aeq/confrel/formula.hpp"
#include "p4aeq/core/semantics.hpp"

namespace p4aeq {

class WidthError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class FreshnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct TemplatePair {
  Template left;
  Template right;
  friend auto operator<=>(const TemplatePair&, const TemplatePair&) = default;
  friend bool operator==(const TemplatePair&, const TemplatePair&) = default;
};

// Source of fresh single-bit variables for one engine run.
class VarSupply {
 public:
  explicit VarSupply(VarId first = 0) : next_(first) {}
  VarId fresh() { return next_++; }
  VarId peek() const { return next_; }

 private:
  VarId next_;
};

// Post-state header contents, indexed by HeaderId; an empty entry means the
// header is unchanged from the pre-state.
using SymbolicStore = std::vector<std::optional<BitExpr>>;

std::size_t leap_size(const Template& left, const Template& right, const Automaton& aut);

// Bits a user-state template still has to read before its transition
// fires; 0 for accept/reject.
std::size_t remaining_bits(const Template& t, const Automaton& aut);

// The pre-state value of `e` under `st`, as a bit expression over `side`.
BitExpr symbolic_expr(const Expr& e, const SymbolicStore& st, Side side, const Automaton& aut);

// Throws WidthError unless width(buf) = opsize(op).
SymbolicStore symbolic_exec_op(const OpBlock& op, SymbolicStore pre, const BitExpr& buf, Side side,
                               const Automaton& aut);

Formula symbolic_trans_cond(const Transition& tz, const SymbolicStore& st, StateRef target, Side side,
                            const Automaton& aut);

// Weakest precondition for one side reading the bits `xs` (one bit without
// leaps) from template `src`, for a formula that is to hold whenever that
// side lands on `dst`. Throws FreshnessError if some xs occurs in `phi`.
Formula wp_side(const Formula& phi, Side side, const Template& src, const Template& dst,
                std::span<const VarId> xs, const Automaton& aut);

// Paired weakest precondition of `psi` restricted to the candidate
// predecessor pairs; formulas that simplify to true are dropped.
std::vector<GuardedFormula> wp(const GuardedFormula& psi, std::span<const TemplatePair> candidates,
                               bool leaps, VarSupply& vars, const Automaton& aut);

}  // namespace p4aeq

template <>
struct std::hash<p4aeq::TemplatePair> {
  std::size_t operator()(const p4aeq::TemplatePair& p) const noexcept {
    return std::hash<p4aeq::Template>{}(p.left) * 31U + std::hash<p4aeq::Template>{}(p.right);
  }
};

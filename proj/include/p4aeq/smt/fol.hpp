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

// From entailments between guarded formulas to bitvector satisfiability
// problems, and their SMT-LIB text.
//
// An entailment ⋀R ⊨ ψ fails iff some configuration pair satisfies every
// premise under all valuations of the premise's bit variables while ψ is
// false under some valuation. Premise variables are therefore universally
// bound inside their premise, and the conclusion's variables are free.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "p4aeq/confrel/formula.hpp"
#include "p4aeq/core/syntax.hpp"

namespace p4aeq {

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct FilteredEntailment {
  Template left;
  Template right;
  std::vector<Formula> premises;
  Formula conclusion;
};

// Keeps the bodies of the R members guarded by psi's templates.
FilteredEntailment template_filter(std::span<const GuardedFormula> R, const GuardedFormula& psi);

struct FolVar {
  enum class Kind : std::uint8_t { Header, Buffer, Bit };
  Kind kind;
  Side side = Side::Left;
  std::uint32_t id = 0;  // HeaderId or VarId
  std::size_t width = 0;
  std::string name;
};

struct FolPremise {
  std::vector<VarId> bound;
  Formula body;
};

// Bodies are pure and fully width-annotated: Buf nodes carry the guard's
// non-zero length and no empty literal survives.
struct FolBvQuery {
  std::vector<FolVar> free;  // declaration order
  std::vector<FolPremise> premises;
  Formula conclusion = Formula::top();

  bool quantified() const;
  std::string logic() const { return quantified() ? "BV" : "QF_BV"; }
};

// Throws InternalError if a state or buffer-length assertion survives.
FolBvQuery to_fol_bv(const FilteredEntailment& fe, const Automaton& aut);

// SMT-LIB v2 text asserting the premises and the negated conclusion.
// `comments` lines are emitted first, each prefixed with "; ".
std::string serialize_smtlib(const FolBvQuery& q, std::span<const std::string> comments = {});

}  // namespace p4aeq

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

// Deterministic text form of relation formulas, and its parser.
//
//   bit expressions   buf<  mpls>  $x12  0b0110  eps  e[0:3]  a ++ b
//   formulas          true  false  a = b  state<(q1)  buflen>(4)
//                     !f  (f & g)  (f | g)  (f -> g)

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "p4aeq/confrel/formula.hpp"

namespace p4aeq {

// Maps ids back to display names. The base class prints raw ids.
class Namer {
 public:
  virtual ~Namer() = default;
  virtual std::string header(HeaderId id, Side side) const;
  virtual std::string state(StateRef q, Side side) const;
};

// Names from a disjoint sum, with the "l." / "r." tags stripped (the side
// marker carries that information).
class SumNamer : public Namer {
 public:
  explicit SumNamer(const Automaton& sum) : sum_(sum) {}
  std::string header(HeaderId id, Side side) const override;
  std::string state(StateRef q, Side side) const override;

 private:
  const Automaton& sum_;
};

std::string render(const BitExpr& e, const Namer& names = Namer{});
std::string render(const Formula& f, const Namer& names = Namer{});
std::string render(const GuardedFormula& g, const Namer& names = Namer{});
std::string render(const Template& t, Side side, const Namer& names = Namer{});

class FormulaParseError : public std::runtime_error {
 public:
  FormulaParseError(std::size_t offset, const std::string& msg)
      : std::runtime_error("at offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Parses the rendered form. Names resolve against `sum`: `h<` finds header
// "l.h" (or plain "h" when the automaton is not a sum), likewise for states.
Formula parse_formula(std::string_view text, const Automaton& sum);

// Recognizes `(state<(q) & buflen<(n) & state>(q') & buflen>(n')) -> body`.
std::optional<GuardedFormula> as_guarded(const Formula& f);

}  // namespace p4aeq

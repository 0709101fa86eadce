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

// Typing and the concrete bit-by-bit DFA semantics of P4 automata.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "p4aeq/bitvec.hpp"
#include "p4aeq/core/syntax.hpp"

namespace p4aeq {

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Total map from header to a bitvector of exactly sz(h) bits, indexed by
// HeaderId.
using Store = std::vector<BitVec>;

Store zero_store(const Automaton& aut);

struct Configuration {
  StateRef state;
  Store store;
  BitVec buffer;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct Diagnostic {
  std::string state;  // empty for automaton-level problems
  std::string message;
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Width of a well-typed expression; throws TypeError otherwise.
std::size_t width_of(const Expr& e, const Automaton& aut);

BitVec eval_expr(const Expr& e, const Store& s);

std::size_t opsize(const OpBlock& op, const Automaton& aut);

// Runs an operation block on `w`. With `strict`, |w| must equal opsize(op)
// and every assignment must be width-correct; otherwise ArityError.
std::pair<Store, BitVec> exec_op(const OpBlock& op, Store s, const BitVec& w, const Automaton& aut,
                                 bool strict = true);

StateRef eval_transition(const Transition& tz, const Store& s);

// States (including accept/reject) that a transition block may route to.
// Select blocks always include reject: a non-exhaustive case list falls
// through to it.
std::vector<StateRef> transition_targets(const Transition& tz);

std::vector<Diagnostic> typecheck(const Automaton& aut);

Configuration initial_configuration(StateRef q, Store s);

Configuration step(const Configuration& c, bool bit, const Automaton& aut);
Configuration multi_step(Configuration c, const BitVec& w, const Automaton& aut);

bool is_accepting(const Configuration& c);
bool accepts(StateRef q, const Store& s, const BitVec& w, const Automaton& aut);

// Renamings produced by disjoint_sum: index i of the input maps to entry i.
struct SumMaps {
  std::vector<HeaderId> left_headers;
  std::vector<HeaderId> right_headers;
  std::vector<StateRef> left_states;
  std::vector<StateRef> right_states;

  StateRef left_state(StateRef q) const { return q.is_user() ? left_states.at(q.index()) : q; }
  StateRef right_state(StateRef q) const { return q.is_user() ? right_states.at(q.index()) : q; }
};

struct SummedAutomaton {
  Automaton automaton;
  SumMaps maps;
  Automaton left;
  Automaton right;
};

// Left components are renamed "l.<name>", right ones "r.<name>"; accept and
// reject are shared.
SummedAutomaton disjoint_sum(const Automaton& left, const Automaton& right);

}  // namespace p4aeq

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

// Language equivalence of two P4 automata by computing the weakest
// symbolic bisimulation (with leaps) over their disjoint sum.

#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "p4aeq/reach/reach.hpp"
#include "p4aeq/smt/entailment.hpp"

namespace p4aeq {

enum class VerdictKind { Equivalent, NotEquivalent, Inconclusive };

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::string reason;  // set for Inconclusive

  static Verdict equivalent() { return {VerdictKind::Equivalent, {}}; }
  static Verdict not_equivalent() { return {VerdictKind::NotEquivalent, {}}; }
  static Verdict inconclusive(std::string why) { return {VerdictKind::Inconclusive, std::move(why)}; }
  friend bool operator==(const Verdict& a, const Verdict& b) { return a.kind == b.kind; }
};

std::string_view verdict_name(VerdictKind k);

struct RelationEntry {
  GuardedFormula formula;
  // "init", "init-extra", or "wp #k": produced from R entry k.
  std::string origin;
};

struct EngineStats {
  std::size_t iterations = 0;
  std::size_t skips = 0;
  std::size_t extends = 0;
  std::size_t enqueued = 0;
  std::size_t duplicates = 0;
  std::size_t reach_pairs = 0;
  std::size_t final_checks = 0;
  EntailmentStats entailment;
  double seconds = 0;
};

struct EngineState {
  std::vector<RelationEntry> R;
  std::deque<RelationEntry> frontier;
  EngineStats stats;
};

struct EngineOptions {
  bool leaps = true;
  bool reach = true;
  EntailmentOptions entailment;
  // 0 selects a bound derived from the size of the reach set.
  std::size_t max_iterations = 0;
  // Called after every Skip or Extend; for debugging and invariant tests.
  std::function<void(const EngineState&)> on_iteration;
};

struct Query {
  SummedAutomaton sum;
  StateRef left_start;   // in sum.automaton
  StateRef right_start;  // in sum.automaton
  EngineOptions options;
  Formula phi_extra = Formula::top();  // pure, over the sum's headers
  std::vector<GuardedFormula> init_extra;
};

struct Witness {
  Verdict verdict;
  std::string left_start;
  std::string right_start;
  bool leaps = true;
  bool reach = true;
  std::vector<RelationEntry> relation;
  ReachSet reach_set;
  EngineStats stats;
  std::vector<std::string> rendered;  // one line per relation entry

  // Line-oriented text: a '#' header with metadata and stats, then one
  // guarded formula per line. Contains no timings, so it is reproducible.
  std::string text() const;
  std::string json() const;
};

std::vector<GuardedFormula> init_relation(const ReachSet& reach);

struct EngineResult {
  Verdict verdict;
  Witness witness;
  EngineState state;
};

EngineResult pre_bisimulation(const Query& q);

// Does φ (the start templates plus `phi_extra`) entail every member of R
// guarded at the start templates?
bool final_check(const TemplatePair& start, const Formula& phi_extra, const std::vector<RelationEntry>& R,
                 EntailmentChecker& checker);

// Start states are given in their own automaton's numbering.
EngineResult check_equivalence(const Automaton& a1, const Automaton& a2, StateRef q1, StateRef q2,
                               const EngineOptions& opts = {});

// `phi_extra` and `init_extra` refer to the headers and states of
// disjoint_sum(a1, a2). The verdict states that the relation computed from
// I ∪ init_extra is entailed by the strengthened start formula; what that
// means for the two parsers is up to the caller's choice of relation.
EngineResult check_with_relation(const Automaton& a1, const Automaton& a2, StateRef q1, StateRef q2,
                                 const Formula& phi_extra, const std::vector<GuardedFormula>& init_extra,
                                 const EngineOptions& opts = {});

}  // namespace p4aeq

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

// Template-level reachability: abstract successors and the pair fixpoint.

#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "p4aeq/confrel/text.hpp"
#include "p4aeq/wp/wp.hpp"

namespace p4aeq {

// Abstract single-bit successors of a template.
std::vector<Template> sigma(const Template& t, const Automaton& aut);

// Abstract successors of a pair after leap_size(p) bits.
std::vector<TemplatePair> sigma_leap(const TemplatePair& p, const Automaton& aut);

// sigma(left) x sigma(right), or sigma_leap(p) with leaps.
std::vector<TemplatePair> pair_successors(const TemplatePair& p, const Automaton& aut, bool leaps);

struct ReachSet {
  std::vector<TemplatePair> seeds;
  std::vector<TemplatePair> pairs;  // sorted, unique

  bool contains(const TemplatePair& p) const;
  std::size_t size() const { return pairs.size(); }
  // One "left right" pair per line, in sorted order.
  std::string dump(const Namer& names = Namer{}) const;
};

ReachSet reach_fixpoint(std::span<const TemplatePair> seeds, const Automaton& aut, bool leaps);

// Every template of the listed states plus accept and reject.
std::vector<Template> all_templates(std::span<const StateRef> states, const Automaton& aut);

// Every left-template / right-template combination; the pair space used when
// reachability pruning is switched off.
ReachSet all_pairs(std::span<const TemplatePair> seeds, std::span<const StateRef> left_states,
                   std::span<const StateRef> right_states, const Automaton& aut);

// For each pair of a reach set, the members of the set that step into it.
class PredecessorIndex {
 public:
  PredecessorIndex(const ReachSet& reach, const Automaton& aut, bool leaps);
  std::span<const TemplatePair> of(const TemplatePair& p) const;

 private:
  std::unordered_map<TemplatePair, std::vector<TemplatePair>> preds_;
};

}  // namespace p4aeq

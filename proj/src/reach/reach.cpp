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

#include "p4aeq/reach/reach.hpp"

#include <algorithm>
#include <set>

namespace p4aeq {

namespace {

// Templates one side reaches after exactly k more bits, k ≤ remaining.
std::vector<Template> advance(const Template& t, std::size_t k, const Automaton& aut) {
  if (!t.state.is_user()) return {Template::reject()};
  const std::size_t rem = remaining_bits(t, aut);
  if (k < rem) return {Template{t.state, t.buflen + k}};
  std::vector<Template> out;
  for (StateRef q : transition_targets(aut.state(t.state).trans)) out.push_back(Template{q, 0});
  return out;
}

}  // namespace

std::vector<Template> sigma(const Template& t, const Automaton& aut) { return advance(t, 1, aut); }

std::vector<TemplatePair> sigma_leap(const TemplatePair& p, const Automaton& aut) {
  const std::size_t k = leap_size(p.left, p.right, aut);
  std::vector<TemplatePair> out;
  for (const Template& l : advance(p.left, k, aut)) {
    for (const Template& r : advance(p.right, k, aut)) out.push_back({l, r});
  }
  return out;
}

std::vector<TemplatePair> pair_successors(const TemplatePair& p, const Automaton& aut, bool leaps) {
  if (leaps) return sigma_leap(p, aut);
  std::vector<TemplatePair> out;
  for (const Template& l : sigma(p.left, aut)) {
    for (const Template& r : sigma(p.right, aut)) out.push_back({l, r});
  }
  return out;
}

bool ReachSet::contains(const TemplatePair& p) const {
  return std::binary_search(pairs.begin(), pairs.end(), p);
}

std::string ReachSet::dump(const Namer& names) const {
  std::string out;
  for (const TemplatePair& p : pairs) {
    out += render(p.left, Side::Left, names) + " " + render(p.right, Side::Right, names) + "\n";
  }
  return out;
}

ReachSet reach_fixpoint(std::span<const TemplatePair> seeds, const Automaton& aut, bool leaps) {
  ReachSet out;
  out.seeds.assign(seeds.begin(), seeds.end());
  std::set<TemplatePair> seen(seeds.begin(), seeds.end());
  std::set<TemplatePair> work(seen);
  while (!work.empty()) {
    const TemplatePair p = *work.begin();
    work.erase(work.begin());
    for (const TemplatePair& s : pair_successors(p, aut, leaps)) {
      if (seen.insert(s).second) work.insert(s);
    }
  }
  out.pairs.assign(seen.begin(), seen.end());
  return out;
}

std::vector<Template> all_templates(std::span<const StateRef> states, const Automaton& aut) {
  std::vector<Template> out;
  for (StateRef q : states) {
    for (std::size_t n = 0; n < aut.opsize(q); ++n) out.push_back({q, n});
  }
  out.push_back(Template::accept());
  out.push_back(Template::reject());
  return out;
}

ReachSet all_pairs(std::span<const TemplatePair> seeds, std::span<const StateRef> left_states,
                   std::span<const StateRef> right_states, const Automaton& aut) {
  ReachSet out;
  out.seeds.assign(seeds.begin(), seeds.end());
  std::set<TemplatePair> all(seeds.begin(), seeds.end());
  for (const Template& l : all_templates(left_states, aut)) {
    for (const Template& r : all_templates(right_states, aut)) all.insert({l, r});
  }
  out.pairs.assign(all.begin(), all.end());
  return out;
}

PredecessorIndex::PredecessorIndex(const ReachSet& reach, const Automaton& aut, bool leaps) {
  for (const TemplatePair& p : reach.pairs) {
    for (const TemplatePair& s : pair_successors(p, aut, leaps)) {
      auto& v = preds_[s];
      if (v.empty() || v.back() != p) v.push_back(p);
    }
  }
}

std::span<const TemplatePair> PredecessorIndex::of(const TemplatePair& p) const {
  auto it = preds_.find(p);
  if (it == preds_.end()) return {};
  return it->second;
}

}  // namespace p4aeq

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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "../support/random_automaton.hpp"
#include "p4aeq/confrel/eval.hpp"
#include "p4aeq/frontend/source.hpp"
#include "p4aeq/oracle/oracle.hpp"
#include "p4aeq/reach/reach.hpp"
#include "p4aeq/wp/wp.hpp"

using namespace p4aeq;

namespace {

Automaton fixture(const std::string& name) { return load_automaton(std::string(P4AEQ_FIXTURES) + "/" + name); }

bool contains(const std::vector<Template>& v, const Template& t) { return std::find(v.begin(), v.end(), t) != v.end(); }

bool contains(const std::vector<TemplatePair>& v, const TemplatePair& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

std::set<Template> as_set(const std::vector<Template>& v) { return {v.begin(), v.end()}; }

// Template pairs of every concrete pair reachable by synchronous steps from
// the start states, over up to `per_side` initial stores on each side.
std::set<TemplatePair> concrete_reach(const Automaton& aut, StateRef q1, StateRef q2, std::size_t per_side = 1000) {
  std::set<TemplatePair> seen;
  std::vector<std::pair<Configuration, Configuration>> work;
  std::set<std::pair<std::string, std::string>> visited;
  auto key = [](const Configuration& c) {
    std::string k = std::to_string(c.state.raw()) + "|" + c.buffer.to_string();
    for (const BitVec& h : c.store) k += "|" + h.to_string();
    return k;
  };
  const auto stores = enumerate_stores(aut);
  const std::size_t stride = std::max<std::size_t>(1, stores.size() / per_side);
  for (std::size_t i = 0; i < stores.size(); i += stride) {
    for (std::size_t j = 0; j < stores.size(); j += stride) {
      work.emplace_back(initial_configuration(q1, stores[i]), initial_configuration(q2, stores[j]));
    }
  }
  while (!work.empty()) {
    auto [c1, c2] = work.back();
    work.pop_back();
    if (!visited.insert({key(c1), key(c2)}).second) continue;
    seen.insert({template_of(c1), template_of(c2)});
    for (bool b : {false, true}) work.emplace_back(step(c1, b, aut), step(c2, b, aut));
  }
  return seen;
}

}  // namespace

TEST_CASE("sigma") {
  const Automaton ref = fixture("mpls_ref.p4a");
  const StateRef q1 = *ref.find_state("q1");
  const StateRef q2 = *ref.find_state("q2");
  CHECK(as_set(sigma({q1, 30}, ref)) == std::set<Template>{{q1, 31}});
  // A select may always fall through to reject.
  CHECK(as_set(sigma({q1, 31}, ref)) == std::set<Template>{{q1, 0}, {q2, 0}, Template::reject()});
  CHECK(as_set(sigma({q2, 63}, ref)) == std::set<Template>{Template::accept()});
  CHECK(as_set(sigma(Template::accept(), ref)) == std::set<Template>{Template::reject()});
  CHECK(as_set(sigma(Template::reject(), ref)) == std::set<Template>{Template::reject()});
}

TEST_CASE("sigma_leap") {
  const Automaton ref = fixture("mpls_ref.p4a");
  const Automaton vec = fixture("mpls_vec.p4a");
  const SummedAutomaton sum = disjoint_sum(ref, vec);
  const Automaton& aut = sum.automaton;
  const StateRef q1 = sum.maps.left_state(*ref.find_state("q1"));
  const StateRef q2 = sum.maps.left_state(*ref.find_state("q2"));
  const StateRef q3 = sum.maps.right_state(*vec.find_state("q3"));

  const auto from_start = sigma_leap({{q1, 0}, {q3, 0}}, aut);
  const std::set<TemplatePair> expected{
      {{q1, 0}, {q3, 32}}, {{q2, 0}, {q3, 32}}, {Template::reject(), {q3, 32}}};
  CHECK(std::set<TemplatePair>(from_start.begin(), from_start.end()) == expected);

  const auto done = sigma_leap({Template::accept(), Template::accept()}, aut);
  CHECK(done == std::vector<TemplatePair>{{Template::reject(), Template::reject()}});

  const auto degenerate = sigma_leap({{q1, 31}, {q3, 5}}, aut);
  CHECK(degenerate.size() == 3);
  for (const TemplatePair& p : degenerate) CHECK(p.right == Template{q3, 6});
}

TEST_CASE("reach_fixpoint on the MPLS pair") {
  const Automaton ref = fixture("mpls_ref.p4a");
  const Automaton vec = fixture("mpls_vec.p4a");
  const SummedAutomaton sum = disjoint_sum(ref, vec);
  const Automaton& aut = sum.automaton;
  const StateRef q1 = sum.maps.left_state(*ref.find_state("q1"));
  const StateRef q3 = sum.maps.right_state(*vec.find_state("q3"));
  const TemplatePair seed{{q1, 0}, {q3, 0}};

  const ReachSet leaps = reach_fixpoint(std::span(&seed, 1), aut, true);
  const ReachSet bits = reach_fixpoint(std::span(&seed, 1), aut, false);
  CHECK(leaps.contains(seed));
  CHECK_FALSE(leaps.contains({{q1, 5}, {q3, 5}}));
  CHECK(bits.contains({{q1, 5}, {q3, 5}}));
  CHECK(leaps.size() < bits.size());
  CHECK(std::is_sorted(leaps.pairs.begin(), leaps.pairs.end()));
  CHECK(leaps.dump() == reach_fixpoint(std::span(&seed, 1), aut, true).dump());
  const std::string dump = leaps.dump();
  CHECK(static_cast<std::size_t>(std::count(dump.begin(), dump.end(), '\n')) == leaps.size());

  const TemplatePair closed{Template::reject(), Template::reject()};
  const ReachSet trivial = reach_fixpoint(std::span(&closed, 1), aut, false);
  CHECK(trivial.pairs == std::vector<TemplatePair>{closed});
}

TEST_CASE("reach on a one-state loop matches concrete reachability") {
  Automaton a;
  const HeaderId h = a.add_header("h", 2);
  a.add_state(State{"A", {Extract{h}}, Goto{StateRef::user(0)}});
  const TemplatePair seed{{StateRef::user(0), 0}, {StateRef::user(0), 0}};
  const ReachSet r = reach_fixpoint(std::span(&seed, 1), a, false);
  CHECK(std::set<TemplatePair>(r.pairs.begin(), r.pairs.end()) == concrete_reach(a, StateRef::user(0), StateRef::user(0)));
  CHECK(r.size() == 2);
}

TEST_CASE("abstraction and leap soundness on random automata") {
  testing::Rng rng(43);
  for (int iter = 0; iter < 40; ++iter) {
    const Automaton a = testing::random_automaton(rng);
    const auto configs = enumerate_configs(a);
    for (const Configuration& c : configs) {
      const auto succ = sigma(template_of(c), a);
      for (bool b : {false, true}) CHECK(contains(succ, template_of(step(c, b, a))));
    }
    for (std::size_t i = 0; i < configs.size(); i += 1 + configs.size() / 40) {
      for (std::size_t j = 0; j < configs.size(); j += 1 + configs.size() / 40) {
        const TemplatePair p{template_of(configs[i]), template_of(configs[j])};
        const auto succ = sigma_leap(p, a);
        const std::size_t k = leap_size(p.left, p.right, a);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
          const BitVec w = BitVec::from_uint(v, k);
          CHECK(contains(succ, TemplatePair{template_of(multi_step(configs[i], w, a)),
                                            template_of(multi_step(configs[j], w, a))}));
        }
      }
    }
  }
}

TEST_CASE("fixpoints are closed, minimal and cover concrete runs") {
  testing::Rng rng(47);
  for (int iter = 0; iter < 40; ++iter) {
    const auto pair = testing::random_pair(rng);
    const SummedAutomaton sum = disjoint_sum(pair.left, pair.right);
    const Automaton& aut = sum.automaton;
    const TemplatePair seed{{sum.maps.left_state(pair.left_start), 0}, {sum.maps.right_state(pair.right_start), 0}};
    const auto concrete = concrete_reach(aut, seed.left.state, seed.right.state, 6);
    for (bool leaps : {false, true}) {
      const ReachSet r = reach_fixpoint(std::span(&seed, 1), aut, leaps);
      const auto lt = all_templates(std::span(sum.maps.left_states), aut);
      const auto rt = all_templates(std::span(sum.maps.right_states), aut);
      CHECK(r.size() <= lt.size() * rt.size());
      std::map<TemplatePair, std::set<TemplatePair>> preds;
      for (const TemplatePair& q : r.pairs) {
        for (const TemplatePair& s : pair_successors(q, aut, leaps)) {
          CHECK(r.contains(s));
          preds[s].insert(q);
        }
      }
      for (const TemplatePair& p : r.pairs) {
        if (p == seed) continue;
        auto& from = preds[p];
        CHECK((from.size() > 1 || (from.size() == 1 && !from.contains(p))));
      }
      if (!leaps) {
        for (const TemplatePair& p : concrete) CHECK(r.contains(p));
      }

      const ReachSet everything = all_pairs(std::span(&seed, 1), sum.maps.left_states, sum.maps.right_states, aut);
      CHECK(everything.size() == lt.size() * rt.size());
      for (const TemplatePair& p : r.pairs) CHECK(everything.contains(p));

      const PredecessorIndex idx(r, aut, leaps);
      for (const TemplatePair& p : r.pairs) {
        const auto got = idx.of(p);
        CHECK(std::set<TemplatePair>(got.begin(), got.end()) == preds[p]);
      }
    }
  }
}

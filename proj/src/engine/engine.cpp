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

#include "p4aeq/engine/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_set>

namespace p4aeq {

std::string_view verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equivalent: return "Equivalent";
    case VerdictKind::NotEquivalent: return "NotEquivalent";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<GuardedFormula> init_relation(const ReachSet& reach) {
  std::vector<GuardedFormula> out;
  for (const TemplatePair& p : reach.pairs) {
    const bool la = p.left == Template::accept();
    const bool ra = p.right == Template::accept();
    if (la != ra) out.push_back(guard(p.left, p.right, Formula::bottom()));
  }
  return out;
}

bool final_check(const TemplatePair& start, const Formula& phi_extra, const std::vector<RelationEntry>& R,
                 EntailmentChecker& checker) {
  const Formula premise[] = {phi_extra};
  for (std::size_t i = 0; i < R.size(); ++i) {
    const GuardedFormula& g = R[i].formula;
    if (g.left != start.left || g.right != start.right) continue;
    if (!checker.entails(premise, start.left, start.right, g.body, "final check of #" + std::to_string(i))) {
      return false;
    }
  }
  return true;
}

namespace {

VarId first_free_var(const Query& q) {
  VarId next = 0;
  for (VarId x : free_vars(q.phi_extra)) next = std::max(next, x + 1);
  for (const GuardedFormula& g : q.init_extra) {
    for (VarId x : free_vars(g.body)) next = std::max(next, x + 1);
  }
  return next;
}

Witness make_witness(const Query& q, const Verdict& v, const EngineState& st, const ReachSet& reach) {
  const SumNamer names(q.sum.automaton);
  Witness w;
  w.verdict = v;
  w.left_start = names.state(q.left_start, Side::Left);
  w.right_start = names.state(q.right_start, Side::Right);
  w.leaps = q.options.leaps;
  w.reach = q.options.reach;
  w.relation = st.R;
  w.reach_set = reach;
  w.stats = st.stats;
  for (const RelationEntry& e : st.R) w.rendered.push_back(render(e.formula, names));
  return w;
}

}  // namespace

EngineResult pre_bisimulation(const Query& q) {
  const auto t0 = std::chrono::steady_clock::now();
  const Automaton& aut = q.sum.automaton;
  const EngineOptions& opts = q.options;
  const TemplatePair start{{q.left_start, 0}, {q.right_start, 0}};
  const TemplatePair seeds[] = {start};

  ReachSet reach = opts.reach ? reach_fixpoint(seeds, aut, opts.leaps)
                              : all_pairs(seeds, q.sum.maps.left_states, q.sum.maps.right_states, aut);
  const PredecessorIndex preds(reach, aut, opts.leaps);

  EngineState st;
  st.stats.reach_pairs = reach.size();
  std::unordered_set<GuardedFormula> seen;
  auto enqueue = [&](GuardedFormula g, std::string origin) {
    if (!seen.insert(g).second) {
      ++st.stats.duplicates;
      return;
    }
    ++st.stats.enqueued;
    st.frontier.push_back({std::move(g), std::move(origin)});
  };
  for (GuardedFormula& g : init_relation(reach)) enqueue(std::move(g), "init");
  for (const GuardedFormula& g : q.init_extra) enqueue(guard_simplified(g.left, g.right, g.body), "init-extra");

  std::size_t max_preds = 0;
  for (const TemplatePair& p : reach.pairs) max_preds = std::max(max_preds, preds.of(p).size());
  const std::size_t bound =
      opts.max_iterations != 0 ? opts.max_iterations
                               : std::max<std::size_t>(100000, reach.size() * (1 + max_preds) * 256);

  const SumNamer names(aut);
  EntailmentChecker checker(aut, opts.entailment, &names);
  VarSupply vars(first_free_var(q));
  std::map<TemplatePair, std::vector<Formula>> by_guard;

  Verdict verdict;
  try {
    while (!st.frontier.empty()) {
      if (st.stats.iterations >= bound) {
        throw Inconclusive("iteration bound of " + std::to_string(bound) + " exceeded");
      }
      ++st.stats.iterations;
      RelationEntry e = std::move(st.frontier.front());
      st.frontier.pop_front();
      const TemplatePair key{e.formula.left, e.formula.right};
      auto& premises = by_guard[key];
      if (checker.entails(premises, key.left, key.right, e.formula.body, e.origin)) {
        ++st.stats.skips;
      } else {
        ++st.stats.extends;
        const std::size_t index = st.R.size();
        premises.push_back(e.formula.body);
        for (GuardedFormula& g : wp(e.formula, preds.of(key), opts.leaps, vars, aut)) {
          enqueue(std::move(g), "wp #" + std::to_string(index));
        }
        st.R.push_back(std::move(e));
      }
      st.stats.entailment = checker.stats();
      if (opts.on_iteration) opts.on_iteration(st);
    }
    ++st.stats.final_checks;
    verdict = final_check(start, q.phi_extra, st.R, checker) ? Verdict::equivalent() : Verdict::not_equivalent();
  } catch (const Inconclusive& err) {
    verdict = Verdict::inconclusive(err.what());
  }
  st.stats.entailment = checker.stats();
  st.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EngineResult out{verdict, make_witness(q, verdict, st, reach), std::move(st)};
  return out;
}

EngineResult check_equivalence(const Automaton& a1, const Automaton& a2, StateRef q1, StateRef q2,
                               const EngineOptions& opts) {
  return check_with_relation(a1, a2, q1, q2, Formula::top(), {}, opts);
}

EngineResult check_with_relation(const Automaton& a1, const Automaton& a2, StateRef q1, StateRef q2,
                                 const Formula& phi_extra, const std::vector<GuardedFormula>& init_extra,
                                 const EngineOptions& opts) {
  Query q;
  q.sum = disjoint_sum(a1, a2);
  q.left_start = q.sum.maps.left_state(q1);
  q.right_start = q.sum.maps.right_state(q2);
  q.options = opts;
  if (!is_pure(phi_extra)) throw NotPure("extra start constraint must be pure");
  q.phi_extra = phi_extra;
  q.init_extra = init_extra;
  return pre_bisimulation(q);
}

}  // namespace p4aeq

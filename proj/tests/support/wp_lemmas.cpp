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

#include "wp_lemmas.hpp"

#include <map>

#include "p4aeq/confrel/eval.hpp"
#include "p4aeq/confrel/text.hpp"
#include "p4aeq/oracle/oracle.hpp"
#include "p4aeq/reach/reach.hpp"
#include "random_formula.hpp"

namespace p4aeq::testing {

namespace {

constexpr std::size_t kMaxConfigs = 120;

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::vector<StateRef> user_states(const Automaton& aut) {
  std::vector<StateRef> out;
  for (std::uint32_t i = 0; i < aut.num_states(); ++i) out.push_back(StateRef::user(i));
  return out;
}

std::string describe(const Configuration& c, const Automaton& aut) {
  std::string s = "<" + aut.state_name(c.state) + ", {";
  for (std::size_t i = 0; i < c.store.size(); ++i) s += (i ? "," : "") + c.store[i].to_string();
  return s + "}, \"" + c.buffer.to_string() + "\">";
}

void record(LemmaTally& t, const std::string& what) {
  ++t.counterexamples;
  if (t.first_failure.empty()) t.first_failure = what;
}

}  // namespace

void LemmaTally::merge(const LemmaTally& o) {
  formulas += o.formulas;
  checks += o.checks;
  if (counterexamples == 0 && o.counterexamples != 0) first_failure = o.first_failure;
  counterexamples += o.counterexamples;
}

Automaton random_lemma_automaton(Rng& rng) {
  for (;;) {
    Automaton a = random_automaton(rng, GenParams{2, 3, 2, true});
    if (enumerate_configs(a).size() <= kMaxConfigs) return a;
  }
}

LemmaTally check_wp_side_lemma(const Automaton& aut, Rng& rng, int formulas_per_edge) {
  LemmaTally tally;
  const auto configs = enumerate_configs(aut);
  const auto states = user_states(aut);
  const auto templates = all_templates(states, aut);
  std::map<Template, std::vector<const Configuration*>> by_template;
  for (const Configuration& c : configs) by_template[template_of(c)].push_back(&c);

  const VarId x = 50;
  for (Side side : {Side::Left, Side::Right}) {
    for (const Template& src : templates) {
      std::vector<Template> dsts = sigma(src, aut);
      dsts.push_back(templates[pick(rng, templates.size())]);
      for (const Template& dst : dsts) {
        for (int f = 0; f < formulas_per_edge; ++f) {
          const Template other = templates[pick(rng, templates.size())];
          FormulaContext ctx{&aut, side == Side::Left ? dst.buflen : other.buflen,
                             side == Side::Left ? other.buflen : dst.buflen, 2};
          const Formula phi = random_pure_formula(rng, ctx, 2);
          const VarId xs[] = {x};
          const Formula psi = wp_side(phi, side, src, dst, xs, aut);
          ++tally.formulas;
          for (const Configuration* c : by_template[src]) {
            for (const Configuration& d : configs) {
              bool lhs = true;
              for (bool b : {false, true}) {
                const Configuration next = step(*c, b, aut);
                if (template_of(next) != dst) continue;
                lhs = lhs && (side == Side::Left ? denotes(phi, next, d) : denotes(phi, d, next));
              }
              const bool rhs = side == Side::Left ? denotes(psi, *c, d) : denotes(psi, d, *c);
              ++tally.checks;
              if (lhs != rhs) {
                record(tally, std::string("wp_side ") + side_marker(side) + " " + render(phi) + " from " +
                                  describe(*c, aut) + " against " + describe(d, aut) + ": wp gives " +
                                  render(psi));
              }
            }
          }
        }
      }
    }
  }
  return tally;
}

LemmaTally check_wp_lemma(const Automaton& aut, Rng& rng, int formulas, bool leaps) {
  LemmaTally tally;
  const auto configs = enumerate_configs(aut);
  const auto states = user_states(aut);
  const auto templates = all_templates(states, aut);
  std::vector<TemplatePair> candidates;
  for (const Template& l : templates) {
    for (const Template& r : templates) candidates.push_back({l, r});
  }

  for (int f = 0; f < formulas; ++f) {
    // Target templates that some pair actually steps into.
    const TemplatePair from = candidates[pick(rng, candidates.size())];
    const auto succ = pair_successors(from, aut, leaps);
    const TemplatePair to = succ.empty() ? from : succ[pick(rng, succ.size())];
    FormulaContext ctx{&aut, to.left.buflen, to.right.buflen, 2};
    const GuardedFormula psi = guard(to.left, to.right, random_pure_formula(rng, ctx, 2));
    VarSupply vars(100);
    const auto pre = wp(psi, candidates, leaps, vars, aut);
    ++tally.formulas;

    for (const Configuration& c1 : configs) {
      for (const Configuration& c2 : configs) {
        const std::size_t k = leaps ? leap_size(template_of(c1), template_of(c2), aut) : 1;
        bool lhs = true;
        for (std::uint64_t v = 0; lhs && v < (std::uint64_t{1} << k); ++v) {
          const BitVec w = BitVec::from_uint(v, k);
          lhs = denotes(psi, multi_step(c1, w, aut), multi_step(c2, w, aut));
        }
        bool rhs = true;
        for (const GuardedFormula& chi : pre) rhs = rhs && denotes(chi, c1, c2);
        ++tally.checks;
        if (lhs != rhs) {
          record(tally, std::string(leaps ? "leap " : "") + "wp of " + render(psi) + " at " + describe(c1, aut) +
                            ", " + describe(c2, aut) + ": expected " + (lhs ? "true" : "false"));
        }
      }
    }
  }
  return tally;
}

}  // namespace p4aeq::testing

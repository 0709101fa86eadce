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

// Executable forms of the weakest-precondition correctness lemmas, checked
// by exhaustive enumeration of configurations and valuations.

#pragma once

#include <string>

#include "random_automaton.hpp"

namespace p4aeq::testing {

struct LemmaTally {
  std::size_t formulas = 0;
  std::size_t checks = 0;  // configuration pairs compared
  std::size_t counterexamples = 0;
  std::string first_failure;

  void merge(const LemmaTally& o);
};

// Single-side lemma: for every template edge and every configuration on
// that side, all one-bit successors landing on the target template satisfy
// phi iff the configuration satisfies wp_side(phi).
LemmaTally check_wp_side_lemma(const Automaton& aut, Rng& rng, int formulas_per_edge);

// Paired lemma: both configurations read the same bit (or the same
// leap_size-bit word) and satisfy psi afterwards iff they satisfy every
// member of wp(psi) over all template pairs.
LemmaTally check_wp_lemma(const Automaton& aut, Rng& rng, int formulas, bool leaps);

// Automata small enough for the lemma checks.
Automaton random_lemma_automaton(Rng& rng);

}  // namespace p4aeq::testing

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

// Ground-truth language equivalence for small automata by explicit
// breadth-first search over synchronously stepped configuration pairs.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "p4aeq/core/semantics.hpp"

namespace p4aeq {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kDefaultOracleCap = 16;

// Header bits of `aut` plus its largest possible buffer.
unsigned config_bits(const Automaton& aut);

struct Distinction {
  BitVec word;
  Store left_store;
  Store right_store;
  bool left_accepts = false;
};

// Shortest word on which the two start configurations disagree about
// acceptance, over all pairs of initial stores; nullopt if none exists.
// Throws CapExceeded when config_bits(a1) + config_bits(a2) > cap.
std::optional<Distinction> distinguishing_word(const Automaton& a1, const Automaton& a2, StateRef q1,
                                               StateRef q2, unsigned cap = kDefaultOracleCap);

bool oracle_equivalent(const Automaton& a1, const Automaton& a2, StateRef q1, StateRef q2,
                       unsigned cap = kDefaultOracleCap);

// Every store, in lexicographic order of the concatenated header bits.
std::vector<Store> enumerate_stores(const Automaton& aut, unsigned cap = kDefaultOracleCap);

// Every valid configuration exactly once: user states in order, then accept,
// then reject; within a state by buffer length, buffer value, then store.
std::vector<Configuration> enumerate_configs(const Automaton& aut, unsigned cap = kDefaultOracleCap);

}  // namespace p4aeq

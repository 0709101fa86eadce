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

// Solver-free decision of FolBvQuery satisfiability by exhaustive
// enumeration. Each conjunct is bit-blasted to a boolean program over the
// free bits it shares with the rest of the query plus its own bound bits;
// its truth table is AND-reduced over the bound bits and the reduced
// tables are intersected.

#pragma once

#include <optional>

#include "p4aeq/kernels/kernels.hpp"
#include "p4aeq/smt/fol.hpp"

namespace p4aeq {

struct EnumerationPlan {
  unsigned free_bits = 0;       // free input bits referenced by any conjunct
  unsigned max_bound_bits = 0;  // largest per-premise bound-bit count
  std::vector<kernels::Program> programs;  // one per conjunct
  std::vector<unsigned> bound_bits;        // per program

  // Cost measure compared against the enumeration cap.
  unsigned measure() const { return free_bits + max_bound_bits; }
};

EnumerationPlan plan_enumeration(const FolBvQuery& q);

// Satisfiability of premises ∧ ¬conclusion; nullopt when the plan's measure
// exceeds `cap`.
std::optional<bool> enumerate_sat(const FolBvQuery& q, unsigned cap,
                                  kernels::Kernel k = kernels::default_kernel());
bool run_plan(const EnumerationPlan& plan, kernels::Kernel k);

}  // namespace p4aeq

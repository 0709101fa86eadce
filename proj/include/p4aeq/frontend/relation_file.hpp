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

// Extra relation for `check-rel`, one formula per line:
//
//   # store correspondence at the start
//   phi:  mpls< = mpls>
//   init: (state<(accept) & buflen<(0) & state>(accept) & buflen>(0)) -> udp< = udp>
//
// `phi` lines are pure and are conjoined; `init` lines must be guarded.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "p4aeq/confrel/formula.hpp"
#include "p4aeq/frontend/source.hpp"

namespace p4aeq {

struct RelationSpec {
  Formula phi_extra = Formula::top();
  std::vector<GuardedFormula> init_extra;
};

// Names resolve against the disjoint sum. Throws SourceError.
RelationSpec parse_relation_file(std::string_view text, const Automaton& sum,
                                 const std::string& origin = "<relation>");

}  // namespace p4aeq

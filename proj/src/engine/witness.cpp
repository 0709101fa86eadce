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

#include <json.hpp>

#include "p4aeq/engine/engine.hpp"

namespace p4aeq {

std::string Witness::text() const {
  std::string out = "# p4aeq witness\n";
  out += "# left start: " + left_start + "\n";
  out += "# right start: " + right_start + "\n";
  out += "# verdict: " + std::string(verdict_name(verdict.kind)) + "\n";
  if (!verdict.reason.empty()) out += "# reason: " + verdict.reason + "\n";
  out += std::string("# leaps: ") + (leaps ? "on" : "off") + "\n";
  out += std::string("# reach pruning: ") + (reach ? "on" : "off") + "\n";
  out += "# reach pairs: " + std::to_string(reach_set.size()) + "\n";
  out += "# iterations: " + std::to_string(stats.iterations) + "  extends: " + std::to_string(stats.extends) +
         "  skips: " + std::to_string(stats.skips) + "\n";
  out += "# entailment queries: " + std::to_string(stats.entailment.queries) +
         "  solver calls: " + std::to_string(stats.entailment.solver_calls) +
         "  enumerations: " + std::to_string(stats.entailment.enumerations) + "\n";
  out += "# relation: " + std::to_string(relation.size()) + " conjuncts\n";
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    out += rendered[i] + "    # " + std::to_string(i) + " " + relation[i].origin + "\n";
  }
  return out;
}

std::string Witness::json() const {
  nlohmann::ordered_json j;
  j["left_start"] = left_start;
  j["right_start"] = right_start;
  j["verdict"] = verdict_name(verdict.kind);
  if (!verdict.reason.empty()) j["reason"] = verdict.reason;
  j["leaps"] = leaps;
  j["reach_pruning"] = reach;
  j["reach_pairs"] = reach_set.size();
  j["stats"] = {
      {"iterations", stats.iterations},
      {"extends", stats.extends},
      {"skips", stats.skips},
      {"entailment_queries", stats.entailment.queries},
      {"solver_calls", stats.entailment.solver_calls},
      {"enumerations", stats.entailment.enumerations},
  };
  auto rel = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    rel.push_back({{"index", i}, {"formula", rendered[i]}, {"origin", relation[i].origin}});
  }
  j["relation"] = std::move(rel);
  return j.dump(2) + "\n";
}

}  // namespace p4aeq

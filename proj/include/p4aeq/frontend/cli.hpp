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

// The p4aeq command line.
//
//   p4aeq check A.p4a QA B.p4a QB          exit 0 equivalent, 1 not, 2 inconclusive
//   p4aeq check-rel A.p4a QA B.p4a QB REL
//   p4aeq simulate A.p4a Q BITS [--store h=BITS]...
//   p4aeq oracle A.p4a QA B.p4a QB [--cap N]
//   p4aeq dump-reach A.p4a QA B.p4a QB
//   p4aeq fmt A.p4a
//
// Usage, parse and type errors exit with 3.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "p4aeq/engine/engine.hpp"

namespace p4aeq {

inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitNotEquivalent = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 3;

int exit_code(VerdictKind v);

struct CliOptions {
  std::string command;
  std::vector<std::string> files;
  std::vector<std::string> states;
  std::string relation_file;
  std::string packet;                // simulate
  std::vector<std::string> stores;   // simulate, "h=bits"
  unsigned oracle_cap = 16;
  bool no_leaps = false;
  bool no_reach = false;
  bool enum_fallback = false;
  unsigned enum_cap = 16;
  std::string solver = "z3";
  std::string solver_path;
  unsigned timeout = 60;
  std::string dump_smt;
  std::string witness;
  std::string witness_json;
  std::size_t max_iterations = 0;
};

// Runs a fully parsed command. Never throws.
int run_cli(const CliOptions& opts, std::ostream& out, std::ostream& err);

// Parses argv (args[0] is the program name) and runs it.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p4aeq

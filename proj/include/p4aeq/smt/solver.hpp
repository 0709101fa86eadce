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

// Runs an external SMT solver on SMT-LIB text.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace p4aeq {

enum class SolverKind { Z3, Cvc4, Boolector };

std::string_view solver_name(SolverKind k);
std::optional<SolverKind> parse_solver(std::string_view name);

struct SolverConfig {
  SolverKind kind = SolverKind::Z3;
  std::string path;  // empty: the solver's usual executable name, looked up on PATH
  double timeout_seconds = 60.0;

  // The argv used to run the solver with the query on standard input.
  std::vector<std::string> command() const;
};

struct SolveResult {
  enum class Status { Sat, Unsat, Unknown, Failure };
  Status status = Status::Failure;
  std::string detail;  // failure reason, or the solver's first output line
};

// The query goes to the solver's standard input; the first non-empty,
// non-comment output line must read exactly sat, unsat or unknown.
// Anything else (including a timeout, a crash or a missing executable) is a
// Failure.
SolveResult solve(std::string_view query, const SolverConfig& cfg);

}  // namespace p4aeq

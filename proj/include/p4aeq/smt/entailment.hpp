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

// Deciding ⋀R ⊨ ψ for template-guarded formulas.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "p4aeq/confrel/text.hpp"
#include "p4aeq/kernels/kernels.hpp"
#include "p4aeq/smt/fol.hpp"
#include "p4aeq/smt/solver.hpp"

namespace p4aeq {

// No verdict could be reached: the solver failed, timed out or answered
// unknown, or an instance exceeded the enumeration cap.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend {
  Solver,
  Enumeration,
  Auto,  // enumeration within the cap, the solver beyond it
};

struct EntailmentOptions {
  Backend backend = Backend::Solver;
  SolverConfig solver;
  unsigned enum_cap = 16;
  kernels::Kernel kernel = kernels::default_kernel();
  // Sound syntactic shortcuts (true conclusion, false or identical premise,
  // no premises against a false conclusion) before any backend runs.
  bool fast_paths = true;
  // When non-empty, every backend query is written here as NNNN_query.smt2.
  std::string dump_dir;
};

struct EntailmentStats {
  std::size_t queries = 0;
  std::size_t fast_path = 0;
  std::size_t solver_calls = 0;
  std::size_t enumerations = 0;
  double backend_seconds = 0;
  double max_call_seconds = 0;
};

class EntailmentChecker {
 public:
  EntailmentChecker(const Automaton& aut, EntailmentOptions opts, const Namer* names = nullptr);

  // Premises are the bodies of R members guarded by (left, right).
  bool entails(std::span<const Formula> premises, const Template& left, const Template& right,
               const Formula& conclusion, std::string_view provenance = {});
  bool entails(std::span<const GuardedFormula> R, const GuardedFormula& psi,
               std::string_view provenance = {});

  const EntailmentStats& stats() const { return stats_; }
  const EntailmentOptions& options() const { return opts_; }

 private:
  bool run_backend(const FilteredEntailment& fe, std::string_view provenance);
  void dump(const std::string& text);

  const Automaton& aut_;
  EntailmentOptions opts_;
  Namer default_names_;
  const Namer* names_;
  EntailmentStats stats_;
  std::size_t dump_counter_ = 0;
};

bool decide_entailment(std::span<const GuardedFormula> R, const GuardedFormula& psi, const Automaton& aut,
                       const EntailmentOptions& opts);

}  // namespace p4aeq

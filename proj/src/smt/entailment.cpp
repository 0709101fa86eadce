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

#include "p4aeq/smt/entailment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "p4aeq/smt/enumerate.hpp"

namespace p4aeq {

EntailmentChecker::EntailmentChecker(const Automaton& aut, EntailmentOptions opts, const Namer* names)
    : aut_(aut), opts_(std::move(opts)), names_(names ? names : &default_names_) {
  if (!opts_.dump_dir.empty()) std::filesystem::create_directories(opts_.dump_dir);
}

bool EntailmentChecker::entails(std::span<const GuardedFormula> R, const GuardedFormula& psi,
                                std::string_view provenance) {
  const FilteredEntailment fe = template_filter(R, psi);
  return entails(fe.premises, fe.left, fe.right, fe.conclusion, provenance);
}

bool EntailmentChecker::entails(std::span<const Formula> premises, const Template& left,
                                const Template& right, const Formula& conclusion,
                                std::string_view provenance) {
  ++stats_.queries;
  FilteredEntailment fe{left, right, {}, annotate_buffers(conclusion, left.buflen, right.buflen)};
  if (opts_.fast_paths) {
    if (fe.conclusion.is_top()) {
      ++stats_.fast_path;
      return true;
    }
  }
  for (const Formula& p : premises) {
    Formula s = annotate_buffers(p, left.buflen, right.buflen);
    if (opts_.fast_paths && (s.is_bottom() || s == fe.conclusion)) {
      ++stats_.fast_path;
      return true;
    }
    if (!s.is_top()) fe.premises.push_back(std::move(s));
  }
  if (opts_.fast_paths && fe.premises.empty() && fe.conclusion.is_bottom()) {
    ++stats_.fast_path;
    return false;
  }
  return run_backend(fe, provenance);
}

void EntailmentChecker::dump(const std::string& text) {
  char name[32];
  std::snprintf(name, sizeof name, "%04zu_query.smt2", ++dump_counter_);
  std::ofstream out(std::filesystem::path(opts_.dump_dir) / name);
  out << text;
}

bool EntailmentChecker::run_backend(const FilteredEntailment& fe, std::string_view provenance) {
  const FolBvQuery q = to_fol_bv(fe, aut_);
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    stats_.backend_seconds += secs;
    stats_.max_call_seconds = std::max(stats_.max_call_seconds, secs);
  };

  auto query_text = [&] {
    std::vector<std::string> comments;
    comments.push_back("guard: " + render(fe.left, Side::Left, *names_) + " " +
                       render(fe.right, Side::Right, *names_));
    if (!provenance.empty()) comments.push_back("from: " + std::string(provenance));
    comments.push_back("premises: " + std::to_string(fe.premises.size()));
    comments.push_back("conclusion: " + render(fe.conclusion, *names_));
    comments.push_back("unsat means the entailment holds");
    return serialize_smtlib(q, comments);
  };
  if (!opts_.dump_dir.empty()) dump(query_text());

  Backend backend = opts_.backend;
  std::optional<EnumerationPlan> plan;
  if (backend != Backend::Solver) {
    plan = plan_enumeration(q);
    if (plan->measure() <= opts_.enum_cap) {
      backend = Backend::Enumeration;
    } else if (backend == Backend::Enumeration) {
      finish();
      throw Inconclusive("enumeration cap exceeded: instance needs " + std::to_string(plan->measure()) +
                         " bits, cap is " + std::to_string(opts_.enum_cap));
    } else {
      backend = Backend::Solver;
    }
  }

  if (backend == Backend::Enumeration) {
    ++stats_.enumerations;
    const bool sat = run_plan(*plan, opts_.kernel);
    finish();
    return !sat;
  }

  ++stats_.solver_calls;
  const SolveResult r = solve(opts_.dump_dir.empty() ? query_text() : serialize_smtlib(q), opts_.solver);
  finish();
  switch (r.status) {
    case SolveResult::Status::Unsat: return true;
    case SolveResult::Status::Sat: return false;
    case SolveResult::Status::Unknown: throw Inconclusive("solver answered unknown");
    case SolveResult::Status::Failure: throw Inconclusive("solver failure: " + r.detail);
  }
  throw Inconclusive("unreachable solver status");
}

bool decide_entailment(std::span<const GuardedFormula> R, const GuardedFormula& psi, const Automaton& aut,
                       const EntailmentOptions& opts) {
  EntailmentChecker checker(aut, opts);
  return checker.entails(R, psi);
}

}  // namespace p4aeq

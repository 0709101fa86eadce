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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../support/random_formula.hpp"
#include "p4aeq/confrel/eval.hpp"
#include "p4aeq/engine/engine.hpp"
#include "p4aeq/frontend/source.hpp"
#include "p4aeq/oracle/oracle.hpp"
#include "p4aeq/reach/reach.hpp"
#include "p4aeq/smt/entailment.hpp"
#include "p4aeq/smt/enumerate.hpp"

using namespace p4aeq;
namespace fs = std::filesystem;

namespace {

Automaton fixture(const std::string& name) { return load_automaton(std::string(P4AEQ_FIXTURES) + "/" + name); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Golden files start with a license comment block ending in a blank line.
std::string strip_license(const std::string& text) {
  if (!text.starts_with("; Copyright")) return text;
  return text.substr(text.find("\n\n") + 2);
}

bool have_z3() {
  static const bool ok = solve("(check-sat)\n", SolverConfig{}).status == SolveResult::Status::Sat;
  return ok;
}

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("p4aeq_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

// An executable shell script standing in for a solver.
std::string fake_solver(const fs::path& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir / name;
  std::ofstream(p) << "#!/bin/sh\n" << body << "\n";
  fs::permissions(p, fs::perms::owner_all);
  return p.string();
}

Formula eq(BitExpr a, BitExpr b) { return Formula::eq(std::move(a), std::move(b)); }

// ⋀R ⊨ ψ by brute force over the configurations of `aut`.
bool brute_force(std::span<const GuardedFormula> R, const GuardedFormula& psi, const std::vector<Configuration>& configs) {
  for (const Configuration& c1 : configs) {
    if (template_of(c1) != psi.left) continue;
    for (const Configuration& c2 : configs) {
      if (template_of(c2) != psi.right) continue;
      bool premises = true;
      for (const GuardedFormula& r : R) premises = premises && denotes(r, c1, c2);
      if (premises && !denotes(psi, c1, c2)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("template_filter keeps exactly the matching guards") {
  const Template a{StateRef::user(0), 1};
  const Template b{StateRef::user(1), 0};
  const Template c = Template::accept();
  const Formula f1 = eq(BitExpr::var(0), BitExpr::lit("1"));
  const Formula f2 = eq(BitExpr::var(1), BitExpr::lit("0"));
  const std::vector<GuardedFormula> R{guard(a, b, f1), guard(c, c, f2), guard(a, b, f2)};
  const FilteredEntailment fe = template_filter(R, guard(a, b, Formula::bottom()));
  CHECK(fe.left == a);
  CHECK(fe.right == b);
  CHECK(fe.premises == std::vector<Formula>{f1, f2});
  CHECK(fe.conclusion.is_bottom());
  CHECK(template_filter(R, guard(b, b, f1)).premises.empty());
  const std::vector<GuardedFormula> same{guard(c, c, f1), guard(c, c, f2)};
  CHECK(template_filter(same, guard(c, c, f1)).premises.size() == 2);
}

TEST_CASE("to_fol_bv and serialization") {
  Automaton aut;
  const HeaderId h = aut.add_header("h", 3);
  aut.add_state(State{"a", {Extract{h}}, Goto{StateRef::accept()}});
  const Template empty{StateRef::user(0), 0};
  const Template two{StateRef::user(0), 2};

  // A zero-length buffer is never declared.
  FilteredEntailment fe{empty, two, {}, annotate_buffers(eq(BitExpr::buf(Side::Left), BitExpr::buf(Side::Right)), 0, 2)};
  FolBvQuery q = to_fol_bv(fe, aut);
  for (const FolVar& v : q.free) CHECK_FALSE((v.kind == FolVar::Kind::Buffer && v.side == Side::Left));
  CHECK(q.premises.empty());
  CHECK(q.logic() == "QF_BV");

  fe.conclusion = annotate_buffers(eq(BitExpr::slice(BitExpr::buf(Side::Right), 0, 0), BitExpr::var(4)), 0, 2);
  q = to_fol_bv(fe, aut);
  const std::string text = serialize_smtlib(q);
  CHECK(text.find("(_ BitVec 1)") != std::string::npos);
  CHECK(text.find("(check-sat)") != std::string::npos);
  CHECK(text.find("(set-logic QF_BV)") != std::string::npos);
  CHECK(serialize_smtlib(to_fol_bv(fe, aut)) == text);

  fe.conclusion = eq(BitExpr::lit("01"), BitExpr::lit("10"));
  const std::string closed = serialize_smtlib(to_fol_bv(fe, aut));
  CHECK(closed.find("declare") == std::string::npos);

  fe.premises = {eq(BitExpr::var(7), BitExpr::slice(BitExpr::hdr(h, Side::Left, 3), 1, 1))};
  const FolBvQuery quantified = to_fol_bv(fe, aut);
  CHECK(quantified.quantified());
  CHECK(quantified.logic() == "BV");
  CHECK(serialize_smtlib(quantified).find("forall") != std::string::npos);

  const std::vector<std::string> comments{"first", "second"};
  CHECK(serialize_smtlib(q, comments).starts_with("; first\n; second\n"));

  fe.conclusion = Formula::state_is(StateRef::user(0), Side::Left);
  CHECK_THROWS_AS(to_fol_bv(fe, aut), InternalError);
  fe.conclusion = Formula::buflen(2, Side::Right);
  CHECK_THROWS_AS(to_fol_bv(fe, aut), InternalError);
}

TEST_CASE("dumped queries are byte-identical across runs and match the snapshot") {
  const Automaton ref = fixture("mpls_ref_small.p4a");
  const Automaton vec = fixture("mpls_vec_small.p4a");
  ScratchDir one("dump1");
  ScratchDir two("dump2");
  for (const fs::path* dir : {&one.path, &two.path}) {
    EngineOptions opts;
    opts.entailment.backend = Backend::Enumeration;
    opts.entailment.enum_cap = 24;
    opts.entailment.dump_dir = dir->string();
    CHECK(check_equivalence(ref, vec, *ref.find_state("q1"), *vec.find_state("q3"), opts).verdict ==
          Verdict::equivalent());
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(one.path)) files.push_back(e.path().filename());
  std::sort(files.begin(), files.end());
  REQUIRE_FALSE(files.empty());
  CHECK(files.front() == "0001_query.smt2");
  for (const fs::path& f : files) CHECK(slurp(one.path / f) == slurp(two.path / f));
  CHECK(slurp(one.path / "0014_query.smt2") == strip_license(slurp(std::string(P4AEQ_FIXTURES) + "/golden/mpls_small_0014.smt2")));
}

TEST_CASE("solver driver") {
  ScratchDir dir("solvers");
  auto run = [](const std::string& path, double timeout = 5.0) {
    SolverConfig cfg;
    cfg.path = path;
    cfg.timeout_seconds = timeout;
    return solve("(check-sat)\n", cfg);
  };
  using S = SolveResult::Status;
  CHECK(run(fake_solver(dir.path, "unsat", "cat >/dev/null; echo unsat")).status == S::Unsat);
  CHECK(run(fake_solver(dir.path, "sat", "cat >/dev/null; echo; echo '; note'; echo sat")).status == S::Sat);
  CHECK(run(fake_solver(dir.path, "unknown", "cat >/dev/null; echo unknown")).status == S::Unknown);
  CHECK(run(fake_solver(dir.path, "garbage", "cat >/dev/null; echo 'unsat, probably'")).status == S::Failure);
  CHECK(run(fake_solver(dir.path, "error", "cat >/dev/null; echo '(error \"line 1\")'")).status == S::Failure);
  CHECK(run(fake_solver(dir.path, "silent", "cat >/dev/null")).status == S::Failure);
  CHECK(run(fake_solver(dir.path, "crash", "cat >/dev/null; kill -SEGV $$")).status == S::Failure);
  CHECK(run((dir.path / "missing").string()).status == S::Failure);
  const SolveResult slow = run(fake_solver(dir.path, "slow", "cat >/dev/null; sleep 30; echo unsat"), 0.5);
  CHECK(slow.status == S::Failure);
  CHECK(slow.detail.find("timeout") != std::string::npos);

  if (have_z3()) {
    CHECK(solve("(assert false)(check-sat)\n", SolverConfig{}).status == S::Unsat);
    CHECK(solve("(assert true)(check-sat)\n", SolverConfig{}).status == S::Sat);
  } else {
    MESSAGE("z3 not found; skipping live solver checks");
  }
}

TEST_CASE("solver failures never become verdicts") {
  ScratchDir dir("liars");
  const Automaton ref = fixture("mpls_ref_small.p4a");
  const Automaton vec = fixture("mpls_vec_small.p4a");
  for (const std::string body : {"cat >/dev/null; echo unknown", "cat >/dev/null; echo 'unsat.'",
                                 "cat >/dev/null; sleep 30", "cat >/dev/null; exit 3"}) {
    EngineOptions opts;
    opts.entailment.solver.path = fake_solver(dir.path, "bad", body);
    opts.entailment.solver.timeout_seconds = 0.5;
    const auto r = check_equivalence(ref, vec, *ref.find_state("q1"), *vec.find_state("q3"), opts);
    CHECK(r.verdict.kind == VerdictKind::Inconclusive);
    CHECK_FALSE(r.verdict.reason.empty());

    EntailmentOptions eo = opts.entailment;
    const GuardedFormula psi = guard(Template::accept(), Template::accept(), eq(BitExpr::var(0), BitExpr::lit("1")));
    CHECK_THROWS_AS(decide_entailment({}, psi, ref, eo), Inconclusive);
  }
}

TEST_CASE("decide_entailment examples") {
  Automaton aut;
  const HeaderId h = aut.add_header("h", 3);
  aut.add_state(State{"a", {Extract{h}}, Goto{StateRef::accept()}});
  const Template t{StateRef::user(0), 2};
  EntailmentOptions enumerate;
  enumerate.backend = Backend::Enumeration;
  EntailmentOptions slow = enumerate;
  slow.fast_paths = false;

  const Formula body = eq(BitExpr::buf(Side::Left), BitExpr::buf(Side::Right));
  const GuardedFormula psi = guard(t, t, eq(BitExpr::slice(BitExpr::buf(Side::Left), 0, 0),
                                             BitExpr::slice(BitExpr::buf(Side::Right), 0, 0)));
  const std::vector<GuardedFormula> whole{guard(t, t, body)};
  const std::vector<GuardedFormula> bottom{guard(t, t, Formula::bottom())};
  const auto configs = enumerate_configs(aut);
  for (const EntailmentOptions& o : {enumerate, slow}) {
    CHECK(decide_entailment({}, guard(t, t, Formula::top()), aut, o));
    CHECK(decide_entailment(bottom, psi, aut, o));
    CHECK(decide_entailment(whole, whole[0], aut, o));
    CHECK(decide_entailment(whole, psi, aut, o));
    CHECK_FALSE(decide_entailment(std::vector<GuardedFormula>{psi}, whole[0], aut, o));
    CHECK_FALSE(decide_entailment({}, psi, aut, o));
  }
  CHECK(brute_force(whole, psi, configs));
  CHECK_FALSE(brute_force(std::vector<GuardedFormula>{psi}, whole[0], configs));

  EntailmentOptions tight = enumerate;
  tight.enum_cap = 2;
  CHECK_THROWS_AS(decide_entailment(whole, psi, aut, tight), Inconclusive);
}

TEST_CASE("solver and enumeration agree on generated entailments") {
  testing::Rng rng(59);
  std::size_t compared = 0;
  std::size_t valid = 0;
  std::size_t brute = 0;
  const bool solver = have_z3();
  if (!solver) MESSAGE("z3 not found; comparing enumeration against brute force only");
  while (compared < 200) {
    const Automaton a = testing::random_automaton(rng, {2, 3, 2, true});
    const auto configs = enumerate_configs(a);
    std::vector<StateRef> states;
    for (std::uint32_t q = 0; q < a.num_states(); ++q) states.push_back(StateRef::user(q));
    const auto templates = all_templates(states, a);
    for (int k = 0; k < 10; ++k) {
      const Template t1 = templates[rng() % templates.size()];
      const Template t2 = templates[rng() % templates.size()];
      const testing::FormulaContext ctx{&a, t1.buflen, t2.buflen, 2};
      std::vector<GuardedFormula> R;
      for (std::size_t i = 0, n = rng() % 3; i < n; ++i) R.push_back(guard(t1, t2, testing::random_pure_formula(rng, ctx, 2)));
      if (rng() % 3 == 0) R.push_back(guard(templates[rng() % templates.size()], t2, Formula::bottom()));
      Formula concl = testing::random_pure_formula(rng, ctx, 2);
      if (!R.empty() && rng() % 2 == 0) concl = Formula::disj({R[0].body, concl});
      const GuardedFormula psi = guard(t1, t2, concl);

      EntailmentOptions eo;
      eo.backend = Backend::Enumeration;
      eo.enum_cap = 16;
      eo.fast_paths = false;
      bool by_enum = false;
      try {
        by_enum = decide_entailment(R, psi, a, eo);
      } catch (const Inconclusive&) {
        continue;  // beyond the cap
      }
      ++compared;
      valid += by_enum ? 1 : 0;
      if (solver) {
        EntailmentOptions so;
        so.fast_paths = false;
        CHECK(decide_entailment(R, psi, a, so) == by_enum);
      }
      if (configs.size() <= 200) {
        ++brute;
        CHECK(brute_force(R, psi, configs) == by_enum);
      }
    }
  }
  CHECK(valid > 20);
  CHECK(compared - valid > 20);
  CHECK(brute > 50);
}

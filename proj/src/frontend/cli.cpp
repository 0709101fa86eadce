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

#include "p4aeq/frontend/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "p4aeq/frontend/relation_file.hpp"
#include "p4aeq/frontend/source.hpp"
#include "p4aeq/oracle/oracle.hpp"

namespace p4aeq {

int exit_code(VerdictKind v) {
  switch (v) {
    case VerdictKind::Equivalent: return kExitEquivalent;
    case VerdictKind::NotEquivalent: return kExitNotEquivalent;
    case VerdictKind::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Automaton aut;
  StateRef start;
};

Loaded load_with_state(const std::string& path, const std::string& state) {
  Loaded l{load_automaton(path), StateRef::reject()};
  auto q = l.aut.find_state(state);
  if (!q || !q->is_user()) throw UsageError(path + ": no state named '" + state + "'");
  l.start = *q;
  return l;
}

EngineOptions engine_options(const CliOptions& o) {
  EngineOptions e;
  e.leaps = !o.no_leaps;
  e.reach = !o.no_reach;
  e.max_iterations = o.max_iterations;
  e.entailment.backend = o.enum_fallback ? Backend::Enumeration : Backend::Solver;
  e.entailment.enum_cap = o.enum_cap;
  auto kind = parse_solver(o.solver);
  if (!kind) throw UsageError("unknown solver '" + o.solver + "' (expected z3, cvc4 or boolector)");
  e.entailment.solver.kind = *kind;
  e.entailment.solver.path = o.solver_path;
  e.entailment.solver.timeout_seconds = o.timeout;
  e.entailment.dump_dir = o.dump_smt;
  return e;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

int report(const EngineResult& r, const CliOptions& o, std::ostream& out) {
  const EngineStats& s = r.state.stats;
  out << "verdict: " << verdict_name(r.verdict.kind) << "\n";
  if (!r.verdict.reason.empty()) out << "reason: " << r.verdict.reason << "\n";
  out << "reach pairs: " << s.reach_pairs << "\n";
  out << "iterations: " << s.iterations << " (extends " << s.extends << ", skips " << s.skips << ")\n";
  out << "relation size: " << r.state.R.size() << "\n";
  out << "entailment queries: " << s.entailment.queries << " (fast path " << s.entailment.fast_path
      << ", solver " << s.entailment.solver_calls << ", enumeration " << s.entailment.enumerations << ")\n";
  out << std::fixed << std::setprecision(3) << "time: " << s.seconds << " s (backend "
      << s.entailment.backend_seconds << " s)\n";
  if (!o.witness.empty()) write_file(o.witness, r.witness.text());
  if (!o.witness_json.empty()) write_file(o.witness_json, r.witness.json());
  return exit_code(r.verdict.kind);
}

int cmd_check(const CliOptions& o, std::ostream& out) {
  const Loaded a = load_with_state(o.files.at(0), o.states.at(0));
  const Loaded b = load_with_state(o.files.at(1), o.states.at(1));
  const EngineOptions eo = engine_options(o);
  if (o.command == "check") return report(check_equivalence(a.aut, b.aut, a.start, b.start, eo), o, out);

  std::ifstream f(o.relation_file);
  if (!f) throw UsageError("cannot open '" + o.relation_file + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const SummedAutomaton sum = disjoint_sum(a.aut, b.aut);
  const RelationSpec rel = parse_relation_file(ss.str(), sum.automaton, o.relation_file);
  return report(check_with_relation(a.aut, b.aut, a.start, b.start, rel.phi_extra, rel.init_extra, eo), o,
                out);
}

BitVec parse_bit_arg(const std::string& text, const std::string& what) {
  try {
    return BitVec::from_string(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(what + " must be a string of 0s and 1s");
  }
}

int cmd_simulate(const CliOptions& o, std::ostream& out) {
  const Loaded a = load_with_state(o.files.at(0), o.states.at(0));
  Store store = zero_store(a.aut);
  for (const std::string& assignment : o.stores) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) throw UsageError("--store expects NAME=BITS");
    const std::string name = assignment.substr(0, eq);
    auto h = a.aut.find_header(name);
    if (!h) throw UsageError("no header named '" + name + "'");
    BitVec v = parse_bit_arg(assignment.substr(eq + 1), "--store value");
    if (v.size() != a.aut.header(*h).size) {
      throw UsageError("header '" + name + "' has " + std::to_string(a.aut.header(*h).size) + " bits");
    }
    store[*h] = std::move(v);
  }
  const BitVec packet = parse_bit_arg(o.packet, "packet");
  const Configuration c = multi_step(initial_configuration(a.start, store), packet, a.aut);
  out << "state: " << a.aut.state_name(c.state) << "\n";
  out << "buffer: " << (c.buffer.empty() ? "eps" : c.buffer.to_string()) << "\n";
  for (HeaderId h = 0; h < a.aut.headers().size(); ++h) {
    out << "store " << a.aut.header(h).name << " = " << c.store[h].to_string() << "\n";
  }
  out << "accepted: " << (is_accepting(c) ? "yes" : "no") << "\n";
  return 0;
}

std::string store_text(const Automaton& aut, const Store& s) {
  std::string out;
  for (HeaderId h = 0; h < aut.headers().size(); ++h) {
    if (!out.empty()) out += ' ';
    out += aut.header(h).name + "=" + s[h].to_string();
  }
  return out.empty() ? "(no headers)" : out;
}

int cmd_oracle(const CliOptions& o, std::ostream& out) {
  const Loaded a = load_with_state(o.files.at(0), o.states.at(0));
  const Loaded b = load_with_state(o.files.at(1), o.states.at(1));
  try {
    auto d = distinguishing_word(a.aut, b.aut, a.start, b.start, o.oracle_cap);
    if (!d) {
      out << "oracle: Equivalent\n";
      return kExitEquivalent;
    }
    out << "oracle: NotEquivalent\n";
    out << "word: " << (d->word.empty() ? "eps" : d->word.to_string()) << "\n";
    out << "left store: " << store_text(a.aut, d->left_store) << "\n";
    out << "right store: " << store_text(b.aut, d->right_store) << "\n";
    out << "accepted by: " << (d->left_accepts ? "left" : "right") << "\n";
    return kExitNotEquivalent;
  } catch (const CapExceeded& e) {
    out << "oracle: Inconclusive\nreason: " << e.what() << "\n";
    return kExitInconclusive;
  }
}

int cmd_dump_reach(const CliOptions& o, std::ostream& out) {
  const Loaded a = load_with_state(o.files.at(0), o.states.at(0));
  const Loaded b = load_with_state(o.files.at(1), o.states.at(1));
  const SummedAutomaton sum = disjoint_sum(a.aut, b.aut);
  const TemplatePair seeds[] = {{{sum.maps.left_state(a.start), 0}, {sum.maps.right_state(b.start), 0}}};
  const ReachSet r = o.no_reach ? all_pairs(seeds, sum.maps.left_states, sum.maps.right_states, sum.automaton)
                                : reach_fixpoint(seeds, sum.automaton, !o.no_leaps);
  out << "# " << r.size() << " template pairs\n" << r.dump(SumNamer(sum.automaton));
  return 0;
}

int cmd_fmt(const CliOptions& o, std::ostream& out) {
  out << pretty_print(load_automaton(o.files.at(0)));
  return 0;
}

}  // namespace

int run_cli(const CliOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (o.command == "check" || o.command == "check-rel") return cmd_check(o, out);
    if (o.command == "simulate") return cmd_simulate(o, out);
    if (o.command == "oracle") return cmd_oracle(o, out);
    if (o.command == "dump-reach") return cmd_dump_reach(o, out);
    if (o.command == "fmt") return cmd_fmt(o, out);
    err << "error: unknown command '" << o.command << "'\n";
  } catch (const SourceError& e) {
    err << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliOptions o;
  // Options bind to these slots by reference, so size them once up front.
  o.files.resize(2);
  o.states.resize(2);
  CLI::App app{"Language equivalence checking for P4 automata", "p4aeq"};
  app.require_subcommand(1, 1);

  auto engine_flags = [&o](CLI::App* c) {
    c->add_flag("--no-leaps", o.no_leaps, "Step one bit at a time instead of leaping");
    c->add_flag("--no-reach", o.no_reach, "Use every template pair instead of the reachable ones");
    c->add_flag("--enum-fallback", o.enum_fallback, "Decide entailments by enumeration, without a solver");
    c->add_option("--enum-cap", o.enum_cap, "Largest enumeration, in bits")->capture_default_str();
    c->add_option("--solver", o.solver, "z3, cvc4 or boolector")->capture_default_str();
    c->add_option("--solver-path", o.solver_path, "Solver executable");
    c->add_option("--timeout", o.timeout, "Per-query solver timeout in seconds")->capture_default_str();
    c->add_option("--dump-smt", o.dump_smt, "Write every solver query into this directory");
    c->add_option("--witness", o.witness, "Write the final relation as text");
    c->add_option("--witness-json", o.witness_json, "Write the final relation as JSON");
    c->add_option("--max-iterations", o.max_iterations, "Abort after this many iterations (0: automatic)");
  };
  auto pair_args = [&o](CLI::App* c) {
    c->add_option("left", o.files[0], "Left automaton (.p4a)")->required();
    c->add_option("left_state", o.states[0], "Left start state")->required();
    c->add_option("right", o.files[1], "Right automaton (.p4a)")->required();
    c->add_option("right_state", o.states[1], "Right start state")->required();
  };

  CLI::App* check = app.add_subcommand("check", "Decide whether two parsers accept the same packets");
  pair_args(check);
  engine_flags(check);

  CLI::App* check_rel = app.add_subcommand("check-rel", "Check with a caller-supplied extra relation");
  pair_args(check_rel);
  check_rel->add_option("relation", o.relation_file, "Relation file")->required();
  engine_flags(check_rel);

  CLI::App* simulate = app.add_subcommand("simulate", "Run a parser on a packet");
  simulate->add_option("file", o.files[0], "Automaton (.p4a)")->required();
  simulate->add_option("state", o.states[0], "Start state")->required();
  simulate->add_option("packet", o.packet, "Packet bits, e.g. 0110")->required();
  simulate->add_option("--store", o.stores, "Initial header value NAME=BITS (default all zero)");

  CLI::App* oracle = app.add_subcommand("oracle", "Decide equivalence by explicit search (small inputs)");
  pair_args(oracle);
  oracle->add_option("--cap", o.oracle_cap, "Largest configuration size, in bits")->capture_default_str();

  CLI::App* dump = app.add_subcommand("dump-reach", "Print the reachable template pairs");
  pair_args(dump);
  dump->add_flag("--no-leaps", o.no_leaps, "Single-bit successors");
  dump->add_flag("--no-reach", o.no_reach, "Print every template pair");

  CLI::App* fmt = app.add_subcommand("fmt", "Print a parser in canonical form");
  fmt->add_option("file", o.files[0], "Automaton (.p4a)")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }
  o.command = app.get_subcommands().front()->get_name();
  return run_cli(o, out, err);
}

}  // namespace p4aeq

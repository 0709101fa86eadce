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

#include <random>

#include "../support/random_automaton.hpp"
#include "p4aeq/confrel/eval.hpp"
#include "p4aeq/confrel/text.hpp"
#include "p4aeq/frontend/source.hpp"
#include "p4aeq/oracle/oracle.hpp"

using namespace p4aeq;

namespace {

Automaton fixture(const std::string& name) { return load_automaton(std::string(P4AEQ_FIXTURES) + "/" + name); }

BitVec bv(std::string_view s) { return BitVec::from_string(s); }

std::size_t pick(testing::Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Side random_side(testing::Rng& rng) { return pick(rng, 2) ? Side::Right : Side::Left; }

BitExpr random_bit_expr(testing::Rng& rng, const Automaton& aut, int depth) {
  const std::size_t k = depth > 0 ? pick(rng, 6) : pick(rng, 4);
  switch (k) {
    case 0: return BitExpr::lit(BitVec::from_uint(rng(), pick(rng, 4)));
    case 1: return BitExpr::buf(random_side(rng));
    case 2: {
      const auto h = static_cast<HeaderId>(pick(rng, aut.headers().size()));
      const std::string& name = aut.header(h).name;
      const Side side = name.starts_with("l.") ? Side::Left : name.starts_with("r.") ? Side::Right : random_side(rng);
      return BitExpr::hdr(h, side, aut.header(h).size);
    }
    case 3: return BitExpr::var(static_cast<VarId>(pick(rng, 3)));
    case 4: {
      const std::size_t lo = pick(rng, 4);
      return BitExpr::slice(random_bit_expr(rng, aut, depth - 1), lo, lo + pick(rng, 3));
    }
    default: {
      BitExpr a = random_bit_expr(rng, aut, depth - 1);
      BitExpr b = random_bit_expr(rng, aut, depth - 1);
      if (a.as<BitExpr::Concat>() || b.as<BitExpr::Concat>()) return a;
      return BitExpr::concat({a, b});
    }
  }
}

StateRef random_state(testing::Rng& rng, const Automaton& aut) {
  const std::size_t k = pick(rng, aut.num_states() + 2);
  if (k < aut.num_states()) return StateRef::user(static_cast<std::uint32_t>(k));
  return k == aut.num_states() ? StateRef::accept() : StateRef::reject();
}

Formula random_formula(testing::Rng& rng, const Automaton& aut, int depth, bool pure) {
  const std::size_t leaves = pure ? 3 : 5;
  const std::size_t k = depth > 0 ? pick(rng, leaves + 3) : pick(rng, leaves);
  if (k == 0) return pick(rng, 2) ? Formula::top() : Formula::bottom();
  if (k == 1 || k == 2) return Formula::eq(random_bit_expr(rng, aut, 2), random_bit_expr(rng, aut, 2));
  if (k < leaves) {
    if (k == 3) {
      const StateRef q = random_state(rng, aut);
      const std::string name = aut.state_name(q);
      const Side side = name.starts_with("l.") ? Side::Left : name.starts_with("r.") ? Side::Right : random_side(rng);
      return Formula::state_is(q, side);
    }
    return Formula::buflen(pick(rng, 3), random_side(rng));
  }
  if (k == leaves) return Formula::implies(random_formula(rng, aut, depth - 1, pure), random_formula(rng, aut, depth - 1, pure));
  std::vector<Formula> ts;
  for (std::size_t i = 0, n = 2 + pick(rng, 2); i < n; ++i) ts.push_back(random_formula(rng, aut, depth - 1, pure));
  return k == leaves + 1 ? Formula::conj(std::move(ts)) : Formula::disj(std::move(ts));
}

// A small automaton whose full configuration set has at most 10 bits.
Automaton tiny() {
  Automaton a;
  const HeaderId h = a.add_header("h", 2);
  const HeaderId g = a.add_header("g", 1);
  a.add_state(State{"a", {Extract{h}}, Select{{Expr::slice(Expr::header(h), 0, 0)},
                                            {{{Pattern::match(bv("1"))}, StateRef::user(1)},
                                             {{Pattern::wildcard()}, StateRef::accept()}}}});
  a.add_state(State{"b", {Extract{g}, Assign{h, Expr::concat(Expr::header(g), Expr::header(g))}},
                    Goto{StateRef::accept()}});
  return a;
}

Configuration conf(StateRef q, Store s, std::string_view buf) { return {q, std::move(s), bv(buf)}; }

}  // namespace

TEST_CASE("eval_bit_expr projects buffers, headers and variables") {
  const Configuration cl = conf(StateRef::user(0), {bv("01")}, "101");
  const Configuration cr = conf(StateRef::user(0), {bv("11")}, "");
  CHECK(eval_bit_expr(BitExpr::buf(Side::Left), cl, cr, {}) == bv("101"));
  CHECK(eval_bit_expr(BitExpr::buf(Side::Right), cl, cr, {}).empty());
  CHECK(eval_bit_expr(BitExpr::var(4), cl, cr, {{4, true}}) == bv("1"));
  CHECK(eval_bit_expr(BitExpr::hdr(0, Side::Right, 2), cl, cr, {}) == bv("11"));

  BitVec w(64);
  for (std::size_t i = 0; i < 64; i += 3) w.set(i, true);
  const Configuration wide{StateRef::user(0), {}, w};
  CHECK(eval_bit_expr(BitExpr::slice(BitExpr::buf(Side::Left), 0, 31), wide, wide, {}) == w.take(0, 32));
}

TEST_CASE("holds and denotes") {
  const Configuration acc = conf(StateRef::accept(), {}, "");
  CHECK_FALSE(holds(Formula::bottom(), acc, acc, {}));
  const Formula both_accept =
      Formula::conj({Formula::state_is(StateRef::accept(), Side::Left), Formula::state_is(StateRef::accept(), Side::Right)});
  CHECK(holds(both_accept, acc, acc, {}));
  CHECK_FALSE(holds(Formula::buflen(3, Side::Left), conf(StateRef::user(0), {}, "10"), acc, {}));
  CHECK(holds(Formula::buflen(2, Side::Left), conf(StateRef::user(0), {}, "10"), acc, {}));

  // Width mismatch is false, not an error.
  CHECK_FALSE(holds(Formula::eq(BitExpr::lit("0"), BitExpr::lit("00")), acc, acc, {}));

  CHECK(denotes(both_accept, acc, acc));
  const Formula x_is_zero = Formula::eq(BitExpr::var(0), BitExpr::lit("0"));
  CHECK(holds(x_is_zero, acc, acc, {{0, false}}));
  CHECK_FALSE(denotes(x_is_zero, acc, acc));
  CHECK(denotes(Formula::eq(BitExpr::var(0), BitExpr::var(0)), acc, acc));
}

TEST_CASE("template_of") {
  CHECK(template_of(conf(StateRef::user(1), {}, "1")) == Template{StateRef::user(1), 1});
  CHECK(template_of(conf(StateRef::accept(), {}, "")) == Template::accept());
}

TEST_CASE("guard") {
  const Automaton ref = fixture("mpls_ref.p4a");
  const Automaton vec = fixture("mpls_vec.p4a");
  const SummedAutomaton sum = disjoint_sum(ref, vec);
  const StateRef q2 = sum.maps.left_state(*ref.find_state("q2"));
  const StateRef q5 = sum.maps.right_state(*vec.find_state("q5"));
  const GuardedFormula g = guard({q2, 0}, {q5, 0}, Formula::top());
  CHECK(render(g, SumNamer(sum.automaton)) ==
        "(state<(q2) & buflen<(0) & state>(q5) & buflen>(0)) -> true");
  CHECK_THROWS_AS(guard({q2, 0}, {q5, 0}, Formula::state_is(q2, Side::Left)), NotPure);
  CHECK_THROWS_AS(guard({q2, 0}, {q5, 0}, Formula::implies(Formula::buflen(1, Side::Right), Formula::top())),
                  NotPure);
  REQUIRE(as_guarded(g.as_formula()).has_value());
  CHECK(*as_guarded(g.as_formula()) == g);
}

TEST_CASE("simplify examples") {
  CHECK(simplify(Formula::eq(BitExpr::lit("01"), BitExpr::lit("01"))).is_top());
  CHECK(simplify(Formula::eq(BitExpr::lit("01"), BitExpr::lit("11"))).is_bottom());
  const Formula phi = Formula::eq(BitExpr::buf(Side::Left), BitExpr::var(2));
  CHECK(simplify(Formula::implies(Formula::bottom(), phi)).is_top());
  CHECK(simplify(Formula::conj({phi, Formula::top()})) == phi);
  CHECK(simplify(Formula::disj({phi, Formula::bottom()})) == phi);
  CHECK(simplify(Formula::eq(phi.as<Formula::Eq>()->lhs, phi.as<Formula::Eq>()->lhs)).is_top());

  const BitExpr a = BitExpr::hdr(0, Side::Left, 32);
  const BitExpr b = BitExpr::hdr(1, Side::Left, 32);
  CHECK(simplify(BitExpr::slice(BitExpr::concat({a, b}), 32, 63)) == b);
  CHECK(simplify(BitExpr::slice(BitExpr::lit("0110"), 1, 2)) == BitExpr::lit("11"));
  CHECK(simplify(BitExpr::slice(BitExpr::slice(a, 4, 20), 2, 5)) == BitExpr::slice(a, 6, 9));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Configuration c{StateRef::user(0), {BitVec::from_uint(rng(), 32), BitVec::from_uint(rng(), 32)}, {}};
    CHECK(eval_bit_expr(BitExpr::slice(BitExpr::concat({a, b}), 32, 63), c, c, {}) == c.store[1]);
  }
}

TEST_CASE("the MPLS bisimulation is denoted by its formula") {
  // Left parser with 2-bit labels and 4-bit UDP, right parser likewise; q2
  // reads 4 bits and q5 reads 2. A left buffer wx with |w| = 2 relates to a
  // right buffer x with |x| < 2.
  const Automaton ref = fixture("mpls_ref_small.p4a");
  const Automaton vec = fixture("mpls_vec_small.p4a");
  const SummedAutomaton sum = disjoint_sum(ref, vec);
  const Automaton& aut = sum.automaton;
  const StateRef q2 = sum.maps.left_state(*ref.find_state("q2"));
  const StateRef q5 = sum.maps.right_state(*vec.find_state("q5"));
  const std::size_t label = 2;

  std::vector<Formula> disjuncts{
      Formula::disj({Formula::conj({Formula::state_is(StateRef::accept(), Side::Left),
                                    Formula::state_is(StateRef::accept(), Side::Right)}),
                     Formula::conj({Formula::state_is(StateRef::reject(), Side::Left),
                                    Formula::state_is(StateRef::reject(), Side::Right)})})};
  for (std::size_t n = 0; n < label; ++n) {
    const Formula body =
        n == 0 ? Formula::top()
               : Formula::eq(BitExpr::slice(BitExpr::buf(Side::Left), label, label + n - 1), BitExpr::buf(Side::Right));
    disjuncts.push_back(Formula::conj({Formula::buflen(n + label, Side::Left), Formula::state_is(q2, Side::Left),
                                       Formula::buflen(n, Side::Right), Formula::state_is(q5, Side::Right), body}));
  }
  const Formula R = Formula::disj(disjuncts);

  auto related = [&](const Configuration& c1, const Configuration& c2) {
    if (!c1.state.is_user() && c1.state == c2.state) return true;
    return c1.state == q2 && c2.state == q5 && c2.buffer.size() < label &&
           c1.buffer.size() == c2.buffer.size() + label &&
           c1.buffer.take(label, c2.buffer.size()) == c2.buffer;
  };

  std::vector<std::pair<StateRef, BitVec>> shapes;
  for (std::uint32_t i = 0; i < aut.num_states(); ++i) {
    const std::size_t n = opsize(aut.state(StateRef::user(i)).ops, aut);
    for (std::size_t len = 0; len < n; ++len) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) shapes.emplace_back(StateRef::user(i), BitVec::from_uint(v, len));
    }
  }
  shapes.emplace_back(StateRef::accept(), BitVec{});
  shapes.emplace_back(StateRef::reject(), BitVec{});

  testing::Rng rng(17);
  auto random_store = [&] {
    Store s;
    for (const Header& h : aut.headers()) s.push_back(BitVec::from_uint(rng(), h.size));
    return s;
  };
  std::size_t in_relation = 0;
  for (const auto& [s1, b1] : shapes) {
    for (const auto& [s2, b2] : shapes) {
      const Configuration c1{s1, random_store(), b1};
      const Configuration c2{s2, random_store(), b2};
      const bool expected = related(c1, c2);
      in_relation += expected ? 1 : 0;
      CHECK(denotes(R, c1, c2) == expected);
      CHECK(denotes(simplify(R), c1, c2) == expected);
    }
  }
  CHECK(in_relation == 2 + 4 + 8);
}

TEST_CASE("simplify, guards and primitive encodings preserve meaning") {
  testing::Rng rng(23);
  std::vector<Automaton> automata{tiny()};
  for (int i = 0; i < 4; ++i) automata.push_back(testing::random_automaton(rng, {2, 3, 2, true}));
  for (const Automaton& aut : automata) {
    const auto configs = enumerate_configs(aut);
    for (int iter = 0; iter < 40; ++iter) {
      const Formula f = random_formula(rng, aut, 3, false);
      const Formula s = simplify(f);
      const Formula p = to_primitive(f);
      const Formula body = random_formula(rng, aut, 2, true);
      const Template t1 = template_of(configs[pick(rng, configs.size())]);
      const Template t2 = template_of(configs[pick(rng, configs.size())]);
      const GuardedFormula g = guard(t1, t2, body);
      const GuardedFormula gs = guard_simplified(t1, t2, body);
      const auto* eq = f.as<Formula::Eq>();
      for (const Configuration& c1 : configs) {
        for (const Configuration& c2 : configs) {
          CHECK(denotes(f, c1, c2) == denotes(s, c1, c2));
          CHECK(denotes(g, c1, c2) == denotes(gs, c1, c2));
          if (template_of(c1) != t1 || template_of(c2) != t2) CHECK(denotes(g, c1, c2));
          if (eq) CHECK(denotes(f, c1, c2) == denotes(Formula::eq(eq->rhs, eq->lhs), c1, c2));
          for (unsigned v = 0; v < 8; ++v) {
            const Valuation val{{0, (v & 1U) != 0}, {1, (v & 2U) != 0}, {2, (v & 4U) != 0}};
            CHECK(holds(f, c1, c2, val) == holds(p, c1, c2, val));
          }
        }
      }
    }
  }
}

TEST_CASE("rendering round-trips through the parser") {
  const SummedAutomaton sum = disjoint_sum(fixture("mpls_ref.p4a"), fixture("mpls_vec.p4a"));
  const SumNamer names(sum.automaton);
  testing::Rng rng(29);
  for (int i = 0; i < 500; ++i) {
    const Formula f = random_formula(rng, sum.automaton, 3, false);
    const std::string text = render(f, names);
    const Formula back = parse_formula(text, sum.automaton);
    CHECK_MESSAGE(back == f, text);
    CHECK(render(back, names) == text);
  }
  CHECK(render(parse_formula("buf<[0:3] ++ $x12 = 0b0110 ++ udp>", sum.automaton), names) ==
        "buf<[0:3] ++ $x12 = 0b0110 ++ udp>");
  CHECK_THROWS_AS(parse_formula("state<(nowhere)", sum.automaton), FormulaParseError);
  CHECK_THROWS_AS(parse_formula("buf< = ", sum.automaton), FormulaParseError);
}

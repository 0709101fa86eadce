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

#include <set>

#include "../support/random_automaton.hpp"
#include "p4aeq/frontend/source.hpp"
#include "p4aeq/oracle/oracle.hpp"

using namespace p4aeq;

namespace {

Automaton fixture(const std::string& name) { return load_automaton(std::string(P4AEQ_FIXTURES) + "/" + name); }

std::string key(const Configuration& c) {
  std::string k = std::to_string(c.state.raw()) + "|" + c.buffer.to_string();
  for (const BitVec& h : c.store) k += "|" + h.to_string();
  return k;
}

// Is there a word of length n on which the two sides disagree, for some
// pair of initial stores?
bool distinguishable_at(const Automaton& a, const Automaton& b, StateRef qa, StateRef qb, std::size_t n) {
  for (const Store& sa : enumerate_stores(a, 24)) {
    for (const Store& sb : enumerate_stores(b, 24)) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        const BitVec w = BitVec::from_uint(v, n);
        if (accepts(qa, sa, w, a) != accepts(qb, sb, w, b)) return true;
      }
    }
  }
  return false;
}

void headers_of(const Expr& e, std::set<HeaderId>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          out.insert(n.id);
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          headers_of(n.base, out);
        } else if constexpr (std::is_same_v<T, Expr::Concat>) {
          headers_of(n.left, out);
          headers_of(n.right, out);
        }
      },
      e.node());
}

// Every header a state reads was written earlier in the same state, so the
// initial store can never influence acceptance.
bool reads_only_fresh_headers(const Automaton& a) {
  for (const State& st : a.states()) {
    std::set<HeaderId> written;
    for (const Statement& op : st.ops) {
      if (const auto* ex = std::get_if<Extract>(&op)) {
        written.insert(ex->header);
        continue;
      }
      const auto& as = std::get<Assign>(op);
      std::set<HeaderId> used;
      headers_of(as.value, used);
      for (HeaderId h : used) {
        if (!written.contains(h)) return false;
      }
      written.insert(as.header);
    }
    if (const auto* sel = std::get_if<Select>(&st.trans)) {
      std::set<HeaderId> used;
      for (const Expr& e : sel->exprs) headers_of(e, used);
      for (HeaderId h : used) {
        if (!written.contains(h)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("enumerate_configs counts") {
  Automaton one;
  const HeaderId h = one.add_header("h", 1);
  one.add_state(State{"a", {Extract{h}}, Goto{StateRef::accept()}});
  CHECK(enumerate_configs(one).size() == 6);
  CHECK(enumerate_stores(one).size() == 2);

  testing::Rng rng(71);
  for (int i = 0; i < 50; ++i) {
    const Automaton a = testing::random_automaton(rng);
    const auto configs = enumerate_configs(a);
    const std::size_t stores = enumerate_stores(a).size();
    std::size_t expected = 2 * stores;
    for (const State& st : a.states()) {
      const std::size_t n = opsize(st.ops, a);
      expected += stores * ((std::size_t{1} << n) - 1);
      std::size_t in_state = 0;
      for (const Configuration& c : configs) {
        if (c.state.is_user() && a.state(c.state).name == st.name) ++in_state;
      }
      CHECK(in_state >= stores * (std::size_t{1} << (n - 1)));
    }
    CHECK(configs.size() == expected);
    std::set<std::string> unique;
    for (const Configuration& c : configs) unique.insert(key(c));
    CHECK(unique.size() == configs.size());
    CHECK(enumerate_configs(a) == configs);
  }
}

TEST_CASE("the bit cap is enforced") {
  const Automaton ref = fixture("mpls_ref.p4a");
  CHECK(config_bits(ref) == 32 + 64 + 63);
  CHECK_THROWS_AS(enumerate_configs(ref), CapExceeded);
  CHECK_THROWS_AS(oracle_equivalent(ref, ref, StateRef::user(0), StateRef::user(0)), CapExceeded);
  const Automaton small = fixture("mpls_ref_small.p4a");
  CHECK(config_bits(small) == 2 + 4 + 3);
  CHECK_NOTHROW(enumerate_configs(small));
}

TEST_CASE("fixture ground truth") {
  const Automaton ref = fixture("mpls_ref_small.p4a");
  const Automaton vec = fixture("mpls_vec_small.p4a");
  CHECK(oracle_equivalent(ref, vec, *ref.find_state("q1"), *vec.find_state("q3"), 30));
  CHECK_FALSE(distinguishing_word(ref, vec, *ref.find_state("q1"), *vec.find_state("q3"), 30).has_value());

  const Automaton sloppy = fixture("eth_sloppy_small.p4a");
  const Automaton strict = fixture("eth_strict_small.p4a");
  const StateRef s1 = *sloppy.find_state("parse_eth");
  const StateRef s2 = *strict.find_state("parse_eth");
  const auto d = distinguishing_word(sloppy, strict, s1, s2, 20);
  REQUIRE(d.has_value());
  CHECK(accepts(s1, d->left_store, d->word, sloppy) == d->left_accepts);
  CHECK(accepts(s2, d->right_store, d->word, strict) != d->left_accepts);
  for (std::size_t n = 0; n < d->word.size(); ++n) CHECK_FALSE(distinguishable_at(sloppy, strict, s1, s2, n));
}

TEST_CASE("self-equivalence, symmetry and minimal witnesses on random pairs") {
  testing::Rng rng(73);
  std::size_t distinguished = 0;
  std::size_t independent = 0;
  for (int i = 0; i < 80; ++i) {
    const auto p = testing::random_pair(rng);
    if (reads_only_fresh_headers(p.left)) {
      ++independent;
      CHECK(oracle_equivalent(p.left, p.left, p.left_start, p.left_start, 24));
    }
    const bool forward = oracle_equivalent(p.left, p.right, p.left_start, p.right_start, 24);
    CHECK(forward == oracle_equivalent(p.right, p.left, p.right_start, p.left_start, 24));
    const auto d = distinguishing_word(p.left, p.right, p.left_start, p.right_start, 24);
    CHECK(d.has_value() == !forward);
    if (!d) continue;
    ++distinguished;
    CHECK(accepts(p.left_start, d->left_store, d->word, p.left) == d->left_accepts);
    CHECK(accepts(p.right_start, d->right_store, d->word, p.right) != d->left_accepts);
    if (d->word.size() <= 8) {
      for (std::size_t n = 0; n < d->word.size(); ++n) {
        CHECK_FALSE(distinguishable_at(p.left, p.right, p.left_start, p.right_start, n));
      }
    }
  }
  CHECK(distinguished > 10);
  CHECK(independent > 10);
}

TEST_CASE("a parser that reads an unwritten header differs from itself") {
  // Acceptance depends on the initial value of g, and the two sides' initial
  // stores are chosen independently.
  Automaton a;
  const HeaderId h = a.add_header("h", 1);
  const HeaderId g = a.add_header("g", 1);
  a.add_state(State{"s", {Extract{h}}, Select{{Expr::header(g)}, {{{Pattern::match(BitVec::from_string("1"))}, StateRef::accept()}}}});
  CHECK_FALSE(oracle_equivalent(a, a, StateRef::user(0), StateRef::user(0)));
  CHECK(reads_only_fresh_headers(a) == false);
}

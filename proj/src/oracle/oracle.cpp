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

#include "p4aeq/oracle/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_map>

namespace p4aeq {

unsigned config_bits(const Automaton& aut) {
  std::size_t bits = 0;
  for (const Header& h : aut.headers()) bits += h.size;
  std::size_t max_op = 0;
  for (std::uint32_t i = 0; i < aut.num_states(); ++i) max_op = std::max(max_op, aut.opsize(StateRef::user(i)));
  return static_cast<unsigned>(bits + (max_op > 0 ? max_op - 1 : 0));
}

std::vector<Store> enumerate_stores(const Automaton& aut, unsigned cap) {
  std::size_t bits = 0;
  for (const Header& h : aut.headers()) bits += h.size;
  if (bits > cap) throw CapExceeded("store has " + std::to_string(bits) + " bits, cap is " + std::to_string(cap));
  std::vector<Store> out;
  const std::uint64_t total = std::uint64_t{1} << bits;
  out.reserve(total);
  for (std::uint64_t v = 0; v < total; ++v) {
    Store s;
    std::size_t shift = bits;
    for (const Header& h : aut.headers()) {
      shift -= h.size;
      s.push_back(BitVec::from_uint(v >> shift, h.size));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Configuration> enumerate_configs(const Automaton& aut, unsigned cap) {
  if (config_bits(aut) > cap) {
    throw CapExceeded("configurations need " + std::to_string(config_bits(aut)) + " bits, cap is " +
                      std::to_string(cap));
  }
  const std::vector<Store> stores = enumerate_stores(aut, cap);
  std::vector<Configuration> out;
  for (std::uint32_t i = 0; i < aut.num_states(); ++i) {
    const StateRef q = StateRef::user(i);
    for (std::size_t n = 0; n < aut.opsize(q); ++n) {
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
        for (const Store& s : stores) out.push_back({q, s, BitVec::from_uint(w, n)});
      }
    }
  }
  for (StateRef q : {StateRef::accept(), StateRef::reject()}) {
    for (const Store& s : stores) out.push_back({q, s, BitVec{}});
  }
  return out;
}

namespace {

// Packs a configuration into 64 bits: state, buffer length, buffer, store.
std::uint64_t pack(const Configuration& c) {
  std::uint64_t v = static_cast<std::uint64_t>(c.state.raw() + 2);
  v = (v << 6) | c.buffer.size();
  for (std::size_t i = 0; i < c.buffer.size(); ++i) v = (v << 1) | (c.buffer[i] ? 1U : 0U);
  for (const BitVec& h : c.store) {
    for (std::size_t i = 0; i < h.size(); ++i) v = (v << 1) | (h[i] ? 1U : 0U);
  }
  return v;
}

struct PairKey {
  std::uint64_t l;
  std::uint64_t r;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    return std::hash<std::uint64_t>{}(k.l * 0x9e3779b97f4a7c15ULL ^ k.r);
  }
};

struct Node {
  Configuration l;
  Configuration r;
  std::size_t parent;
  bool bit;
};

}  // namespace

std::optional<Distinction> distinguishing_word(const Automaton& a1, const Automaton& a2, StateRef q1,
                                               StateRef q2, unsigned cap) {
  const unsigned bits = config_bits(a1) + config_bits(a2);
  if (bits > cap) {
    throw CapExceeded("pair space needs " + std::to_string(bits) + " bits, cap is " + std::to_string(cap));
  }
  if (config_bits(a1) > 40 || config_bits(a2) > 40) throw CapExceeded("configuration too wide to pack");
  const std::vector<Store> s1 = enumerate_stores(a1, cap);
  const std::vector<Store> s2 = enumerate_stores(a2, cap);

  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);
  std::vector<Node> nodes;
  std::unordered_map<PairKey, std::size_t, PairKeyHash> seen;
  std::deque<std::size_t> queue;
  auto visit = [&](Configuration l, Configuration r, std::size_t parent, bool bit) {
    const PairKey key{pack(l), pack(r)};
    if (!seen.emplace(key, nodes.size()).second) return;
    queue.push_back(nodes.size());
    nodes.push_back({std::move(l), std::move(r), parent, bit});
  };
  for (const Store& x : s1) {
    for (const Store& y : s2) visit(initial_configuration(q1, x), initial_configuration(q2, y), kRoot, false);
  }
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    const bool la = is_accepting(nodes[id].l);
    const bool ra = is_accepting(nodes[id].r);
    if (la != ra) {
      std::vector<bool> rev;
      std::size_t cur = id;
      while (nodes[cur].parent != kRoot) {
        rev.push_back(nodes[cur].bit);
        cur = nodes[cur].parent;
      }
      Distinction d;
      for (auto it = rev.rbegin(); it != rev.rend(); ++it) d.word.push_back(*it);
      d.left_store = nodes[cur].l.store;
      d.right_store = nodes[cur].r.store;
      d.left_accepts = la;
      assert(accepts(q1, d.left_store, d.word, a1) != accepts(q2, d.right_store, d.word, a2));
      return d;
    }
    for (bool b : {false, true}) {
      Configuration l = step(nodes[id].l, b, a1);
      Configuration r = step(nodes[id].r, b, a2);
      visit(std::move(l), std::move(r), id, b);
    }
  }
  return std::nullopt;
}

bool oracle_equivalent(const Automaton& a1, const Automaton& a2, StateRef q1, StateRef q2, unsigned cap) {
  return !distinguishing_word(a1, a2, q1, q2, cap).has_value();
}

}  // namespace p4aeq

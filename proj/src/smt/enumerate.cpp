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

#include "p4aeq/smt/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace p4aeq {

namespace {

using kernels::Instr;
using Op = Instr::Op;

// Input keys: free bits are (kind, side, id, bit); bound bits use kind 3
// and the premise index in place of the side.
using InputKey = std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>;

struct Node {
  Op op;
  std::uint32_t a;
  std::uint32_t b;
};

class Circuit {
 public:
  Circuit() {
    nodes_.push_back({Op::Zero, 0, 0});
    nodes_.push_back({Op::One, 0, 0});
  }
  static constexpr std::uint32_t kZero = 0;
  static constexpr std::uint32_t kOne = 1;

  std::uint32_t input(const InputKey& key) {
    auto [it, fresh] = inputs_.try_emplace(key, static_cast<std::uint32_t>(input_keys_.size()));
    if (fresh) input_keys_.push_back(key);
    return intern({Op::Input, it->second, 0});
  }
  std::uint32_t constant(bool v) { return v ? kOne : kZero; }

  std::uint32_t lnot(std::uint32_t x) {
    if (x == kZero) return kOne;
    if (x == kOne) return kZero;
    if (nodes_[x].op == Op::Not) return nodes_[x].a;
    return intern({Op::Not, x, 0});
  }
  std::uint32_t land(std::uint32_t x, std::uint32_t y) {
    if (x == kZero || y == kZero) return kZero;
    if (x == kOne) return y;
    if (y == kOne || x == y) return x;
    if (complementary(x, y)) return kZero;
    return intern({Op::And, std::min(x, y), std::max(x, y)});
  }
  std::uint32_t lor(std::uint32_t x, std::uint32_t y) {
    if (x == kOne || y == kOne) return kOne;
    if (x == kZero) return y;
    if (y == kZero || x == y) return x;
    if (complementary(x, y)) return kOne;
    return intern({Op::Or, std::min(x, y), std::max(x, y)});
  }
  std::uint32_t lxor(std::uint32_t x, std::uint32_t y) {
    if (x == kZero) return y;
    if (y == kZero) return x;
    if (x == kOne) return lnot(y);
    if (y == kOne) return lnot(x);
    if (x == y) return kZero;
    if (complementary(x, y)) return kOne;
    return intern({Op::Xor, std::min(x, y), std::max(x, y)});
  }

  const Node& node(std::uint32_t id) const { return nodes_[id]; }
  const InputKey& input_key(std::uint32_t input) const { return input_keys_[input]; }

 private:
  bool complementary(std::uint32_t x, std::uint32_t y) const {
    return (nodes_[x].op == Op::Not && nodes_[x].a == y) || (nodes_[y].op == Op::Not && nodes_[y].a == x);
  }
  std::uint32_t intern(Node n) {
    const std::uint64_t key = (static_cast<std::uint64_t>(n.op) << 58) ^
                              (static_cast<std::uint64_t>(n.a) << 29) ^ static_cast<std::uint64_t>(n.b);
    auto [it, fresh] = index_.try_emplace(key, static_cast<std::uint32_t>(nodes_.size()));
    if (fresh) nodes_.push_back(n);
    return it->second;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::map<InputKey, std::uint32_t> inputs_;
  std::vector<InputKey> input_keys_;
};

class Blaster {
 public:
  explicit Blaster(Circuit& c) : c_(c) {}

  // Premise index for bound variables, or -1 when variables are free.
  int scope = -1;

  std::vector<std::uint32_t> bits(const BitExpr& e) {
    return std::visit(
        [&](const auto& n) -> std::vector<std::uint32_t> {
          using T = std::decay_t<decltype(n)>;
          std::vector<std::uint32_t> out;
          if constexpr (std::is_same_v<T, BitExpr::Lit>) {
            for (std::size_t i = 0; i < n.bits.size(); ++i) out.push_back(c_.constant(n.bits[i]));
          } else if constexpr (std::is_same_v<T, BitExpr::Buf>) {
            if (!n.width) throw InternalError("buffer without a guard-fixed width");
            for (std::size_t i = 0; i < *n.width; ++i) {
              out.push_back(c_.input({1, static_cast<std::uint32_t>(n.side), 0, static_cast<std::uint32_t>(i)}));
            }
          } else if constexpr (std::is_same_v<T, BitExpr::Hdr>) {
            for (std::size_t i = 0; i < n.width; ++i) {
              out.push_back(c_.input({0, static_cast<std::uint32_t>(n.side), n.id, static_cast<std::uint32_t>(i)}));
            }
          } else if constexpr (std::is_same_v<T, BitExpr::Var>) {
            if (scope < 0) {
              out.push_back(c_.input({2, 0, n.id, 0}));
            } else {
              out.push_back(c_.input({3, static_cast<std::uint32_t>(scope), n.id, 0}));
            }
          } else if constexpr (std::is_same_v<T, BitExpr::Slice>) {
            std::vector<std::uint32_t> base = bits(n.base);
            if (base.empty()) return out;
            const std::size_t lo = std::min(n.lo, base.size() - 1);
            const std::size_t hi = std::min(n.hi, base.size() - 1);
            for (std::size_t i = lo; i <= hi && lo <= hi; ++i) out.push_back(base[i]);
          } else {
            for (const BitExpr& p : n.parts) {
              auto b = bits(p);
              out.insert(out.end(), b.begin(), b.end());
            }
          }
          return out;
        },
        e.node());
  }

  std::uint32_t formula(const Formula& f) {
    return std::visit(
        [&](const auto& n) -> std::uint32_t {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Formula::Bottom>) {
            return Circuit::kZero;
          } else if constexpr (std::is_same_v<T, Formula::Top>) {
            return Circuit::kOne;
          } else if constexpr (std::is_same_v<T, Formula::Eq>) {
            auto l = bits(n.lhs);
            auto r = bits(n.rhs);
            if (l.size() != r.size()) return Circuit::kZero;
            std::uint32_t acc = Circuit::kOne;
            for (std::size_t i = 0; i < l.size(); ++i) acc = c_.land(acc, c_.lnot(c_.lxor(l[i], r[i])));
            return acc;
          } else if constexpr (std::is_same_v<T, Formula::Implies>) {
            return c_.lor(c_.lnot(formula(n.lhs)), formula(n.rhs));
          } else if constexpr (std::is_same_v<T, Formula::And>) {
            std::uint32_t acc = Circuit::kOne;
            for (const Formula& t : n.terms) acc = c_.land(acc, formula(t));
            return acc;
          } else if constexpr (std::is_same_v<T, Formula::Or>) {
            std::uint32_t acc = Circuit::kZero;
            for (const Formula& t : n.terms) acc = c_.lor(acc, formula(t));
            return acc;
          } else {
            throw InternalError("state or buffer-length assertion reached the enumerator");
          }
        },
        f.node());
  }

 private:
  Circuit& c_;
};

// Node ids in the cone of `root`, ascending (hence topologically ordered).
std::vector<std::uint32_t> cone(const Circuit& c, std::uint32_t root) {
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> stack{root};
  while (!stack.empty()) {
    const std::uint32_t x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    const Node& n = c.node(x);
    if (n.op == Op::Not) stack.push_back(n.a);
    if (n.op == Op::And || n.op == Op::Or || n.op == Op::Xor) {
      stack.push_back(n.a);
      stack.push_back(n.b);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

EnumerationPlan plan_enumeration(const FolBvQuery& q) {
  Circuit c;
  Blaster bl(c);
  std::vector<std::uint32_t> roots;
  for (std::size_t i = 0; i < q.premises.size(); ++i) {
    bl.scope = static_cast<int>(i);
    roots.push_back(bl.formula(q.premises[i].body));
  }
  bl.scope = -1;
  roots.push_back(c.lnot(bl.formula(q.conclusion)));

  std::vector<std::vector<std::uint32_t>> cones;
  std::set<std::uint32_t> free_inputs;
  for (std::uint32_t r : roots) {
    cones.push_back(cone(c, r));
    for (std::uint32_t x : cones.back()) {
      const Node& n = c.node(x);
      if (n.op == Op::Input && std::get<0>(c.input_key(n.a)) != 3) free_inputs.insert(n.a);
    }
  }
  std::map<std::uint32_t, std::uint32_t> free_pos;
  for (std::uint32_t in : free_inputs) free_pos.emplace(in, static_cast<std::uint32_t>(free_pos.size()));

  EnumerationPlan plan;
  plan.free_bits = static_cast<unsigned>(free_pos.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    std::map<std::uint32_t, std::uint32_t> bound_pos;
    for (std::uint32_t x : cones[k]) {
      const Node& n = c.node(x);
      if (n.op == Op::Input && std::get<0>(c.input_key(n.a)) == 3) {
        bound_pos.emplace(n.a, static_cast<std::uint32_t>(plan.free_bits + bound_pos.size()));
      }
    }
    kernels::Program prog;
    prog.num_inputs = plan.free_bits + static_cast<unsigned>(bound_pos.size());
    std::unordered_map<std::uint32_t, std::uint32_t> slot;
    for (std::uint32_t x : cones[k]) {
      const Node& n = c.node(x);
      Instr ins{n.op, 0, 0};
      switch (n.op) {
        case Op::Zero:
        case Op::One: break;
        case Op::Input: {
          auto it = free_pos.find(n.a);
          ins.a = it != free_pos.end() ? it->second : bound_pos.at(n.a);
          break;
        }
        case Op::Not: ins.a = slot.at(n.a); break;
        default:
          ins.a = slot.at(n.a);
          ins.b = slot.at(n.b);
      }
      slot[x] = static_cast<std::uint32_t>(prog.code.size());
      prog.code.push_back(ins);
    }
    // Make the root the last instruction.
    if (slot.at(roots[k]) != prog.code.size() - 1) {
      prog.code.push_back({Op::And, slot.at(roots[k]), slot.at(roots[k])});
    }
    plan.bound_bits.push_back(static_cast<unsigned>(bound_pos.size()));
    plan.max_bound_bits = std::max(plan.max_bound_bits, plan.bound_bits.back());
    plan.programs.push_back(std::move(prog));
  }
  return plan;
}

bool run_plan(const EnumerationPlan& plan, kernels::Kernel k) {
  const unsigned f = plan.free_bits;
  const std::size_t words = kernels::table_words(f);
  const std::uint64_t mask =
      f >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << f)) - 1;
  std::vector<std::uint64_t> acc(words, ~std::uint64_t{0});
  acc.back() &= mask;
  for (std::size_t i = 0; i < plan.programs.size(); ++i) {
    const std::vector<std::uint64_t> table = kernels::evaluate(plan.programs[i], k);
    const std::uint64_t blocks = std::uint64_t{1} << plan.bound_bits[i];
    if (f >= 6) {
      for (std::uint64_t b = 0; b < blocks; ++b) {
        for (std::size_t w = 0; w < words; ++w) acc[w] &= table[b * words + w];
      }
    } else {
      const std::uint64_t span = std::uint64_t{1} << f;
      for (std::uint64_t b = 0; b < blocks; ++b) {
        const std::uint64_t bit = b * span;
        acc[0] &= (table[bit / 64] >> (bit % 64)) & mask;
      }
    }
    if (std::all_of(acc.begin(), acc.end(), [](std::uint64_t w) { return w == 0; })) return false;
  }
  return std::any_of(acc.begin(), acc.end(), [](std::uint64_t w) { return w != 0; });
}

std::optional<bool> enumerate_sat(const FolBvQuery& q, unsigned cap, kernels::Kernel k) {
  const EnumerationPlan plan = plan_enumeration(q);
  if (plan.measure() > cap) return std::nullopt;
  return run_plan(plan, k);
}

}  // namespace p4aeq

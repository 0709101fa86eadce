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

// Formulas relating a pair of configurations: bit expressions over both
// sides' buffers and stores, state and buffer-length assertions, and the
// template-guarded fragment the equivalence engine works in.
//
// All types are immutable handles onto shared nodes; copying is cheap.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "p4aeq/bitvec.hpp"
#include "p4aeq/core/syntax.hpp"

namespace p4aeq {

enum class Side : std::uint8_t { Left = 0, Right = 1 };

inline constexpr Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline constexpr const char* side_marker(Side s) { return s == Side::Left ? "<" : ">"; }

using VarId = std::uint32_t;

class BitExpr {
 public:
  struct Lit {
    BitVec bits;
  };
  // A side's buffer. `width` records the buffer length the enclosing guard
  // fixes; it is an assumption used by simplification, not a check.
  struct Buf {
    Side side;
    std::optional<std::size_t> width;
  };
  struct Hdr {
    HeaderId id;
    Side side;
    std::size_t width;
  };
  // A single-bit variable.
  struct Var {
    VarId id;
  };
  struct Slice;
  struct Concat;
  using Node = std::variant<Lit, Buf, Hdr, Var, Slice, Concat>;

  static BitExpr lit(BitVec bits);
  static BitExpr lit(std::string_view bits) { return lit(BitVec::from_string(bits)); }
  static BitExpr empty() { return lit(BitVec{}); }
  static BitExpr buf(Side side, std::optional<std::size_t> width = std::nullopt);
  static BitExpr hdr(HeaderId id, Side side, std::size_t width);
  static BitExpr var(VarId id);
  // Raw constructors; see mk_slice / mk_concat for the simplifying ones.
  static BitExpr slice(BitExpr base, std::size_t lo, std::size_t hi);
  static BitExpr concat(std::vector<BitExpr> parts);

  const Node& node() const;
  std::optional<std::size_t> width() const;
  std::size_t hash() const;

  template <class T>
  const T* as() const;

  friend bool operator==(const BitExpr& a, const BitExpr& b);
  friend std::strong_ordering compare(const BitExpr& a, const BitExpr& b);

 private:
  struct Rep;
  explicit BitExpr(Node n);
  std::shared_ptr<const Rep> node_;
};

struct BitExpr::Slice {
  BitExpr base;
  std::size_t lo;
  std::size_t hi;
};

struct BitExpr::Concat {
  std::vector<BitExpr> parts;
};

struct BitExpr::Rep {
  Node node;
  std::optional<std::size_t> width;
  std::size_t hash;
};

inline const BitExpr::Node& BitExpr::node() const { return node_->node; }
inline std::optional<std::size_t> BitExpr::width() const { return node_->width; }
inline std::size_t BitExpr::hash() const { return node_->hash; }
template <class T>
const T* BitExpr::as() const {
  return std::get_if<T>(&node_->node);
}

// Total structural order, used for canonical operand ordering.
std::strong_ordering compare(const BitExpr& a, const BitExpr& b);

class Formula {
 public:
  struct Bottom {};
  struct Top {};
  struct Eq {
    BitExpr lhs;
    BitExpr rhs;
  };
  struct StateIs {
    StateRef state;
    Side side;
  };
  struct BufLen {
    std::size_t length;
    Side side;
  };
  struct Implies;
  struct And {
    std::vector<Formula> terms;
  };
  struct Or {
    std::vector<Formula> terms;
  };
  using Node = std::variant<Bottom, Top, Eq, StateIs, BufLen, Implies, And, Or>;

  // Raw constructors. The simplifying ones are the mk_* functions below.
  static Formula bottom();
  static Formula top();
  static Formula eq(BitExpr lhs, BitExpr rhs);
  static Formula state_is(StateRef q, Side side);
  static Formula buflen(std::size_t n, Side side);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula conj(std::vector<Formula> terms);
  static Formula disj(std::vector<Formula> terms);

  const Node& node() const;
  std::size_t hash() const;

  template <class T>
  const T* as() const;
  bool is_bottom() const { return as<Bottom>() != nullptr; }
  bool is_top() const { return as<Top>() != nullptr; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering compare(const Formula& a, const Formula& b);

 private:
  struct Rep;
  explicit Formula(Node n);
  std::shared_ptr<const Rep> node_;
};

struct Formula::Implies {
  Formula lhs;
  Formula rhs;
};

struct Formula::Rep {
  Node node;
  std::size_t hash;
};

inline const Formula::Node& Formula::node() const { return node_->node; }
inline std::size_t Formula::hash() const { return node_->hash; }
template <class T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->node);
}

std::strong_ordering compare(const Formula& a, const Formula& b);

// Smart constructors applying local algebraic simplifications. Each result
// denotes the same relation as its raw counterpart (under the buffer widths
// recorded in Buf nodes).
BitExpr mk_slice(const BitExpr& base, std::size_t lo, std::size_t hi);
BitExpr mk_concat(std::vector<BitExpr> parts);
Formula mk_eq(const BitExpr& lhs, const BitExpr& rhs);
Formula mk_implies(const Formula& lhs, const Formula& rhs);
Formula mk_not(const Formula& f);
Formula mk_and(std::vector<Formula> terms);
Formula mk_or(std::vector<Formula> terms);

// Rebuilds the formula bottom-up through the smart constructors.
Formula simplify(const Formula& f);
BitExpr simplify(const BitExpr& e);

// Rewrites And, Or and Top into implications and bottom.
Formula to_primitive(const Formula& f);

bool is_pure(const Formula& f);

// Variables occurring in the formula, ascending.
std::vector<VarId> free_vars(const Formula& f);
std::vector<VarId> free_vars(const BitExpr& e);

// Replaces one side's buffer and (optionally) its header references, then
// simplifies. `headers`, when given, is indexed by HeaderId; entries left
// empty keep the original reference.
struct SideSubstitution {
  Side side = Side::Left;
  std::optional<BitExpr> buffer;
  const std::vector<std::optional<BitExpr>>* headers = nullptr;
};
Formula substitute(const Formula& f, const SideSubstitution& sub);
BitExpr substitute(const BitExpr& e, const SideSubstitution& sub);

// Abstraction of a configuration: its state and buffer length.
struct Template {
  StateRef state;
  std::size_t buflen = 0;

  static Template accept() { return {StateRef::accept(), 0}; }
  static Template reject() { return {StateRef::reject(), 0}; }

  friend auto operator<=>(const Template&, const Template&) = default;
  friend bool operator==(const Template&, const Template&) = default;
};

// t< ∧ t> as a formula: state and buffer-length assertions for both sides.
Formula template_assertion(const Template& t, Side side);

class NotPure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// left< ∧ right> ⟹ body, with body pure.
struct GuardedFormula {
  Template left;
  Template right;
  Formula body;

  Formula as_formula() const;

  friend bool operator==(const GuardedFormula& a, const GuardedFormula& b) {
    return a.left == b.left && a.right == b.right && a.body == b.body;
  }
  std::size_t hash() const;
};

// Throws NotPure when `body` mentions states or buffer lengths.
GuardedFormula guard(const Template& left, const Template& right, Formula body);

// Records guard-fixed buffer lengths on Buf nodes (a zero-length buffer
// becomes the empty literal) and simplifies. The result is equivalent to
// `body` only under the guard.
Formula annotate_buffers(const Formula& body, std::size_t left_len, std::size_t right_len);

// guard() applied to annotate_buffers(body, left.buflen, right.buflen).
GuardedFormula guard_simplified(const Template& left, const Template& right, const Formula& body);

}  // namespace p4aeq

template <>
struct std::hash<p4aeq::GuardedFormula> {
  std::size_t operator()(const p4aeq::GuardedFormula& g) const noexcept { return g.hash(); }
};

template <>
struct std::hash<p4aeq::Template> {
  std::size_t operator()(const p4aeq::Template& t) const noexcept {
    return std::hash<p4aeq::StateRef>{}(t.state) * 1000003U ^ t.buflen;
  }
};

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

// Abstract syntax of P4 automata: headers, expressions, operation blocks,
// transition blocks and states.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "p4aeq/bitvec.hpp"

namespace p4aeq {

using HeaderId = std::uint32_t;

// A state of an automaton, or one of the two terminal results.
class StateRef {
 public:
  constexpr StateRef() = default;
  static constexpr StateRef accept() { return StateRef(kAccept); }
  static constexpr StateRef reject() { return StateRef(kReject); }
  static constexpr StateRef user(std::uint32_t index) {
    return StateRef(static_cast<std::int32_t>(index));
  }

  constexpr bool is_user() const { return raw_ >= 0; }
  constexpr bool is_accept() const { return raw_ == kAccept; }
  constexpr bool is_reject() const { return raw_ == kReject; }
  constexpr std::uint32_t index() const { return static_cast<std::uint32_t>(raw_); }
  constexpr std::int32_t raw() const { return raw_; }

  // Terminal results sort after every user state.
  friend constexpr std::strong_ordering operator<=>(StateRef a, StateRef b) {
    return a.key() <=> b.key();
  }
  friend constexpr bool operator==(StateRef a, StateRef b) { return a.raw_ == b.raw_; }

 private:
  static constexpr std::int32_t kAccept = -1;
  static constexpr std::int32_t kReject = -2;
  constexpr explicit StateRef(std::int32_t raw) : raw_(raw) {}
  constexpr std::uint64_t key() const {
    return raw_ >= 0 ? static_cast<std::uint64_t>(raw_)
                     : (std::uint64_t{1} << 40) + static_cast<std::uint64_t>(-raw_);
  }
  std::int32_t raw_ = kReject;
};

struct Header {
  std::string name;
  std::size_t size = 0;
  friend bool operator==(const Header&, const Header&) = default;
};

// Immutable expression tree over headers and literals.
class Expr {
 public:
  struct HeaderRef {
    HeaderId id;
  };
  struct Literal {
    BitVec bits;
  };
  struct Slice;
  struct Concat;
  using Node = std::variant<HeaderRef, Literal, Slice, Concat>;

  static Expr header(HeaderId id);
  static Expr literal(BitVec bits);
  static Expr slice(Expr base, std::size_t lo, std::size_t hi);
  static Expr concat(Expr left, Expr right);

  const Node& node() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(Node n);
  std::shared_ptr<const Node> node_;
};

struct Expr::Slice {
  Expr base;
  std::size_t lo;
  std::size_t hi;
};

struct Expr::Concat {
  Expr left;
  Expr right;
};

inline Expr::Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
inline const Expr::Node& Expr::node() const { return *node_; }
inline Expr Expr::header(HeaderId id) { return Expr(HeaderRef{id}); }
inline Expr Expr::literal(BitVec bits) { return Expr(Literal{std::move(bits)}); }
inline Expr Expr::slice(Expr base, std::size_t lo, std::size_t hi) {
  return Expr(Slice{std::move(base), lo, hi});
}
inline Expr Expr::concat(Expr left, Expr right) {
  return Expr(Concat{std::move(left), std::move(right)});
}

struct Pattern {
  std::optional<BitVec> exact;  // nullopt is the wildcard

  static Pattern wildcard() { return {}; }
  static Pattern match(BitVec bits) { return Pattern{std::move(bits)}; }
  bool is_wildcard() const { return !exact.has_value(); }
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct Extract {
  HeaderId header;
  friend bool operator==(const Extract&, const Extract&) = default;
};

struct Assign {
  HeaderId header;
  Expr value;
  friend bool operator==(const Assign&, const Assign&) = default;
};

using Statement = std::variant<Extract, Assign>;
using OpBlock = std::vector<Statement>;

struct SelectCase {
  std::vector<Pattern> patterns;
  StateRef target;
  friend bool operator==(const SelectCase&, const SelectCase&) = default;
};

struct Goto {
  StateRef target;
  friend bool operator==(const Goto&, const Goto&) = default;
};

struct Select {
  std::vector<Expr> exprs;
  std::vector<SelectCase> cases;
  friend bool operator==(const Select&, const Select&) = default;
};

using Transition = std::variant<Goto, Select>;

struct State {
  std::string name;
  OpBlock ops;
  Transition trans;
  friend bool operator==(const State&, const State&) = default;
};

// Headers and states, addressed by dense indices. Construction does not
// validate; run typecheck() before handing an automaton to the semantics.
class Automaton {
 public:
  Automaton() = default;

  HeaderId add_header(std::string name, std::size_t size);
  StateRef add_state(State state);
  State& state_mut(StateRef q) { return states_.at(q.index()); }

  const std::vector<Header>& headers() const { return headers_; }
  const std::vector<State>& states() const { return states_; }
  const Header& header(HeaderId id) const { return headers_.at(id); }
  const State& state(StateRef q) const { return states_.at(q.index()); }
  std::size_t num_states() const { return states_.size(); }

  std::optional<HeaderId> find_header(const std::string& name) const;
  std::optional<StateRef> find_state(const std::string& name) const;

  // "accept", "reject", or the user state's name.
  std::string state_name(StateRef q) const;

  // Bits extracted by the state's operation block; 0 for accept/reject.
  std::size_t opsize(StateRef q) const;

  friend bool operator==(const Automaton& a, const Automaton& b) {
    return a.headers_ == b.headers_ && a.states_ == b.states_;
  }

 private:
  std::vector<Header> headers_;
  std::vector<State> states_;
  std::unordered_map<std::string, HeaderId> header_index_;
  std::unordered_map<std::string, std::uint32_t> state_index_;
};

}  // namespace p4aeq

template <>
struct std::hash<p4aeq::StateRef> {
  std::size_t operator()(p4aeq::StateRef q) const noexcept {
    return std::hash<std::int32_t>{}(q.raw());
  }
};

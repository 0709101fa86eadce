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

#include "p4aeq/core/syntax.hpp"

#include "p4aeq/core/semantics.hpp"

namespace p4aeq {

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const Expr::Node& x = a.node();
  const Expr::Node& y = b.node();
  if (x.index() != y.index()) return false;
  return std::visit(
      [&](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(y);
        if constexpr (std::is_same_v<T, Expr::HeaderRef>) {
          return lhs.id == rhs.id;
        } else if constexpr (std::is_same_v<T, Expr::Literal>) {
          return lhs.bits == rhs.bits;
        } else if constexpr (std::is_same_v<T, Expr::Slice>) {
          return lhs.lo == rhs.lo && lhs.hi == rhs.hi && lhs.base == rhs.base;
        } else {
          return lhs.left == rhs.left && lhs.right == rhs.right;
        }
      },
      x);
}

HeaderId Automaton::add_header(std::string name, std::size_t size) {
  if (header_index_.contains(name)) throw TypeError("duplicate header '" + name + "'");
  const auto id = static_cast<HeaderId>(headers_.size());
  header_index_.emplace(name, id);
  headers_.push_back(Header{std::move(name), size});
  return id;
}

StateRef Automaton::add_state(State state) {
  if (state.name == "accept" || state.name == "reject") {
    throw TypeError("'" + state.name + "' is reserved");
  }
  if (state_index_.contains(state.name)) throw TypeError("duplicate state '" + state.name + "'");
  const auto index = static_cast<std::uint32_t>(states_.size());
  state_index_.emplace(state.name, index);
  states_.push_back(std::move(state));
  return StateRef::user(index);
}

std::optional<HeaderId> Automaton::find_header(const std::string& name) const {
  auto it = header_index_.find(name);
  if (it == header_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<StateRef> Automaton::find_state(const std::string& name) const {
  if (name == "accept") return StateRef::accept();
  if (name == "reject") return StateRef::reject();
  auto it = state_index_.find(name);
  if (it == state_index_.end()) return std::nullopt;
  return StateRef::user(it->second);
}

std::string Automaton::state_name(StateRef q) const {
  if (q.is_accept()) return "accept";
  if (q.is_reject()) return "reject";
  if (q.index() < states_.size()) return states_[q.index()].name;
  return "<state#" + std::to_string(q.index()) + ">";
}

std::size_t Automaton::opsize(StateRef q) const {
  if (!q.is_user()) return 0;
  return p4aeq::opsize(state(q).ops, *this);
}

}  // namespace p4aeq

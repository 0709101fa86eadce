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

// The .p4a surface language.
//
//   header ip : 64;                  # optional; sizes are otherwise inferred
//   state parse_ip {                 # the `state` keyword is optional
//     extract(ip, 64);
//     tmp := ip[0:7] ++ 0x0f;        # `<-` also assigns; `;` is optional
//     select(ip[40:43], tmp[0:0]) {
//       (0b0001, _) => parse_udp     # bare 0/1 strings are binary too
//       (0000, 1) => goto parse_tcp
//     }
//   }
//
// Hex literals carry four bits per digit. Bit 0 of a literal is its
// leftmost character.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "p4aeq/core/syntax.hpp"

namespace p4aeq {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct SourceDiagnostic {
  SourcePos pos;
  std::string message;

  // "line:col: message"
  std::string str() const;
};

struct ParseResult {
  std::optional<Automaton> automaton;
  std::vector<SourceDiagnostic> diagnostics;

  bool ok() const { return automaton.has_value(); }
};

// Parses and typechecks. On success `automaton` is set and `diagnostics` is
// empty; otherwise every diagnostic found is reported.
ParseResult parse_source(std::string_view text);

class SourceError : public std::runtime_error {
 public:
  SourceError(std::string origin, std::vector<SourceDiagnostic> diags);
  const std::vector<SourceDiagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<SourceDiagnostic> diags_;
};

// parse_source, throwing SourceError. `origin` prefixes the message.
Automaton parse_source_or_throw(std::string_view text, const std::string& origin = "<input>");

// Reads and parses a file. Throws SourceError, including for unreadable
// files.
Automaton load_automaton(const std::string& path);

// Canonical text: header declarations in id order, then the states. Throws
// std::invalid_argument for an automaton with no states.
std::string pretty_print(const Automaton& aut);

// Names that cannot be used for headers or states.
bool is_reserved_word(std::string_view name);

}  // namespace p4aeq

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

#include "p4aeq/frontend/relation_file.hpp"

#include "p4aeq/confrel/text.hpp"

namespace p4aeq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

RelationSpec parse_relation_file(std::string_view text, const Automaton& sum, const std::string& origin) {
  RelationSpec out;
  std::vector<Formula> phis;
  std::vector<SourceDiagnostic> diags;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    const std::string_view trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;

    const std::size_t colon = line.find(':');
    const std::string_view key = colon == std::string_view::npos ? "" : trim(line.substr(0, colon));
    if (key != "phi" && key != "init") {
      diags.push_back({{line_no, 1}, "expected 'phi:' or 'init:'"});
      continue;
    }
    const std::string_view body = line.substr(colon + 1);
    const std::size_t body_col = colon + 2;
    try {
      Formula f = parse_formula(body, sum);
      if (key == "phi") {
        if (!is_pure(f)) {
          diags.push_back({{line_no, body_col}, "phi formula must not mention states or buffer lengths"});
          continue;
        }
        phis.push_back(std::move(f));
      } else {
        auto g = as_guarded(f);
        if (!g) {
          diags.push_back({{line_no, body_col},
                           "init formula must have the form (state<(q) & buflen<(n) & state>(q') & "
                           "buflen>(n')) -> body"});
          continue;
        }
        out.init_extra.push_back(std::move(*g));
      }
    } catch (const FormulaParseError& e) {
      diags.push_back({{line_no, body_col + e.offset()}, e.what()});
    } catch (const NotPure& e) {
      diags.push_back({{line_no, body_col}, e.what()});
    }
  }
  if (!diags.empty()) throw SourceError(origin, std::move(diags));
  if (!phis.empty()) out.phi_extra = mk_and(std::move(phis));
  return out;
}

}  // namespace p4aeq

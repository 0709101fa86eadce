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

// Interpretation of relation formulas over pairs of concrete configurations.

#pragma once

#include <map>

#include "p4aeq/confrel/formula.hpp"
#include "p4aeq/core/semantics.hpp"

namespace p4aeq {

using Valuation = std::map<VarId, bool>;

BitVec eval_bit_expr(const BitExpr& e, const Configuration& cl, const Configuration& cr,
                     const Valuation& v);

bool holds(const Formula& f, const Configuration& cl, const Configuration& cr, const Valuation& v);

// holds() under every valuation of the formula's variables. Throws
// std::length_error past 24 variables.
bool denotes(const Formula& f, const Configuration& cl, const Configuration& cr);

bool denotes(const GuardedFormula& g, const Configuration& cl, const Configuration& cr);

Template template_of(const Configuration& c);

}  // namespace p4aeq

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

// Truth-table evaluation of straight-line boolean programs.
//
// A Program computes one boolean of `num_inputs` inputs. Evaluating it
// yields a table of 2^num_inputs bits, where bit i is the program's value
// when input j is bit j of i. Three interchangeable kernels produce the
// same table: a scalar reference, a 64-lane bit-sliced one, and a 256-lane
// AVX2 one.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace p4aeq::kernels {

struct Instr {
  enum class Op : std::uint8_t { Zero, One, Input, Not, And, Or, Xor };
  Op op;
  std::uint32_t a = 0;  // Input: input index; otherwise operand slot
  std::uint32_t b = 0;
};

// Each instruction's operands refer to earlier slots. The value of the last
// instruction is the program's result.
struct Program {
  std::vector<Instr> code;
  unsigned num_inputs = 0;
};

enum class Kernel { Scalar, U64, Avx2 };

std::string_view kernel_name(Kernel k);
std::optional<Kernel> parse_kernel(std::string_view name);

bool kernel_available(Kernel k);

// The fastest available kernel, unless the P4AEQ_KERNEL environment variable
// names an available one.
Kernel default_kernel();

// Words needed for a table over n inputs.
std::size_t table_words(unsigned num_inputs);

// Fills `table` (table_words(num_inputs) words). Unused high bits of a
// partial last word are zero.
void evaluate(const Program& p, std::uint64_t* table, Kernel k);
std::vector<std::uint64_t> evaluate(const Program& p, Kernel k);

}  // namespace p4aeq::kernels

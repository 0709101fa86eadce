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

#include "p4aeq/kernels/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define P4AEQ_HAVE_X86 1
#endif

namespace p4aeq::kernels {

namespace {

constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::uint64_t tail_mask(unsigned n) {
  return n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
}

void check(const Program& p) {
  if (p.code.empty()) throw std::invalid_argument("empty program");
  if (p.num_inputs > 40) throw std::length_error("truth table too large");
}

void run_scalar(const Program& p, std::uint64_t* table) {
  const std::uint64_t total = std::uint64_t{1} << p.num_inputs;
  std::vector<std::uint8_t> val(p.code.size());
  for (std::size_t w = 0; w < table_words(p.num_inputs); ++w) table[w] = 0;
  for (std::uint64_t i = 0; i < total; ++i) {
    for (std::size_t k = 0; k < p.code.size(); ++k) {
      const Instr& ins = p.code[k];
      switch (ins.op) {
        case Instr::Op::Zero: val[k] = 0; break;
        case Instr::Op::One: val[k] = 1; break;
        case Instr::Op::Input: val[k] = static_cast<std::uint8_t>((i >> ins.a) & 1U); break;
        case Instr::Op::Not: val[k] = val[ins.a] ^ 1U; break;
        case Instr::Op::And: val[k] = val[ins.a] & val[ins.b]; break;
        case Instr::Op::Or: val[k] = val[ins.a] | val[ins.b]; break;
        case Instr::Op::Xor: val[k] = val[ins.a] ^ val[ins.b]; break;
      }
    }
    if (val.back() != 0) table[i / 64] |= std::uint64_t{1} << (i % 64);
  }
}

void run_u64(const Program& p, std::uint64_t* table) {
  const std::size_t words = table_words(p.num_inputs);
  const std::uint64_t mask = tail_mask(p.num_inputs);
  std::vector<std::uint64_t> val(p.code.size());
  for (std::size_t w = 0; w < words; ++w) {
    for (std::size_t k = 0; k < p.code.size(); ++k) {
      const Instr& ins = p.code[k];
      switch (ins.op) {
        case Instr::Op::Zero: val[k] = 0; break;
        case Instr::Op::One: val[k] = ~std::uint64_t{0}; break;
        case Instr::Op::Input:
          val[k] = ins.a < 6 ? kLanePattern[ins.a]
                             : (((w >> (ins.a - 6)) & 1U) != 0 ? ~std::uint64_t{0} : 0);
          break;
        case Instr::Op::Not: val[k] = ~val[ins.a]; break;
        case Instr::Op::And: val[k] = val[ins.a] & val[ins.b]; break;
        case Instr::Op::Or: val[k] = val[ins.a] | val[ins.b]; break;
        case Instr::Op::Xor: val[k] = val[ins.a] ^ val[ins.b]; break;
      }
    }
    table[w] = val.back() & mask;
  }
}

#ifdef P4AEQ_HAVE_X86
#define P4AEQ_LOAD(slot) _mm256_loadu_si256(reinterpret_cast<const __m256i*>(&val[4 * (slot)]))

__attribute__((target("avx2"))) void run_avx2(const Program& p, std::uint64_t* table) {
  const std::size_t blocks = table_words(p.num_inputs) / 4;
  std::vector<std::uint64_t> val(4 * p.code.size());
  const __m256i ones = _mm256_set1_epi64x(-1);
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    for (std::size_t k = 0; k < p.code.size(); ++k) {
      const Instr& ins = p.code[k];
      __m256i v;
      switch (ins.op) {
        case Instr::Op::Zero: v = _mm256_setzero_si256(); break;
        case Instr::Op::One: v = ones; break;
        case Instr::Op::Input:
          if (ins.a < 6) {
            v = _mm256_set1_epi64x(static_cast<long long>(kLanePattern[ins.a]));
          } else if (ins.a == 6) {
            v = _mm256_set_epi64x(-1, 0, -1, 0);
          } else if (ins.a == 7) {
            v = _mm256_set_epi64x(-1, -1, 0, 0);
          } else {
            v = ((blk >> (ins.a - 8)) & 1U) != 0 ? ones : _mm256_setzero_si256();
          }
          break;
        case Instr::Op::Not: v = _mm256_xor_si256(P4AEQ_LOAD(ins.a), ones); break;
        case Instr::Op::And: v = _mm256_and_si256(P4AEQ_LOAD(ins.a), P4AEQ_LOAD(ins.b)); break;
        case Instr::Op::Or: v = _mm256_or_si256(P4AEQ_LOAD(ins.a), P4AEQ_LOAD(ins.b)); break;
        case Instr::Op::Xor: v = _mm256_xor_si256(P4AEQ_LOAD(ins.a), P4AEQ_LOAD(ins.b)); break;
      }
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(&val[4 * k]), v);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(&table[4 * blk]), P4AEQ_LOAD(p.code.size() - 1));
  }
}
#undef P4AEQ_LOAD
#endif

}  // namespace

std::string_view kernel_name(Kernel k) {
  switch (k) {
    case Kernel::Scalar: return "scalar";
    case Kernel::U64: return "u64";
    case Kernel::Avx2: return "avx2";
  }
  return "?";
}

std::optional<Kernel> parse_kernel(std::string_view name) {
  if (name == "scalar") return Kernel::Scalar;
  if (name == "u64") return Kernel::U64;
  if (name == "avx2") return Kernel::Avx2;
  return std::nullopt;
}

bool kernel_available(Kernel k) {
  if (k != Kernel::Avx2) return true;
#ifdef P4AEQ_HAVE_X86
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Kernel default_kernel() {
  if (const char* env = std::getenv("P4AEQ_KERNEL")) {
    if (auto k = parse_kernel(env); k && kernel_available(*k)) return *k;
  }
  return kernel_available(Kernel::Avx2) ? Kernel::Avx2 : Kernel::U64;
}

std::size_t table_words(unsigned num_inputs) {
  return num_inputs <= 6 ? 1 : std::size_t{1} << (num_inputs - 6);
}

void evaluate(const Program& p, std::uint64_t* table, Kernel k) {
  check(p);
  switch (k) {
    case Kernel::Scalar: run_scalar(p, table); return;
    case Kernel::U64: run_u64(p, table); return;
    case Kernel::Avx2:
#ifdef P4AEQ_HAVE_X86
      if (!kernel_available(k)) throw std::runtime_error("avx2 kernel not supported on this CPU");
      // Blocks of 256 lanes need at least 8 inputs; smaller tables fit in
      // a few words and go through the 64-lane path.
      if (p.num_inputs < 8) {
        run_u64(p, table);
      } else {
        run_avx2(p, table);
      }
      return;
#else
      throw std::runtime_error("avx2 kernel not built for this architecture");
#endif
  }
}

std::vector<std::uint64_t> evaluate(const Program& p, Kernel k) {
  std::vector<std::uint64_t> out(table_words(p.num_inputs));
  evaluate(p, out.data(), k);
  return out;
}

}  // namespace p4aeq::kernels

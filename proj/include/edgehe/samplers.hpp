/*
 * Copyright 2026 The edgehe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EDGEHE_SAMPLERS_HPP_
#define EDGEHE_SAMPLERS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "edgehe/keccak.hpp"
#include "edgehe/modarith.hpp"

namespace edgehe::sampling {

enum class Distribution { kBinomialK21, kTernaryUniform, kUniformModQ };

const char* to_string(Distribution d);

/// Centered binomial parameter: coefficient = HW(x) - HW(y) over two k-bit
/// strings, variance k/2 = 10.5.
inline constexpr int kBinomialK = 21;
inline constexpr int kBinomialBitsPerCoeff = 2 * kBinomialK;

/// Ternary rejection sampling draws 8-bit chunks and rejects 255, leaving
/// 0..254 (85 full residue classes mod 3). Expected draws per sample 256/255.
inline constexpr int kTernaryChunkBits = 8;
inline constexpr std::uint32_t kTernaryRejectFrom = 255;

struct SampledPolynomial {
  Distribution distribution;
  std::size_t n = 0;
  // Signed small values for binomial/ternary, residues in [0, q) for uniform.
  std::vector<std::int64_t> coeffs;
  std::uint64_t modulus = 0;  // only set for kUniformModQ

  /// Residues mod q; negative values map to q - |c|.
  std::vector<std::uint64_t> lift(const modarith::Modulus& q) const;
};

/// Little-endian bit reader over a finalized sponge. Bits are taken from each
/// squeezed byte LSB first.
class BitStream {
 public:
  explicit BitStream(keccak::KeccakSponge& sponge) : sponge_(sponge) {}

  /// Next `bits` (<= 64) bits as an unsigned integer.
  std::uint64_t take(int bits);
  std::size_t consumed_bits() const { return consumed_; }

 private:
  keccak::KeccakSponge& sponge_;
  std::uint8_t current_ = 0;
  int available_ = 0;
  std::size_t consumed_ = 0;
};

int binomial_from_bits(std::uint32_t x, std::uint32_t y);

/// Maps an accepted chunk to {-1, 0, +1} via 0->-1, 1->0, 2->+1 on v mod 3,
/// or nullopt when the chunk is rejected. The mod-3 step is branch-free.
std::optional<int> ternary_from_chunk(std::uint32_t chunk);

std::optional<std::uint64_t> uniform_from_chunk(std::uint64_t chunk, std::uint64_t q);

/// Exactly 42 * n stream bits; n must be a multiple of 4 so the draw ends on a
/// byte boundary and no padding bits are discarded.
SampledPolynomial sample_binomial(keccak::KeccakSponge& stream, std::size_t n);

SampledPolynomial sample_ternary(keccak::KeccakSponge& stream, std::size_t n);

/// Rejection on bit_width(q)-bit chunks; expected draws per sample < 2.
SampledPolynomial sample_uniform_mod_q(keccak::KeccakSponge& stream, std::size_t n,
                                       const modarith::ModulusContext& ctx);

}  // namespace edgehe::sampling

#endif  // EDGEHE_SAMPLERS_HPP_

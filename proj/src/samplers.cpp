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

#include "edgehe/samplers.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "edgehe/errors.hpp"

namespace edgehe::sampling {

const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::kBinomialK21:
      return "binomial";
    case Distribution::kTernaryUniform:
      return "ternary";
    case Distribution::kUniformModQ:
      return "uniform";
  }
  return "unknown";
}

std::vector<std::uint64_t> SampledPolynomial::lift(const modarith::Modulus& q) const {
  std::vector<std::uint64_t> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = q.from_signed(coeffs[i]);
  return out;
}

std::uint64_t BitStream::take(int bits) {
  std::uint64_t value = 0;
  int filled = 0;
  while (filled < bits) {
    if (available_ == 0) {
      std::uint8_t byte;
      sponge_.squeeze(std::span<std::uint8_t>(&byte, 1));
      current_ = byte;
      available_ = 8;
    }
    const int chunk = std::min(available_, bits - filled);
    const std::uint64_t piece = current_ & ((1u << chunk) - 1u);
    value |= piece << filled;
    current_ = static_cast<std::uint8_t>(chunk == 8 ? 0 : current_ >> chunk);
    available_ -= chunk;
    filled += chunk;
  }
  consumed_ += static_cast<std::size_t>(bits);
  return value;
}

int binomial_from_bits(std::uint32_t x, std::uint32_t y) {
  constexpr std::uint32_t mask = (1u << kBinomialK) - 1u;
  return std::popcount(x & mask) - std::popcount(y & mask);
}

std::optional<int> ternary_from_chunk(std::uint32_t chunk) {
  if (chunk >= kTernaryRejectFrom) return std::nullopt;
  // floor(v / 3) == (v * 171) >> 9 for every v < 255.
  const std::uint32_t r = chunk - 3 * ((chunk * 171u) >> 9);
  return static_cast<int>(r) - 1;
}

std::optional<std::uint64_t> uniform_from_chunk(std::uint64_t chunk, std::uint64_t q) {
  if (chunk >= q) return std::nullopt;
  return chunk;
}

SampledPolynomial sample_binomial(keccak::KeccakSponge& stream, std::size_t n) {
  if (n % 4 != 0) throw InvalidParams("binomial sampler needs n divisible by 4");
  SampledPolynomial poly{Distribution::kBinomialK21, n, std::vector<std::int64_t>(n), 0};
  BitStream bits(stream);
  for (auto& c : poly.coeffs) {
    const auto x = static_cast<std::uint32_t>(bits.take(kBinomialK));
    const auto y = static_cast<std::uint32_t>(bits.take(kBinomialK));
    c = binomial_from_bits(x, y);
  }
  return poly;
}

SampledPolynomial sample_ternary(keccak::KeccakSponge& stream, std::size_t n) {
  SampledPolynomial poly{Distribution::kTernaryUniform, n, std::vector<std::int64_t>(n), 0};
  BitStream bits(stream);
  for (auto& c : poly.coeffs) {
    std::optional<int> v;
    while (!(v = ternary_from_chunk(static_cast<std::uint32_t>(bits.take(kTernaryChunkBits))))) {
    }
    c = *v;
  }
  return poly;
}

SampledPolynomial sample_uniform_mod_q(keccak::KeccakSponge& stream, std::size_t n,
                                       const modarith::ModulusContext& ctx) {
  const std::uint64_t q = ctx.q();
  const int width = std::bit_width(q);
  SampledPolynomial poly{Distribution::kUniformModQ, n, std::vector<std::int64_t>(n), q};
  BitStream bits(stream);
  for (auto& c : poly.coeffs) {
    std::optional<std::uint64_t> v;
    while (!(v = uniform_from_chunk(bits.take(width), q))) {
    }
    c = static_cast<std::int64_t>(*v);
  }
  return poly;
}

}  // namespace edgehe::sampling

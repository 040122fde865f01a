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

#ifndef EDGEHE_KECCAK_HPP_
#define EDGEHE_KECCAK_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace edgehe::keccak {

using Lanes = std::array<std::uint64_t, 25>;

inline constexpr std::size_t kRateBits = 1088;
inline constexpr std::size_t kRateBytes = kRateBits / 8;
inline constexpr std::size_t kCapacityBits = 1600 - kRateBits;

/// Keccak-f[1600], 24 rounds, in place. Lane (x, y) is stored at x + 5y.
void keccak_f1600(Lanes& state);

/// Sponge with a 1088-bit rate and XOF domain separation (SHAKE256 padding),
/// used as the extendable-output PRNG behind every sampler.
///
/// Absorbing accepts any length; material beyond one rate block is absorbed
/// block by block with a permutation in between, so a 200-byte seed takes
/// two blocks. The first squeeze finalizes the sponge, after which absorb
/// throws SpongeFinalized.
class KeccakSponge {
 public:
  KeccakSponge() = default;

  /// Convenience: absorb `seed` and finalize.
  static KeccakSponge from_seed(std::span<const std::uint8_t> seed);

  void absorb(std::span<const std::uint8_t> data);
  void finalize();

  void squeeze(std::span<std::uint8_t> out);
  std::vector<std::uint8_t> squeeze(std::size_t nbytes);

  const Lanes& state() const { return state_; }
  bool finalized() const { return finalized_; }
  std::size_t absorbed() const { return absorbed_; }
  std::size_t squeeze_offset() const { return squeeze_offset_; }
  std::size_t permutations() const { return permutations_; }

 private:
  void xor_byte(std::size_t pos, std::uint8_t b);
  std::uint8_t lane_byte(std::size_t pos) const;
  void permute();

  Lanes state_{};
  std::size_t absorb_pos_ = 0;
  std::size_t absorbed_ = 0;
  std::size_t squeeze_offset_ = 0;
  std::size_t permutations_ = 0;
  bool finalized_ = false;
};

/// SHAKE256(message) truncated to `nbytes`.
std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> message, std::size_t nbytes);

}  // namespace edgehe::keccak

#endif  // EDGEHE_KECCAK_HPP_

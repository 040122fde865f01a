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

#include "edgehe/keccak.hpp"

#include <bit>

#include "edgehe/errors.hpp"

namespace edgehe::keccak {

namespace {

constexpr std::array<std::uint64_t, 24> kRoundConstants = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808AULL, 0x8000000080008000ULL,
    0x000000000000808BULL, 0x0000000080000001ULL, 0x8000000080008081ULL, 0x8000000000008009ULL,
    0x000000000000008AULL, 0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000AULL,
    0x000000008000808BULL, 0x800000000000008BULL, 0x8000000000008089ULL, 0x8000000000008003ULL,
    0x8000000000008002ULL, 0x8000000000000080ULL, 0x000000000000800AULL, 0x800000008000000AULL,
    0x8000000080008081ULL, 0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL,
};

// Rotation offsets indexed by x + 5y.
constexpr std::array<int, 25> kRho = {
    0,  1,  62, 28, 27,  //
    36, 44, 6,  55, 20,  //
    3,  10, 43, 25, 39,  //
    41, 45, 15, 21, 8,   //
    18, 2,  61, 56, 14,
};

constexpr std::uint8_t kXofPad = 0x1F;

}  // namespace

void keccak_f1600(Lanes& a) {
  for (std::uint64_t rc : kRoundConstants) {
    // theta
    std::array<std::uint64_t, 5> c{};
    for (int x = 0; x < 5; ++x) c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    for (int x = 0; x < 5; ++x) {
      const std::uint64_t d = c[(x + 4) % 5] ^ std::rotl(c[(x + 1) % 5], 1);
      for (int y = 0; y < 25; y += 5) a[x + y] ^= d;
    }
    // rho + pi: B[y, 2x + 3y] = rot(A[x, y], r[x, y])
    Lanes b{};
    for (int x = 0; x < 5; ++x) {
      for (int y = 0; y < 5; ++y) {
        b[y + 5 * ((2 * x + 3 * y) % 5)] = std::rotl(a[x + 5 * y], kRho[x + 5 * y]);
      }
    }
    // chi
    for (int y = 0; y < 25; y += 5) {
      for (int x = 0; x < 5; ++x) {
        a[x + y] = b[x + y] ^ (~b[(x + 1) % 5 + y] & b[(x + 2) % 5 + y]);
      }
    }
    // iota
    a[0] ^= rc;
  }
}

KeccakSponge KeccakSponge::from_seed(std::span<const std::uint8_t> seed) {
  KeccakSponge s;
  s.absorb(seed);
  s.finalize();
  return s;
}

void KeccakSponge::xor_byte(std::size_t pos, std::uint8_t b) {
  state_[pos / 8] ^= static_cast<std::uint64_t>(b) << (8 * (pos % 8));
}

std::uint8_t KeccakSponge::lane_byte(std::size_t pos) const {
  return static_cast<std::uint8_t>(state_[pos / 8] >> (8 * (pos % 8)));
}

void KeccakSponge::permute() {
  keccak_f1600(state_);
  ++permutations_;
}

void KeccakSponge::absorb(std::span<const std::uint8_t> data) {
  if (finalized_) throw SpongeFinalized("absorb called after the sponge was finalized");
  for (std::uint8_t byte : data) {
    xor_byte(absorb_pos_++, byte);
    if (absorb_pos_ == kRateBytes) {
      permute();
      absorb_pos_ = 0;
    }
  }
  absorbed_ += data.size();
}

void KeccakSponge::finalize() {
  if (finalized_) return;
  xor_byte(absorb_pos_, kXofPad);
  xor_byte(kRateBytes - 1, 0x80);
  permute();
  finalized_ = true;
  squeeze_offset_ = 0;
}

void KeccakSponge::squeeze(std::span<std::uint8_t> out) {
  finalize();
  for (auto& byte : out) {
    if (squeeze_offset_ == kRateBytes) {
      permute();
      squeeze_offset_ = 0;
    }
    byte = lane_byte(squeeze_offset_++);
  }
}

std::vector<std::uint8_t> KeccakSponge::squeeze(std::size_t nbytes) {
  std::vector<std::uint8_t> out(nbytes);
  squeeze(std::span<std::uint8_t>(out));
  return out;
}

std::vector<std::uint8_t> shake256(std::span<const std::uint8_t> message, std::size_t nbytes) {
  KeccakSponge s;
  s.absorb(message);
  return s.squeeze(nbytes);
}

}  // namespace edgehe::keccak

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

#include "edgehe/modarith.hpp"

#include <gtest/gtest.h>

#include <random>

#include "edgehe/errors.hpp"

namespace {

using edgehe::modarith::find_context;
using edgehe::modarith::find_contexts;
using edgehe::modarith::Modulus;
using edgehe::modarith::ModulusContext;
using edgehe::modarith::u128;
using edgehe::modarith::u64;

u64 oracle_mul(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<u128>(a) * b % q); }

bool trial_division_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

TEST(BarrettTest, ZeroAndIdentity) {
  for (u64 q : {17ULL, 1073692673ULL, 1152921504606748673ULL}) {
    const Modulus m(q);
    for (u64 x : std::initializer_list<u64>{0, 1, q / 2, q - 1}) {
      EXPECT_EQ(m.mul(0, x), 0u);
      EXPECT_EQ(m.mul(1, x), x);
    }
  }
}

TEST(BarrettTest, SixtyBitKnownProduct) {
  // (123456789 * 987654321) mod q, from an arbitrary-precision evaluation.
  const Modulus m(1152921504606584833ULL);
  EXPECT_EQ(m.mul(123456789, 987654321), 121932631112635269ULL);
}

TEST(BarrettTest, ShiftAndFactor) {
  const Modulus m(1073692673ULL);
  EXPECT_EQ(m.bit_width(), 30);
  EXPECT_EQ(m.barrett_shift(), 61);
  EXPECT_EQ(m.barrett_factor(), static_cast<u64>((static_cast<u128>(1) << 61) / 1073692673ULL));
}

TEST(BarrettTest, ExhaustiveSmallModuli) {
  for (u64 q : {3ULL, 17ULL, 97ULL, 257ULL, 641ULL, 769ULL, 1021ULL}) {
    const Modulus m(q);
    for (u64 a = 0; a < q; ++a) {
      for (u64 b = 0; b < q; ++b) {
        ASSERT_EQ(m.mul(a, b), a * b % q) << "q=" << q << " a=" << a << " b=" << b;
      }
    }
  }
}

TEST(BarrettTest, RandomizedAgainstWideOracle) {
  std::mt19937_64 rng(7);
  for (u64 q : {1073692673ULL, 1073741441ULL, 1152921504606748673ULL, 1152921504606830593ULL}) {
    const Modulus m(q);
    std::uniform_int_distribution<u64> dist(0, q - 1);
    for (int i = 0; i < 1000000; ++i) {
      const u64 a = dist(rng);
      const u64 b = dist(rng);
      ASSERT_EQ(m.mul(a, b), oracle_mul(a, b, q));
    }
    // Extremes where the quotient estimate is tightest.
    EXPECT_EQ(m.mul(q - 1, q - 1), 1u);
  }
}

TEST(BarrettTest, CommutativeAndAssociative) {
  std::mt19937_64 rng(11);
  const Modulus m(1152921504606748673ULL);
  std::uniform_int_distribution<u64> dist(0, m.value() - 1);
  for (int i = 0; i < 100000; ++i) {
    const u64 a = dist(rng), b = dist(rng), c = dist(rng);
    ASSERT_EQ(m.mul(a, b), m.mul(b, a));
    ASSERT_EQ(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
  }
}

TEST(ModAddSubTest, FixedCases) {
  const Modulus m(17);
  EXPECT_EQ(m.add_sub(0, 0), std::make_pair(u64{0}, u64{0}));
  EXPECT_EQ(m.add_sub(16, 1), std::make_pair(u64{0}, u64{15}));
  const Modulus big(1152921504606748673ULL);
  const u64 q = big.value();
  EXPECT_EQ(big.add_sub(q - 1, 1), std::make_pair(u64{0}, q - 2));
}

TEST(ModAddSubTest, RandomizedInRange) {
  std::mt19937_64 rng(3);
  for (u64 q : {17ULL, 1073692673ULL, 1152921504606748673ULL}) {
    const Modulus m(q);
    std::uniform_int_distribution<u64> dist(0, q - 1);
    for (int i = 0; i < 200000; ++i) {
      const u64 a = dist(rng), b = dist(rng);
      const auto [s, d] = m.add_sub(a, b);
      ASSERT_LT(s, q);
      ASSERT_LT(d, q);
      ASSERT_EQ(s, static_cast<u64>((static_cast<u128>(a) + b) % q));
      ASSERT_EQ(d, static_cast<u64>((static_cast<u128>(a) + q - b) % q));
    }
  }
}

TEST(ModulusTest, SignedLiftAndCenter) {
  const Modulus m(17);
  EXPECT_EQ(m.from_signed(-1), 16u);
  EXPECT_EQ(m.from_signed(-21), 13u);
  EXPECT_EQ(m.from_signed(21), 4u);
  EXPECT_EQ(m.to_centered(16), -1);
  EXPECT_EQ(m.to_centered(8), 8);
  EXPECT_EQ(m.to_centered(9), -8);
}

TEST(FindContextTest, ClassroomPrime) {
  const ModulusContext ctx = find_context(8, 5);
  EXPECT_EQ(ctx.q(), 17u);
  // Primitive 16th roots mod 17 are the generators {3,5,6,7,10,11,12,14}.
  EXPECT_EQ(ctx.psi(), 3u);
}

TEST(FindContextTest, ThirtyBitPrime) {
  const ModulusContext ctx = find_context(4096, 30);
  // Largest 30-bit prime = 1 mod 8192 (frozen from an independent search).
  EXPECT_EQ(ctx.q(), 1073692673ULL);
  EXPECT_TRUE(trial_division_prime(ctx.q()));
  EXPECT_EQ(ctx.q() % 8192, 1u);
  // No larger candidate below 2^30 is prime.
  for (u64 c = ctx.q() + 8192; c < (1ULL << 30); c += 8192) EXPECT_FALSE(trial_division_prime(c));
}

TEST(FindContextTest, SixtyBitPrime) {
  const ModulusContext ctx = find_context(16384, 60);
  EXPECT_EQ(ctx.q(), 1152921504606748673ULL);
  EXPECT_EQ(ctx.q() % 32768, 1u);
  EXPECT_LT(ctx.q(), 1ULL << 60);
}

TEST(FindContextTest, DistinctDescendingLimbs) {
  const auto limbs = find_contexts(16384, 30, 13);
  ASSERT_EQ(limbs.size(), 13u);
  EXPECT_EQ(limbs[0].q(), 1073643521ULL);
  for (std::size_t i = 1; i < limbs.size(); ++i) EXPECT_LT(limbs[i].q(), limbs[i - 1].q());
}

TEST(FindContextTest, RootInvariants) {
  for (auto [n, bits] : {std::pair{8, 5}, std::pair{1024, 30}, std::pair{4096, 30},
                         std::pair{16384, 60}}) {
    const ModulusContext ctx = find_context(static_cast<std::size_t>(n), bits);
    const Modulus& m = ctx.modulus();
    EXPECT_EQ(m.pow(ctx.psi(), 2 * static_cast<u64>(n)), 1u);
    EXPECT_EQ(m.pow(ctx.psi(), static_cast<u64>(n)), ctx.q() - 1);
    EXPECT_EQ(m.mul(ctx.psi(), ctx.psi_inv()), 1u);
    EXPECT_EQ(m.mul(static_cast<u64>(n) % ctx.q(), ctx.n_inv()), 1u);
  }
}

TEST(FindContextTest, PsiIsMinimalPrimitiveRoot) {
  const ModulusContext ctx(257, 16);
  const Modulus& m = ctx.modulus();
  u64 expected = 0;
  for (u64 x = 2; x < 257; ++x) {
    if (m.pow(x, 32) == 1 && m.pow(x, 16) == 256) {
      expected = x;
      break;
    }
  }
  EXPECT_EQ(ctx.psi(), expected);
}

TEST(FindContextTest, Errors) {
  EXPECT_THROW(find_context(16384, 10), edgehe::NoPrimeFound);
  EXPECT_THROW(ModulusContext(19, 8), edgehe::InvalidParams);  // 19 != 1 mod 16
  EXPECT_THROW(ModulusContext(33, 8), edgehe::InvalidParams);  // not prime
  EXPECT_THROW(ModulusContext(17, 12), edgehe::InvalidParams);
  EXPECT_THROW(Modulus(1ULL << 61 | 1), edgehe::InvalidParams);
}

TEST(PrimalityTest, AgreesWithTrialDivision) {
  for (u64 n = 0; n < 20000; ++n) ASSERT_EQ(edgehe::modarith::is_prime(n), trial_division_prime(n)) << n;
  // Strong pseudoprime to several small bases.
  EXPECT_FALSE(edgehe::modarith::is_prime(3215031751ULL));
  EXPECT_TRUE(edgehe::modarith::is_prime(1152921504606748673ULL));
}

}  // namespace

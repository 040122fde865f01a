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

#include <algorithm>
#include <bit>
#include <string>

#include "edgehe/errors.hpp"

namespace edgehe::modarith {

namespace {

u64 mulmod_wide(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod_wide(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod_wide(result, base, m);
    base = mulmod_wide(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

Modulus::Modulus(u64 q) : q_(q) {
  if (q < 3 || (q & 1) == 0 || std::bit_width(q) > kMaxModulusBits) {
    throw InvalidParams("modulus must be odd, >= 3 and at most 60 bits: " + std::to_string(q));
  }
  bits_ = std::bit_width(q);
  shift_ = 2 * bits_ + 1;
  // floor(2^shift / q) computed in 128 bits; shift <= 121 so 2^shift fits.
  const u128 two_k = static_cast<u128>(1) << shift_;
  factor_ = static_cast<u64>(two_k / q);
}

u64 Modulus::reduce_product(u128 x) const {
  // 192-bit product x * factor, split into three 64-bit words.
  const u64 x_lo = static_cast<u64>(x);
  const u64 x_hi = static_cast<u64>(x >> 64);
  const u128 p_lo = static_cast<u128>(x_lo) * factor_;
  const u128 p_hi = static_cast<u128>(x_hi) * factor_;
  const u64 w0 = static_cast<u64>(p_lo);
  const u128 mid = (p_lo >> 64) + static_cast<u64>(p_hi);
  const u64 w1 = static_cast<u64>(mid);
  const u64 w2 = static_cast<u64>(p_hi >> 64) + static_cast<u64>(mid >> 64);

  u64 quotient;
  if (shift_ >= 128) {
    quotient = w2 >> (shift_ - 128);
  } else if (shift_ >= 64) {
    const u128 top = (static_cast<u128>(w2) << 64) | w1;
    quotient = static_cast<u64>(top >> (shift_ - 64));
  } else {
    // bit_width(q) <= 31 here, so the product is below 2^95 and w2 == 0.
    const u128 low = (static_cast<u128>(w1) << 64) | w0;
    quotient = static_cast<u64>(low >> shift_);
  }

  // The remainder is below 2q < 2^61, so 64-bit wraparound arithmetic is exact.
  u64 r = x_lo - quotient * q_;
  if (r >= q_) r -= q_;
  return r;
}

u64 Modulus::pow(u64 base, u64 exp) const {
  u64 result = 1;
  base %= q_;
  while (exp != 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

u64 Modulus::inv(u64 a) const {
  if (a % q_ == 0) throw InvalidParams("zero has no inverse");
  return pow(a, q_ - 2);
}

u64 Modulus::from_signed(std::int64_t c) const {
  if (c >= 0) return static_cast<u64>(c) % q_;
  const u64 mag = static_cast<u64>(-(c + 1)) + 1;
  const u64 r = mag % q_;
  return r == 0 ? 0 : q_ - r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for every n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod_wide(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_wide(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModulusContext::ModulusContext(u64 q, std::size_t n) : mod_(q), n_(n) {
  if (!is_power_of_two(n) || n < 2) {
    throw InvalidParams("degree must be a power of two >= 2: " + std::to_string(n));
  }
  if (!is_prime(q)) throw InvalidParams("modulus is not prime: " + std::to_string(q));
  const u64 two_n = 2 * static_cast<u64>(n);
  if ((q - 1) % two_n != 0) {
    throw InvalidParams("modulus " + std::to_string(q) + " is not 1 mod 2n for n=" + std::to_string(n));
  }

  // Any c = g^((q-1)/2n) with c^n = -1 has order exactly 2n.
  u64 root = 0;
  for (u64 g = 2; g < q; ++g) {
    const u64 c = mod_.pow(g, (q - 1) / two_n);
    if (mod_.pow(c, n) == q - 1) {
      root = c;
      break;
    }
  }
  if (root == 0) throw InvalidParams("no primitive 2n-th root of unity");

  // The primitive 2n-th roots are the odd powers of any one of them.
  const u64 root_sq = mod_.mul(root, root);
  u64 cur = root;
  u64 best = root;
  for (std::size_t k = 1; k < n; ++k) {
    cur = mod_.mul(cur, root_sq);
    best = std::min(best, cur);
  }
  psi_ = best;
  psi_inv_ = mod_.inv(psi_);
  n_inv_ = mod_.inv(static_cast<u64>(n) % q);
}

std::vector<ModulusContext> find_contexts(std::size_t n, int bits, std::size_t count) {
  if (!is_power_of_two(n) || n < 2) {
    throw InvalidParams("degree must be a power of two: " + std::to_string(n));
  }
  if (bits < 2 || bits > kMaxModulusBits) {
    throw InvalidParams("modulus width must be in [2, 60] bits: " + std::to_string(bits));
  }
  const u64 step = 2 * static_cast<u64>(n);
  const u64 limit = (u64{1} << bits) - 1;  // largest value below 2^bits
  std::vector<ModulusContext> out;
  out.reserve(count);
  for (u64 k = (limit - 1) / step; k > 0 && out.size() < count; --k) {
    const u64 candidate = k * step + 1;
    if (is_prime(candidate)) out.emplace_back(candidate, n);
  }
  if (out.size() < count) {
    throw NoPrimeFound("only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                       " primes = 1 mod " + std::to_string(step) + " below 2^" +
                       std::to_string(bits));
  }
  return out;
}

ModulusContext find_context(std::size_t n, int bits) { return find_contexts(n, bits, 1).front(); }

}  // namespace edgehe::modarith

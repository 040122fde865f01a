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

#ifndef EDGEHE_MODARITH_HPP_
#define EDGEHE_MODARITH_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace edgehe::modarith {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline constexpr int kMaxModulusBits = 60;

/// Word-sized odd modulus with its Barrett constant.
///
/// The reduction shift is k = 2 * bit_width(q) + 1, which keeps the quotient
/// estimate within one of the true quotient so a single conditional
/// subtraction finishes the reduction.
class Modulus {
 public:
  Modulus() = default;
  explicit Modulus(u64 q);

  u64 value() const { return q_; }
  int bit_width() const { return bits_; }
  int barrett_shift() const { return shift_; }
  u64 barrett_factor() const { return factor_; }

  /// (a * b) mod q by Barrett reduction. Requires a, b < q.
  u64 mul(u64 a, u64 b) const {
    const u128 x = static_cast<u128>(a) * b;
    return reduce_product(x);
  }

  /// Reduces a double-width product x < q^2.
  u64 reduce_product(u128 x) const;

  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return s >= q_ ? s - q_ : s;
  }

  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + q_ - b; }

  u64 neg(u64 a) const { return a == 0 ? 0 : q_ - a; }

  /// Sum and difference, each with at most one conditional correction.
  std::pair<u64, u64> add_sub(u64 a, u64 b) const { return {add(a, b), sub(a, b)}; }

  u64 pow(u64 base, u64 exp) const;

  /// Inverse by Fermat's little theorem; q must be prime and a != 0.
  u64 inv(u64 a) const;

  /// Maps a signed small integer to its residue (negatives become q - |c|).
  u64 from_signed(std::int64_t c) const;

  /// Centered representative in (-q/2, q/2].
  std::int64_t to_centered(u64 a) const {
    return a > q_ / 2 ? -static_cast<std::int64_t>(q_ - a) : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const Modulus& a, const Modulus& b) { return a.q_ == b.q_; }

 private:
  u64 q_ = 0;
  int bits_ = 0;
  int shift_ = 0;
  u64 factor_ = 0;
};

/// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(u64 n);

/// An NTT-friendly prime together with the roots needed for a negacyclic
/// transform of length n over Z_q[X]/(X^n + 1). Immutable after construction.
class ModulusContext {
 public:
  /// Validates q prime, q = 1 (mod 2n), n a power of two, and derives psi as
  /// the smallest primitive 2n-th root of unity. Throws InvalidParams.
  ModulusContext(u64 q, std::size_t n);

  const Modulus& modulus() const { return mod_; }
  u64 q() const { return mod_.value(); }
  std::size_t n() const { return n_; }
  u64 psi() const { return psi_; }
  u64 psi_inv() const { return psi_inv_; }
  u64 n_inv() const { return n_inv_; }

  u64 barrett_mul(u64 a, u64 b) const { return mod_.mul(a, b); }
  std::pair<u64, u64> mod_add_sub(u64 a, u64 b) const { return mod_.add_sub(a, b); }

  friend bool operator==(const ModulusContext& a, const ModulusContext& b) {
    return a.mod_ == b.mod_ && a.n_ == b.n_;
  }

 private:
  Modulus mod_;
  std::size_t n_ = 0;
  u64 psi_ = 0;
  u64 psi_inv_ = 0;
  u64 n_inv_ = 0;
};

/// Largest prime q < 2^bits with q = 1 (mod 2n). Throws NoPrimeFound.
ModulusContext find_context(std::size_t n, int bits);

/// The `count` largest distinct primes below 2^bits that are 1 (mod 2n),
/// in descending order. Throws NoPrimeFound.
std::vector<ModulusContext> find_contexts(std::size_t n, int bits, std::size_t count);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
  int l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return l;
}

}  // namespace edgehe::modarith

#endif  // EDGEHE_MODARITH_HPP_

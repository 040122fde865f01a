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

#ifndef EDGEHE_CKKS_HPP_
#define EDGEHE_CKKS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "edgehe/banksim.hpp"
#include "edgehe/modarith.hpp"
#include "edgehe/ntt.hpp"

namespace edgehe::ckks {

using modarith::u64;

enum class Domain { kCoeff, kNtt };

const char* to_string(Domain d);

/// Ring degree, RNS primes and fixed-point scale. Immutable; copies share the
/// transform plans.
class SchemeParams {
 public:
  /// Uses the `limb_count` largest primes below 2^limb_bits that are 1 mod 2n.
  static SchemeParams create(std::size_t n, std::size_t limb_count, int limb_bits = 30,
                             int scale_bits = 20, std::size_t bfus = 1);

  /// Throws InvalidParams unless every q_i is a distinct prime = 1 (mod 2n)
  /// and 0 < scale_bits < bit width of the smallest q_i - 1.
  SchemeParams(std::size_t n, const std::vector<u64>& moduli, int scale_bits,
               std::size_t bfus = 1);

  std::size_t n() const { return n_; }
  std::size_t limb_count() const { return limbs_.size(); }
  const modarith::ModulusContext& limb(std::size_t i) const { return limbs_[i]; }
  const std::vector<modarith::ModulusContext>& limbs() const { return limbs_; }
  std::vector<u64> moduli() const;
  const ntt::NttPlan& plan(std::size_t i) const { return *plans_[i]; }
  int scale_bits() const { return scale_bits_; }
  std::size_t bfus() const { return bfus_; }
  /// Sum of limb bit widths.
  int log_q() const;
  /// FNV-1a over (n, q_i..., scale_bits).
  std::uint64_t id() const { return id_; }

 private:
  std::size_t n_;
  std::vector<modarith::ModulusContext> limbs_;
  std::vector<std::shared_ptr<const ntt::NttPlan>> plans_;
  int scale_bits_;
  std::size_t bfus_;
  std::uint64_t id_;
};

/// A polynomial held as one residue vector per RNS prime. `moduli` names the
/// prime of each limb, so single-limb results stay self-describing.
struct RnsPolynomial {
  std::vector<u64> moduli;
  std::vector<std::vector<u64>> limbs;
  Domain domain = Domain::kCoeff;

  std::size_t n() const { return limbs.empty() ? 0 : limbs.front().size(); }
  std::size_t limb_count() const { return limbs.size(); }

  static RnsPolynomial zero(const SchemeParams& params, Domain domain);
  /// Lifts small signed coefficients into every limb (coefficient domain).
  static RnsPolynomial from_signed(const SchemeParams& params, std::span<const std::int64_t> c);

  friend bool operator==(const RnsPolynomial&, const RnsPolynomial&) = default;
};

/// Throws DegreeMismatch / ParamsMismatch when p does not fit params.
void check_shape(const RnsPolynomial& p, const SchemeParams& params);

RnsPolynomial to_ntt(const RnsPolynomial& p, const SchemeParams& params);
RnsPolynomial to_coeff(const RnsPolynomial& p, const SchemeParams& params);

/// Limb-wise arithmetic; operands must share moduli and domain
/// (DomainMismatch otherwise). Products require the NTT domain.
RnsPolynomial add(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial sub(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial mul(const RnsPolynomial& a, const RnsPolynomial& b);
RnsPolynomial negate(const RnsPolynomial& a);

struct Ciphertext {
  RnsPolynomial c0;
  RnsPolynomial c1;
  std::uint64_t params_id = 0;

  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct KeyPair {
  RnsPolynomial s;  // ternary secret, NTT domain
  RnsPolynomial pk0;
  RnsPolynomial pk1;
};

/// Key pair plus the small values it was built from.
struct KeygenWitness {
  KeyPair keys;
  std::vector<std::int64_t> s;
  std::vector<std::int64_t> e_pk;
};

KeyPair keygen(const SchemeParams& params, std::span<const std::uint8_t> seed);
KeygenWitness keygen_witness(const SchemeParams& params, std::span<const std::uint8_t> seed);

/// Ephemeral values of one encryption, shared by every limb.
struct EncryptionRandomness {
  std::vector<std::int64_t> mu;  // ternary
  std::vector<std::int64_t> e0;  // binomial
  std::vector<std::int64_t> e1;  // binomial

  static EncryptionRandomness sample(const SchemeParams& params,
                                     std::span<const std::uint8_t> seed);
  static EncryptionRandomness zero(std::size_t n);
};

/// The unified datapath: two bank-group buffers and one butterfly datapath,
/// driven twice per limb for encryption and once per limb for decryption.
/// Every step is recorded as a banksim datapath op.
class Datapath {
 public:
  explicit Datapath(const SchemeParams& params) : params_(&params) {}

  /// One pass: BG0 <- mu, NTT; BG1 <- pk; BG1 = BG0 * BG1; BG0 <- err, NTT;
  /// BG1 += BG0; store. Inputs are residues mod the limb's prime.
  std::vector<u64> encrypt_pass(std::size_t limb, std::span<const u64> mu,
                                std::span<const u64> pk_ntt, std::span<const u64> err,
                                bool err_has_message);

  /// BG0 <- c1; BG1 <- s; BG1 = BG0 * BG1; BG0 <- c0; BG1 += BG0; iNTT; store.
  std::vector<u64> decrypt_pass(std::size_t limb, std::span<const u64> c0_ntt,
                                std::span<const u64> c1_ntt, std::span<const u64> s_ntt);

  std::size_t calls() const { return calls_; }
  const banksim::DatapathSchedule& schedule() const { return ops_; }

 private:
  void fill(banksim::BankGroup g, std::span<const u64> src, banksim::DatapathOpKind kind,
            std::string label, std::size_t limb, bool binomial = false, bool fused = false);
  void transform(banksim::BankGroup g, bool inverse, std::size_t limb);
  void pointwise(banksim::DatapathOpKind kind, std::size_t limb, std::string label);
  std::vector<u64> store(banksim::BankGroup g, std::size_t limb, std::string label);
  std::vector<u64>& group(banksim::BankGroup g) { return groups_[static_cast<std::size_t>(g)]; }

  const SchemeParams* params_;
  std::vector<u64> groups_[2];
  bool occupied_[2] = {false, false};
  std::size_t calls_ = 0;
  banksim::DatapathSchedule ops_;
};

/// c0 = mu * pk0 + m + e0, c1 = mu * pk1 + e1 in every limb, with mu, e0, e1
/// drawn once from `seed`. m must be in the coefficient domain.
Ciphertext encrypt(const RnsPolynomial& m, const KeyPair& keys, const SchemeParams& params,
                   std::span<const std::uint8_t> seed, Datapath* datapath = nullptr);

/// Same with caller-supplied randomness (zero randomness gives c0 = NTT(m),
/// c1 = 0).
Ciphertext encrypt_with(const RnsPolynomial& m, const KeyPair& keys, const SchemeParams& params,
                        const EncryptionRandomness& r, Datapath* datapath = nullptr);

/// Straight evaluation of the encryption equations with whole-polynomial
/// operations, bypassing the datapath sequencer.
Ciphertext encrypt_direct(const RnsPolynomial& m, const KeyPair& keys, const SchemeParams& params,
                          const EncryptionRandomness& r);

enum class DecryptMode { kLastLimb, kAllLimbs };

/// m = c0 + c1 * s, then the inverse transform. By default only the last
/// limb is decrypted and the result holds that single limb.
RnsPolynomial decrypt(const Ciphertext& ct, const RnsPolynomial& s, const SchemeParams& params,
                      DecryptMode mode = DecryptMode::kLastLimb, Datapath* datapath = nullptr);

/// Pointwise ciphertext sum.
Ciphertext add(const Ciphertext& a, const Ciphertext& b);

/// round(v * 2^scale_bits) per coefficient; ScaleOverflow when
/// |v| * 2^scale_bits >= q_min / 2 or the input is longer than n.
RnsPolynomial encode_fixed(std::span<const double> values, const SchemeParams& params);
/// Centered lift of the first limb divided by 2^scale_bits.
std::vector<double> decode_fixed(const RnsPolynomial& p, const SchemeParams& params);

/// Centered infinity norm of the first limb.
std::int64_t centered_inf_norm(const RnsPolynomial& p);

/// Standard deviation of the binomial error.
double error_sigma();
/// Per-coefficient bound on |decrypt(encrypt(m)) - m|:
/// 6 sigma (e0) + 6 sigma sqrt(N) (mu * e_pk) + 6 sigma sqrt(N) (e1 * s).
double noise_bound(std::size_t n);

/// Binary formats. Ciphertext: "RISE1", n (u32), limb count (u8), q_i (u64
/// each), scale_bits (u8), then c0 limbs and c1 limbs as little-endian words
/// of 4 bytes (q < 2^32) or 8 bytes. Key file: "RISEK", the same header, then
/// s, pk0, pk1. Readers throw FormatError on malformed input.
void write_ciphertext(std::ostream& os, const Ciphertext& ct, const SchemeParams& params);
struct CiphertextFile {
  SchemeParams params;
  Ciphertext ct;
};
CiphertextFile read_ciphertext(std::istream& is, std::size_t bfus = 1);

void write_keys(std::ostream& os, const KeyPair& keys, const SchemeParams& params);
struct KeyFile {
  SchemeParams params;
  KeyPair keys;
};
KeyFile read_keys(std::istream& is, std::size_t bfus = 1);

}  // namespace edgehe::ckks

#endif  // EDGEHE_CKKS_HPP_

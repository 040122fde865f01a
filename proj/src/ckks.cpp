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

#include "edgehe/ckks.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "edgehe/errors.hpp"
#include "edgehe/keccak.hpp"
#include "edgehe/samplers.hpp"

namespace edgehe::ckks {

namespace {

using banksim::BankGroup;
using banksim::DatapathOpKind;

constexpr char kCiphertextMagic[5] = {'R', 'I', 'S', 'E', '1'};
constexpr char kKeyMagic[5] = {'R', 'I', 'S', 'E', 'K'};

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) {
    h ^= (v >> (8 * i)) & 0xFF;
    h *= 0x100000001b3ULL;
  }
  return h;
}

keccak::KeccakSponge labelled_stream(const char* label, std::span<const std::uint8_t> seed) {
  keccak::KeccakSponge sponge;
  const std::string tag(label);
  sponge.absorb(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(tag.data()),
                                              tag.size() + 1));
  sponge.absorb(seed);
  sponge.finalize();
  return sponge;
}

std::vector<u64> lift(std::span<const std::int64_t> c, const modarith::Modulus& q) {
  std::vector<u64> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = q.from_signed(c[i]);
  return out;
}

void check_same_layout(const RnsPolynomial& a, const RnsPolynomial& b, const char* what) {
  if (a.domain != b.domain) {
    throw DomainMismatch(std::string(what) + ": operands in " + to_string(a.domain) + " and " +
                         to_string(b.domain) + " domains");
  }
  if (a.moduli != b.moduli) throw ParamsMismatch(std::string(what) + ": operands use different primes");
  if (a.n() != b.n()) throw DegreeMismatch(std::string(what) + ": operand degrees differ");
}

template <typename Op>
RnsPolynomial limbwise(const RnsPolynomial& a, const RnsPolynomial& b, Op op) {
  RnsPolynomial out = a;
  for (std::size_t l = 0; l < a.limb_count(); ++l) {
    const modarith::Modulus q(a.moduli[l]);
    for (std::size_t i = 0; i < a.n(); ++i) out.limbs[l][i] = op(q, a.limbs[l][i], b.limbs[l][i]);
  }
  return out;
}

std::size_t limb_index(const SchemeParams& params, u64 q) {
  for (std::size_t l = 0; l < params.limb_count(); ++l) {
    if (params.limb(l).q() == q) return l;
  }
  throw ParamsMismatch("prime " + std::to_string(q) + " is not part of the parameter set");
}

void require_params(const Ciphertext& ct, const SchemeParams& params) {
  if (ct.params_id != params.id()) throw ParamsMismatch("ciphertext was made under other parameters");
  check_shape(ct.c0, params);
  check_shape(ct.c1, params);
  if (ct.c0.domain != Domain::kNtt || ct.c1.domain != Domain::kNtt) {
    throw DomainMismatch("ciphertext components must be in the NTT domain");
  }
}

// Little-endian binary helpers.
void put(std::ostream& os, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get(std::istream& is, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = is.get();
    if (c == std::char_traits<char>::eof()) throw FormatError("unexpected end of file");
    v |= static_cast<std::uint64_t>(c) << (8 * i);
  }
  return v;
}

int word_bytes(const SchemeParams& params) {
  int bits = 0;
  for (const auto& l : params.limbs()) bits = std::max(bits, l.modulus().bit_width());
  return bits <= 32 ? 4 : 8;
}

void write_header(std::ostream& os, const char (&magic)[5], const SchemeParams& params) {
  os.write(magic, 5);
  put(os, params.n(), 4);
  put(os, params.limb_count(), 1);
  for (const auto& l : params.limbs()) put(os, l.q(), 8);
  put(os, static_cast<std::uint64_t>(params.scale_bits()), 1);
}

SchemeParams read_header(std::istream& is, const char (&magic)[5], std::size_t bfus) {
  char got[5] = {};
  is.read(got, 5);
  if (is.gcount() != 5 || !std::equal(got, got + 5, magic)) throw FormatError("bad magic");
  const std::uint64_t n = get(is, 4);
  if (n < 8 || n > (1u << 17) || !modarith::is_power_of_two(n)) {
    throw FormatError("bad ring degree " + std::to_string(n));
  }
  const std::uint64_t count = get(is, 1);
  if (count == 0) throw FormatError("no limbs");
  std::vector<u64> moduli(count);
  for (auto& q : moduli) q = get(is, 8);
  const int scale = static_cast<int>(get(is, 1));
  try {
    return SchemeParams(n, moduli, scale, bfus);
  } catch (const InvalidParams& e) {
    throw FormatError(std::string("header describes invalid parameters: ") + e.what());
  }
}

void write_poly(std::ostream& os, const RnsPolynomial& p, int bytes) {
  for (const auto& limb : p.limbs) {
    for (u64 v : limb) put(os, v, bytes);
  }
}

RnsPolynomial read_poly(std::istream& is, const SchemeParams& params, int bytes) {
  RnsPolynomial p = RnsPolynomial::zero(params, Domain::kNtt);
  for (std::size_t l = 0; l < params.limb_count(); ++l) {
    const u64 q = params.limb(l).q();
    for (auto& v : p.limbs[l]) {
      v = get(is, bytes);
      if (v >= q) throw FormatError("coefficient out of range for limb " + std::to_string(l));
    }
  }
  return p;
}

void expect_end(std::istream& is) {
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after payload");
}

}  // namespace

const char* to_string(Domain d) { return d == Domain::kCoeff ? "coeff" : "ntt"; }

SchemeParams SchemeParams::create(std::size_t n, std::size_t limb_count, int limb_bits,
                                  int scale_bits, std::size_t bfus) {
  if (limb_count == 0 || limb_count > 255) throw InvalidParams("limb count must be 1..255");
  std::vector<u64> moduli;
  for (const auto& ctx : modarith::find_contexts(n, limb_bits, limb_count)) moduli.push_back(ctx.q());
  return SchemeParams(n, moduli, scale_bits, bfus);
}

SchemeParams::SchemeParams(std::size_t n, const std::vector<u64>& moduli, int scale_bits,
                           std::size_t bfus)
    : n_(n), scale_bits_(scale_bits), bfus_(bfus) {
  if (!modarith::is_power_of_two(n) || n < 8) throw InvalidParams("degree must be a power of two >= 8");
  if (moduli.empty() || moduli.size() > 255) throw InvalidParams("limb count must be 1..255");
  if (std::set<u64>(moduli.begin(), moduli.end()).size() != moduli.size()) {
    throw InvalidParams("RNS primes must be distinct");
  }
  int min_bits = 64;
  for (u64 q : moduli) {
    limbs_.emplace_back(q, n);
    min_bits = std::min(min_bits, limbs_.back().modulus().bit_width());
  }
  if (scale_bits <= 0 || scale_bits >= min_bits - 1) {
    throw InvalidParams("scale_bits must be in 1.." + std::to_string(min_bits - 2));
  }
  for (const auto& ctx : limbs_) plans_.push_back(std::make_shared<const ntt::NttPlan>(ctx, bfus));

  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = fnv1a(h, n, 4);
  for (u64 q : moduli) h = fnv1a(h, q, 8);
  id_ = fnv1a(h, static_cast<std::uint64_t>(scale_bits), 1);
}

std::vector<u64> SchemeParams::moduli() const {
  std::vector<u64> out;
  for (const auto& l : limbs_) out.push_back(l.q());
  return out;
}

int SchemeParams::log_q() const {
  int total = 0;
  for (const auto& l : limbs_) total += l.modulus().bit_width();
  return total;
}

RnsPolynomial RnsPolynomial::zero(const SchemeParams& params, Domain domain) {
  RnsPolynomial p;
  p.moduli = params.moduli();
  p.limbs.assign(params.limb_count(), std::vector<u64>(params.n(), 0));
  p.domain = domain;
  return p;
}

RnsPolynomial RnsPolynomial::from_signed(const SchemeParams& params,
                                         std::span<const std::int64_t> c) {
  if (c.size() != params.n()) throw DegreeMismatch("coefficient count does not match degree");
  RnsPolynomial p = zero(params, Domain::kCoeff);
  for (std::size_t l = 0; l < params.limb_count(); ++l) p.limbs[l] = lift(c, params.limb(l).modulus());
  return p;
}

void check_shape(const RnsPolynomial& p, const SchemeParams& params) {
  if (p.moduli != params.moduli() || p.limbs.size() != p.moduli.size()) {
    throw ParamsMismatch("polynomial limbs do not match the parameter set");
  }
  for (std::size_t l = 0; l < p.limb_count(); ++l) {
    if (p.limbs[l].size() != params.n()) throw DegreeMismatch("limb length does not match degree");
  }
}

RnsPolynomial to_ntt(const RnsPolynomial& p, const SchemeParams& params) {
  if (p.domain != Domain::kCoeff) throw DomainMismatch("to_ntt expects a coefficient-domain input");
  RnsPolynomial out = p;
  for (std::size_t l = 0; l < p.limb_count(); ++l) {
    out.limbs[l] = ntt::forward(p.limbs[l], params.plan(limb_index(params, p.moduli[l])));
  }
  out.domain = Domain::kNtt;
  return out;
}

RnsPolynomial to_coeff(const RnsPolynomial& p, const SchemeParams& params) {
  if (p.domain != Domain::kNtt) throw DomainMismatch("to_coeff expects an NTT-domain input");
  RnsPolynomial out = p;
  for (std::size_t l = 0; l < p.limb_count(); ++l) {
    out.limbs[l] = ntt::intt_swap4(p.limbs[l], params.plan(limb_index(params, p.moduli[l])));
  }
  out.domain = Domain::kCoeff;
  return out;
}

RnsPolynomial add(const RnsPolynomial& a, const RnsPolynomial& b) {
  check_same_layout(a, b, "add");
  return limbwise(a, b, [](const modarith::Modulus& q, u64 x, u64 y) { return q.add(x, y); });
}

RnsPolynomial sub(const RnsPolynomial& a, const RnsPolynomial& b) {
  check_same_layout(a, b, "sub");
  return limbwise(a, b, [](const modarith::Modulus& q, u64 x, u64 y) { return q.sub(x, y); });
}

RnsPolynomial mul(const RnsPolynomial& a, const RnsPolynomial& b) {
  check_same_layout(a, b, "mul");
  if (a.domain != Domain::kNtt) throw DomainMismatch("pointwise products need NTT-domain operands");
  return limbwise(a, b, [](const modarith::Modulus& q, u64 x, u64 y) { return q.mul(x, y); });
}

RnsPolynomial negate(const RnsPolynomial& a) {
  RnsPolynomial out = a;
  for (std::size_t l = 0; l < a.limb_count(); ++l) {
    const modarith::Modulus q(a.moduli[l]);
    for (auto& v : out.limbs[l]) v = q.neg(v);
  }
  return out;
}

KeygenWitness keygen_witness(const SchemeParams& params, std::span<const std::uint8_t> seed) {
  auto stream = labelled_stream("edgehe.keygen", seed);
  KeygenWitness w;
  w.s = sampling::sample_ternary(stream, params.n()).coeffs;
  RnsPolynomial a = RnsPolynomial::zero(params, Domain::kNtt);
  for (std::size_t l = 0; l < params.limb_count(); ++l) {
    const auto u = sampling::sample_uniform_mod_q(stream, params.n(), params.limb(l)).coeffs;
    std::transform(u.begin(), u.end(), a.limbs[l].begin(),
                   [](std::int64_t v) { return static_cast<u64>(v); });
  }
  w.e_pk = sampling::sample_binomial(stream, params.n()).coeffs;

  const RnsPolynomial s_hat = to_ntt(RnsPolynomial::from_signed(params, w.s), params);
  const RnsPolynomial e_hat = to_ntt(RnsPolynomial::from_signed(params, w.e_pk), params);
  w.keys.s = s_hat;
  w.keys.pk1 = a;
  w.keys.pk0 = negate(add(mul(a, s_hat), e_hat));
  return w;
}

KeyPair keygen(const SchemeParams& params, std::span<const std::uint8_t> seed) {
  return keygen_witness(params, seed).keys;
}

EncryptionRandomness EncryptionRandomness::sample(const SchemeParams& params,
                                                  std::span<const std::uint8_t> seed) {
  auto stream = labelled_stream("edgehe.encrypt", seed);
  EncryptionRandomness r;
  r.mu = sampling::sample_ternary(stream, params.n()).coeffs;
  r.e0 = sampling::sample_binomial(stream, params.n()).coeffs;
  r.e1 = sampling::sample_binomial(stream, params.n()).coeffs;
  return r;
}

EncryptionRandomness EncryptionRandomness::zero(std::size_t n) {
  return {std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0),
          std::vector<std::int64_t>(n, 0)};
}

void Datapath::fill(BankGroup g, std::span<const u64> src, DatapathOpKind kind, std::string label,
                    std::size_t limb, bool binomial, bool fused) {
  const auto i = static_cast<std::size_t>(g);
  if (occupied_[i]) throw ScheduleViolation("datapath: " + label + " overwrites a live bank group");
  groups_[i].assign(src.begin(), src.end());
  occupied_[i] = true;
  ops_.push_back({kind, g, g, std::move(label), static_cast<int>(limb), binomial, fused});
}

void Datapath::transform(BankGroup g, bool inverse, std::size_t limb) {
  const auto i = static_cast<std::size_t>(g);
  if (!occupied_[i]) throw ScheduleViolation("datapath: transform of an empty bank group");
  const auto& plan = params_->plan(limb);
  groups_[i] = inverse ? ntt::intt_swap4(groups_[i], plan) : ntt::forward(groups_[i], plan);
  ops_.push_back({inverse ? DatapathOpKind::kIntt : DatapathOpKind::kNtt, g, g,
                  inverse ? "intt" : "ntt", static_cast<int>(limb)});
}

void Datapath::pointwise(DatapathOpKind kind, std::size_t limb, std::string label) {
  if (!occupied_[0] || !occupied_[1]) throw ScheduleViolation("datapath: pointwise op needs both groups");
  const auto& q = params_->limb(limb).modulus();
  auto& a = groups_[0];
  auto& b = groups_[1];
  for (std::size_t k = 0; k < b.size(); ++k) {
    b[k] = kind == DatapathOpKind::kMul ? q.mul(a[k], b[k]) : q.add(a[k], b[k]);
  }
  occupied_[0] = false;
  ops_.push_back({kind, BankGroup::kBG1, BankGroup::kBG0, std::move(label), static_cast<int>(limb)});
}

std::vector<u64> Datapath::store(BankGroup g, std::size_t limb, std::string label) {
  const auto i = static_cast<std::size_t>(g);
  if (!occupied_[i]) throw ScheduleViolation("datapath: store of an empty bank group");
  occupied_[i] = false;
  ops_.push_back({DatapathOpKind::kStore, g, g, std::move(label), static_cast<int>(limb)});
  return std::move(groups_[i]);
}

std::vector<u64> Datapath::encrypt_pass(std::size_t limb, std::span<const u64> mu,
                                        std::span<const u64> pk_ntt, std::span<const u64> err,
                                        bool err_has_message) {
  ++calls_;
  const char* which = err_has_message ? "c0" : "c1";
  fill(BankGroup::kBG0, mu, DatapathOpKind::kSample, "mu", limb);
  transform(BankGroup::kBG0, false, limb);
  fill(BankGroup::kBG1, pk_ntt, DatapathOpKind::kLoad, err_has_message ? "pk0" : "pk1", limb);
  pointwise(DatapathOpKind::kMul, limb, std::string("mu*") + (err_has_message ? "pk0" : "pk1"));
  if (err_has_message) {
    fill(BankGroup::kBG0, err, DatapathOpKind::kLoad, "m+e0", limb, true, true);
  } else {
    fill(BankGroup::kBG0, err, DatapathOpKind::kSample, "e1", limb, true);
  }
  transform(BankGroup::kBG0, false, limb);
  pointwise(DatapathOpKind::kAdd, limb, which);
  return store(BankGroup::kBG1, limb, which);
}

std::vector<u64> Datapath::decrypt_pass(std::size_t limb, std::span<const u64> c0_ntt,
                                        std::span<const u64> c1_ntt, std::span<const u64> s_ntt) {
  ++calls_;
  fill(BankGroup::kBG0, c1_ntt, DatapathOpKind::kLoad, "c1", limb);
  fill(BankGroup::kBG1, s_ntt, DatapathOpKind::kLoad, "s", limb);
  pointwise(DatapathOpKind::kMul, limb, "c1*s");
  fill(BankGroup::kBG0, c0_ntt, DatapathOpKind::kLoad, "c0", limb);
  pointwise(DatapathOpKind::kAdd, limb, "c0+c1*s");
  transform(BankGroup::kBG1, true, limb);
  return store(BankGroup::kBG1, limb, "m");
}

Ciphertext encrypt_with(const RnsPolynomial& m, const KeyPair& keys, const SchemeParams& params,
                        const EncryptionRandomness& r, Datapath* datapath) {
  check_shape(m, params);
  check_shape(keys.pk0, params);
  check_shape(keys.pk1, params);
  if (m.domain != Domain::kCoeff) throw DomainMismatch("encrypt expects a coefficient-domain message");
  if (keys.pk0.domain != Domain::kNtt || keys.pk1.domain != Domain::kNtt) {
    throw DomainMismatch("public key must be in the NTT domain");
  }
  if (r.mu.size() != params.n() || r.e0.size() != params.n() || r.e1.size() != params.n()) {
    throw DegreeMismatch("encryption randomness does not match degree");
  }
  Datapath local(params);
  Datapath& dp = datapath ? *datapath : local;

  Ciphertext ct{RnsPolynomial::zero(params, Domain::kNtt), RnsPolynomial::zero(params, Domain::kNtt),
                params.id()};
  for (std::size_t l = 0; l < params.limb_count(); ++l) {
    const auto& q = params.limb(l).modulus();
    const auto mu = lift(r.mu, q);
    auto msg = lift(r.e0, q);
    for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = q.add(msg[i], m.limbs[l][i]);
    ct.c0.limbs[l] = dp.encrypt_pass(l, mu, keys.pk0.limbs[l], msg, true);
    ct.c1.limbs[l] = dp.encrypt_pass(l, mu, keys.pk1.limbs[l], lift(r.e1, q), false);
  }
  return ct;
}

Ciphertext encrypt(const RnsPolynomial& m, const KeyPair& keys, const SchemeParams& params,
                   std::span<const std::uint8_t> seed, Datapath* datapath) {
  return encrypt_with(m, keys, params, EncryptionRandomness::sample(params, seed), datapath);
}

Ciphertext encrypt_direct(const RnsPolynomial& m, const KeyPair& keys, const SchemeParams& params,
                          const EncryptionRandomness& r) {
  const RnsPolynomial mu = to_ntt(RnsPolynomial::from_signed(params, r.mu), params);
  const RnsPolynomial e0 = to_ntt(RnsPolynomial::from_signed(params, r.e0), params);
  const RnsPolynomial e1 = to_ntt(RnsPolynomial::from_signed(params, r.e1), params);
  Ciphertext ct;
  ct.c0 = add(add(mul(mu, keys.pk0), to_ntt(m, params)), e0);
  ct.c1 = add(mul(mu, keys.pk1), e1);
  ct.params_id = params.id();
  return ct;
}

RnsPolynomial decrypt(const Ciphertext& ct, const RnsPolynomial& s, const SchemeParams& params,
                      DecryptMode mode, Datapath* datapath) {
  require_params(ct, params);
  check_shape(s, params);
  if (s.domain != Domain::kNtt) throw DomainMismatch("secret key must be in the NTT domain");
  Datapath local(params);
  Datapath& dp = datapath ? *datapath : local;

  const std::size_t first = mode == DecryptMode::kLastLimb ? params.limb_count() - 1 : 0;
  RnsPolynomial out;
  out.domain = Domain::kCoeff;
  for (std::size_t l = first; l < params.limb_count(); ++l) {
    out.moduli.push_back(params.limb(l).q());
    out.limbs.push_back(dp.decrypt_pass(l, ct.c0.limbs[l], ct.c1.limbs[l], s.limbs[l]));
  }
  return out;
}

Ciphertext add(const Ciphertext& a, const Ciphertext& b) {
  if (a.params_id != b.params_id) throw ParamsMismatch("ciphertexts use different parameters");
  return {add(a.c0, b.c0), add(a.c1, b.c1), a.params_id};
}

RnsPolynomial encode_fixed(std::span<const double> values, const SchemeParams& params) {
  if (values.size() > params.n()) throw InvalidParams("more values than coefficients");
  u64 q_min = ~u64{0};
  for (const auto& l : params.limbs()) q_min = std::min(q_min, l.q());
  const double scale = std::ldexp(1.0, params.scale_bits());
  const double limit = static_cast<double>(q_min / 2);
  std::vector<std::int64_t> coeffs(params.n(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double scaled = values[i] * scale;
    if (!std::isfinite(scaled) || std::fabs(scaled) >= limit) {
      throw ScaleOverflow("value " + std::to_string(values[i]) + " does not fit at scale 2^" +
                          std::to_string(params.scale_bits()));
    }
    coeffs[i] = std::llround(scaled);
  }
  return RnsPolynomial::from_signed(params, coeffs);
}

std::vector<double> decode_fixed(const RnsPolynomial& p, const SchemeParams& params) {
  if (p.domain != Domain::kCoeff) throw DomainMismatch("decode expects a coefficient-domain input");
  if (p.limbs.empty() || p.n() != params.n()) throw DegreeMismatch("polynomial does not match degree");
  const modarith::Modulus q(p.moduli.front());
  std::vector<double> out(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    out[i] = std::ldexp(static_cast<double>(q.to_centered(p.limbs.front()[i])), -params.scale_bits());
  }
  return out;
}

std::int64_t centered_inf_norm(const RnsPolynomial& p) {
  if (p.limbs.empty()) return 0;
  const modarith::Modulus q(p.moduli.front());
  std::int64_t best = 0;
  for (u64 v : p.limbs.front()) best = std::max(best, std::abs(q.to_centered(v)));
  return best;
}

double error_sigma() { return std::sqrt(sampling::kBinomialK / 2.0); }

double noise_bound(std::size_t n) {
  return 6.0 * error_sigma() * (1.0 + 2.0 * std::sqrt(static_cast<double>(n)));
}

void write_ciphertext(std::ostream& os, const Ciphertext& ct, const SchemeParams& params) {
  require_params(ct, params);
  write_header(os, kCiphertextMagic, params);
  const int bytes = word_bytes(params);
  write_poly(os, ct.c0, bytes);
  write_poly(os, ct.c1, bytes);
}

CiphertextFile read_ciphertext(std::istream& is, std::size_t bfus) {
  SchemeParams params = read_header(is, kCiphertextMagic, bfus);
  const int bytes = word_bytes(params);
  Ciphertext ct;
  ct.c0 = read_poly(is, params, bytes);
  ct.c1 = read_poly(is, params, bytes);
  ct.params_id = params.id();
  expect_end(is);
  return {std::move(params), std::move(ct)};
}

void write_keys(std::ostream& os, const KeyPair& keys, const SchemeParams& params) {
  for (const auto* p : {&keys.s, &keys.pk0, &keys.pk1}) {
    check_shape(*p, params);
    if (p->domain != Domain::kNtt) throw DomainMismatch("keys are stored in the NTT domain");
  }
  write_header(os, kKeyMagic, params);
  const int bytes = word_bytes(params);
  write_poly(os, keys.s, bytes);
  write_poly(os, keys.pk0, bytes);
  write_poly(os, keys.pk1, bytes);
}

KeyFile read_keys(std::istream& is, std::size_t bfus) {
  SchemeParams params = read_header(is, kKeyMagic, bfus);
  const int bytes = word_bytes(params);
  KeyPair keys;
  keys.s = read_poly(is, params, bytes);
  keys.pk0 = read_poly(is, params, bytes);
  keys.pk1 = read_poly(is, params, bytes);
  expect_end(is);
  return {std::move(params), std::move(keys)};
}

}  // namespace edgehe::ckks

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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "edgehe/banksim.hpp"
#include "edgehe/ckks.hpp"
#include "edgehe/cli.hpp"
#include "edgehe/keccak.hpp"
#include "edgehe/modarith.hpp"
#include "edgehe/ntt.hpp"
#include "edgehe/samplers.hpp"

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using edgehe::modarith::ModulusContext;
using edgehe::ntt::NttPlan;
using edgehe::ntt::Reorder;

struct Outcome {
  bool ok = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

u64 mulmod(u64 a, u64 b, u64 q) { return static_cast<u64>(static_cast<u128>(a) * b % q); }

u64 powmod(u64 b, u64 e, u64 q) {
  u64 r = 1 % q;
  for (; e; e >>= 1, b = mulmod(b, b, q)) {
    if (e & 1) r = mulmod(r, b, q);
  }
  return r;
}

// Direct evaluation at psi^(2k+1), k = 0 .. n-1.
std::vector<u64> eval_oracle(const std::vector<u64>& a, u64 psi, u64 q) {
  const std::size_t n = a.size();
  std::vector<u64> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const u64 x = powmod(psi, 2 * k + 1, q);
    u64 acc = 0;
    for (std::size_t j = n; j-- > 0;) acc = (mulmod(acc, x, q) + a[j]) % q;
    out[k] = acc;
  }
  return out;
}

std::vector<u64> schoolbook(const std::vector<u64>& a, const std::vector<u64>& b, u64 q) {
  const std::size_t n = a.size();
  std::vector<u64> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const u64 p = mulmod(a[i], b[j], q);
      const std::size_t k = (i + j) % n;
      c[k] = (i + j < n) ? (c[k] + p) % q : (c[k] + q - p) % q;
    }
  }
  return c;
}

std::vector<u64> random_poly(std::size_t n, u64 q, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> d(0, q - 1);
  std::vector<u64> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

// Smallest `count` primes that are 1 mod 2n.
std::vector<u64> small_primes(std::size_t n, std::size_t count) {
  std::vector<u64> out;
  for (u64 q = 2 * n + 1; out.size() < count; q += 2 * n) {
    if (edgehe::modarith::is_prime(q)) out.push_back(q);
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::size_t mismatches = 0, trials = 0;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    for (u64 q : small_primes(n, 3)) {
      const ModulusContext ctx(q, n);
      const NttPlan plan(ctx);
      for (int t = 0; t < 100; ++t, ++trials) {
        const auto a = random_poly(n, q, rng);
        const auto b = random_poly(n, q, rng);
        if (edgehe::ntt::ntt_swap4(edgehe::ntt::bit_reverse(a), plan) != eval_oracle(a, ctx.psi(), q)) {
          ++mismatches;
        }
        if (edgehe::ntt::poly_mul_negacyclic(a, b, plan) != schoolbook(a, b, q)) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << trials << " trials x 2 oracles, " << mismatches << " mismatches, " << secs << " s";
  return {mismatches == 0 && secs < 10, os.str()};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2);
  std::size_t mismatches = 0, vectors = 0, moduli = 0;
  for (std::size_t n = 8; n <= 16384; n *= 2) {
    std::vector<ModulusContext> ctxs = edgehe::modarith::find_contexts(n, 30, 13);
    ctxs.push_back(edgehe::modarith::find_context(n, 45));
    ctxs.push_back(edgehe::modarith::find_context(n, 60));
    for (const auto& ctx : ctxs) {
      ++moduli;
      const NttPlan plan(ctx);
      for (int t = 0; t < 10; ++t, ++vectors) {
        const auto a = random_poly(n, ctx.q(), rng);
        const auto back = edgehe::ntt::intt_swap4(edgehe::ntt::ntt_swap4(a, plan), plan);
        if (edgehe::ntt::bit_reverse(back) != a) ++mismatches;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << moduli << " (n, q) pairs, " << vectors << " vectors, " << mismatches << " mismatches, " << secs
     << " s";
  return {mismatches == 0 && secs < 60, os.str()};
}

edgehe::banksim::BankTrace sim(std::size_t n, std::size_t b, Reorder mode) {
  auto cfg = edgehe::banksim::BankConfig::for_model(n, b, 30);
  cfg.record_trace = false;
  return edgehe::banksim::simulate_schedule(*edgehe::ntt::Schedule::build(n, b, mode), cfg);
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  std::size_t configs = 0, bad_swap4 = 0, clean_none = 0;
  for (std::size_t b = 1; b <= 32; b *= 2) {
    for (std::size_t n = 32 * b; n <= 16384; n *= 2, ++configs) {
      const auto t = sim(n, b, Reorder::kSwap4);
      if (t.conflict_count != 0 || t.peak_wb_occupancy != 1) ++bad_swap4;
      if (sim(n, b, Reorder::kNone).conflict_count < 1) ++clean_none;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << configs << " (N, B) configs; swap4 violations " << bad_swap4 << "; unreordered without conflict "
     << clean_none << "; " << secs << " s";
  return {bad_swap4 == 0 && clean_none == 0 && secs < 300, os.str()};
}

Outcome criterion4() {
  std::size_t bad = 0;
  std::ostringstream os;
  for (std::size_t n = 1024; n <= 16384; n *= 2) {
    const auto p = edgehe::ckks::SchemeParams::create(n, 2);
    const auto cfg = edgehe::banksim::BankConfig::for_model(n, 1, 30);
    const auto enc = edgehe::banksim::simulate_pipeline(edgehe::cli::encryption_schedule(p), cfg);
    const auto dec = edgehe::banksim::simulate_pipeline(edgehe::cli::decryption_schedule(p), cfg);
    if (enc.peak_resident_polys != 2 || dec.peak_resident_polys != 2) ++bad;
    os << "N=" << n << ":" << enc.peak_resident_polys << "/" << dec.peak_resident_polys << " ";
  }
  os << "(encrypt/decrypt peak)";
  return {bad == 0, os.str()};
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  constexpr std::size_t kDraws = 1000000;
  const std::string seed = "acceptance-samplers";
  auto s1 = edgehe::keccak::KeccakSponge::from_seed(std::vector<std::uint8_t>(seed.begin(), seed.end()));
  const auto bin = edgehe::sampling::sample_binomial(s1, kDraws);
  double sum = 0, sum_sq = 0;
  for (auto c : bin.coeffs) {
    sum += static_cast<double>(c);
    sum_sq += static_cast<double>(c) * static_cast<double>(c);
  }
  const double mean = sum / kDraws;
  const double var = sum_sq / kDraws - mean * mean;

  const std::string seed2 = "acceptance-ternary";
  auto s2 = edgehe::keccak::KeccakSponge::from_seed(std::vector<std::uint8_t>(seed2.begin(), seed2.end()));
  const auto ter = edgehe::sampling::sample_ternary(s2, kDraws);
  std::size_t counts[3] = {0, 0, 0};
  for (auto c : ter.coeffs) ++counts[c + 1];
  bool ter_ok = true;
  std::ostringstream os;
  os << "binomial mean " << mean << " var " << var << "; ternary freq";
  for (std::size_t c : counts) {
    const double f = static_cast<double>(c) / kDraws;
    ter_ok = ter_ok && std::abs(f - 1.0 / 3.0) <= 0.002;
    os << " " << f;
  }
  const double secs = seconds_since(t0);
  os << "; " << secs << " s";
  const bool ok = std::abs(var - 10.5) <= 0.1 && mean >= -0.02 && mean <= 0.02 && ter_ok && secs < 30;
  return {ok, os.str()};
}

std::string hex(const std::vector<std::uint8_t>& v) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : v) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

Outcome criterion6() {
  std::size_t failed = 0, checked = 0;
  auto check = [&](bool ok) {
    ++checked;
    if (!ok) ++failed;
  };
  edgehe::keccak::Lanes st{};
  edgehe::keccak::keccak_f1600(st);
  const edgehe::keccak::Lanes zero_once = {
      0xF1258F7940E1DDE7ULL, 0x84D5CCF933C0478AULL, 0xD598261EA65AA9EEULL, 0xBD1547306F80494DULL,
      0x8B284E056253D057ULL, 0xFF97A42D7F8E6FD4ULL, 0x90FEE5A0A44647C4ULL, 0x8C5BDA0CD6192E76ULL,
      0xAD30A6F71B19059CULL, 0x30935AB7D08FFC64ULL, 0xEB5AA93F2317D635ULL, 0xA9A6E6260D712103ULL,
      0x81A57C16DBCF555FULL, 0x43B831CD0347C826ULL, 0x01F22F1A11A5569FULL, 0x05E5635A21D9AE61ULL,
      0x64BEFEF28CC970F2ULL, 0x613670957BC46611ULL, 0xB87C5A554FD00ECBULL, 0x8C3EE88A1CCF32C8ULL,
      0x940C7922AE3A2614ULL, 0x1841F924A2C509E4ULL, 0x16F53526E70465C2ULL, 0x75F644E97F30A13BULL,
      0xEAF1FF7B5CECA249ULL,
  };
  check(st == zero_once);
  edgehe::keccak::keccak_f1600(st);
  check(st[0] == 0x2D5C954DF96ECB3CULL && st[1] == 0x6A332CD07057B56DULL);

  const std::vector<std::uint8_t> empty;
  const std::vector<std::uint8_t> abc = {'a', 'b', 'c'};
  check(hex(edgehe::keccak::shake256(empty, 64)) ==
        "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f"
        "d75dc4ddd8c0f200cb05019d67b592f6fc821c49479ab48640292eacb3b7c4be");
  check(hex(edgehe::keccak::shake256(abc, 64)) ==
        "483366601360a8771c6863080cc4114d8db44530f8f1e1ee4f94ea37e78b5739"
        "d5a15bef186a5386c75744c0527e1faa9f8726e462a12a4feb06bd8801e751e4");
  const auto long_out = edgehe::keccak::shake256(empty, 272);
  check(hex({long_out.begin() + 240, long_out.end()}) ==
        "28419c3778a15fd248d339ede785fb7f5a1aaa96d313eacc890936c173cdcd0f");
  std::ostringstream os;
  os << checked - failed << "/" << checked << " vectors match";
  return {failed == 0, os.str()};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  struct Case {
    std::size_t n, limbs;
  };
  std::size_t failures = 0;
  std::ostringstream os;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> value(-100.0, 100.0);
  for (const Case c : {Case{1024, 2}, Case{4096, 3}, Case{16384, 13}}) {
    const auto p = edgehe::ckks::SchemeParams::create(c.n, c.limbs);
    const std::string kseed = "acceptance-keys-" + std::to_string(c.n);
    const auto keys = edgehe::ckks::keygen(p, std::vector<std::uint8_t>(kseed.begin(), kseed.end()));
    const double bound = (edgehe::ckks::noise_bound(c.n) + 1.0) * std::ldexp(1.0, -p.scale_bits());
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      std::vector<double> in(c.n);
      for (auto& v : in) v = value(rng);
      const std::string eseed = "acceptance-enc-" + std::to_string(t);
      const auto ct = edgehe::ckks::encrypt(edgehe::ckks::encode_fixed(in, p), keys, p,
                                            std::vector<std::uint8_t>(eseed.begin(), eseed.end()));
      const auto out = edgehe::ckks::decode_fixed(edgehe::ckks::decrypt(ct, keys.s, p), p);
      double err = 0;
      for (std::size_t i = 0; i < c.n; ++i) err = std::max(err, std::abs(out[i] - in[i]));
      worst = std::max(worst, err);
      if (err > bound) ++failures;
    }
    os << "N=" << c.n << " logQ=" << p.log_q() << " worst " << worst << " <= " << bound << "; ";
  }
  const double secs = seconds_since(t0);
  os << failures << " failures, " << secs << " s";
  return {failures == 0 && secs < 300, os.str()};
}

Outcome criterion8() {
  using edgehe::cli::FrameSpec;
  const auto p = edgehe::ckks::SchemeParams::create(4096, 3);
  const auto big = edgehe::ckks::SchemeParams::create(16384, 1);
  const double bw = edgehe::cli::kBandwidthMaxBps;
  const auto qq = edgehe::cli::frame_sizing(FrameSpec::qqvga(), p, bw);
  const auto q = edgehe::cli::frame_sizing(FrameSpec::qvga(), p, bw);
  const auto qq_big = edgehe::cli::frame_sizing(FrameSpec::qqvga(), big, bw);
  const auto q_big = edgehe::cli::frame_sizing(FrameSpec::qvga(), big, bw);
  std::ostringstream os;
  os << "QQVGA " << qq.cts_per_frame << " cts " << qq.frame_ct_bytes_total / 1024 << " KiB; QVGA "
     << q.cts_per_frame << " cts " << q.frame_ct_bytes_total / 1024 << " KiB; N=16384 "
     << "QQVGA " << qq_big.cts_per_frame << " ct (QVGA " << q_big.cts_per_frame << ", informational)";
  const bool ok = qq.cts_per_frame == 3 && qq.frame_ct_bytes_total == 270 * 1024 && q.cts_per_frame == 10 &&
                  q.frame_ct_bytes_total == 900 * 1024 && qq_big.cts_per_frame == 1;
  return {ok, os.str()};
}

Outcome criterion9() {
  std::size_t bad = 0, configs = 0;
  for (std::size_t b = 1; b <= 32; b *= 2) {
    for (std::size_t n = 32 * b; n <= 16384; n *= 2, ++configs) {
      const auto t = sim(n, b, Reorder::kSwap4);
      const auto log_n = static_cast<std::size_t>(edgehe::modarith::log2_exact(n));
      if (!t.steady_state_full_rate(b) || t.butterfly_issues != n / 2 * log_n) ++bad;
    }
  }
  // Informational calibration against published single-port cycle counts.
  struct Row {
    std::size_t n;
    int logq;
    std::uint64_t cycles;
  };
  std::printf("calibration (informational; R=1 D=3 drain=3, 1RW + swap4):\n");
  std::printf("  %6s %5s %10s %10s %10s %8s\n", "N", "logq", "published", "sim B=1", "sim B=32",
              "fit B");
  for (const Row r : {Row{256, 30, 103}, Row{512, 30, 215}, Row{1024, 30, 447}, Row{4096, 30, 1918},
                      Row{16384, 60, 34814}}) {
    std::uint64_t best_cycles = 0, one = 0, max_b = 0;
    std::size_t best_b = 0;
    for (std::size_t b = 1; b <= 32 && 32 * b <= r.n; b *= 2) {
      auto cfg = edgehe::banksim::BankConfig::for_model(r.n, b, r.logq);
      cfg.record_trace = false;
      const auto cyc =
          edgehe::banksim::simulate_schedule(*edgehe::ntt::Schedule::build(r.n, b, Reorder::kSwap4), cfg)
              .total_cycles;
      if (b == 1) one = cyc;
      max_b = cyc;
      const auto dist = [&](std::uint64_t c) { return c > r.cycles ? c - r.cycles : r.cycles - c; };
      if (best_b == 0 || dist(cyc) < dist(best_cycles)) {
        best_b = b;
        best_cycles = cyc;
      }
    }
    std::printf("  %6zu %5d %10llu %10llu %10llu %8zu\n", r.n, r.logq,
                static_cast<unsigned long long>(r.cycles), static_cast<unsigned long long>(one),
                static_cast<unsigned long long>(max_b), best_b);
  }
  std::ostringstream os;
  os << configs << " configs at B butterflies/cycle with (N/2)log2 N issues; " << bad << " violations";
  return {bad == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,
                                                          criterion4, criterion5, criterion6,
                                                          criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s (%s)\n", i + 1, o.ok ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

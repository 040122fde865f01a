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

#ifndef EDGEHE_NTT_HPP_
#define EDGEHE_NTT_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "edgehe/modarith.hpp"

namespace edgehe::ntt {

using modarith::u64;

// Output reordering applied by the reordering unit after each stage.
//   kSwap4: groups of 4*B butterflies (window of 2 + log2 B physical bits).
//   kSwap2: groups of 2*B butterflies (window of 1 + log2 B physical bits).
//   kNone:  outputs go back to the addresses they were read from.
enum class Reorder { kSwap4, kSwap2, kNone };

const char* to_string(Reorder r);

inline bool is_supported_bfu_count(std::size_t b) {
  return b == 1 || b == 2 || b == 4 || b == 8 || b == 16 || b == 32;
}

/// One butterfly issue slot: physical addresses of its two operands and of the
/// two results after reordering, plus the logical (array) index of the top
/// operand, whose low `stage` bits select the twiddle.
struct ButterflySlot {
  std::uint32_t read_top;
  std::uint32_t read_bot;
  std::uint32_t write_top;
  std::uint32_t write_bot;
  std::uint32_t logical_top;
};

/// Address schedule of the in-place, bit-reversed-input / normal-output
/// transform, shared by forward and inverse and replayed by the bank
/// simulator.
///
/// Layout rule (B parallel butterfly units, window w = 2 + log2 B for swap4):
/// before stage s, physical bits 0 .. w-1 hold logical bits s .. s+w-1
/// (cyclically mod log2 N), so every butterfly reads two adjacent words and
/// each cycle's B butterflies touch one half of the 4B banks. A reorder group
/// varies those w bits plus one row bit r_s, the current home of logical bit
/// s+w. The reordering unit writes the group back "tops first, then bottoms",
/// which rotates the group bits (0 <- 1 <- ... <- w-1 <- r_s <- 0) and brings
/// the next stage's partner bit to physical bit 0.
///
/// Issue order within a stage enumerates logical bits s+1, ..., N-1, 0, ...,
/// s-1 from least to most significant, so the twiddle index (the low s bits)
/// occupies the top of the issue counter and each twiddle is used for
/// N / 2^(s+1) consecutive butterflies.
///
/// For B = 1 this is the NTT_swap4 listing: group offsets {0, 2, 2m, 2m + 2},
/// m doubling per stage and resetting to 2 once it reaches N/4, and a final
/// gather a_out[i] = a[{i[L-3:2], i[L-1:L-2], i[1:0]}]. Unlike the listing's
/// loop bound, all log2 N stages run, each followed by its reorder.
class Schedule {
 public:
  static std::shared_ptr<const Schedule> build(std::size_t n, std::size_t bfus, Reorder mode);

  std::size_t n() const { return n_; }
  int log_n() const { return log_n_; }
  std::size_t bfus() const { return bfus_; }
  Reorder mode() const { return mode_; }
  /// Butterflies per reorder-unit flush (1 when reordering is disabled).
  std::size_t group_size() const { return group_size_; }
  int window_bits() const { return window_; }

  const std::vector<ButterflySlot>& stage(int s) const { return stages_[static_cast<std::size_t>(s)]; }

  /// Physical bit position of each logical bit before stage s (s = log N is
  /// the final layout).
  const std::vector<int>& layout(int s) const { return layouts_[static_cast<std::size_t>(s)]; }

  /// Row bit r_s completing stage s's reorder groups (-1 without reordering).
  int group_row_bit(int s) const { return row_bits_[static_cast<std::size_t>(s)]; }

  /// Physical address holding logical element i after the last stage.
  std::uint32_t output_address(std::size_t i) const { return final_phys_[i]; }

  std::size_t butterfly_count() const { return n_ / 2 * static_cast<std::size_t>(log_n_); }

 private:
  Schedule() = default;

  std::size_t n_ = 0;
  int log_n_ = 0;
  std::size_t bfus_ = 1;
  Reorder mode_ = Reorder::kSwap4;
  std::size_t group_size_ = 1;
  int window_ = 0;
  std::vector<std::vector<ButterflySlot>> stages_;
  std::vector<std::vector<int>> layouts_;
  std::vector<int> row_bits_;
  std::vector<std::uint32_t> final_phys_;
};

/// Twiddle parameters of one stage: butterfly j of a block uses
/// initial * step^j.
struct StageTwiddles {
  u64 initial;
  u64 step;
};

/// On-the-fly twiddle generator of one butterfly unit. Unit `lane` of B
/// handles issue slots lane, lane + B, ...; it advances by step^stride once
/// every `period` of its own issues, where stride and period come from the
/// upd_cnt rule (a twiddle is reused for N / 2^(s+1) consecutive slots).
class TwiddleStream {
 public:
  TwiddleStream(const modarith::Modulus& q, StageTwiddles tw, int log_n, int stage,
                std::size_t bfus, std::size_t lane);

  u64 current() const { return omega_; }
  /// Called after each butterfly this unit issues.
  void advance();

 private:
  const modarith::Modulus* q_;
  u64 omega_;
  u64 stride_step_;
  std::size_t period_;
  std::size_t count_ = 0;
};

/// Immutable transform plan for one (n, q, B) triple.
class NttPlan {
 public:
  /// Throws InvalidParams for unsupported B, DegreeMismatch when ctx.n() != n
  /// implicitly (the degree is taken from ctx), and ConfigMismatch when the
  /// reorder window does not fit (N < 8B for swap4, N < 4B for swap2).
  explicit NttPlan(const modarith::ModulusContext& ctx, std::size_t bfus = 1,
                   Reorder mode = Reorder::kSwap4);

  std::size_t n() const { return ctx_.n(); }
  const modarith::ModulusContext& context() const { return ctx_; }
  const modarith::Modulus& modulus() const { return ctx_.modulus(); }
  std::size_t bfus() const { return bfus_; }
  Reorder mode() const { return schedule_->mode(); }
  const Schedule& schedule() const { return *schedule_; }
  std::shared_ptr<const Schedule> schedule_ptr() const { return schedule_; }

  /// Sizes below 32 * B have late stages whose reorder groups wrap around the
  /// whole index space; they are valid but only used for oracle testing.
  bool degenerate() const { return n() < 32 * bfus_; }

  /// Forward (negacyclic, psi folded in) twiddles of stage s:
  /// psi^(N/2^(s+1)) * (psi^(N/2^s))^j.
  StageTwiddles forward_twiddles(int s) const { return forward_[static_cast<std::size_t>(s)]; }
  /// Inverse (cyclic in psi^-2) twiddles of stage s: (psi^(-N/2^s))^j.
  StageTwiddles inverse_twiddles(int s) const { return inverse_[static_cast<std::size_t>(s)]; }

 private:
  modarith::ModulusContext ctx_;
  std::size_t bfus_;
  std::shared_ptr<const Schedule> schedule_;
  std::vector<StageTwiddles> forward_;
  std::vector<StageTwiddles> inverse_;
};

/// Element i moves to index reverse_bits(i, log2 N). Involutive.
template <typename T>
std::vector<T> bit_reverse(std::span<const T> a) {
  const std::size_t n = a.size();
  const int log_n = modarith::log2_exact(n);
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < log_n; ++b) r |= ((i >> b) & 1u) << (log_n - 1 - b);
    out[r] = a[i];
  }
  return out;
}

template <typename T>
std::vector<T> bit_reverse(const std::vector<T>& a) {
  return bit_reverse(std::span<const T>(a));
}

/// Negacyclic NTT: input coefficients in bit-reversed order, output
/// evaluations a(psi^(2k+1)) in normal order k = 0 .. N-1.
std::vector<u64> ntt_swap4(std::span<const u64> a_bitrev, const NttPlan& plan);

/// Inverse of ntt_swap4 composed with bit reversal: takes normal-order
/// evaluations, returns normal-order coefficients. Runs the same schedule as
/// the forward transform on the bit-reversed evaluations with psi^-2
/// twiddles; the closing pass scales element i by n^-1 * psi^-i, generated
/// by a running product.
std::vector<u64> intt_swap4(std::span<const u64> a_hat, const NttPlan& plan);

/// Normal-order coefficients to normal-order evaluations.
std::vector<u64> forward(std::span<const u64> a, const NttPlan& plan);

/// a * b mod (X^N + 1, q).
std::vector<u64> poly_mul_negacyclic(std::span<const u64> a, std::span<const u64> b,
                                     const NttPlan& plan);

/// Sequence of twiddles in issue order for one stage, as produced by the B
/// on-the-fly generators. Used to check the recurrence against offline powers.
std::vector<u64> stage_twiddle_sequence(const NttPlan& plan, int stage, bool inverse = false);

}  // namespace edgehe::ntt

#endif  // EDGEHE_NTT_HPP_

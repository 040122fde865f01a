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

#include "edgehe/ntt.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "edgehe/errors.hpp"

namespace edgehe::ntt {

namespace {

std::uint32_t physical_address(const std::vector<int>& layout, std::size_t logical) {
  std::uint32_t addr = 0;
  for (std::size_t bit = 0; bit < layout.size(); ++bit) {
    addr |= static_cast<std::uint32_t>((logical >> bit) & 1u) << layout[bit];
  }
  return addr;
}

int window_for(Reorder mode, int log_b) {
  switch (mode) {
    case Reorder::kSwap4:
      return 2 + log_b;
    case Reorder::kSwap2:
      return 1 + log_b;
    case Reorder::kNone:
      return 0;
  }
  return 0;
}

// Layout before stage s+1 given the layout before stage s.
std::vector<int> rotate_group(const std::vector<int>& layout, int window, int row_bit) {
  const int log_n = static_cast<int>(layout.size());
  std::vector<int> logical_at(static_cast<std::size_t>(log_n));
  for (int l = 0; l < log_n; ++l) logical_at[static_cast<std::size_t>(layout[static_cast<std::size_t>(l)])] = l;

  std::vector<int> order;
  for (int p = 0; p < window; ++p) order.push_back(p);
  order.push_back(row_bit);

  std::vector<int> next = layout;
  const std::size_t g = order.size();
  for (std::size_t i = 0; i < g; ++i) {
    const int moving = logical_at[static_cast<std::size_t>(order[(i + 1) % g])];
    next[static_cast<std::size_t>(moving)] = order[i];
  }
  return next;
}

void check_length(std::size_t got, const NttPlan& plan) {
  if (got != plan.n()) {
    throw DegreeMismatch("vector length " + std::to_string(got) + " does not match plan degree " +
                         std::to_string(plan.n()));
  }
}

enum class Direction { kForward, kInverse };

// Executes every stage of the schedule on `mem` (physical order) and gathers
// the normal-order result.
std::vector<u64> run_schedule(std::vector<u64> mem, const NttPlan& plan, Direction dir) {
  const Schedule& sched = plan.schedule();
  const modarith::Modulus& q = plan.modulus();
  const std::size_t group = sched.group_size();
  const std::size_t bfus = sched.bfus();
  std::vector<u64> ru_values(2 * group);

  for (int s = 0; s < sched.log_n(); ++s) {
    const StageTwiddles tw =
        dir == Direction::kForward ? plan.forward_twiddles(s) : plan.inverse_twiddles(s);
    std::vector<TwiddleStream> units;
    units.reserve(bfus);
    for (std::size_t lane = 0; lane < bfus; ++lane) {
      units.emplace_back(q, tw, sched.log_n(), s, bfus, lane);
    }

    const auto& slots = sched.stage(s);
    for (std::size_t base = 0; base < slots.size(); base += group) {
      for (std::size_t k = 0; k < group; ++k) {
        const ButterflySlot& bf = slots[base + k];
        TwiddleStream& unit = units[(base + k) % bfus];
        const u64 wb = q.mul(mem[bf.read_bot], unit.current());
        const u64 a = mem[bf.read_top];
        ru_values[2 * k] = q.add(a, wb);
        ru_values[2 * k + 1] = q.sub(a, wb);
        unit.advance();
      }
      // Reordering unit flush: every group writes back onto its own read set.
      for (std::size_t k = 0; k < group; ++k) {
        const ButterflySlot& bf = slots[base + k];
        mem[bf.write_top] = ru_values[2 * k];
        mem[bf.write_bot] = ru_values[2 * k + 1];
      }
    }
  }

  std::vector<u64> out(mem.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mem[sched.output_address(i)];
  return out;
}

}  // namespace

const char* to_string(Reorder r) {
  switch (r) {
    case Reorder::kSwap4:
      return "swap4";
    case Reorder::kSwap2:
      return "swap2";
    case Reorder::kNone:
      return "none";
  }
  return "unknown";
}

std::shared_ptr<const Schedule> Schedule::build(std::size_t n, std::size_t bfus, Reorder mode) {
  if (!modarith::is_power_of_two(n) || n < 2) {
    throw InvalidParams("transform length must be a power of two: " + std::to_string(n));
  }
  if (!is_supported_bfu_count(bfus)) {
    throw InvalidParams("unsupported butterfly unit count: " + std::to_string(bfus));
  }

  static std::mutex cache_mutex;
  static std::map<std::tuple<std::size_t, std::size_t, Reorder>, std::shared_ptr<const Schedule>>
      cache;
  const auto key = std::make_tuple(n, bfus, mode);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  std::shared_ptr<Schedule> sched(new Schedule());
  const int log_n = modarith::log2_exact(n);
  const int window = window_for(mode, modarith::log2_exact(bfus));
  if (window > 0 && log_n < window + 1) {
    throw ConfigMismatch("N=" + std::to_string(n) + " too small for " + to_string(mode) +
                         " with " + std::to_string(bfus) + " butterfly units");
  }
  sched->n_ = n;
  sched->log_n_ = log_n;
  sched->bfus_ = bfus;
  sched->mode_ = mode;
  sched->window_ = window;
  sched->group_size_ = window > 0 ? (std::size_t{1} << window) : 1;

  std::vector<int> layout(static_cast<std::size_t>(log_n));
  for (int l = 0; l < log_n; ++l) layout[static_cast<std::size_t>(l)] = l;

  for (int s = 0; s < log_n; ++s) {
    sched->layouts_.push_back(layout);
    int row_bit = -1;
    std::vector<int> next = layout;
    if (window > 0) {
      row_bit = layout[static_cast<std::size_t>((s + window) % log_n)];
      next = rotate_group(layout, window, row_bit);
    }
    sched->row_bits_.push_back(row_bit);

    // Issue counter bit k selects logical bit (s + 1 + k) mod log N.
    std::vector<int> counter_bits;
    for (int k = 0; k < log_n - 1; ++k) counter_bits.push_back((s + 1 + k) % log_n);

    std::vector<ButterflySlot> slots(n / 2);
    for (std::size_t t = 0; t < n / 2; ++t) {
      std::size_t top = 0;
      for (int k = 0; k < log_n - 1; ++k) {
        top |= ((t >> k) & 1u) << counter_bits[static_cast<std::size_t>(k)];
      }
      const std::size_t bot = top | (std::size_t{1} << s);
      slots[t] = ButterflySlot{physical_address(layout, top), physical_address(layout, bot),
                               physical_address(next, top), physical_address(next, bot),
                               static_cast<std::uint32_t>(top)};
    }
    sched->stages_.push_back(std::move(slots));
    layout = std::move(next);
  }
  sched->layouts_.push_back(layout);
  sched->final_phys_.resize(n);
  for (std::size_t i = 0; i < n; ++i) sched->final_phys_[i] = physical_address(layout, i);

  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, std::move(sched)).first->second;
}

TwiddleStream::TwiddleStream(const modarith::Modulus& q, StageTwiddles tw, int log_n, int stage,
                             std::size_t bfus, std::size_t lane)
    : q_(&q) {
  const std::size_t uses = std::size_t{1} << (log_n - 1 - stage);  // N / 2^(stage+1)
  std::size_t stride = 1;
  std::size_t first = 0;
  if (uses >= bfus) {
    period_ = uses / bfus;
  } else {
    period_ = 1;
    stride = bfus / uses;
    first = lane / uses;
  }
  omega_ = q.mul(tw.initial, q.pow(tw.step, first));
  stride_step_ = q.pow(tw.step, stride);
}

void TwiddleStream::advance() {
  if (++count_ == period_) {
    count_ = 0;
    omega_ = q_->mul(omega_, stride_step_);
  }
}

NttPlan::NttPlan(const modarith::ModulusContext& ctx, std::size_t bfus, Reorder mode)
    : ctx_(ctx), bfus_(bfus), schedule_(Schedule::build(ctx.n(), bfus, mode)) {
  const auto& q = ctx_.modulus();
  const std::size_t n = ctx_.n();
  const int log_n = schedule_->log_n();
  for (int s = 0; s < log_n; ++s) {
    const u64 half_span = n >> (s + 1);  // N / 2^(s+1)
    const u64 step = q.pow(ctx_.psi(), 2 * half_span);
    forward_.push_back({q.pow(ctx_.psi(), half_span), step});
    inverse_.push_back({1, q.pow(ctx_.psi_inv(), 2 * half_span)});
  }
}

std::vector<u64> ntt_swap4(std::span<const u64> a_bitrev, const NttPlan& plan) {
  check_length(a_bitrev.size(), plan);
  return run_schedule(std::vector<u64>(a_bitrev.begin(), a_bitrev.end()), plan,
                      Direction::kForward);
}

std::vector<u64> intt_swap4(std::span<const u64> a_hat, const NttPlan& plan) {
  check_length(a_hat.size(), plan);
  std::vector<u64> y = run_schedule(bit_reverse(a_hat), plan, Direction::kInverse);
  const auto& q = plan.modulus();
  u64 factor = plan.context().n_inv();
  for (auto& v : y) {
    v = q.mul(v, factor);
    factor = q.mul(factor, plan.context().psi_inv());
  }
  return y;
}

std::vector<u64> forward(std::span<const u64> a, const NttPlan& plan) {
  check_length(a.size(), plan);
  const std::vector<u64> rev = bit_reverse(a);
  return ntt_swap4(rev, plan);
}

std::vector<u64> poly_mul_negacyclic(std::span<const u64> a, std::span<const u64> b,
                                     const NttPlan& plan) {
  check_length(a.size(), plan);
  check_length(b.size(), plan);
  std::vector<u64> fa = forward(a, plan);
  const std::vector<u64> fb = forward(b, plan);
  const auto& q = plan.modulus();
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] = q.mul(fa[i], fb[i]);
  return intt_swap4(fa, plan);
}

std::vector<u64> stage_twiddle_sequence(const NttPlan& plan, int stage, bool inverse) {
  const Schedule& sched = plan.schedule();
  const auto tw = inverse ? plan.inverse_twiddles(stage) : plan.forward_twiddles(stage);
  std::vector<TwiddleStream> units;
  for (std::size_t lane = 0; lane < sched.bfus(); ++lane) {
    units.emplace_back(plan.modulus(), tw, sched.log_n(), stage, sched.bfus(), lane);
  }
  std::vector<u64> seq(plan.n() / 2);
  for (std::size_t t = 0; t < seq.size(); ++t) {
    auto& unit = units[t % sched.bfus()];
    seq[t] = unit.current();
    unit.advance();
  }
  return seq;
}

}  // namespace edgehe::ntt

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

#ifndef EDGEHE_BANKSIM_HPP_
#define EDGEHE_BANKSIM_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edgehe/ntt.hpp"

namespace edgehe::banksim {

enum class PortModel { k1RW, k1R1W, k2R2W };

const char* to_string(PortModel p);
/// Accepts "1rw", "1r1w", "2r2w" (case-insensitive). Throws InvalidParams.
PortModel parse_port_model(const std::string& s);

/// Memory system of one bank group plus the timing constants of the datapath.
/// Cycle-model constants are calibration knobs, not measured values.
struct BankConfig {
  std::size_t n = 0;
  std::size_t b = 1;
  std::size_t banks_per_group = 4;
  std::size_t bank_depth = 0;
  int word_bits = 30;
  std::size_t write_buffer_depth = 1;
  PortModel port_model = PortModel::k1RW;

  int read_latency = 1;
  int pipeline_depth = 3;
  int drain_cycles = 3;

  // Fig. 5 pipeline rates, in words per cycle.
  std::size_t load_words_per_cycle = 0;   // 0 means one word per bank
  std::size_t store_words_per_cycle = 0;  // 0 means one word per bank
  std::size_t uniform_samplers = 0;       // 0 means 4 * b
  std::size_t binomial_samplers = 1;

  bool record_trace = true;

  /// Banks sized for the port model: 4B single-port, 2B one-read-one-write,
  /// B two-read-two-write.
  static BankConfig for_model(std::size_t n, std::size_t b, int word_bits,
                              PortModel model = PortModel::k1RW);

  /// Throws ConfigMismatch unless banks_per_group * bank_depth == n and the
  /// write buffer is one word deep in 1RW mode.
  void validate() const;

  std::size_t effective_load_rate() const;
  std::size_t effective_store_rate() const;
  std::size_t effective_uniform_samplers() const;
};

enum class AccessOp { kRead, kWrite, kStall };

const char* to_string(AccessOp op);

/// Source of an access: a butterfly lane (>= 0) or the bank's write buffer.
inline constexpr std::int32_t kWriteBufferSource = -1;

struct TraceRecord {
  std::uint64_t cycle;
  std::uint32_t bank;
  AccessOp op;
  std::uint32_t address;
  std::int32_t source;
};

struct StageStats {
  std::uint64_t first_issue = 0;
  std::uint64_t last_issue = 0;
  std::uint64_t butterflies = 0;
  std::uint64_t issue_cycles = 0;  // cycles in which at least one butterfly issued
  std::uint64_t end = 0;           // first cycle of the next stage
};

/// One Fig. 5 pipeline step as it occupied the bank groups.
struct PipelineEvent {
  std::string label;
  std::uint64_t start = 0;
  std::uint64_t end = 0;
  std::size_t resident_after = 0;
};

struct BankTrace {
  std::vector<TraceRecord> records;  // empty when record_trace is off
  std::uint64_t conflict_count = 0;
  std::uint64_t stall_count = 0;
  std::uint64_t total_cycles = 0;
  std::uint64_t butterfly_issues = 0;
  std::size_t peak_wb_occupancy = 0;
  std::size_t peak_resident_polys = 0;
  std::vector<StageStats> stages;
  std::vector<PipelineEvent> events;

  /// True when every stage issued exactly B butterflies in each cycle between
  /// its first and last issue.
  bool steady_state_full_rate(std::size_t b) const;

  /// CSV with header cycle,bank,op,addr,source.
  void write_csv(std::ostream& os) const;
  /// {total_cycles, conflicts, stalls, peak_wb_occupancy, peak_resident_polys, ...}
  std::string summary_json() const;
};

/// Reordering unit: buffers butterfly output pairs and releases them as one
/// write burst, all tops first and then all bottoms, once `capacity` pairs
/// are held.
class ReorderUnitState {
 public:
  struct Pair {
    std::uint32_t top_address;
    std::uint32_t bot_address;
    std::int32_t lane;
  };
  struct Write {
    std::uint32_t address;
    std::int32_t lane;
  };

  explicit ReorderUnitState(std::size_t capacity) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return pairs_.size(); }
  bool active() const { return active_; }
  void set_active(bool on) { active_ = on; }

  /// Returns true when this push filled the unit.
  bool push(const Pair& p);
  /// Write order of the buffered pairs; empties the unit.
  std::vector<Write> flush();

 private:
  std::size_t capacity_;
  bool active_ = true;
  std::vector<Pair> pairs_;
};

/// Replays the schedule's address stream against the bank model. The
/// schedule is shared by the forward and inverse transforms.
BankTrace simulate_schedule(const ntt::Schedule& schedule, const BankConfig& cfg);

/// Throws ConfigMismatch when cfg and plan disagree on n or b.
BankTrace simulate_ntt(const ntt::NttPlan& plan, const BankConfig& cfg);

enum class BankGroup { kBG0 = 0, kBG1 = 1 };

enum class DatapathOpKind { kLoad, kSample, kNtt, kIntt, kMul, kAdd, kStore };

const char* to_string(DatapathOpKind k);

/// One step of the unified datapath.
///   kLoad / kSample: fill `target` (must be free); `fused_sample` adds a
///                    sampled error while loading.
///   kNtt / kIntt:    in place on `target`.
///   kMul / kAdd:     read `source` and `target`, write `target`; frees `source`.
///   kStore:          drain `target` to the host and free it.
struct DatapathOp {
  DatapathOpKind kind;
  BankGroup target;
  BankGroup source = BankGroup::kBG0;
  std::string label;
  int limb = 0;
  bool binomial = false;      // sampler distribution for kSample / fused loads
  bool fused_sample = false;
};

using DatapathSchedule = std::vector<DatapathOp>;

/// Fig. 5 timeline over two bank groups. Loads and sampling overlap with
/// butterfly work on the other group; butterfly work is serialized on the
/// BFUs. Throws ScheduleViolation if an operation reads an unoccupied group
/// or fills an occupied one.
BankTrace simulate_pipeline(const DatapathSchedule& ops, const BankConfig& cfg);

struct PortModelRow {
  std::string name;
  PortModel port_model;
  ntt::Reorder reorder;
  std::size_t banks;
  std::uint64_t conflicts;
  std::size_t required_buffer_depth;
  std::uint64_t total_cycles;
  double area_proxy;  // port weight * stored bits, relative to 1R1W = 1.0
};

struct PortModelReport {
  std::vector<PortModelRow> rows;
  std::string to_json() const;
};

/// Same transform under 2R2W (no reorder), 1R1W + swap2, 1RW + swap4 and,
/// for contrast, 1RW + swap2 and 1RW without reordering.
PortModelReport compare_port_models(const ntt::NttPlan& plan);

/// Port weight of the memory-area proxy.
double port_weight(PortModel p);

}  // namespace edgehe::banksim

#endif  // EDGEHE_BANKSIM_HPP_

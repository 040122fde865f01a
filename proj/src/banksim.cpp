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

#include "edgehe/banksim.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>
#include <map>
#include <ostream>

#include "json.hpp"

#include "edgehe/errors.hpp"

namespace edgehe::banksim {

namespace {

struct PortCaps {
  std::size_t reads;
  std::size_t writes;
  bool shared;  // reads and writes compete for one port
};

PortCaps caps_of(PortModel p) {
  switch (p) {
    case PortModel::k1RW:
      return {1, 1, true};
    case PortModel::k1R1W:
      return {1, 1, false};
    case PortModel::k2R2W:
      return {2, 2, false};
  }
  return {1, 1, true};
}

struct Access {
  std::uint32_t bank;
  std::uint32_t address;
  std::int32_t lane;
};

struct PendingWrite {
  std::uint32_t address;
  std::int32_t lane;
  std::uint64_t arrival;
};

template <typename T>
std::vector<T>& at_cycle(std::vector<std::vector<T>>& v, std::uint64_t c) {
  if (v.size() <= c) v.resize(c + 1);
  return v[c];
}

}  // namespace

const char* to_string(PortModel p) {
  switch (p) {
    case PortModel::k1RW:
      return "1rw";
    case PortModel::k1R1W:
      return "1r1w";
    case PortModel::k2R2W:
      return "2r2w";
  }
  return "unknown";
}

PortModel parse_port_model(const std::string& s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "1rw") return PortModel::k1RW;
  if (lower == "1r1w") return PortModel::k1R1W;
  if (lower == "2r2w") return PortModel::k2R2W;
  throw InvalidParams("unknown port model: " + s);
}

const char* to_string(AccessOp op) {
  switch (op) {
    case AccessOp::kRead:
      return "read";
    case AccessOp::kWrite:
      return "write";
    case AccessOp::kStall:
      return "stall";
  }
  return "unknown";
}

const char* to_string(DatapathOpKind k) {
  switch (k) {
    case DatapathOpKind::kLoad:
      return "load";
    case DatapathOpKind::kSample:
      return "sample";
    case DatapathOpKind::kNtt:
      return "ntt";
    case DatapathOpKind::kIntt:
      return "intt";
    case DatapathOpKind::kMul:
      return "mul";
    case DatapathOpKind::kAdd:
      return "add";
    case DatapathOpKind::kStore:
      return "store";
  }
  return "unknown";
}

double port_weight(PortModel p) {
  switch (p) {
    case PortModel::k1RW:
      return 0.5;
    case PortModel::k1R1W:
      return 1.0;
    case PortModel::k2R2W:
      return 2.0;
  }
  return 1.0;
}

BankConfig BankConfig::for_model(std::size_t n, std::size_t b, int word_bits, PortModel model) {
  BankConfig cfg;
  cfg.n = n;
  cfg.b = b;
  cfg.word_bits = word_bits;
  cfg.port_model = model;
  switch (model) {
    case PortModel::k1RW:
      cfg.banks_per_group = 4 * b;
      break;
    case PortModel::k1R1W:
      cfg.banks_per_group = 2 * b;
      break;
    case PortModel::k2R2W:
      cfg.banks_per_group = b;
      break;
  }
  cfg.bank_depth = cfg.banks_per_group ? n / cfg.banks_per_group : 0;
  return cfg;
}

void BankConfig::validate() const {
  if (banks_per_group == 0 || banks_per_group * bank_depth != n) {
    throw ConfigMismatch("bank geometry " + std::to_string(banks_per_group) + " x " +
                         std::to_string(bank_depth) + " does not hold " + std::to_string(n) +
                         " words");
  }
  if (port_model == PortModel::k1RW && write_buffer_depth != 1) {
    throw ConfigMismatch("single-port banks use a one-word write buffer");
  }
  if (read_latency < 0 || pipeline_depth < 0 || drain_cycles < 0) {
    throw ConfigMismatch("negative cycle-model parameter");
  }
}

std::size_t BankConfig::effective_load_rate() const {
  return load_words_per_cycle ? load_words_per_cycle : banks_per_group;
}

std::size_t BankConfig::effective_store_rate() const {
  return store_words_per_cycle ? store_words_per_cycle : banks_per_group;
}

std::size_t BankConfig::effective_uniform_samplers() const {
  return uniform_samplers ? uniform_samplers : 4 * b;
}

bool BankTrace::steady_state_full_rate(std::size_t b) const {
  if (stages.empty()) return false;
  for (const auto& st : stages) {
    const std::uint64_t span = st.last_issue - st.first_issue + 1;
    if (st.issue_cycles != span || st.butterflies != span * b) return false;
  }
  return true;
}

void BankTrace::write_csv(std::ostream& os) const {
  os << "cycle,bank,op,addr,source\n";
  for (const auto& r : records) {
    os << r.cycle << ',' << r.bank << ',' << to_string(r.op) << ',' << r.address << ',';
    if (r.source == kWriteBufferSource) {
      os << "write_buffer";
    } else {
      os << "bfu_" << r.source;
    }
    os << '\n';
  }
}

std::string BankTrace::summary_json() const {
  nlohmann::json j;
  j["total_cycles"] = total_cycles;
  j["conflicts"] = conflict_count;
  j["stalls"] = stall_count;
  j["peak_wb_occupancy"] = peak_wb_occupancy;
  j["peak_resident_polys"] = peak_resident_polys;
  j["butterfly_issues"] = butterfly_issues;
  return j.dump(2);
}

bool ReorderUnitState::push(const Pair& p) {
  if (pairs_.size() >= capacity_) throw ScheduleViolation("reordering unit overflow");
  pairs_.push_back(p);
  return pairs_.size() == capacity_;
}

std::vector<ReorderUnitState::Write> ReorderUnitState::flush() {
  std::vector<Write> out;
  out.reserve(2 * pairs_.size());
  for (const auto& p : pairs_) out.push_back({p.top_address, p.lane});
  for (const auto& p : pairs_) out.push_back({p.bot_address, p.lane});
  pairs_.clear();
  return out;
}

BankTrace simulate_schedule(const ntt::Schedule& schedule, const BankConfig& cfg) {
  cfg.validate();
  if (cfg.n != schedule.n() || cfg.b != schedule.bfus()) {
    throw ConfigMismatch("bank config (n=" + std::to_string(cfg.n) + ", b=" +
                         std::to_string(cfg.b) + ") does not match schedule (n=" +
                         std::to_string(schedule.n()) + ", b=" +
                         std::to_string(schedule.bfus()) + ")");
  }

  const PortCaps ports = caps_of(cfg.port_model);
  const std::size_t banks = cfg.banks_per_group;
  const std::size_t b = cfg.b;
  const std::uint64_t latency = static_cast<std::uint64_t>(cfg.read_latency + cfg.pipeline_depth);
  const bool reorder = schedule.group_size() > 1;

  BankTrace trace;
  std::uint64_t stage_start = 0;

  auto record = [&](std::uint64_t cycle, std::uint32_t bank, AccessOp op, std::uint32_t addr,
                    std::int32_t src) {
    if (cfg.record_trace) trace.records.push_back({cycle, bank, op, addr, src});
  };

  for (int s = 0; s < schedule.log_n(); ++s) {
    const auto& slots = schedule.stage(s);
    std::vector<std::vector<Access>> reads;
    std::vector<std::vector<PendingWrite>> arrivals;
    std::vector<std::uint64_t> issue_at(slots.size());

    // Issue: B butterflies per bundle; a bank asked for more reads than it has
    // ports serializes the bundle.
    StageStats st;
    std::uint64_t rel = 0;
    std::vector<std::vector<Access>> per_bank(banks);
    for (std::size_t base = 0; base < slots.size(); base += b) {
      const std::size_t end = std::min(slots.size(), base + b);
      for (auto& v : per_bank) v.clear();
      for (std::size_t i = base; i < end; ++i) {
        const auto lane = static_cast<std::int32_t>(i - base);
        for (std::uint32_t a : {slots[i].read_top, slots[i].read_bot}) {
          const auto bank = static_cast<std::uint32_t>(a % banks);
          per_bank[bank].push_back({bank, a, lane});
        }
      }
      std::size_t need = 1;
      for (const auto& v : per_bank) {
        if (v.size() > ports.reads) {
          ++trace.conflict_count;
          need = std::max(need, (v.size() + ports.reads - 1) / ports.reads);
        }
      }
      for (const auto& v : per_bank) {
        for (std::size_t k = 0; k < v.size(); ++k) {
          const std::uint64_t c = rel + k / ports.reads;
          at_cycle(reads, c).push_back(v[k]);
          for (std::uint64_t w = rel; w < c; ++w) {
            record(stage_start + w, v[k].bank, AccessOp::kStall, v[k].address, v[k].lane);
          }
        }
      }
      trace.stall_count += need - 1;
      const std::uint64_t issue = rel + need - 1;
      for (std::size_t i = base; i < end; ++i) issue_at[i] = issue;
      if (st.butterflies == 0) st.first_issue = issue;
      st.last_issue = issue;
      st.butterflies += end - base;
      ++st.issue_cycles;
      rel += need;
    }
    trace.butterfly_issues += st.butterflies;

    // Results leave the pipeline `latency` cycles after issue and are written
    // one cycle later, either directly or through the reordering unit.
    if (reorder) {
      ReorderUnitState ru(schedule.group_size());
      std::uint64_t ru_free = 0;
      std::uint64_t ready = 0;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        ready = std::max(ready, issue_at[i] + latency);
        const auto lane = static_cast<std::int32_t>(i % b);
        if (ru.push({slots[i].write_top, slots[i].write_bot, lane})) {
          std::uint64_t c = std::max(ready + 1, ru_free);
          const auto writes = ru.flush();
          for (std::size_t k = 0; k < writes.size(); ++k) {
            if (k > 0 && k % (2 * b) == 0) ++c;
            at_cycle(arrivals, c).push_back({writes[k].address, writes[k].lane, c});
          }
          ru_free = c + 1;
          ready = 0;
        }
      }
    } else {
      for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::uint64_t c = issue_at[i] + latency + 1;
        const auto lane = static_cast<std::int32_t>(i % b);
        at_cycle(arrivals, c).push_back({slots[i].write_top, lane, c});
        at_cycle(arrivals, c).push_back({slots[i].write_bot, lane, c});
      }
    }

    // Bank ports, cycle by cycle. Reads have priority; a write that cannot
    // use its bank this cycle waits in the bank's write buffer.
    std::vector<std::deque<PendingWrite>> queue(banks);
    std::vector<std::size_t> reads_now(banks);
    std::uint64_t last_write = 0;
    std::size_t queued = 0;
    for (std::uint64_t c = 0; c < reads.size() || c < arrivals.size() || queued > 0; ++c) {
      std::fill(reads_now.begin(), reads_now.end(), 0);
      if (c < reads.size()) {
        for (const auto& a : reads[c]) {
          ++reads_now[a.bank];
          record(stage_start + c, a.bank, AccessOp::kRead, a.address, a.lane);
        }
      }
      if (c < arrivals.size()) {
        for (const auto& w : arrivals[c]) {
          queue[w.address % banks].push_back(w);
          ++queued;
        }
      }
      for (std::size_t bank = 0; bank < banks; ++bank) {
        auto& q = queue[bank];
        if (q.empty()) continue;
        std::size_t free = ports.writes;
        if (ports.shared) free = reads_now[bank] > 0 ? 0 : 1;
        while (free > 0 && !q.empty()) {
          const PendingWrite w = q.front();
          q.pop_front();
          --queued;
          --free;
          record(stage_start + c, static_cast<std::uint32_t>(bank), AccessOp::kWrite, w.address,
                 w.arrival < c ? kWriteBufferSource : w.lane);
          last_write = c;
        }
        trace.peak_wb_occupancy = std::max(trace.peak_wb_occupancy, q.size());
        if (q.size() > cfg.write_buffer_depth) ++trace.conflict_count;
      }
    }

    const std::uint64_t next =
        std::max(st.last_issue + 1 + static_cast<std::uint64_t>(cfg.drain_cycles), last_write + 1);
    st.first_issue += stage_start;
    st.last_issue += stage_start;
    st.end = stage_start + next;
    trace.stages.push_back(st);
    stage_start += next;
  }
  trace.total_cycles = stage_start;
  return trace;
}

BankTrace simulate_ntt(const ntt::NttPlan& plan, const BankConfig& cfg) {
  if (cfg.n != plan.n() || cfg.b != plan.bfus()) {
    throw ConfigMismatch("bank config (n=" + std::to_string(cfg.n) + ", b=" +
                         std::to_string(cfg.b) + ") does not match plan (n=" +
                         std::to_string(plan.n()) + ", b=" + std::to_string(plan.bfus()) + ")");
  }
  return simulate_schedule(plan.schedule(), cfg);
}

BankTrace simulate_pipeline(const DatapathSchedule& ops, const BankConfig& cfg) {
  BankTrace trace;
  if (ops.empty()) return trace;
  cfg.validate();

  const std::uint64_t n = cfg.n;
  auto ceil_div = [](std::uint64_t a, std::uint64_t d) { return (a + d - 1) / d; };
  const std::uint64_t latency = static_cast<std::uint64_t>(cfg.read_latency + cfg.pipeline_depth);

  std::uint64_t ntt_cycles = 0;
  auto transform_cycles = [&]() {
    if (ntt_cycles == 0) {
      BankConfig quiet = cfg;
      quiet.record_trace = false;
      const auto sched = ntt::Schedule::build(cfg.n, cfg.b, ntt::Reorder::kSwap4);
      ntt_cycles = simulate_schedule(*sched, quiet).total_cycles;
    }
    return ntt_cycles;
  };

  std::uint64_t load_rate = cfg.effective_load_rate();
  const std::uint64_t uniform_rate = cfg.effective_uniform_samplers();
  const std::uint64_t binomial_rate = std::max<std::size_t>(1, cfg.binomial_samplers);

  std::array<bool, 2> occupied{false, false};
  std::array<std::uint64_t, 2> group_ready{0, 0};
  std::uint64_t bfu_free = 0, dma_free = 0, sampler_free = 0, out_free = 0;
  std::size_t resident = 0;

  auto need = [&](BankGroup g, const DatapathOp& op) {
    if (!occupied[static_cast<std::size_t>(g)]) {
      throw ScheduleViolation(std::string(to_string(op.kind)) + " '" + op.label + "' reads BG" +
                              std::to_string(static_cast<int>(g)) + ", which holds no polynomial");
    }
  };
  auto fill = [&](BankGroup g, const DatapathOp& op) {
    if (occupied[static_cast<std::size_t>(g)]) {
      throw ScheduleViolation(std::string(to_string(op.kind)) + " '" + op.label +
                              "' overwrites live data in BG" + std::to_string(static_cast<int>(g)));
    }
  };

  for (const auto& op : ops) {
    const auto t = static_cast<std::size_t>(op.target);
    const auto src = static_cast<std::size_t>(op.source);
    std::uint64_t start = 0, end = 0;
    switch (op.kind) {
      case DatapathOpKind::kLoad:
      case DatapathOpKind::kSample: {
        fill(op.target, op);
        std::uint64_t dur = 0;
        if (op.kind == DatapathOpKind::kLoad) {
          dur = ceil_div(n, load_rate);
          start = std::max(dma_free, group_ready[t]);
        } else {
          start = std::max(sampler_free, group_ready[t]);
        }
        if (op.kind == DatapathOpKind::kSample || op.fused_sample) {
          dur = std::max(dur, ceil_div(n, op.binomial ? binomial_rate : uniform_rate));
          if (op.kind == DatapathOpKind::kLoad) start = std::max(start, sampler_free);
        }
        end = start + dur;
        if (op.kind == DatapathOpKind::kLoad) dma_free = end;
        if (op.kind == DatapathOpKind::kSample || op.fused_sample) sampler_free = end;
        occupied[t] = true;
        ++resident;
        group_ready[t] = end;
        break;
      }
      case DatapathOpKind::kNtt:
      case DatapathOpKind::kIntt:
        need(op.target, op);
        start = std::max(bfu_free, group_ready[t]);
        end = start + transform_cycles();
        bfu_free = end;
        group_ready[t] = end;
        break;
      case DatapathOpKind::kMul:
      case DatapathOpKind::kAdd:
        if (src == t) throw ScheduleViolation("pointwise op '" + op.label + "' needs two groups");
        need(op.source, op);
        need(op.target, op);
        start = std::max({bfu_free, group_ready[t], group_ready[src]});
        end = start + ceil_div(n, cfg.b) + latency + 1;
        bfu_free = end;
        group_ready[t] = end;
        group_ready[src] = end;
        occupied[src] = false;
        --resident;
        break;
      case DatapathOpKind::kStore:
        need(op.target, op);
        start = std::max(out_free, group_ready[t]);
        end = start + ceil_div(n, cfg.effective_store_rate());
        out_free = end;
        group_ready[t] = end;
        occupied[t] = false;
        --resident;
        break;
    }
    trace.peak_resident_polys = std::max(trace.peak_resident_polys, resident);
    trace.events.push_back({op.label.empty() ? to_string(op.kind) : op.label, start, end, resident});
    trace.total_cycles = std::max(trace.total_cycles, end);
  }
  return trace;
}

std::string PortModelReport::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"name", r.name},
                         {"port_model", to_string(r.port_model)},
                         {"reorder", ntt::to_string(r.reorder)},
                         {"banks", r.banks},
                         {"conflicts", r.conflicts},
                         {"required_buffer_depth", r.required_buffer_depth},
                         {"total_cycles", r.total_cycles},
                         {"area_proxy", r.area_proxy}});
  }
  return nlohmann::json{{"rows", rows_json}}.dump(2);
}

PortModelReport compare_port_models(const ntt::NttPlan& plan) {
  struct Variant {
    const char* name;
    PortModel port;
    ntt::Reorder reorder;
  };
  const Variant variants[] = {
      {"2R2W", PortModel::k2R2W, ntt::Reorder::kNone},
      {"1R1W+swap2", PortModel::k1R1W, ntt::Reorder::kSwap2},
      {"1RW+swap4", PortModel::k1RW, ntt::Reorder::kSwap4},
      {"1RW+swap2", PortModel::k1RW, ntt::Reorder::kSwap2},
      {"1RW", PortModel::k1RW, ntt::Reorder::kNone},
  };
  const int word_bits = plan.modulus().bit_width();
  PortModelReport report;
  for (const auto& v : variants) {
    BankConfig cfg = BankConfig::for_model(plan.n(), plan.bfus(), word_bits, v.port);
    cfg.record_trace = false;
    // Buffers may grow without bound here so the report shows the depth the
    // stream would need.
    cfg.write_buffer_depth = 1;
    const auto sched = ntt::Schedule::build(plan.n(), plan.bfus(), v.reorder);
    const BankTrace t = simulate_schedule(*sched, cfg);
    const double bits = static_cast<double>(plan.n()) * word_bits;
    const double wb_bits = v.port == PortModel::k1RW
                               ? static_cast<double>(cfg.banks_per_group * t.peak_wb_occupancy) *
                                     word_bits
                               : 0.0;
    const double ru_bits = static_cast<double>(2 * sched->group_size() > 2 ? 2 * sched->group_size() : 0) *
                           word_bits;
    report.rows.push_back({v.name, v.port, v.reorder, cfg.banks_per_group, t.conflict_count,
                           t.peak_wb_occupancy, t.total_cycles,
                           port_weight(v.port) + (wb_bits + ru_bits) / bits});
  }
  return report;
}

}  // namespace edgehe::banksim

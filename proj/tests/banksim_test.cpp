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

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "edgehe/errors.hpp"
#include "json.hpp"

namespace {

using namespace edgehe::banksim;
using edgehe::modarith::find_context;
using edgehe::ntt::NttPlan;
using edgehe::ntt::Reorder;
using edgehe::ntt::Schedule;

BankTrace run(std::size_t n, std::size_t b, Reorder mode, bool record = true,
              PortModel port = PortModel::k1RW) {
  BankConfig cfg = BankConfig::for_model(n, b, 30, port);
  cfg.record_trace = record;
  return simulate_schedule(*Schedule::build(n, b, mode), cfg);
}

TEST(BankConfigTest, Geometry) {
  const auto cfg = BankConfig::for_model(1024, 4, 30);
  EXPECT_EQ(cfg.banks_per_group, 16u);
  EXPECT_EQ(cfg.bank_depth, 64u);
  EXPECT_EQ(cfg.write_buffer_depth, 1u);
  EXPECT_NO_THROW(cfg.validate());
  BankConfig bad = cfg;
  bad.bank_depth = 32;
  EXPECT_THROW(bad.validate(), edgehe::ConfigMismatch);
  bad = cfg;
  bad.write_buffer_depth = 2;
  EXPECT_THROW(bad.validate(), edgehe::ConfigMismatch);
  EXPECT_EQ(BankConfig::for_model(1024, 4, 30, PortModel::k1R1W).banks_per_group, 8u);
}

TEST(BankConfigTest, PortModelNames) {
  EXPECT_EQ(parse_port_model("1RW"), PortModel::k1RW);
  EXPECT_EQ(parse_port_model("1r1w"), PortModel::k1R1W);
  EXPECT_EQ(parse_port_model("2r2w"), PortModel::k2R2W);
  EXPECT_THROW(parse_port_model("3rw"), edgehe::InvalidParams);
}

TEST(SimulateNttTest, ConfigMustMatchPlan) {
  const NttPlan plan(find_context(64, 30), 1);
  EXPECT_THROW(simulate_ntt(plan, BankConfig::for_model(128, 1, 30)), edgehe::ConfigMismatch);
  EXPECT_THROW(simulate_ntt(plan, BankConfig::for_model(64, 2, 30)), edgehe::ConfigMismatch);
  EXPECT_EQ(simulate_ntt(plan, BankConfig::for_model(64, 1, 30)).conflict_count, 0u);
}

TEST(SimulateNttTest, SmallestSingleUnitCase) {
  EXPECT_EQ(run(32, 1, Reorder::kSwap4).conflict_count, 0u);
  EXPECT_GT(run(32, 1, Reorder::kNone).conflict_count, 0u);
}

TEST(SimulateNttTest, UnreorderedStreamCollidesOnReads) {
  // Independent replay: without reordering, the butterfly (x, x + 2^s) reads
  // one bank twice whenever 2^s is a multiple of the bank count.
  const auto sched = Schedule::build(32, 1, Reorder::kNone);
  std::size_t same_bank = 0;
  for (int s = 0; s < sched->log_n(); ++s) {
    for (const auto& bf : sched->stage(s)) same_bank += (bf.read_top % 4) == (bf.read_bot % 4);
  }
  EXPECT_EQ(same_bank, 3u * 16u);  // stages 2, 3, 4
  EXPECT_GE(run(32, 1, Reorder::kNone, false).stall_count, same_bank);
}

TEST(SimulateNttTest, TwoUnitsStageZeroOrder) {
  const auto t = run(32, 2, Reorder::kSwap4);
  EXPECT_EQ(t.conflict_count, 0u);
  std::map<std::uint64_t, std::set<std::uint32_t>> reads_by_cycle;
  for (const auto& r : t.records) {
    if (r.op == AccessOp::kRead && r.cycle < 4) reads_by_cycle[r.cycle].insert(r.address);
  }
  // Two butterflies per cycle: (a0,a1),(a2,a3) then (a4,a5),(a6,a7), ...
  for (std::uint32_t c = 0; c < 4; ++c) {
    EXPECT_EQ(reads_by_cycle[c], (std::set<std::uint32_t>{4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3}));
  }
}

TEST(SimulateNttTest, ConflictFreeAcrossSweep) {
  for (std::size_t b : {1u, 2u, 4u, 8u, 16u, 32u}) {
    for (std::size_t n = 32 * b; n <= 16384; n *= 2) {
      const auto t = run(n, b, Reorder::kSwap4, false);
      ASSERT_EQ(t.conflict_count, 0u) << "n=" << n << " b=" << b;
      ASSERT_EQ(t.peak_wb_occupancy, 1u) << "n=" << n << " b=" << b;
      ASSERT_EQ(t.stall_count, 0u);
      ASSERT_TRUE(t.steady_state_full_rate(b)) << "n=" << n << " b=" << b;
      ASSERT_GE(run(n, b, Reorder::kNone, false).conflict_count, 1u) << "n=" << n << " b=" << b;
    }
  }
}

TEST(SimulateNttTest, ButterflyConservation) {
  for (Reorder mode : {Reorder::kSwap4, Reorder::kSwap2, Reorder::kNone}) {
    for (std::size_t b : {1u, 4u, 16u}) {
      for (std::size_t n : {512u, 2048u}) {
        const auto t = run(n, b, mode, false);
        std::size_t log_n = 0;
        while ((std::size_t{1} << log_n) < n) ++log_n;
        ASSERT_EQ(t.butterfly_issues, n / 2 * log_n);
        ASSERT_EQ(t.stages.size(), log_n);
      }
    }
  }
}

TEST(SimulateNttTest, TraceRespectsSinglePort) {
  for (std::size_t b : {1u, 2u, 8u}) {
    const std::size_t n = 64 * b;
    const auto t = run(n, b, Reorder::kSwap4);
    std::map<std::pair<std::uint64_t, std::uint32_t>, int> ops;
    std::map<std::uint32_t, int> writes_per_address;
    std::size_t buffered = 0, reads = 0;
    for (const auto& r : t.records) {
      ASSERT_NE(r.op, AccessOp::kStall);
      ASSERT_EQ(r.bank, r.address % (4 * b));
      ASSERT_EQ(++ops[std::make_pair(r.cycle, r.bank)], 1) << "cycle " << r.cycle << " bank " << r.bank;
      if (r.op == AccessOp::kWrite) {
        ++writes_per_address[r.address];
        buffered += r.source == kWriteBufferSource;
      } else {
        ++reads;
      }
    }
    std::size_t log_n = 0;
    while ((std::size_t{1} << log_n) < n) ++log_n;
    EXPECT_EQ(reads, n * log_n);
    ASSERT_EQ(writes_per_address.size(), n);
    for (const auto& [addr, count] : writes_per_address) ASSERT_EQ(count, static_cast<int>(log_n));
    EXPECT_GT(buffered, 0u);
  }
}

TEST(SimulateNttTest, Deterministic) {
  const auto a = run(1024, 4, Reorder::kSwap4);
  const auto b = run(1024, 4, Reorder::kSwap4);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    ASSERT_EQ(a.records[i].cycle, b.records[i].cycle);
    ASSERT_EQ(a.records[i].bank, b.records[i].bank);
    ASSERT_EQ(a.records[i].op, b.records[i].op);
    ASSERT_EQ(a.records[i].address, b.records[i].address);
    ASSERT_EQ(a.records[i].source, b.records[i].source);
  }
  EXPECT_EQ(a.total_cycles, b.total_cycles);
}

TEST(SimulateNttTest, CycleModelParametersShiftTotals) {
  BankConfig cfg = BankConfig::for_model(256, 1, 30);
  cfg.record_trace = false;
  const auto sched = Schedule::build(256, 1, Reorder::kSwap4);
  const auto base = simulate_schedule(*sched, cfg);
  cfg.pipeline_depth = 5;
  const auto deeper = simulate_schedule(*sched, cfg);
  EXPECT_EQ(deeper.total_cycles, base.total_cycles + 8 * 2);
  EXPECT_EQ(deeper.conflict_count, 0u);
  // An odd read-to-write distance lines flushes up with idle banks.
  cfg.pipeline_depth = 4;
  EXPECT_EQ(simulate_schedule(*sched, cfg).peak_wb_occupancy, 0u);
}

TEST(SimulateNttTest, CsvAndSummary) {
  const auto t = run(32, 1, Reorder::kSwap4);
  std::ostringstream os;
  t.write_csv(os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "cycle,bank,op,addr,source");
  std::size_t rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, t.records.size());
  EXPECT_NE(os.str().find("write_buffer"), std::string::npos);
  EXPECT_NE(os.str().find("bfu_0"), std::string::npos);

  const auto j = nlohmann::json::parse(t.summary_json());
  for (const char* key : {"total_cycles", "conflicts", "stalls", "peak_wb_occupancy",
                          "peak_resident_polys"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["conflicts"], 0);
  EXPECT_EQ(j["total_cycles"], t.total_cycles);
}

TEST(ReorderUnitTest, FlushesTopsThenBottomsWhenFull) {
  ReorderUnitState ru(8);
  for (std::uint32_t k = 0; k < 7; ++k) EXPECT_FALSE(ru.push({10 + k, 20 + k, 0}));
  EXPECT_EQ(ru.size(), 7u);
  EXPECT_TRUE(ru.push({17, 27, 0}));
  const auto w = ru.flush();
  ASSERT_EQ(w.size(), 16u);
  for (std::uint32_t k = 0; k < 8; ++k) {
    EXPECT_EQ(w[k].address, 10 + k);
    EXPECT_EQ(w[8 + k].address, 20 + k);
  }
  EXPECT_EQ(ru.size(), 0u);
}

TEST(ReorderUnitTest, GroupIsFourTimesUnits) {
  for (std::size_t b : {1u, 2u, 32u}) {
    EXPECT_EQ(Schedule::build(32 * b, b, Reorder::kSwap4)->group_size(), 4 * b);
  }
}

TEST(PortModelTest, Comparison) {
  const NttPlan plan(find_context(256, 30), 1);
  const auto report = compare_port_models(plan);
  std::map<std::string, PortModelRow> rows;
  for (const auto& r : report.rows) rows.emplace(r.name, r);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows.at("2R2W").conflicts, 0u);
  EXPECT_EQ(rows.at("1R1W+swap2").conflicts, 0u);
  EXPECT_EQ(rows.at("1RW+swap4").conflicts, 0u);
  EXPECT_EQ(rows.at("1RW+swap4").required_buffer_depth, 1u);
  const auto& swap2 = rows.at("1RW+swap2");
  EXPECT_TRUE(swap2.conflicts > 0 || swap2.required_buffer_depth > 1);
  EXPECT_GT(rows.at("1RW").conflicts, 0u);
  EXPECT_GT(rows.at("2R2W").area_proxy, rows.at("1R1W+swap2").area_proxy);
  EXPECT_GT(rows.at("1R1W+swap2").area_proxy, rows.at("1RW+swap4").area_proxy);
  EXPECT_TRUE(nlohmann::json::parse(report.to_json()).contains("rows"));
}

TEST(PortModelTest, SwapTwoWithDualPortScales) {
  for (std::size_t b : {2u, 8u, 32u}) {
    const NttPlan plan(find_context(32 * b, 30), b);
    for (const auto& r : compare_port_models(plan).rows) {
      if (r.name == "1R1W+swap2" || r.name == "1RW+swap4") EXPECT_EQ(r.conflicts, 0u) << r.name;
    }
  }
}

DatapathSchedule encryption_like() {
  using K = DatapathOpKind;
  using G = BankGroup;
  return {
      {K::kSample, G::kBG0, G::kBG0, "mu", 0, false, false},
      {K::kNtt, G::kBG0, G::kBG0, "ntt(mu)"},
      {K::kLoad, G::kBG1, G::kBG0, "pk"},
      {K::kMul, G::kBG1, G::kBG0, "mu*pk"},
      {K::kSample, G::kBG0, G::kBG0, "e", 0, true, false},
      {K::kNtt, G::kBG0, G::kBG0, "ntt(e)"},
      {K::kAdd, G::kBG1, G::kBG0, "+e"},
      {K::kStore, G::kBG1, G::kBG0, "c"},
  };
}

TEST(PipelineTest, EmptyScheduleIsIdle) {
  const auto t = simulate_pipeline({}, BankConfig::for_model(256, 1, 30));
  EXPECT_EQ(t.total_cycles, 0u);
  EXPECT_EQ(t.peak_resident_polys, 0u);
  EXPECT_TRUE(t.events.empty());
}

TEST(PipelineTest, TwoGroupsSuffice) {
  const auto cfg = BankConfig::for_model(1024, 2, 30);
  const auto t = simulate_pipeline(encryption_like(), cfg);
  EXPECT_EQ(t.peak_resident_polys, 2u);
  ASSERT_EQ(t.events.size(), 8u);
  EXPECT_EQ(t.events.back().resident_after, 0u);
  // pk loads into BG1 while mu is transformed in BG0.
  EXPECT_LT(t.events[2].start, t.events[1].end);
  EXPECT_GE(t.events[3].start, t.events[1].end);
  EXPECT_GT(t.total_cycles, 0u);
}

TEST(PipelineTest, RejectsReadsOfFreeGroups) {
  using K = DatapathOpKind;
  using G = BankGroup;
  const auto cfg = BankConfig::for_model(256, 1, 30);
  EXPECT_THROW(simulate_pipeline({{K::kNtt, G::kBG0, G::kBG0, "ntt"}}, cfg),
               edgehe::ScheduleViolation);
  DatapathSchedule after_free = encryption_like();
  after_free.insert(after_free.begin() + 4, {K::kNtt, G::kBG0, G::kBG0, "stale"});
  EXPECT_THROW(simulate_pipeline(after_free, cfg), edgehe::ScheduleViolation);
  EXPECT_THROW(simulate_pipeline({{K::kLoad, G::kBG0, G::kBG0, "a"}, {K::kLoad, G::kBG0, G::kBG0, "b"}},
                                 cfg),
               edgehe::ScheduleViolation);
}

}  // namespace

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

// Command-line front end: key and ciphertext I/O, sampling, transform
// benchmarks, bank simulation and the frame-rate estimator.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "edgehe/banksim.hpp"
#include "edgehe/ckks.hpp"
#include "edgehe/cli.hpp"
#include "edgehe/errors.hpp"
#include "edgehe/keccak.hpp"
#include "edgehe/samplers.hpp"
#include "json.hpp"

namespace {

using namespace edgehe;
using nlohmann::json;

struct ParamFlags {
  std::size_t n = 4096;
  std::size_t limbs = 3;
  int logq = 30;
  int scale_bits = 20;
  std::size_t bfus = 1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--n", n, "Ring degree")->capture_default_str();
    cmd->add_option("--limbs", limbs, "Number of RNS primes")->capture_default_str();
    cmd->add_option("--logq", logq, "Bit width of each prime")->capture_default_str();
    cmd->add_option("--scale-bits", scale_bits, "Fixed-point scale exponent")->capture_default_str();
    cmd->add_option("--bfus", bfus, "Parallel butterfly units")->capture_default_str();
  }
  ckks::SchemeParams params() const {
    return ckks::SchemeParams::create(n, limbs, logq, scale_bits, bfus);
  }
};

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-side CKKS conversion with a banked NTT datapath model"};
  app.require_subcommand(1);

  // keygen
  ParamFlags kg_params;
  std::string kg_seed = "edgehe", kg_out = "keys.bin";
  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  kg_params.add_to(keygen);
  keygen->add_option("--seed", kg_seed, "Seed string (RISE_SEED overrides)");
  keygen->add_option("--out", kg_out, "Key file")->capture_default_str();

  // encrypt
  std::string enc_keys = "keys.bin", enc_in, enc_out = "ct.bin", enc_seed = "edgehe";
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a JSON message");
  encrypt->add_option("--keys", enc_keys, "Key file")->capture_default_str();
  encrypt->add_option("--in", enc_in, "Message JSON (array or {\"values\": [...]})")->required();
  encrypt->add_option("--out", enc_out, "Ciphertext file")->capture_default_str();
  encrypt->add_option("--seed", enc_seed, "Seed string (RISE_SEED overrides)");

  // decrypt
  std::string dec_keys = "keys.bin", dec_in, dec_out;
  bool dec_all = false;
  auto* decrypt = app.add_subcommand("decrypt", "Decrypt and decode a ciphertext");
  decrypt->add_option("--keys", dec_keys, "Key file")->capture_default_str();
  decrypt->add_option("--in", dec_in, "Ciphertext file")->required();
  decrypt->add_option("--out", dec_out, "Decoded JSON (stdout when omitted)");
  decrypt->add_flag("--all-limbs", dec_all, "Decrypt every limb instead of the last");

  // sample
  std::string smp_dist = "binomial", smp_seed = "edgehe";
  std::size_t smp_n = 1024;
  int smp_logq = 30;
  bool smp_coeffs = false;
  auto* sample = app.add_subcommand("sample", "Draw one polynomial from a sampler");
  sample->add_option("--dist", smp_dist, "binomial | ternary | uniform")
      ->check(CLI::IsMember({"binomial", "ternary", "uniform"}))
      ->capture_default_str();
  sample->add_option("--n", smp_n, "Coefficient count")->capture_default_str();
  sample->add_option("--logq", smp_logq, "Prime width for uniform sampling")->capture_default_str();
  sample->add_option("--seed", smp_seed, "Seed string (RISE_SEED overrides)");
  sample->add_flag("--coeffs", smp_coeffs, "Print the coefficients");

  // ntt-bench
  std::size_t nb_n = 4096, nb_bfus = 1, nb_iters = 10;
  int nb_logq = 30;
  std::string nb_trace;
  auto* bench = app.add_subcommand("ntt-bench", "Time the transform and simulate its schedule");
  bench->add_option("--n", nb_n, "Ring degree")->capture_default_str();
  bench->add_option("--logq", nb_logq, "Bit width of the prime")->capture_default_str();
  bench->add_option("--bfus", nb_bfus, "Parallel butterfly units")->capture_default_str();
  bench->add_option("--iters", nb_iters, "Timed transforms")->capture_default_str();
  bench->add_option("--trace", nb_trace, "Bank trace CSV");

  // simulate
  std::size_t sim_n = 1024, sim_bfus = 1;
  int sim_logq = 30;
  std::string sim_port = "1rw", sim_reorder, sim_trace, sim_pipeline;
  auto* simulate = app.add_subcommand("simulate", "Replay the transform against the bank model");
  simulate->add_option("--n", sim_n, "Ring degree")->capture_default_str();
  simulate->add_option("--logq", sim_logq, "Bit width of the prime")->capture_default_str();
  simulate->add_option("--bfus", sim_bfus, "Parallel butterfly units")->capture_default_str();
  simulate->add_option("--port-model", sim_port, "1rw | 1r1w | 2r2w")->capture_default_str();
  simulate->add_option("--reorder", sim_reorder, "swap4 | swap2 | none (default per port model)");
  simulate->add_option("--trace", sim_trace, "Trace CSV output");
  simulate->add_option("--pipeline", sim_pipeline, "Also run the encrypt or decrypt timeline")
      ->check(CLI::IsMember({"encrypt", "decrypt"}));

  // fps-estimate
  ParamFlags fps_params;
  std::string fps_frame = "qqvga", fps_preset;
  double fps_clock = cli::kDefaultClockHz, fps_bw = cli::kBandwidthMaxBps;
  auto* fps = app.add_subcommand("fps-estimate", "Frames per second for encrypted video");
  fps_params.add_to(fps);
  fps->add_option("--frame", fps_frame, "qqvga | qvga | WxH[xBPP]")->capture_default_str();
  fps->add_option("--clock", fps_clock, "Accelerator clock in Hz")->capture_default_str();
  auto* bw_opt = fps->add_option("--bandwidth", fps_bw, "Link rate in bit/s")->capture_default_str();
  fps->add_option("--preset", fps_preset, "5g-max | 5g-min")
      ->check(CLI::IsMember({"5g-max", "5g-min"}))
      ->excludes(bw_opt);

  // run
  std::string run_config, run_out_dir, run_input;
  auto* run = app.add_subcommand("run", "keygen, encrypt, decrypt and check the round trip");
  run->add_option("--config", run_config, "JSON config file");
  run->add_option("--out-dir", run_out_dir, "Artifact directory (overrides config)");
  run->add_option("--in", run_input, "Message JSON (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(cli::ExitCode::kUsage);
  }

  try {
    if (keygen->parsed()) {
      const auto params = kg_params.params();
      const auto keys = ckks::keygen(params, bytes_of(cli::effective_seed(kg_seed)));
      auto out = open_out(kg_out);
      ckks::write_keys(out, keys, params);
      std::cout << json{{"keys", kg_out}, {"n", params.n()}, {"limbs", params.limb_count()},
                        {"log_q", params.log_q()}, {"moduli", params.moduli()}}
                       .dump(2)
                << '\n';
    } else if (encrypt->parsed()) {
      auto in = open_in(enc_keys);
      const auto kf = ckks::read_keys(in);
      const auto values = cli::read_values(enc_in);
      const auto m = ckks::encode_fixed(values, kf.params);
      const auto ct = ckks::encrypt(m, kf.keys, kf.params, bytes_of(cli::effective_seed(enc_seed)));
      auto out = open_out(enc_out);
      ckks::write_ciphertext(out, ct, kf.params);
    } else if (decrypt->parsed()) {
      auto kin = open_in(dec_keys);
      const auto kf = ckks::read_keys(kin);
      auto cin = open_in(dec_in);
      const auto cf = ckks::read_ciphertext(cin);
      const auto mode = dec_all ? ckks::DecryptMode::kAllLimbs : ckks::DecryptMode::kLastLimb;
      const auto plain = ckks::decrypt(cf.ct, kf.keys.s, kf.params, mode);
      const auto values = ckks::decode_fixed(plain, kf.params);
      if (dec_out.empty()) {
        std::cout << json{{"values", values}}.dump() << '\n';
      } else {
        cli::write_values(dec_out, values);
      }
    } else if (sample->parsed()) {
      auto stream = keccak::KeccakSponge::from_seed(bytes_of(cli::effective_seed(smp_seed)));
      sampling::SampledPolynomial p;
      if (smp_dist == "binomial") {
        p = sampling::sample_binomial(stream, smp_n);
      } else if (smp_dist == "ternary") {
        p = sampling::sample_ternary(stream, smp_n);
      } else {
        p = sampling::sample_uniform_mod_q(stream, smp_n, modarith::find_context(smp_n, smp_logq));
      }
      double mean = 0, var = 0;
      for (auto c : p.coeffs) mean += static_cast<double>(c);
      mean /= static_cast<double>(p.n);
      for (auto c : p.coeffs) var += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
      var /= static_cast<double>(p.n);
      json j{{"distribution", sampling::to_string(p.distribution)},
             {"n", p.n},
             {"mean", mean},
             {"variance", var},
             {"permutations", stream.permutations()}};
      if (p.modulus) j["modulus"] = p.modulus;
      if (smp_coeffs) j["coeffs"] = p.coeffs;
      std::cout << j.dump(2) << '\n';
    } else if (bench->parsed()) {
      const ntt::NttPlan plan(modarith::find_context(nb_n, nb_logq), nb_bfus);
      std::mt19937_64 rng(1);
      std::uniform_int_distribution<std::uint64_t> d(0, plan.modulus().value() - 1);
      std::vector<std::uint64_t> a(nb_n);
      for (auto& x : a) x = d(rng);
      const auto t0 = std::chrono::steady_clock::now();
      for (std::size_t i = 0; i < nb_iters; ++i) a = ntt::ntt_swap4(a, plan);
      const auto t1 = std::chrono::steady_clock::now();
      auto cfg = banksim::BankConfig::for_model(nb_n, nb_bfus, plan.modulus().bit_width());
      cfg.record_trace = !nb_trace.empty();
      const auto trace = banksim::simulate_ntt(plan, cfg);
      if (!nb_trace.empty()) {
        auto out = open_out(nb_trace);
        trace.write_csv(out);
      }
      const double us = std::chrono::duration<double, std::micro>(t1 - t0).count() /
                        static_cast<double>(std::max<std::size_t>(1, nb_iters));
      std::cout << json{{"n", nb_n},
                        {"q", plan.modulus().value()},
                        {"bfus", nb_bfus},
                        {"iters", nb_iters},
                        {"wall_us_per_ntt", us},
                        {"simulated_cycles", trace.total_cycles},
                        {"conflicts", trace.conflict_count}}
                       .dump(2)
                << '\n';
    } else if (simulate->parsed()) {
      const auto port = banksim::parse_port_model(sim_port);
      ntt::Reorder reorder = port == banksim::PortModel::k1RW    ? ntt::Reorder::kSwap4
                             : port == banksim::PortModel::k1R1W ? ntt::Reorder::kSwap2
                                                                 : ntt::Reorder::kNone;
      if (sim_reorder == "swap4") {
        reorder = ntt::Reorder::kSwap4;
      } else if (sim_reorder == "swap2") {
        reorder = ntt::Reorder::kSwap2;
      } else if (sim_reorder == "none") {
        reorder = ntt::Reorder::kNone;
      } else if (!sim_reorder.empty()) {
        throw InvalidParams("unknown reorder mode: " + sim_reorder);
      }
      auto cfg = banksim::BankConfig::for_model(sim_n, sim_bfus, sim_logq, port);
      cfg.record_trace = !sim_trace.empty();
      const auto sched = ntt::Schedule::build(sim_n, sim_bfus, reorder);
      auto trace = banksim::simulate_schedule(*sched, cfg);
      if (!sim_pipeline.empty()) {
        const auto params = ckks::SchemeParams::create(sim_n, 1, sim_logq, 20, sim_bfus);
        const auto ops = sim_pipeline == "encrypt" ? cli::encryption_schedule(params)
                                                   : cli::decryption_schedule(params);
        auto pcfg = banksim::BankConfig::for_model(sim_n, sim_bfus, sim_logq);
        trace.peak_resident_polys = banksim::simulate_pipeline(ops, pcfg).peak_resident_polys;
      }
      if (!sim_trace.empty()) {
        auto out = open_out(sim_trace);
        trace.write_csv(out);
      }
      std::cout << trace.summary_json() << '\n';
    } else if (fps->parsed()) {
      if (fps_preset == "5g-max") fps_bw = cli::kBandwidthMaxBps;
      if (fps_preset == "5g-min") fps_bw = cli::kBandwidthMinBps;
      const auto frame = cli::FrameSpec::parse(fps_frame);
      const auto report = cli::fps_estimate(frame, fps_params.params(), fps_clock, fps_bw);
      std::cout << report.to_json() << '\n';
    } else if (run->parsed()) {
      cli::RunConfig cfg;
      if (!run_config.empty()) {
        auto in = open_in(run_config);
        std::stringstream ss;
        ss << in.rdbuf();
        cfg = cli::RunConfig::from_json(ss.str());
      }
      if (!run_out_dir.empty()) cfg.out_dir = run_out_dir;
      if (!run_input.empty()) cfg.input = run_input;
      const auto report = cli::run_pipeline(cfg);
      std::cout << report.to_json() << '\n';
      if (!report.ok) return static_cast<int>(cli::ExitCode::kBoundFailure);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(cli::exit_code_for(e));
  }
  return 0;
}

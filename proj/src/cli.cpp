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

#include "edgehe/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "edgehe/errors.hpp"
#include "json.hpp"

namespace edgehe::cli {

namespace {

using nlohmann::json;

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

int limb_width(const ckks::SchemeParams& params) {
  int bits = 0;
  for (const auto& l : params.limbs()) bits = std::max(bits, l.modulus().bit_width());
  return bits;
}

[[noreturn]] void rethrow_in_stage(const std::string& stage) {
  const std::string prefix = "[" + stage + "] ";
  try {
    throw;
  } catch (const InvalidParams& e) {
    throw InvalidParams(prefix + e.what());
  } catch (const NoPrimeFound& e) {
    throw NoPrimeFound(prefix + e.what());
  } catch (const FormatError& e) {
    throw FormatError(prefix + e.what());
  } catch (const ParamsMismatch& e) {
    throw ParamsMismatch(prefix + e.what());
  } catch (const DomainMismatch& e) {
    throw DomainMismatch(prefix + e.what());
  } catch (const ScaleOverflow& e) {
    throw ScaleOverflow(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(prefix + e.what());
  }
}

template <typename F>
auto stage(const std::string& name, std::vector<std::pair<std::string, double>>& timings, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      timings.emplace_back(
          name, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    } else {
      auto r = f();
      timings.emplace_back(
          name, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
      return r;
    }
  } catch (...) {
    rethrow_in_stage(name);
  }
}

}  // namespace

ExitCode exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidParams*>(&e) || dynamic_cast<const NoPrimeFound*>(&e) ||
      dynamic_cast<const InvalidFrame*>(&e) || dynamic_cast<const ConfigMismatch*>(&e) ||
      dynamic_cast<const ScaleOverflow*>(&e)) {
    return ExitCode::kInvalidParams;
  }
  if (dynamic_cast<const FormatError*>(&e) || dynamic_cast<const ParamsMismatch*>(&e)) {
    return ExitCode::kFormatError;
  }
  return ExitCode::kGeneric;
}

FrameSpec FrameSpec::qqvga() { return {160, 120, 8, Resolution::kQQVGA}; }
FrameSpec FrameSpec::qvga() { return {320, 240, 8, Resolution::kQVGA}; }

FrameSpec FrameSpec::parse(const std::string& s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "qqvga") return qqvga();
  if (lower == "qvga") return qvga();
  static const std::regex custom(R"((\d{1,6})x(\d{1,6})(?:x(\d{1,2}))?)");
  std::smatch m;
  if (!std::regex_match(lower, m, custom)) throw InvalidFrame("unrecognized frame spec: " + s);
  FrameSpec f{static_cast<std::uint32_t>(std::stoul(m[1])), static_cast<std::uint32_t>(std::stoul(m[2])),
              m[3].matched ? static_cast<std::uint32_t>(std::stoul(m[3])) : 8u, Resolution::kCustom};
  if (f.width == 0 || f.height == 0 || f.bits_per_pixel == 0) throw InvalidFrame("empty frame: " + s);
  return f;
}

std::uint64_t FrameSpec::frame_bits() const {
  return std::uint64_t{width} * height * bits_per_pixel;
}

std::string FrameSpec::name() const {
  switch (tag) {
    case Resolution::kQQVGA:
      return "QQVGA";
    case Resolution::kQVGA:
      return "QVGA";
    case Resolution::kCustom:
      break;
  }
  return std::to_string(width) + "x" + std::to_string(height) + "x" + std::to_string(bits_per_pixel);
}

std::string ThroughputReport::to_json() const {
  json j{{"report_version", kReportVersion},
         {"cts_per_frame", cts_per_frame},
         {"ct_bytes", ct_bytes},
         {"frame_ct_bytes_total", frame_ct_bytes_total},
         {"frame_ct_kib_total", static_cast<double>(frame_ct_bytes_total) / 1024.0},
         {"encryption_cycles_per_ct", encryption_cycles_per_ct},
         {"max_fps_compute", max_fps_compute},
         {"max_fps_network", max_fps_network},
         {"max_fps_network_rounded", std::llround(max_fps_network)},
         {"binding", binding},
         {"meets_realtime_band", meets_realtime_band}};
  return j.dump(2);
}

ThroughputReport frame_sizing(const FrameSpec& frame, const ckks::SchemeParams& params,
                              double bandwidth_bps) {
  if (frame.width == 0 || frame.height == 0 || frame.bits_per_pixel == 0) {
    throw InvalidFrame("frame dimensions must be positive");
  }
  if (!(bandwidth_bps > 0)) throw InvalidParams("bandwidth must be positive");
  const std::uint64_t logq = static_cast<std::uint64_t>(limb_width(params));
  const std::uint64_t per_ct = params.n() / 2 * logq;
  ThroughputReport r;
  r.cts_per_frame = (frame.frame_bits() + per_ct - 1) / per_ct;
  r.ct_bytes = params.n() * logq * params.limb_count() * 2 / 8;
  r.frame_ct_bytes_total = r.ct_bytes * r.cts_per_frame;
  r.max_fps_network = bandwidth_bps / (8.0 * static_cast<double>(r.frame_ct_bytes_total));
  return r;
}

banksim::DatapathSchedule encryption_schedule(const ckks::SchemeParams& params) {
  using ckks::Domain;
  using ckks::RnsPolynomial;
  const ckks::KeyPair zero_keys{RnsPolynomial::zero(params, Domain::kNtt),
                                RnsPolynomial::zero(params, Domain::kNtt),
                                RnsPolynomial::zero(params, Domain::kNtt)};
  ckks::Datapath dp(params);
  (void)ckks::encrypt_with(RnsPolynomial::zero(params, Domain::kCoeff), zero_keys, params,
                           ckks::EncryptionRandomness::zero(params.n()), &dp);
  return dp.schedule();
}

banksim::DatapathSchedule decryption_schedule(const ckks::SchemeParams& params) {
  using ckks::Domain;
  using ckks::RnsPolynomial;
  const ckks::Ciphertext ct{RnsPolynomial::zero(params, Domain::kNtt),
                            RnsPolynomial::zero(params, Domain::kNtt), params.id()};
  ckks::Datapath dp(params);
  (void)ckks::decrypt(ct, RnsPolynomial::zero(params, Domain::kNtt), params,
                      ckks::DecryptMode::kLastLimb, &dp);
  return dp.schedule();
}

ThroughputReport fps_estimate(const FrameSpec& frame, const ckks::SchemeParams& params,
                              double clock_hz, double bandwidth_bps) {
  if (!(clock_hz > 0)) throw InvalidParams("clock must be positive");
  ThroughputReport r = frame_sizing(frame, params, bandwidth_bps);
  auto cfg = banksim::BankConfig::for_model(params.n(), params.bfus(), limb_width(params));
  cfg.record_trace = false;
  r.encryption_cycles_per_ct = banksim::simulate_pipeline(encryption_schedule(params), cfg).total_cycles;
  r.max_fps_compute =
      clock_hz / (static_cast<double>(r.encryption_cycles_per_ct) * static_cast<double>(r.cts_per_frame));
  r.binding = r.max_fps_compute < r.max_fps_network ? "compute" : "network";
  r.meets_realtime_band = r.max_fps() >= 15.0;
  return r;
}

RunConfig RunConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParams("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "n") {
        c.n = v.get<std::size_t>();
      } else if (key == "limbs") {
        c.limbs = v.get<std::size_t>();
      } else if (key == "limb_bits") {
        c.limb_bits = v.get<int>();
      } else if (key == "moduli") {
        c.moduli = v.get<std::vector<std::uint64_t>>();
      } else if (key == "scale_bits") {
        c.scale_bits = v.get<int>();
      } else if (key == "bfus") {
        c.bfus = v.get<std::size_t>();
      } else if (key == "seed") {
        c.seed = v.get<std::string>();
      } else if (key == "input") {
        c.input = v.get<std::string>();
      } else if (key == "random_values") {
        c.random_values = v.get<std::size_t>();
      } else if (key == "out_dir") {
        c.out_dir = v.get<std::string>();
      } else if (key == "network_hop") {
        c.network_hop = v.get<bool>();
      } else {
        throw InvalidParams("unknown config key: " + key);
      }
    }
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("bad config value: ") + e.what());
  }
  return c;
}

ckks::SchemeParams RunConfig::params() const {
  if (!moduli.empty()) return ckks::SchemeParams(n, moduli, scale_bits, bfus);
  return ckks::SchemeParams::create(n, limbs, limb_bits, scale_bits, bfus);
}

std::string RunReport::to_json() const {
  json timings = json::object();
  for (const auto& [name, ms] : stage_ms) timings[name] = ms;
  json j{{"report_version", kReportVersion},
         {"ok", ok},
         {"max_error", max_error},
         {"bound", bound},
         {"values", values},
         {"ct_bytes", ct_bytes},
         {"encryption_cycles", encryption_cycles},
         {"decryption_cycles", decryption_cycles},
         {"stage_ms", timings}};
  return j.dump(2);
}

std::vector<double> read_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
    if (j.is_object()) j = j.at("values");
    return j.get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw FormatError("message file " + path + ": " + e.what());
  }
}

void write_values(const std::string& path, const std::vector<double>& values) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << json{{"values", values}}.dump(2) << '\n';
}

std::string effective_seed(const std::string& configured) {
  const char* env = std::getenv("RISE_SEED");
  return env && *env ? std::string(env) : configured;
}

RunReport run_pipeline(const RunConfig& cfg) {
  RunReport report;
  auto& t = report.stage_ms;
  namespace fs = std::filesystem;

  const ckks::SchemeParams params = stage("params", t, [&] { return cfg.params(); });
  const std::string seed = effective_seed(cfg.seed);
  fs::create_directories(cfg.out_dir);
  const fs::path dir(cfg.out_dir);

  const std::vector<double> values = stage("input", t, [&] {
    if (!cfg.input.empty()) return read_values(cfg.input);
    std::seed_seq seq(seed.begin(), seed.end());
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> d(-100.0, 100.0);
    std::vector<double> v(std::min(cfg.random_values, params.n()));
    for (auto& x : v) x = d(rng);
    return v;
  });
  report.values = values.size();

  const ckks::KeyPair keys = stage("keygen", t, [&] { return ckks::keygen(params, bytes_of(seed)); });
  stage("write-keys", t, [&] {
    std::ofstream out(dir / "keys.bin", std::ios::binary);
    ckks::write_keys(out, keys, params);
  });
  const ckks::RnsPolynomial m = stage("encode", t, [&] { return ckks::encode_fixed(values, params); });
  ckks::Datapath enc_dp(params);
  ckks::Ciphertext ct = stage("encrypt", t, [&] {
    return ckks::encrypt(m, keys, params, bytes_of(seed + "/encrypt"), &enc_dp);
  });

  stage("network", t, [&] {
    std::stringstream wire;
    ckks::write_ciphertext(wire, ct, params);
    report.ct_bytes = wire.str().size();
    std::ofstream(dir / "ct.bin", std::ios::binary) << wire.str();
    if (cfg.network_hop) {
      std::ifstream in(dir / "ct.bin", std::ios::binary);
      auto parsed = ckks::read_ciphertext(in, params.bfus());
      if (parsed.params.id() != params.id()) throw ParamsMismatch("parameters changed in transit");
      ct = std::move(parsed.ct);
    }
  });

  ckks::Datapath dec_dp(params);
  const ckks::RnsPolynomial plain =
      stage("decrypt", t, [&] { return ckks::decrypt(ct, keys.s, params, ckks::DecryptMode::kLastLimb, &dec_dp); });
  const std::vector<double> decoded = stage("decode", t, [&] {
    auto all = ckks::decode_fixed(plain, params);
    all.resize(values.size());
    return all;
  });

  stage("simulate", t, [&] {
    auto bank = banksim::BankConfig::for_model(params.n(), params.bfus(), limb_width(params));
    bank.record_trace = false;
    report.encryption_cycles = banksim::simulate_pipeline(enc_dp.schedule(), bank).total_cycles;
    report.decryption_cycles = banksim::simulate_pipeline(dec_dp.schedule(), bank).total_cycles;
  });

  report.bound = (ckks::noise_bound(params.n()) + 1.0) * std::ldexp(1.0, -params.scale_bits());
  for (std::size_t i = 0; i < values.size(); ++i) {
    report.max_error = std::max(report.max_error, std::fabs(decoded[i] - values[i]));
  }
  report.ok = report.max_error <= report.bound;

  write_values((dir / "decoded.json").string(), decoded);
  std::ofstream(dir / "report.json") << report.to_json() << '\n';
  return report;
}

}  // namespace edgehe::cli

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

#ifndef EDGEHE_CLI_HPP_
#define EDGEHE_CLI_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string>
#include <vector>

#include "edgehe/ckks.hpp"

namespace edgehe::cli {

inline constexpr int kReportVersion = 1;

enum class ExitCode : int {
  kOk = 0,
  kGeneric = 1,
  kInvalidParams = 2,
  kFormatError = 3,
  kBoundFailure = 4,
  kUsage = 64,
};

/// Maps a library error class to its process exit code.
ExitCode exit_code_for(const std::exception& e);

enum class Resolution { kQQVGA, kQVGA, kCustom };

struct FrameSpec {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t bits_per_pixel = 8;
  Resolution tag = Resolution::kCustom;

  static FrameSpec qqvga();
  static FrameSpec qvga();
  /// "qqvga", "qvga" or "WxH[xBPP]". Throws InvalidFrame.
  static FrameSpec parse(const std::string& s);

  std::uint64_t frame_bits() const;
  std::string name() const;
};

/// Mid-band 5G bit rates back-computed from the reported transfer ceilings.
inline constexpr double kBandwidthMaxBps = 900e6;
inline constexpr double kBandwidthMinBps = 8.6e6;
inline constexpr double kDefaultClockHz = 1e9;

struct ThroughputReport {
  std::uint64_t cts_per_frame = 0;
  std::uint64_t ct_bytes = 0;
  std::uint64_t frame_ct_bytes_total = 0;
  std::uint64_t encryption_cycles_per_ct = 0;
  double max_fps_compute = 0;
  double max_fps_network = 0;
  std::string binding;  // "compute" or "network"
  bool meets_realtime_band = false;  // achievable rate >= 15 FPS

  double max_fps() const { return std::min(max_fps_compute, max_fps_network); }
  std::string to_json() const;
};

/// Ciphertexts per frame: ceil(frame_bits / ((n/2) log q)); size of one
/// ciphertext: n log q limbs * 2 bits for the (c0, c1) pair. log q is the
/// limb width. Compute FPS comes from the simulated encryption datapath.
/// Throws InvalidFrame or InvalidParams.
ThroughputReport fps_estimate(const FrameSpec& frame, const ckks::SchemeParams& params,
                              double clock_hz = kDefaultClockHz,
                              double bandwidth_bps = kBandwidthMaxBps);

/// Same without the cycle simulation (compute fields left zero).
ThroughputReport frame_sizing(const FrameSpec& frame, const ckks::SchemeParams& params,
                              double bandwidth_bps);

/// Datapath schedules of one full encryption / decryption at these params.
banksim::DatapathSchedule encryption_schedule(const ckks::SchemeParams& params);
banksim::DatapathSchedule decryption_schedule(const ckks::SchemeParams& params);

struct RunConfig {
  std::size_t n = 4096;
  std::size_t limbs = 3;
  int limb_bits = 30;
  std::vector<std::uint64_t> moduli;  // overrides limbs / limb_bits when set
  int scale_bits = 20;
  std::size_t bfus = 1;
  std::string seed = "edgehe";
  std::string input;        // JSON file with the message values; random when empty
  std::size_t random_values = 64;
  std::string out_dir = ".";
  bool network_hop = true;  // serialize and re-read the ciphertext

  /// Parses the JSON config text. Unknown keys raise InvalidParams.
  static RunConfig from_json(const std::string& text);
  ckks::SchemeParams params() const;
};

struct RunReport {
  bool ok = false;
  double max_error = 0;
  double bound = 0;
  std::size_t values = 0;
  std::uint64_t ct_bytes = 0;
  std::uint64_t encryption_cycles = 0;
  std::uint64_t decryption_cycles = 0;
  std::vector<std::pair<std::string, double>> stage_ms;
  std::string to_json() const;
};

/// keygen -> encode -> encrypt -> optional serialize/parse hop -> decrypt ->
/// decode. Writes keys.bin, ct.bin, decoded.json and report.json to
/// out_dir. Errors carry the failing stage in their message and keep their
/// class.
RunReport run_pipeline(const RunConfig& cfg);

/// Reads a message file: a JSON array of numbers or {"values": [...]}.
std::vector<double> read_values(const std::string& path);
void write_values(const std::string& path, const std::vector<double>& values);

/// Applies RISE_SEED when set.
std::string effective_seed(const std::string& configured);

}  // namespace edgehe::cli

#endif  // EDGEHE_CLI_HPP_

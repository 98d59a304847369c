// Copyright 2026 The pqrng Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQRNG_RUN_CONFIG_HPP_
#define PQRNG_RUN_CONFIG_HPP_

// Run configuration and its JSON form. Schema (all keys optional, defaults
// shown; unknown keys are rejected):
//
//   {
//     "source":   {"kind": "coherent", "mean_photons": 6.0,
//                  "pmf": [..], "pmf_file": "path"},
//     "detector": {"kind": "ideal", "efficiency": 1.0, "ports": 8,
//                  "dark_prob": 0.0, "max_count": 6},
//     "pulses": 1000000,
//     "seed": 1,
//     "debias": false,
//     "format": "raw",
//     "out": "bits.bin",
//     "report": "",
//     "workers": 0,
//     "analysis": {"monobit": true, "runs": true, "block_frequency": true,
//                  "block_len": 128, "serial_lags": [1, 2, 8]},
//     "provenance": {..}
//   }
//
// "provenance" is written by `generate` into its metadata file and ignored on
// input, so a metadata file loads back as the config that produced it.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "pqrng/bitstream_io.hpp"
#include "pqrng/detector_models.hpp"
#include "pqrng/photon_statistics.hpp"
#include "pqrng/randomness_analysis.hpp"

namespace pqrng {

struct SourceConfig {
  SourceKind kind = SourceKind::Coherent;
  double mean_photons = 6.0;
  std::vector<double> pmf;  // Custom only; filled from pmf_file on load
  std::string pmf_file;
};

struct DetectorConfig {
  DetectorKind kind = DetectorKind::Ideal;
  double efficiency = 1.0;
  std::uint64_t ports = 8;
  double dark_prob = 0.0;
  std::uint64_t max_count = kDefaultMaxCount;
};

struct RunConfig {
  SourceConfig source;
  DetectorConfig detector;
  std::uint64_t pulses = 1'000'000;
  std::uint64_t seed = 1;
  bool debias = false;
  BitFormat format = BitFormat::Raw;
  std::string out = "bits.bin";
  std::string report;
  unsigned workers = 0;
  AnalysisOptions analysis;

  // Checks every parameter domain; throws ParameterError.
  void validate() const;
  PhotonDistribution make_source() const;
  DetectorModel make_detector() const;
};

// Throws ParameterError on unknown keys, wrong types or invalid values. A
// relative pmf_file resolves against base_dir.
RunConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir = {});
// Omits `workers`, which does not affect the output.
nlohmann::json config_to_json(const RunConfig& config);
// Reads a JSON config; a relative pmf_file resolves against the config's
// directory.
RunConfig load_config(const std::filesystem::path& path);

// Loads source.pmf from source.pmf_file when the latter is set.
void resolve_pmf_file(RunConfig& config,
                      const std::filesystem::path& base_dir = {});

// Whitespace- or comma-separated probabilities; '#' starts a comment.
std::vector<double> parse_pmf_text(std::string_view text);

}  // namespace pqrng

#endif  // PQRNG_RUN_CONFIG_HPP_

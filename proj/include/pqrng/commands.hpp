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

#ifndef PQRNG_COMMANDS_HPP_
#define PQRNG_COMMANDS_HPP_

// The `pqrng` command-line tool. Each subcommand is a thin layer over the
// library; results go to stdout, progress and summaries to stderr.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pqrng/run_config.hpp"

namespace pqrng {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitVerification = 3,
};

// Metadata for a bitstream written to `path` lives at `path + ".json"`.
std::string metadata_path_for(const std::string& bits_path);

// Writes the bitstream, its metadata document and, when config.report is
// set, the analysis report.
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

struct AnalyzeRequest {
  std::string input;
  std::optional<BitFormat> format;  // default: from metadata, else raw
  std::optional<std::size_t> bit_count;
  // Metadata document of the stream; empty looks for input + ".json".
  std::string metadata;
  std::optional<SourceConfig> source;
  std::optional<DetectorConfig> detector;
  std::string report;  // empty: JSON to stdout
  AnalysisOptions analysis;
};

int cmd_analyze(const AnalyzeRequest& request, std::ostream& out,
                std::ostream& err);

struct SweepRequest {
  SourceKind kind = SourceKind::Coherent;
  std::vector<double> grid;
  DetectorConfig detector;
  std::string out;  // empty: CSV to stdout
};

int cmd_sweep(const SweepRequest& request, std::ostream& out, std::ostream& err);

int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream& err);

// "0:16:1" (inclusive range) or "0,0.5,1". Throws ParameterError.
std::vector<double> parse_grid(const std::string& text);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace pqrng

#endif  // PQRNG_COMMANDS_HPP_

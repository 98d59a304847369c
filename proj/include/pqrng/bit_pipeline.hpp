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

#ifndef PQRNG_BIT_PIPELINE_HPP_
#define PQRNG_BIT_PIPELINE_HPP_

// Pulse train -> detector -> parity bit -> optional von Neumann debiasing.
//
// Pulses are processed in fixed chunks of kChunkPulses; chunk c draws from
// SeededGenerator(master_seed, c). Chunks run in parallel and are merged in
// chunk order, so the output depends only on the inputs and the seed, never
// on the worker count.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "pqrng/detector_models.hpp"
#include "pqrng/packed_bits.hpp"
#include "pqrng/photon_statistics.hpp"

namespace pqrng {

inline constexpr std::uint64_t kChunkPulses = 65536;
inline constexpr std::string_view kBitConvention = "even=0,odd=1";
inline constexpr std::string_view kPulseModel =
    "i.i.d. pulses; no dead time, afterpulsing or pulse-to-pulse correlation";

// Even count -> 0, odd count -> 1.
constexpr std::uint8_t parity_bit(std::uint64_t reported_count) noexcept {
  return static_cast<std::uint8_t>(reported_count & 1u);
}

// Disjoint consecutive pairs: 01 -> 0, 10 -> 1, 00 and 11 dropped. A trailing
// unpaired bit is dropped.
PackedBits von_neumann_debias(const PackedBits& bits);

struct PulseRecord {
  std::uint64_t index = 0;
  std::uint64_t true_count = 0;
  std::uint64_t reported_count = 0;
  std::uint8_t bit = 0;

  bool operator==(const PulseRecord&) const = default;
};

struct StreamMetadata {
  PhotonDistribution source = PhotonDistribution::coherent(0.0);
  DetectorModel detector = DetectorModel::ideal();
  std::uint64_t master_seed = 0;
  bool debiased = false;
  std::uint64_t pulses_consumed = 0;
  std::uint64_t raw_bits = 0;
  std::uint64_t bits_produced = 0;
  std::uint64_t chunk_pulses = kChunkPulses;
};

struct BitStream {
  PackedBits bits;
  StreamMetadata meta;
};

struct PipelineOptions {
  bool debias = false;
  bool keep_records = false;
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
  // Called from worker threads after each finished chunk with
  // (pulses done, pulses total); must be thread-safe.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct PipelineResult {
  BitStream stream;
  std::vector<PulseRecord> records;  // empty unless keep_records
};

// Throws ParameterError for n_pulses == 0.
PipelineResult run_pipeline(const PhotonDistribution& dist,
                            const DetectorModel& model, std::uint64_t n_pulses,
                            std::uint64_t master_seed,
                            const PipelineOptions& options = {});

}  // namespace pqrng

#endif  // PQRNG_BIT_PIPELINE_HPP_

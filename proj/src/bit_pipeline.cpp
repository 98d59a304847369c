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

#include "pqrng/bit_pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "pqrng/errors.hpp"
#include "pqrng/source_models.hpp"

namespace pqrng {
namespace {

struct ChunkOutput {
  PackedBits bits;
  std::vector<PulseRecord> records;
};

ChunkOutput run_chunk(const PhotonSampler& sampler, const DetectorModel& model,
                      std::uint64_t master_seed, std::uint64_t chunk,
                      std::uint64_t n_pulses, bool keep_records) {
  SeededGenerator gen(master_seed, chunk);
  DetectorScratch scratch;
  const std::uint64_t first = chunk * kChunkPulses;
  const std::uint64_t count = std::min(kChunkPulses, n_pulses - first);

  ChunkOutput out;
  out.bits.reserve(count);
  if (keep_records) out.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t true_n = sampler(gen);
    const std::uint64_t reported = detect_count(model, true_n, gen, scratch);
    const std::uint8_t bit = parity_bit(reported);
    out.bits.push_back(bit != 0);
    if (keep_records) {
      out.records.push_back({first + i, true_n, reported, bit});
    }
  }
  return out;
}

}  // namespace

PackedBits von_neumann_debias(const PackedBits& bits) {
  PackedBits out;
  out.reserve(bits.size() / 4);
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
    const bool first = bits[i];
    if (first != bits[i + 1]) out.push_back(first);
  }
  return out;
}

PipelineResult run_pipeline(const PhotonDistribution& dist,
                            const DetectorModel& model, std::uint64_t n_pulses,
                            std::uint64_t master_seed,
                            const PipelineOptions& options) {
  if (n_pulses == 0) throw ParameterError("pulse count must be >= 1");

  const std::uint64_t n_chunks = (n_pulses + kChunkPulses - 1) / kChunkPulses;
  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_chunks));

  const PhotonSampler sampler(dist);
  std::vector<ChunkOutput> chunks(n_chunks);
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> pulses_done{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      for (std::uint64_t c = next_chunk++; c < n_chunks; c = next_chunk++) {
        chunks[c] = run_chunk(sampler, model, master_seed, c, n_pulses,
                              options.keep_records);
        const std::uint64_t done = pulses_done += chunks[c].bits.size();
        if (options.progress) options.progress(done, n_pulses);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_chunk = n_chunks;
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  PipelineResult result;
  PackedBits raw;
  raw.reserve(n_pulses);
  for (auto& chunk : chunks) {
    raw.append(chunk.bits);
    if (options.keep_records) {
      result.records.insert(result.records.end(), chunk.records.begin(),
                            chunk.records.end());
    }
    chunk = {};
  }

  StreamMetadata& meta = result.stream.meta;
  meta.source = dist;
  meta.detector = model;
  meta.master_seed = master_seed;
  meta.debiased = options.debias;
  meta.pulses_consumed = n_pulses;
  meta.raw_bits = raw.size();
  result.stream.bits = options.debias ? von_neumann_debias(raw) : std::move(raw);
  meta.bits_produced = result.stream.bits.size();
  return result;
}

}  // namespace pqrng

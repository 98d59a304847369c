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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "pqrng/errors.hpp"
#include "pqrng/packed_bits.hpp"
#include "pqrng/source_models.hpp"

namespace pqrng {
namespace {

TEST(PackedBits, MsbFirstLayoutAndZeroPadding) {
  const PackedBits bits{1, 0, 1, 1, 0, 0, 0, 0, 1, 1};
  EXPECT_EQ(bits.size(), 10u);
  ASSERT_EQ(bits.bytes().size(), 2u);
  EXPECT_EQ(bits.bytes()[0], 0xB0);
  EXPECT_EQ(bits.bytes()[1], 0xC0);
  EXPECT_EQ(bits.count_ones(), 5u);
  EXPECT_TRUE(bits[0]);
  EXPECT_FALSE(bits[1]);
  EXPECT_TRUE(bits[9]);
}

TEST(PackedBits, FromBytesClearsBitsPastCount) {
  const auto bits = PackedBits::from_bytes({0xFF, 0xFF}, 12);
  EXPECT_EQ(bits.size(), 12u);
  EXPECT_EQ(bits.bytes()[1], 0xF0);
  EXPECT_EQ(bits.count_ones(), 12u);
  EXPECT_EQ(bits, (PackedBits{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST(PackedBits, UnpackAndAppendRoundTrip) {
  SeededGenerator g(1, 0);
  for (std::size_t a_len : {0u, 3u, 8u, 13u, 64u}) {
    for (std::size_t b_len : {0u, 1u, 7u, 16u, 21u}) {
      std::vector<std::uint8_t> a(a_len), b(b_len);
      for (auto& x : a) x = g.bernoulli(0.5);
      for (auto& x : b) x = g.bernoulli(0.5);
      auto joined = PackedBits::from_bits(a);
      joined.append(PackedBits::from_bits(b));
      std::vector<std::uint8_t> expected = a;
      expected.insert(expected.end(), b.begin(), b.end());
      EXPECT_EQ(joined.unpack(), expected);
      EXPECT_EQ(joined, PackedBits::from_bits(expected));
    }
  }
}

TEST(ParityBit, EvenIsZeroOddIsOne) {
  EXPECT_EQ(parity_bit(0), 0);
  EXPECT_EQ(parity_bit(1), 1);
  EXPECT_EQ(parity_bit(2), 0);
  EXPECT_EQ(parity_bit(7), 1);
  EXPECT_EQ(parity_bit(1ull << 63), 0);
}

TEST(VonNeumann, Example) {
  EXPECT_EQ(von_neumann_debias(PackedBits{0, 1, 1, 0, 1, 1, 0, 0}),
            (PackedBits{0, 1}));
}

TEST(VonNeumann, EmptyAndOddLengthInputs) {
  EXPECT_TRUE(von_neumann_debias(PackedBits{}).empty());
  EXPECT_TRUE(von_neumann_debias(PackedBits{1}).empty());
  EXPECT_EQ(von_neumann_debias(PackedBits{1, 0, 1}), (PackedBits{1}));
}

TEST(VonNeumann, AllFourBitInputs) {
  // Pairs map 00 -> -, 01 -> 0, 10 -> 1, 11 -> -.
  const std::vector<std::vector<int>> pair_out{{}, {0}, {1}, {}};
  for (int v = 0; v < 16; ++v) {
    const int hi = v >> 2, lo = v & 3;
    PackedBits in{(v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1};
    PackedBits expected;
    for (int b : pair_out[hi]) expected.push_back(b);
    for (int b : pair_out[lo]) expected.push_back(b);
    EXPECT_EQ(von_neumann_debias(in), expected) << v;
  }
}

// For i.i.d. Bernoulli(p) input, each output bit is 0 or 1 with weight
// p(1-p) each; summing exactly over all 8-bit inputs shows the output is
// balanced position by position.
TEST(VonNeumann, ExactlyUnbiasedOnIidInput) {
  for (double p : {0.1, 0.37, 0.9}) {
    std::vector<double> ones(4, 0.0), total(4, 0.0);
    for (int v = 0; v < 256; ++v) {
      PackedBits in;
      double w = 1.0;
      for (int i = 7; i >= 0; --i) {
        const bool b = (v >> i) & 1;
        in.push_back(b);
        w *= b ? p : 1 - p;
      }
      const auto out = von_neumann_debias(in);
      for (std::size_t i = 0; i < out.size(); ++i) {
        total[i] += w;
        if (out[i]) ones[i] += w;
      }
    }
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(ones[i], total[i] / 2, 1e-14) << p << ' ' << i;
    }
  }
}

TEST(Pipeline, RejectsZeroPulses) {
  EXPECT_THROW(run_pipeline(PhotonDistribution::coherent(1.0),
                            DetectorModel::ideal(), 0, 1),
               ParameterError);
}

TEST(Pipeline, VacuumGivesAllZeros) {
  const auto r = run_pipeline(PhotonDistribution::coherent(0.0),
                              DetectorModel::ideal(), 100000, 1);
  EXPECT_EQ(r.stream.bits.size(), 100000u);
  EXPECT_EQ(r.stream.bits.count_ones(), 0u);
}

TEST(Pipeline, CoherentSixIsBalanced) {
  const auto r = run_pipeline(PhotonDistribution::coherent(6.0),
                              DetectorModel::ideal(), 1000000, 1);
  EXPECT_NEAR(r.stream.bits.count_ones() / 1e6, 0.5, 0.002);
}

TEST(Pipeline, MetadataDescribesRun) {
  PipelineOptions opt;
  opt.debias = true;
  const auto src = PhotonDistribution::thermal(1.5);
  const auto det = DetectorModel::multiplexed(4, 0.9, 0.01);
  const auto r = run_pipeline(src, det, 200001, 99, opt);
  const auto& m = r.stream.meta;
  EXPECT_EQ(m.source.kind(), SourceKind::Thermal);
  EXPECT_EQ(m.source.mean_photons(), 1.5);
  EXPECT_EQ(m.detector, det);
  EXPECT_EQ(m.master_seed, 99u);
  EXPECT_TRUE(m.debiased);
  EXPECT_EQ(m.pulses_consumed, 200001u);
  EXPECT_EQ(m.raw_bits, 200001u);
  EXPECT_EQ(m.bits_produced, r.stream.bits.size());
  EXPECT_EQ(m.chunk_pulses, kChunkPulses);
}

TEST(Pipeline, OutputIndependentOfWorkerCount) {
  const auto src = PhotonDistribution::coherent(2.0);
  const auto det = DetectorModel::multiplexed(8, 0.8, 0.001);
  for (bool debias : {false, true}) {
    PipelineOptions one;
    one.workers = 1;
    one.debias = debias;
    PipelineOptions many = one;
    many.workers = 8;
    const auto a = run_pipeline(src, det, 5 * kChunkPulses + 123, 7, one);
    const auto b = run_pipeline(src, det, 5 * kChunkPulses + 123, 7, many);
    EXPECT_EQ(a.stream.bits, b.stream.bits);
  }
}

TEST(Pipeline, DifferentSeedsDiffer) {
  const auto src = PhotonDistribution::coherent(2.0);
  const auto a = run_pipeline(src, DetectorModel::ideal(), 10000, 1);
  const auto b = run_pipeline(src, DetectorModel::ideal(), 10000, 2);
  EXPECT_NE(a.stream.bits, b.stream.bits);
}

TEST(Pipeline, RecordsReproduceTheStream) {
  PipelineOptions opt;
  opt.keep_records = true;
  opt.debias = true;
  const auto src = PhotonDistribution::coherent(0.7);
  const auto det = DetectorModel::saturating(0.9, 2);
  const std::uint64_t n = kChunkPulses + 500;
  const auto r = run_pipeline(src, det, n, 31, opt);
  ASSERT_EQ(r.records.size(), n);
  PackedBits raw;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto& rec = r.records[i];
    ASSERT_EQ(rec.index, i);
    ASSERT_EQ(rec.bit, parity_bit(rec.reported_count));
    ASSERT_LE(rec.reported_count, std::min<std::uint64_t>(rec.true_count, 2));
    raw.push_back(rec.bit);
  }
  EXPECT_EQ(von_neumann_debias(raw), r.stream.bits);
}

TEST(Pipeline, ChunkReplaysFromItsOwnStream) {
  PipelineOptions opt;
  opt.keep_records = true;
  const auto src = PhotonDistribution::coherent(5.0);
  const auto det = DetectorModel::multiplexed(4, 0.5, 0.02);
  const auto r = run_pipeline(src, det, 2 * kChunkPulses + 10, 12, opt);
  SeededGenerator gen(12, 2);
  const PhotonSampler sampler(src);
  DetectorScratch scratch;
  for (std::uint64_t i = 2 * kChunkPulses; i < r.records.size(); ++i) {
    const auto true_n = sampler(gen);
    const auto reported = detect_count(det, true_n, gen, scratch);
    ASSERT_EQ(r.records[i].true_count, true_n);
    ASSERT_EQ(r.records[i].reported_count, reported);
  }
}

TEST(Pipeline, ProgressReachesTotal) {
  std::atomic<std::uint64_t> last{0};
  std::atomic<int> calls{0};
  PipelineOptions opt;
  opt.workers = 2;
  opt.progress = [&](std::uint64_t done, std::uint64_t total) {
    EXPECT_LE(done, total);
    ++calls;
    std::uint64_t prev = last.load();
    while (done > prev && !last.compare_exchange_weak(prev, done)) {
    }
  };
  run_pipeline(PhotonDistribution::coherent(1.0), DetectorModel::ideal(),
               3 * kChunkPulses + 1, 1, opt);
  EXPECT_EQ(calls.load(), 4);
  EXPECT_EQ(last.load(), 3 * kChunkPulses + 1);
}

TEST(Pipeline, FractionOfOnesMatchesOddProbability) {
  constexpr std::uint64_t kPulses = 1000000;
  for (double mean : {0.5, 1.0, 2.0, 6.0}) {
    const auto src = PhotonDistribution::coherent(mean);
    const double p_odd = even_odd_probabilities(src).odd;
    const auto r = run_pipeline(src, DetectorModel::ideal(), kPulses,
                                static_cast<std::uint64_t>(mean * 100));
    const double se = std::sqrt(p_odd * (1 - p_odd) / kPulses);
    EXPECT_NEAR(r.stream.bits.count_ones() / double(kPulses), p_odd, 4 * se)
        << mean;
  }
}

TEST(Pipeline, DebiasedLowMeanStreamIsBalanced) {
  PipelineOptions opt;
  opt.debias = true;
  constexpr std::uint64_t kPulses = 1000000;
  const auto src = PhotonDistribution::coherent(0.5);
  const auto r = run_pipeline(src, DetectorModel::ideal(), kPulses, 5, opt);
  const double p = even_odd_probabilities(src).odd;
  const double expected_len = kPulses / 2 * 2 * p * (1 - p);
  const double n_out = r.stream.bits.size();
  EXPECT_NEAR(n_out, expected_len, 4 * std::sqrt(expected_len));
  EXPECT_NEAR(r.stream.bits.count_ones() / n_out, 0.5,
              4 * std::sqrt(0.25 / n_out));
}

}  // namespace
}  // namespace pqrng

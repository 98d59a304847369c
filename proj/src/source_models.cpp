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

#include "pqrng/source_models.hpp"

#include <algorithm>
#include <cmath>

#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

// Domain tag mixed into every seed sequence.
constexpr std::uint32_t kStreamTag = 0x70617269u;

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_id) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed),
      static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream_id),
      static_cast<std::uint32_t>(stream_id >> 32),
      kStreamTag,
  };
  return std::mt19937_64(seq);
}

}  // namespace

SeededGenerator::SeededGenerator(std::uint64_t master_seed,
                                 std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(make_engine(master_seed, stream_id)) {}

std::uint64_t SeededGenerator::bounded(std::uint64_t range) {
  if (range <= 1) return 0;
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

PhotonSampler::PhotonSampler(const PhotonDistribution& dist)
    : dist_(dist), mean_(dist.mean_photons()) {
  switch (dist_.kind()) {
    case SourceKind::Coherent:
    case SourceKind::PhaseAveragedCoherent:
      exp_neg_mean_ = std::exp(-mean_);
      if (mean_ >= kPoissonPtrsThreshold) {
        log_mean_ = std::log(mean_);
        b_ = 0.931 + 2.53 * std::sqrt(mean_);
        a_ = -0.059 + 0.02483 * b_;
        inv_alpha_ = 1.1239 + 1.1328 / (b_ - 3.4);
        v_r_ = 0.9277 - 3.6224 / (b_ - 2.0);
      }
      break;
    case SourceKind::Thermal:
      if (mean_ > 0.0) log_ratio_ = std::log1p(-1.0 / (1.0 + mean_));
      break;
    case SourceKind::Custom:
      break;
  }
}

std::uint64_t PhotonSampler::operator()(SeededGenerator& gen) const {
  switch (dist_.kind()) {
    case SourceKind::Coherent:
    case SourceKind::PhaseAveragedCoherent:
      if (mean_ == 0.0) return 0;
      return mean_ < kPoissonPtrsThreshold ? poisson_inversion(gen)
                                           : poisson_ptrs(gen);
    case SourceKind::Thermal:
      return mean_ == 0.0 ? 0 : geometric(gen);
    case SourceKind::Custom:
      return table_lookup(gen);
  }
  return 0;
}

std::uint64_t PhotonSampler::poisson_inversion(SeededGenerator& gen) const {
  // For n̄ < 10 the search ends well before 100 with overwhelming
  // probability; a u that rounding pushes past the accumulated CDF is
  // redrawn.
  constexpr std::uint64_t kSearchLimit = 200;
  for (;;) {
    const double u = gen.uniform();
    double p = exp_neg_mean_;
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && k < kSearchLimit) {
      ++k;
      p *= mean_ / static_cast<double>(k);
      cdf += p;
    }
    if (k < kSearchLimit) return k;
  }
}

std::uint64_t PhotonSampler::poisson_ptrs(SeededGenerator& gen) const {
  for (;;) {
    const double u = gen.uniform() - 0.5;
    const double v = gen.uniform_positive();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a_ / us + b_) * u + mean_ + 0.43);
    if (us >= 0.07 && v <= v_r_) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha_ / (a_ / (us * us) + b_));
    const double rhs = -mean_ + k * log_mean_ - std::lgamma(k + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(k);
  }
}

std::uint64_t PhotonSampler::geometric(SeededGenerator& gen) const {
  // P(floor(log u / log q) >= k) = P(u <= q^k) = q^k for u on (0, 1].
  const double u = gen.uniform_positive();
  return static_cast<std::uint64_t>(std::floor(std::log(u) / log_ratio_));
}

std::uint64_t PhotonSampler::table_lookup(SeededGenerator& gen) const {
  const auto cdf = dist_.cdf_table();
  const double u = gen.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) return cdf.size() - 1;
  return static_cast<std::uint64_t>(it - cdf.begin());
}

std::uint64_t sample_photon_number(const PhotonDistribution& dist,
                                   SeededGenerator& gen) {
  return PhotonSampler(dist)(gen);
}

std::vector<std::uint64_t> sample_pulse_train(const PhotonDistribution& dist,
                                              std::uint64_t count,
                                              SeededGenerator& gen) {
  if (count == 0) throw ParameterError("pulse count must be >= 1");
  const PhotonSampler sampler(dist);
  std::vector<std::uint64_t> out(count);
  for (auto& n : out) n = sampler(gen);
  return out;
}

}  // namespace pqrng

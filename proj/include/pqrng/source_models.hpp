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

#ifndef PQRNG_SOURCE_MODELS_HPP_
#define PQRNG_SOURCE_MODELS_HPP_

// Seeded sampling of per-pulse photon numbers.
//
// The simulator is pseudo-random: a physical deployment replaces this module
// with the light source and detector hardware. Every stream is a pure
// function of (master_seed, stream_id), so any run can be replayed exactly.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pqrng/photon_statistics.hpp"

namespace pqrng {

// One logical random stream. Not shareable across threads; give each worker
// its own generator derived from (master_seed, chunk index).
class SeededGenerator {
 public:
  using result_type = std::uint64_t;

  SeededGenerator(std::uint64_t master_seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1]; safe to take the log of.
  double uniform_positive() { return 1.0 - uniform(); }
  // Uniform integer in [0, range), unbiased (Lemire's multiply-and-reject).
  std::uint64_t bounded(std::uint64_t range);
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// Draws photon numbers from a fixed distribution. Construction precomputes
// the sampler constants, so reuse one instance across a pulse train.
//
//   Coherent, phase-averaged: Poisson. Sequential-search inversion for
//     n̄ < 10, Hörmann's transformed rejection (PTRS) above.
//   Thermal: geometric with success probability 1/(1+n̄), by inversion.
//   Custom: inverse CDF over the table.
class PhotonSampler {
 public:
  explicit PhotonSampler(const PhotonDistribution& dist);

  std::uint64_t operator()(SeededGenerator& gen) const;

  const PhotonDistribution& distribution() const noexcept { return dist_; }

 private:
  std::uint64_t poisson_inversion(SeededGenerator& gen) const;
  std::uint64_t poisson_ptrs(SeededGenerator& gen) const;
  std::uint64_t geometric(SeededGenerator& gen) const;
  std::uint64_t table_lookup(SeededGenerator& gen) const;

  PhotonDistribution dist_;
  double mean_ = 0.0;
  double exp_neg_mean_ = 0.0;
  double log_mean_ = 0.0;
  double log_ratio_ = 0.0;  // log(n̄/(1+n̄)) for thermal
  // PTRS constants.
  double b_ = 0.0;
  double a_ = 0.0;
  double inv_alpha_ = 0.0;
  double v_r_ = 0.0;
};

inline constexpr double kPoissonPtrsThreshold = 10.0;

std::uint64_t sample_photon_number(const PhotonDistribution& dist,
                                   SeededGenerator& gen);

// count draws; throws ParameterError if count == 0.
std::vector<std::uint64_t> sample_pulse_train(const PhotonDistribution& dist,
                                              std::uint64_t count,
                                              SeededGenerator& gen);

}  // namespace pqrng

#endif  // PQRNG_SOURCE_MODELS_HPP_

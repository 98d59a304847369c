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

#ifndef PQRNG_DETECTOR_MODELS_HPP_
#define PQRNG_DETECTOR_MODELS_HPP_

// Detector physics between the true photon number of a pulse and the count
// the parity bit is taken from.
//
//   Ideal:          reported = true count.
//   SaturatingPNR:  each photon survives with probability `efficiency`; the
//                   survivor count is clipped at `max_count` (a transition
//                   edge sensor resolving up to six photons by default).
//   Multiplexed:    survivors are routed uniformly and independently over a
//                   balanced cascade of `ports` click/no-click detectors;
//                   every port also fires on its own with `dark_click_prob`.
//                   reported = number of ports that fired.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pqrng/photon_statistics.hpp"
#include "pqrng/source_models.hpp"

namespace pqrng {

enum class DetectorKind { Ideal, SaturatingPNR, Multiplexed };

std::string_view to_string(DetectorKind kind);
// Accepts "ideal", "saturating", "multiplexed".
std::optional<DetectorKind> parse_detector_kind(std::string_view name);

inline constexpr std::uint64_t kDefaultMaxCount = 6;
inline constexpr std::uint64_t kMaxPorts = 1u << 20;

class DetectorModel {
 public:
  static DetectorModel ideal();
  static DetectorModel saturating(double efficiency,
                                  std::uint64_t max_count = kDefaultMaxCount);
  static DetectorModel multiplexed(std::uint64_t ports, double efficiency,
                                   double dark_click_prob);

  DetectorKind kind() const noexcept { return kind_; }
  double efficiency() const noexcept { return efficiency_; }
  std::uint64_t max_count() const noexcept { return max_count_; }
  std::uint64_t ports() const noexcept { return ports_; }
  double dark_click_prob() const noexcept { return dark_click_prob_; }

  bool operator==(const DetectorModel&) const = default;

 private:
  DetectorModel() = default;

  DetectorKind kind_ = DetectorKind::Ideal;
  double efficiency_ = 1.0;
  std::uint64_t max_count_ = 0;
  std::uint64_t ports_ = 0;
  double dark_click_prob_ = 0.0;
};

struct DetectionOutcome {
  std::uint64_t reported_count = 0;
  std::vector<bool> clicks;  // Multiplexed only, one entry per port.
  std::uint64_t true_count = 0;
};

// Scratch space reused across pulses by the hot path.
struct DetectorScratch {
  std::vector<std::uint8_t> lit;
};

DetectionOutcome detect(const DetectorModel& model, std::uint64_t true_n,
                        SeededGenerator& gen);

// Same draws, in the same order, as detect(); returns only the count.
std::uint64_t detect_count(const DetectorModel& model, std::uint64_t true_n,
                           SeededGenerator& gen, DetectorScratch& scratch);

// Exact law of the reported count given true_n, indexed by count. Binomial
// thinning, then the occupancy law of the survivors over the ports, then
// dark clicks on the unoccupied ports. Throws SizeError when
// true_n * min(ports, true_n + 1) exceeds 1e8.
std::vector<double> click_distribution_exact(const DetectorModel& model,
                                             std::uint64_t true_n);

// <(-1)^reported> for pulses drawn from `dist`, summed exactly over the
// truncated photon-number support.
double effective_parity_bias(const DetectorModel& model,
                             const PhotonDistribution& dist,
                             const TruncationPolicy& policy = {});

}  // namespace pqrng

#endif  // PQRNG_DETECTOR_MODELS_HPP_

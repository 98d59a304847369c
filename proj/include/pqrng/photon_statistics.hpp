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

#ifndef PQRNG_PHOTON_STATISTICS_HPP_
#define PQRNG_PHOTON_STATISTICS_HPP_

// Photon-number laws of single-mode light and the parity observables derived
// from them. Everything here is a pure function of its arguments.
//
// Parity of a photon-number law p_n is <Π> = Σ (-1)^n p_n. For coherent light
// of mean n̄ this is exp(-2n̄); phase averaging leaves the photon-number law,
// and hence the parity, unchanged; thermal light gives 1/(1+2n̄), which only
// tends to zero as n̄ grows.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pqrng {

enum class SourceKind { Coherent, Thermal, PhaseAveragedCoherent, Custom };

std::string_view to_string(SourceKind kind);
// Accepts "coherent", "thermal", "phase-averaged", "custom".
std::optional<SourceKind> parse_source_kind(std::string_view name);

// A photon-number law. Immutable once built; construct through the factories,
// which validate parameters and throw ParameterError.
class PhotonDistribution {
 public:
  static PhotonDistribution coherent(double mean_photons);
  static PhotonDistribution thermal(double mean_photons);
  static PhotonDistribution phase_averaged_coherent(double mean_photons);
  // Exact finite pmf over n = 0..size-1. Entries must be >= 0 and sum to 1
  // within 1e-12.
  static PhotonDistribution custom(std::vector<double> pmf_table);

  // Builds an analytic kind; Custom is rejected with ParameterError.
  static PhotonDistribution analytic(SourceKind kind, double mean_photons);

  SourceKind kind() const noexcept { return kind_; }
  bool is_analytic() const noexcept { return kind_ != SourceKind::Custom; }

  // n̄. For Custom this is the mean of the table.
  double mean_photons() const noexcept { return mean_photons_; }

  // Empty for analytic kinds.
  std::span<const double> pmf_table() const noexcept { return pmf_table_; }
  // Running sum of pmf_table(); empty for analytic kinds.
  std::span<const double> cdf_table() const noexcept { return cdf_table_; }

 private:
  PhotonDistribution(SourceKind kind, double mean_photons)
      : kind_(kind), mean_photons_(mean_photons) {}

  SourceKind kind_;
  double mean_photons_;
  std::vector<double> pmf_table_;
  std::vector<double> cdf_table_;
};

// How infinite photon-number sums are cut off: stop at the smallest N whose
// cumulative mass reaches 1 - epsilon, or fail with TruncationError past
// hard_cap.
struct TruncationPolicy {
  double epsilon = 1e-15;
  std::uint64_t hard_cap = 4096;

  void validate() const;
};

// p_n. Coherent and phase-averaged laws are evaluated in log space.
double pmf(const PhotonDistribution& dist, std::uint64_t n);

// Smallest N with Σ_{n<=N} p_n >= 1 - epsilon, accumulated directly. Custom
// returns the table length.
std::uint64_t truncation_bound(const PhotonDistribution& dist,
                               const TruncationPolicy& policy);
std::uint64_t truncation_bound(const PhotonDistribution& dist, double epsilon);

// p_0..p_N with N from truncation_bound (Custom: the table itself).
std::vector<double> pmf_table(const PhotonDistribution& dist,
                              const TruncationPolicy& policy = {});

// <n^k> for k in 1..4.
double moment(const PhotonDistribution& dist, int k,
              const TruncationPolicy& policy = {});

// Closed-form parity. Throws UnsupportedKindError for Custom.
double parity_expectation_closed(const PhotonDistribution& dist);

// Σ (-1)^n p_n, summed in increasing n with compensation.
double parity_expectation_series(const PhotonDistribution& dist,
                                 const TruncationPolicy& policy = {});

struct ParityProbabilities {
  double even = 0.0;
  double odd = 0.0;
};

// P_e and P_o. Closed forms for analytic kinds, compensated series for
// Custom. P_o is computed first and P_e = 1 - P_o.
ParityProbabilities even_odd_probabilities(const PhotonDistribution& dist,
                                           const TruncationPolicy& policy = {});

// Even and odd masses summed from the pmf for any kind, normalized the same
// way. Used to cross-check the closed forms.
ParityProbabilities even_odd_probabilities_series(
    const PhotonDistribution& dist, const TruncationPolicy& policy = {});

// W(0) = (2/π) Σ (-1)^n p_n.
double wigner_at_origin(const PhotonDistribution& dist,
                        const TruncationPolicy& policy = {});

// Weak-coherent 50:50 beam-splitter generator with one click/no-click detector
// per output arm. Each arm is coherent with mean n̄/2 and fires with
// q = 1 - exp(-efficiency * n̄ / 2).
struct SplitterProbabilities {
  double none = 0.0;
  double single = 0.0;
  double both = 0.0;
};

SplitterProbabilities splitter_baseline_probabilities(double mean_photons,
                                                      double efficiency);

}  // namespace pqrng

#endif  // PQRNG_PHOTON_STATISTICS_HPP_

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

#include "pqrng/photon_statistics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "pqrng/compensated_sum.hpp"
#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

void check_mean(double mean_photons) {
  if (!std::isfinite(mean_photons) || mean_photons < 0.0) {
    throw ParameterError("mean photon number must be finite and >= 0, got " +
                         std::to_string(mean_photons));
  }
}

// stirlerr(n) = log(n!) - (n + 1/2) log(n) + n - log(sqrt(2π)), the error of
// Stirling's approximation. Tabulated for small n, asymptotic series above.
double stirling_error(std::uint64_t n) {
  static constexpr std::array<double, 16> kTable = {
      0.0,
      0.08106146679532725822,
      0.041340695955409294094,
      0.027677925684998339149,
      0.020790672103765093112,
      0.016644691189821192163,
      0.013876128823070747999,
      0.011896709945891770095,
      0.010411265261972096497,
      0.0092554621827127329177,
      0.0083305634333628712565,
      0.007573675487951840795,
      0.0069428401072095298657,
      0.0064089941880042070684,
      0.0059513701127588477356,
      0.005554733551962801371,
  };
  if (n < kTable.size()) return kTable[n];

  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double x = static_cast<double>(n);
  const double xx = x * x;
  if (n > 500) return (s0 - s1 / xx) / x;
  if (n > 80) return (s0 - (s1 - s2 / xx) / xx) / x;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / xx) / xx) / xx) / x;
  return (s0 - (s1 - (s2 - (s3 - s4 / xx) / xx) / xx) / xx) / x;
}

// x log(x/mean) + mean - x without the cancellation of the naive form when
// x is close to mean.
double deviance_term(double x, double mean) {
  if (std::abs(x - mean) < 0.1 * (x + mean)) {
    double v = (x - mean) / (x + mean);
    double s = (x - mean) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / mean) + mean - x;
}

double poisson_pmf(double mean, std::uint64_t n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n == 0) return std::exp(-mean);
  const double x = static_cast<double>(n);
  const double log_p = -stirling_error(n) - deviance_term(x, mean);
  return std::exp(log_p) / std::sqrt(2.0 * std::numbers::pi * x);
}

// Bose-Einstein law (1/(1+n̄)) (n̄/(1+n̄))^n.
double thermal_pmf(double mean, std::uint64_t n) {
  if (mean == 0.0) return n == 0 ? 1.0 : 0.0;
  const double log_ratio = std::log1p(-1.0 / (1.0 + mean));
  return std::exp(static_cast<double>(n) * log_ratio - std::log1p(mean));
}

// Runs `term(n, p_n)` over the truncated support.
template <typename Fn>
void for_each_mass(const PhotonDistribution& dist,
                   const TruncationPolicy& policy, Fn&& term) {
  if (dist.kind() == SourceKind::Custom) {
    const auto table = dist.pmf_table();
    for (std::uint64_t n = 0; n < table.size(); ++n) term(n, table[n]);
    return;
  }
  const std::uint64_t bound = truncation_bound(dist, policy);
  for (std::uint64_t n = 0; n <= bound; ++n) term(n, pmf(dist, n));
}

ParityProbabilities normalized(double even_mass, double odd_mass) {
  ParityProbabilities out;
  out.odd = odd_mass / (even_mass + odd_mass);
  out.even = 1.0 - out.odd;
  return out;
}

}  // namespace

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Coherent:
      return "coherent";
    case SourceKind::Thermal:
      return "thermal";
    case SourceKind::PhaseAveragedCoherent:
      return "phase-averaged";
    case SourceKind::Custom:
      return "custom";
  }
  return "unknown";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) {
  if (name == "coherent") return SourceKind::Coherent;
  if (name == "thermal") return SourceKind::Thermal;
  if (name == "phase-averaged") return SourceKind::PhaseAveragedCoherent;
  if (name == "custom") return SourceKind::Custom;
  return std::nullopt;
}

PhotonDistribution PhotonDistribution::coherent(double mean_photons) {
  check_mean(mean_photons);
  return PhotonDistribution(SourceKind::Coherent, mean_photons);
}

PhotonDistribution PhotonDistribution::thermal(double mean_photons) {
  check_mean(mean_photons);
  return PhotonDistribution(SourceKind::Thermal, mean_photons);
}

PhotonDistribution PhotonDistribution::phase_averaged_coherent(
    double mean_photons) {
  check_mean(mean_photons);
  return PhotonDistribution(SourceKind::PhaseAveragedCoherent, mean_photons);
}

PhotonDistribution PhotonDistribution::analytic(SourceKind kind,
                                                double mean_photons) {
  switch (kind) {
    case SourceKind::Coherent:
      return coherent(mean_photons);
    case SourceKind::Thermal:
      return thermal(mean_photons);
    case SourceKind::PhaseAveragedCoherent:
      return phase_averaged_coherent(mean_photons);
    case SourceKind::Custom:
      break;
  }
  throw ParameterError("custom distributions need a pmf table");
}

PhotonDistribution PhotonDistribution::custom(std::vector<double> pmf_table) {
  if (pmf_table.empty()) {
    throw ParameterError("custom pmf table must not be empty");
  }
  CompensatedSum total;
  CompensatedSum mean;
  std::vector<double> cdf;
  cdf.reserve(pmf_table.size());
  for (std::size_t n = 0; n < pmf_table.size(); ++n) {
    const double p = pmf_table[n];
    if (!std::isfinite(p) || p < 0.0) {
      throw ParameterError("custom pmf entry " + std::to_string(n) +
                           " must be finite and >= 0");
    }
    total += p;
    mean += static_cast<double>(n) * p;
    cdf.push_back(total.value());
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw ParameterError("custom pmf table must sum to 1 within 1e-12");
  }
  PhotonDistribution dist(SourceKind::Custom, mean.value());
  dist.pmf_table_ = std::move(pmf_table);
  dist.cdf_table_ = std::move(cdf);
  return dist;
}

void TruncationPolicy::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ParameterError("truncation epsilon must lie in (0, 1)");
  }
  if (hard_cap < 1) {
    throw ParameterError("truncation hard cap must be >= 1");
  }
}

double pmf(const PhotonDistribution& dist, std::uint64_t n) {
  switch (dist.kind()) {
    case SourceKind::Coherent:
    case SourceKind::PhaseAveragedCoherent:
      return poisson_pmf(dist.mean_photons(), n);
    case SourceKind::Thermal:
      return thermal_pmf(dist.mean_photons(), n);
    case SourceKind::Custom: {
      const auto table = dist.pmf_table();
      return n < table.size() ? table[n] : 0.0;
    }
  }
  return 0.0;
}

std::uint64_t truncation_bound(const PhotonDistribution& dist,
                               const TruncationPolicy& policy) {
  policy.validate();
  if (dist.kind() == SourceKind::Custom) return dist.pmf_table().size();

  const double target = 1.0 - policy.epsilon;
  CompensatedSum mass;
  for (std::uint64_t n = 0; n <= policy.hard_cap; ++n) {
    mass += pmf(dist, n);
    if (mass.value() >= target) return n;
  }
  const double tail = 1.0 - mass.value();
  throw TruncationError("tail mass " + std::to_string(tail) +
                            " still above epsilon at hard cap " +
                            std::to_string(policy.hard_cap),
                        tail);
}

std::uint64_t truncation_bound(const PhotonDistribution& dist, double epsilon) {
  TruncationPolicy policy;
  policy.epsilon = epsilon;
  return truncation_bound(dist, policy);
}

std::vector<double> pmf_table(const PhotonDistribution& dist,
                              const TruncationPolicy& policy) {
  std::vector<double> table;
  for_each_mass(dist, policy,
                [&](std::uint64_t, double p) { table.push_back(p); });
  return table;
}

double moment(const PhotonDistribution& dist, int k,
              const TruncationPolicy& policy) {
  if (k < 1 || k > 4) {
    throw ParameterError("moment order must be in 1..4, got " +
                         std::to_string(k));
  }
  CompensatedSum sum;
  for_each_mass(dist, policy, [&](std::uint64_t n, double p) {
    const double x = static_cast<double>(n);
    double power = x;
    for (int i = 1; i < k; ++i) power *= x;
    sum += power * p;
  });
  return sum.value();
}

double parity_expectation_closed(const PhotonDistribution& dist) {
  const double mean = dist.mean_photons();
  switch (dist.kind()) {
    case SourceKind::Coherent:
    case SourceKind::PhaseAveragedCoherent:
      return std::exp(-2.0 * mean);
    case SourceKind::Thermal:
      return 1.0 / (1.0 + 2.0 * mean);
    case SourceKind::Custom:
      break;
  }
  throw UnsupportedKindError(
      "no closed-form parity for custom distributions; use the series");
}

double parity_expectation_series(const PhotonDistribution& dist,
                                 const TruncationPolicy& policy) {
  CompensatedSum sum;
  for_each_mass(dist, policy, [&](std::uint64_t n, double p) {
    sum += (n % 2 == 0) ? p : -p;
  });
  return sum.value();
}

ParityProbabilities even_odd_probabilities(const PhotonDistribution& dist,
                                           const TruncationPolicy& policy) {
  const double mean = dist.mean_photons();
  ParityProbabilities out;
  switch (dist.kind()) {
    case SourceKind::Coherent:
    case SourceKind::PhaseAveragedCoherent:
      // ½(1 - e^{-2n̄}) without cancellation at small n̄.
      out.odd = -0.5 * std::expm1(-2.0 * mean);
      break;
    case SourceKind::Thermal:
      out.odd = mean / (1.0 + 2.0 * mean);
      break;
    case SourceKind::Custom:
      return even_odd_probabilities_series(dist, policy);
  }
  out.even = 1.0 - out.odd;
  return out;
}

ParityProbabilities even_odd_probabilities_series(
    const PhotonDistribution& dist, const TruncationPolicy& policy) {
  CompensatedSum even;
  CompensatedSum odd;
  for_each_mass(dist, policy, [&](std::uint64_t n, double p) {
    (n % 2 == 0 ? even : odd) += p;
  });
  return normalized(even.value(), odd.value());
}

double wigner_at_origin(const PhotonDistribution& dist,
                        const TruncationPolicy& policy) {
  return std::numbers::inv_pi * 2.0 * parity_expectation_series(dist, policy);
}

SplitterProbabilities splitter_baseline_probabilities(double mean_photons,
                                                      double efficiency) {
  check_mean(mean_photons);
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw ParameterError("detector efficiency must lie in [0, 1]");
  }
  const double half = 0.5 * efficiency * mean_photons;
  const double dark = std::exp(-half);
  const double click = -std::expm1(-half);
  SplitterProbabilities out;
  out.none = dark * dark;
  out.single = 2.0 * click * dark;
  out.both = click * click;
  return out;
}

}  // namespace pqrng

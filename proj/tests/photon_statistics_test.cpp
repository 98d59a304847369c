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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

TEST(PhotonDistribution, RejectsInvalidParameters) {
  EXPECT_THROW(PhotonDistribution::coherent(-1.0), ParameterError);
  EXPECT_THROW(PhotonDistribution::thermal(std::nan("")), ParameterError);
  EXPECT_THROW(PhotonDistribution::phase_averaged_coherent(INFINITY),
               ParameterError);
  EXPECT_THROW(PhotonDistribution::custom({}), ParameterError);
  EXPECT_THROW(PhotonDistribution::custom({0.5, 0.6}), ParameterError);
  EXPECT_THROW(PhotonDistribution::custom({1.5, -0.5}), ParameterError);
  EXPECT_THROW(PhotonDistribution::analytic(SourceKind::Custom, 1.0),
               ParameterError);
  EXPECT_NO_THROW(PhotonDistribution::custom({0.5, 0.5 + 1e-13}));
}

TEST(PhotonDistribution, KindNamesRoundTrip) {
  for (auto kind : {SourceKind::Coherent, SourceKind::Thermal,
                    SourceKind::PhaseAveragedCoherent, SourceKind::Custom}) {
    EXPECT_EQ(parse_source_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_source_kind("laser").has_value());
}

TEST(TruncationPolicy, Validates) {
  EXPECT_THROW((TruncationPolicy{0.0, 10}).validate(), ParameterError);
  EXPECT_THROW((TruncationPolicy{1.0, 10}).validate(), ParameterError);
  EXPECT_THROW((TruncationPolicy{1e-10, 0}).validate(), ParameterError);
  EXPECT_NO_THROW(TruncationPolicy{}.validate());
}

TEST(Pmf, SpecExamples) {
  EXPECT_EQ(pmf(PhotonDistribution::coherent(0.0), 0), 1.0);
  EXPECT_EQ(pmf(PhotonDistribution::coherent(0.0), 3), 0.0);
  EXPECT_NEAR(pmf(PhotonDistribution::thermal(1.0), 0), 0.5, 1e-16);
  EXPECT_NEAR(pmf(PhotonDistribution::coherent(2.0), 2), 2.0 * std::exp(-2.0),
              1e-16);
  EXPECT_EQ(pmf(PhotonDistribution::custom({0.25, 0.75}), 1), 0.75);
  EXPECT_EQ(pmf(PhotonDistribution::custom({0.25, 0.75}), 2), 0.0);
}

TEST(Pmf, MatchesProductOracleToNearUlpAccuracy) {
  for (double mean : {0.01, 0.5, 3.0, 6.0, 9.5, 16.0, 33.3, 50.0}) {
    const auto coherent = PhotonDistribution::coherent(mean);
    const auto thermal = PhotonDistribution::thermal(mean);
    for (std::uint64_t n = 0; n < 200; ++n) {
      // exp() turns the absolute error of the log-pmf into relative error,
      // so the tolerance grows with the size of the terms in the exponent.
      const long double c = oracle::poisson_pmf(mean, n);
      if (c > 1e-300L) {
        const double tol = 4e-16 * (32.0 + mean + n - std::log(static_cast<double>(c)));
        EXPECT_NEAR(pmf(coherent, n) / c, 1.0, tol) << mean << ' ' << n;
      }
      const long double t = oracle::thermal_pmf(mean, n);
      if (t > 1e-300L) {
        const double tol = 4e-16 * (32.0 + mean + n - std::log(static_cast<double>(t)));
        EXPECT_NEAR(pmf(thermal, n) / t, 1.0, tol) << mean << ' ' << n;
      }
    }
  }
}

TEST(Pmf, LargeIndexDoesNotOverflow) {
  const auto dist = PhotonDistribution::coherent(50.0);
  const double p = pmf(dist, 4000);
  EXPECT_TRUE(std::isfinite(p));
  EXPECT_GE(p, 0.0);
  EXPECT_LT(p, 1e-300);
}

TEST(TruncationBound, SpecExamples) {
  EXPECT_EQ(truncation_bound(PhotonDistribution::coherent(0.0), 1e-12), 0u);
  EXPECT_EQ(truncation_bound(PhotonDistribution::thermal(1.0), 0.25), 1u);
  EXPECT_EQ(truncation_bound(PhotonDistribution::custom({0.2, 0.3, 0.5}), 1e-3),
            3u);
}

// Frozen from 50-digit accumulation of the exact pmfs. Only cases where the
// tail one index earlier exceeds epsilon by several ulps of 1.0 are frozen;
// closer calls are below double resolution.
TEST(TruncationBound, FrozenHighPrecisionValues) {
  EXPECT_EQ(truncation_bound(PhotonDistribution::coherent(6.0), 1e-15), 34u);
  EXPECT_EQ(truncation_bound(PhotonDistribution::coherent(16.0), 1e-15), 57u);
  EXPECT_EQ(truncation_bound(PhotonDistribution::coherent(0.5), 1e-15), 13u);
  EXPECT_EQ(truncation_bound(PhotonDistribution::thermal(1.0), 1e-15), 49u);
}

TEST(TruncationBound, MatchesCumulativeSumOracle) {
  for (double mean : {0.3, 1.0, 6.0, 12.5}) {
    for (long double eps : {1e-3L, 1e-8L, 1e-12L}) {
      const auto bound = oracle::cumulative_bound(
          [&](std::uint64_t n) { return oracle::poisson_pmf(mean, n); }, eps);
      EXPECT_EQ(truncation_bound(PhotonDistribution::coherent(mean),
                                 static_cast<double>(eps)),
                bound)
          << mean << ' ' << static_cast<double>(eps);
    }
  }
}

TEST(TruncationBound, DefaultPolicyCoversMeanUpToFifty) {
  const TruncationPolicy policy;
  for (int i = 0; i <= 500; ++i) {
    const double mean = i / 10.0;
    for (auto dist : {PhotonDistribution::coherent(mean),
                      PhotonDistribution::thermal(mean)}) {
      const auto bound = truncation_bound(dist, policy);
      long double mass = 0.0L;
      for (std::uint64_t n = 0; n <= bound; ++n) mass += pmf(dist, n);
      EXPECT_GE(mass, 1.0L - 1e-15L - 4e-16L) << mean;
    }
  }
}

TEST(TruncationBound, HardCapRaisesWithAchievedTail) {
  TruncationPolicy policy;
  policy.hard_cap = 10;
  try {
    truncation_bound(PhotonDistribution::coherent(30.0), policy);
    FAIL() << "expected TruncationError";
  } catch (const TruncationError& e) {
    EXPECT_GT(e.achieved_tail_mass(), 0.9);
  }
  EXPECT_THROW(moment(PhotonDistribution::thermal(40.0), 1, policy),
               TruncationError);
  EXPECT_THROW(parity_expectation_series(PhotonDistribution::thermal(40.0), policy),
               TruncationError);
}

TEST(Moment, SpecExamples) {
  EXPECT_NEAR(moment(PhotonDistribution::coherent(3.0), 1), 3.0, 1e-10);
  EXPECT_NEAR(moment(PhotonDistribution::coherent(3.0), 2), 12.0, 1e-10);
  EXPECT_NEAR(moment(PhotonDistribution::thermal(2.0), 2), 10.0, 1e-10);
}

TEST(Moment, FirstMomentIsMeanAndVarianceLaws) {
  for (double mean : {0.0, 0.5, 1.0, 6.0, 16.0, 50.0}) {
    const auto coherent = PhotonDistribution::coherent(mean);
    const auto thermal = PhotonDistribution::thermal(mean);
    const auto averaged = PhotonDistribution::phase_averaged_coherent(mean);
    EXPECT_NEAR(moment(coherent, 1), mean, 1e-10 * std::max(1.0, mean));
    EXPECT_NEAR(moment(averaged, 1), mean, 1e-10 * std::max(1.0, mean));
    EXPECT_NEAR(moment(thermal, 1), mean, 1e-10 * std::max(1.0, mean));
    // Poissonian variance n̄, thermal variance n̄² + n̄.
    const double coh_var = moment(coherent, 2) - mean * mean;
    const double th_var = moment(thermal, 2) - mean * mean;
    EXPECT_NEAR(coh_var, mean, 1e-9 * std::max(1.0, mean * mean));
    EXPECT_NEAR(th_var, mean * mean + mean, 1e-9 * std::max(1.0, mean * mean));
  }
  // Poisson third and fourth raw moments: n̄³+3n̄²+n̄, n̄⁴+6n̄³+7n̄²+n̄.
  const double m = 3.0;
  EXPECT_NEAR(moment(PhotonDistribution::coherent(m), 3), m * m * m + 3 * m * m + m,
              1e-9);
  EXPECT_NEAR(moment(PhotonDistribution::coherent(m), 4),
              m * m * m * m + 6 * m * m * m + 7 * m * m + m, 1e-8);
}

TEST(Moment, RejectsUnsupportedOrder) {
  EXPECT_THROW(moment(PhotonDistribution::coherent(1.0), 0), ParameterError);
  EXPECT_THROW(moment(PhotonDistribution::coherent(1.0), 5), ParameterError);
}

TEST(Moment, CustomTableIsExact) {
  const auto dist = PhotonDistribution::custom({0.25, 0.25, 0.5});
  EXPECT_DOUBLE_EQ(moment(dist, 1), 1.25);
  EXPECT_DOUBLE_EQ(moment(dist, 2), 2.25);
  EXPECT_DOUBLE_EQ(dist.mean_photons(), 1.25);
}

TEST(ParityClosed, SpecExamples) {
  EXPECT_EQ(parity_expectation_closed(PhotonDistribution::coherent(0.0)), 1.0);
  EXPECT_NEAR(parity_expectation_closed(PhotonDistribution::coherent(1.0)),
              0.1353352832366127, 1e-15);
  EXPECT_NEAR(parity_expectation_closed(PhotonDistribution::thermal(1.0)),
              1.0 / 3.0, 1e-16);
  EXPECT_THROW(parity_expectation_closed(PhotonDistribution::custom({1.0})),
               UnsupportedKindError);
}

TEST(ParitySeries, SpecExamples) {
  EXPECT_EQ(parity_expectation_series(PhotonDistribution::custom({1.0})), 1.0);
  EXPECT_EQ(parity_expectation_series(PhotonDistribution::custom({0.5, 0.5})), 0.0);
  EXPECT_NEAR(parity_expectation_series(PhotonDistribution::coherent(4.0)),
              std::exp(-8.0), 1e-12);
  EXPECT_NEAR(parity_expectation_series(PhotonDistribution::coherent(4.0)),
              3.3546262790251185e-4, 1e-12);
}

TEST(ParitySeries, AgreesWithClosedFormsOnDenseGrid) {
  for (int i = 0; i <= 500; ++i) {
    const double mean = i / 10.0;
    for (auto kind : {SourceKind::Coherent, SourceKind::PhaseAveragedCoherent,
                      SourceKind::Thermal}) {
      const auto dist = PhotonDistribution::analytic(kind, mean);
      EXPECT_NEAR(parity_expectation_series(dist), parity_expectation_closed(dist),
                  1e-12)
          << to_string(kind) << ' ' << mean;
    }
  }
}

TEST(ParitySeries, CoherentBelowThermalForPositiveMean) {
  for (int i = 1; i <= 500; ++i) {
    const double mean = i / 10.0;
    EXPECT_LT(parity_expectation_closed(PhotonDistribution::coherent(mean)),
              parity_expectation_closed(PhotonDistribution::thermal(mean)));
  }
}

TEST(PhaseAveraging, IdenticalToCoherentBitForBit) {
  for (double mean : {0.0, 0.5, 1.0, 6.0, 16.0, 42.0}) {
    const auto coherent = PhotonDistribution::coherent(mean);
    const auto averaged = PhotonDistribution::phase_averaged_coherent(mean);
    EXPECT_EQ(pmf_table(coherent), pmf_table(averaged));
    EXPECT_EQ(parity_expectation_series(coherent),
              parity_expectation_series(averaged));
    EXPECT_EQ(parity_expectation_closed(coherent),
              parity_expectation_closed(averaged));
  }
}

TEST(EvenOdd, SpecExamples) {
  const auto at0 = even_odd_probabilities(PhotonDistribution::coherent(0.0));
  EXPECT_EQ(at0.even, 1.0);
  EXPECT_EQ(at0.odd, 0.0);

  const auto at6 = even_odd_probabilities(PhotonDistribution::coherent(6.0));
  EXPECT_EQ(std::round(at6.even * 1e5) / 1e5, 0.5);
  EXPECT_EQ(std::round(at6.odd * 1e5) / 1e5, 0.5);

  const auto at16 = even_odd_probabilities(PhotonDistribution::coherent(16.0));
  EXPECT_EQ(std::round(at16.even * 1e13) / 1e13, 0.5);
  EXPECT_EQ(std::round(at16.odd * 1e13) / 1e13, 0.5);
}

TEST(EvenOdd, ThermalClosedFormMatchesSeries) {
  for (int i = 0; i <= 100; ++i) {
    const double mean = i / 4.0;
    const auto dist = PhotonDistribution::thermal(mean);
    const auto closed = even_odd_probabilities(dist);
    const auto series = even_odd_probabilities_series(dist);
    EXPECT_NEAR(closed.even, (1.0 + mean) / (1.0 + 2.0 * mean), 1e-15);
    EXPECT_NEAR(closed.even, series.even, 1e-12) << mean;
    EXPECT_NEAR(closed.odd, series.odd, 1e-12) << mean;
  }
}

TEST(EvenOdd, CoherentClosedFormMatchesSeries) {
  for (int i = 0; i <= 100; ++i) {
    const double mean = i / 4.0;
    const auto dist = PhotonDistribution::coherent(mean);
    const auto closed = even_odd_probabilities(dist);
    const auto series = even_odd_probabilities_series(dist);
    EXPECT_NEAR(closed.odd, series.odd, 1e-12) << mean;
    EXPECT_NEAR(closed.odd, std::exp(-mean) * std::sinh(mean), 1e-12) << mean;
  }
}

TEST(EvenOdd, NormalizedAndConsistentWithParityForRandomLaws) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> table(1 + rng() % 12);
    double total = 0.0;
    for (auto& p : table) total += (p = unit(rng));
    for (auto& p : table) p /= total;
    const auto dist = PhotonDistribution::custom(table);
    const auto probs = even_odd_probabilities(dist);
    EXPECT_EQ(probs.even + probs.odd, 1.0);
    EXPECT_NEAR(probs.even - probs.odd, parity_expectation_series(dist), 1e-12);
  }
  for (int i = 0; i <= 200; ++i) {
    for (auto dist : {PhotonDistribution::coherent(i / 4.0),
                      PhotonDistribution::thermal(i / 4.0)}) {
      const auto probs = even_odd_probabilities(dist);
      EXPECT_EQ(probs.even + probs.odd, 1.0);
      EXPECT_NEAR(probs.even - probs.odd, parity_expectation_series(dist), 1e-12);
    }
  }
}

TEST(Wigner, SpecExamples) {
  EXPECT_NEAR(wigner_at_origin(PhotonDistribution::coherent(0.0)),
              0.6366197723675814, 1e-15);
  EXPECT_NEAR(wigner_at_origin(PhotonDistribution::thermal(1.0)),
              0.2122065907891938, 1e-15);
  EXPECT_NEAR(wigner_at_origin(PhotonDistribution::coherent(6.0)),
              2.0 / std::numbers::pi * std::exp(-12.0), 1e-15);
}

TEST(Wigner, IsScaledParity) {
  for (double mean : {0.0, 0.25, 1.0, 3.0, 7.0, 20.0}) {
    for (auto dist : {PhotonDistribution::coherent(mean),
                      PhotonDistribution::thermal(mean)}) {
      const double parity = parity_expectation_series(dist);
      const double w = wigner_at_origin(dist);
      if (parity == 0.0) {
        EXPECT_EQ(w, 0.0);
      } else {
        EXPECT_NEAR(w * std::numbers::pi / 2.0 / parity, 1.0, 1e-14);
      }
    }
  }
}

TEST(SplitterBaseline, SpecExamples) {
  const auto dark = splitter_baseline_probabilities(0.0, 1.0);
  EXPECT_EQ(dark.none, 1.0);
  EXPECT_EQ(dark.single, 0.0);
  EXPECT_EQ(dark.both, 0.0);

  // |α|² = 0.01: almost always no photon at all.
  const auto weak = splitter_baseline_probabilities(0.01, 1.0);
  EXPECT_NEAR(weak.none, 0.990050, 5e-7);
  EXPECT_NEAR(weak.single, 0.009925, 5e-7);
  EXPECT_NEAR(weak.both, 2.49e-5, 5e-8);

  const auto half = splitter_baseline_probabilities(2.0 * std::log(2.0), 1.0);
  EXPECT_NEAR(half.none, 0.25, 1e-15);
  EXPECT_NEAR(half.single, 0.5, 1e-15);
  EXPECT_NEAR(half.both, 0.25, 1e-15);

  EXPECT_THROW(splitter_baseline_probabilities(1.0, 1.5), ParameterError);
  EXPECT_THROW(splitter_baseline_probabilities(1.0, -0.1), ParameterError);
  EXPECT_THROW(splitter_baseline_probabilities(-1.0, 0.5), ParameterError);
}

TEST(SplitterBaseline, ComponentsFormADistribution) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mean(0.0, 30.0);
  std::uniform_real_distribution<double> eff(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const auto p = splitter_baseline_probabilities(mean(rng), eff(rng));
    for (double x : {p.none, p.single, p.both}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    EXPECT_NEAR(p.none + p.single + p.both, 1.0, 1e-15);
  }
}

}  // namespace
}  // namespace pqrng

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

#ifndef PQRNG_RANDOMNESS_ANALYSIS_HPP_
#define PQRNG_RANDOMNESS_ANALYSIS_HPP_

// Bias, entropy and statistical tests on bit streams, plus the theory
// comparison tables.
//
// Test definitions (n bits, S = Σ (2b - 1), f = fraction of ones):
//
//   monobit          s = |S| / √n,  p = erfc(s / √2).                n >= 100
//   runs             V = number of maximal runs,
//                    p = erfc(|V - 2nf(1-f)| / (2√(2n) f(1-f))).     n >= 100
//                    Not applicable when |f - 1/2| >= 2/√n.
//   block frequency  N = ⌊n/M⌋ blocks of M bits with ones-fraction f_i,
//                    χ² = 4M Σ (f_i - 1/2)²,  p = Q(N/2, χ²/2).
//                    M >= 20 and n >= 100 M.
//
// Q is the regularized upper incomplete gamma function.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pqrng/detector_models.hpp"
#include "pqrng/packed_bits.hpp"
#include "pqrng/photon_statistics.hpp"

namespace pqrng {

inline constexpr double kDefaultAlpha = 0.01;

struct BiasEstimate {
  double fraction_of_ones = 0.0;
  double standard_error = 0.0;
};

struct TestResult {
  std::string name;
  double statistic = 0.0;
  double p_value = 0.0;
  bool applicable = true;

  bool passed(double alpha = kDefaultAlpha) const {
    return applicable && p_value >= alpha;
  }
};

// Throws EmptyInputError for an empty stream.
BiasEstimate empirical_bias(const PackedBits& bits);

// Throw SizeError when the size preconditions above are not met.
TestResult monobit_test(const PackedBits& bits);
TestResult runs_test(const PackedBits& bits);
TestResult block_frequency_test(const PackedBits& bits, std::size_t block_len);

// Lag-k autocorrelation of the ±1-mapped bits,
//   [Σ_{i<n-k} d_i d_{i+k} / (n-k)] / [Σ d_i² / n],  d_i = x_i - mean.
// NaN for a constant stream. Throws ParameterError for lag 0 and SizeError
// when lag >= n.
double serial_correlation(const PackedBits& bits, std::size_t lag);

// -f log2 f - (1-f) log2 (1-f), with 0 log 0 = 0.
double binary_entropy(double p);
double shannon_entropy_per_bit(const PackedBits& bits);

struct AnalysisOptions {
  bool monobit = true;
  bool runs = true;
  bool block_frequency = true;
  std::size_t block_len = 128;
  std::vector<std::size_t> serial_lags{1, 2, 8};
};

struct AnalysisReport {
  std::size_t n_bits = 0;
  BiasEstimate bias;
  // P_o of the declared source with an ideal detector.
  std::optional<double> theoretical_bias;
  // P_o after the declared detector, (1 - <(-1)^reported>) / 2.
  std::optional<double> detector_theoretical_bias;
  std::optional<nlohmann::json> source;
  std::optional<nlohmann::json> detector;
  double shannon_entropy_per_bit = 0.0;
  std::vector<TestResult> test_results;
  std::vector<std::pair<std::size_t, double>> serial_correlation;
};

// Tests whose size preconditions fail are listed as not applicable rather
// than thrown. Throws EmptyInputError for an empty stream.
AnalysisReport analyze_bits(const PackedBits& bits,
                            const std::optional<PhotonDistribution>& source,
                            const std::optional<DetectorModel>& detector,
                            const AnalysisOptions& options = {},
                            const TruncationPolicy& policy = {});

// Non-finite numbers are written as null.
nlohmann::json report_to_json(const AnalysisReport& report);
std::string report_summary(const AnalysisReport& report,
                           double alpha = kDefaultAlpha);

struct SweepRow {
  double mean_photons = 0.0;
  double parity = 0.0;
  double p_even = 0.0;
  double p_odd = 0.0;
  double detector_parity = 0.0;
  double thermal_parity = 0.0;  // 1/(1+2n̄) reference column
};

// One row per n̄: closed-form parity, P_e, P_o of `kind`, the parity seen
// through `detector`, and the thermal reference.
std::vector<SweepRow> bias_sweep(SourceKind kind,
                                 std::span<const double> mean_photons,
                                 const DetectorModel& detector,
                                 const TruncationPolicy& policy = {});

// Header plus one line per row; full precision (%.17g) followed by P_e and
// P_o rounded to 5 and 13 decimals.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

// Decimal rounding by correctly rounded printf conversion, e.g.
// format_fixed(0.5000030, 5) == "0.50000".
std::string format_fixed(double value, int decimals);

// sup |F_n(x) - x| for samples on [0, 1].
double ks_distance_uniform(std::vector<double> samples);

struct ChiSquareResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 0.0;
};

// Pearson goodness of fit with bins.size() - 1 degrees of freedom.
ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected);

}  // namespace pqrng

#endif  // PQRNG_RANDOMNESS_ANALYSIS_HPP_

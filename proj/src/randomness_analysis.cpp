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

#include "pqrng/randomness_analysis.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "pqrng/bitstream_io.hpp"
#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

constexpr std::size_t kMinTestBits = 100;
constexpr std::size_t kMinBlockLen = 20;

void require_bits(const PackedBits& bits, std::size_t minimum,
                  const char* test) {
  if (bits.size() < minimum) {
    throw SizeError(std::string(test) + " needs at least " +
                    std::to_string(minimum) + " bits, got " +
                    std::to_string(bits.size()));
  }
}

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

BiasEstimate empirical_bias(const PackedBits& bits) {
  if (bits.empty()) throw EmptyInputError("bias of an empty stream");
  const double n = static_cast<double>(bits.size());
  const double f = static_cast<double>(bits.count_ones()) / n;
  return {f, std::sqrt(f * (1.0 - f) / n)};
}

TestResult monobit_test(const PackedBits& bits) {
  require_bits(bits, kMinTestBits, "monobit test");
  const double n = static_cast<double>(bits.size());
  const double ones = static_cast<double>(bits.count_ones());
  const double s_obs = std::abs(2.0 * ones - n) / std::sqrt(n);
  return {"monobit", s_obs, std::erfc(s_obs / std::numbers::sqrt2), true};
}

TestResult runs_test(const PackedBits& bits) {
  require_bits(bits, kMinTestBits, "runs test");
  const std::size_t size = bits.size();
  const double n = static_cast<double>(size);
  const double f = static_cast<double>(bits.count_ones()) / n;

  std::size_t runs = 1;
  for (std::size_t i = 1; i < size; ++i) {
    if (bits[i] != bits[i - 1]) ++runs;
  }
  const double v_obs = static_cast<double>(runs);
  if (std::abs(f - 0.5) >= 2.0 / std::sqrt(n)) {
    return {"runs", v_obs, 0.0, false};
  }
  const double pq = f * (1.0 - f);
  const double z = std::abs(v_obs - 2.0 * n * pq) / (2.0 * std::sqrt(2.0 * n) * pq);
  return {"runs", v_obs, std::erfc(z), true};
}

TestResult block_frequency_test(const PackedBits& bits, std::size_t block_len) {
  if (block_len < kMinBlockLen) {
    throw SizeError("block frequency test needs block length >= 20");
  }
  if (bits.size() / 100 < block_len) {
    throw SizeError("block frequency test needs at least 100 blocks");
  }
  const std::size_t blocks = bits.size() / block_len;
  double chi_square = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    std::size_t ones = 0;
    for (std::size_t i = b * block_len; i < (b + 1) * block_len; ++i) ones += bits[i];
    const double dev = static_cast<double>(ones) / static_cast<double>(block_len) - 0.5;
    chi_square += dev * dev;
  }
  chi_square *= 4.0 * static_cast<double>(block_len);
  const double p = boost::math::gamma_q(static_cast<double>(blocks) / 2.0,
                                        chi_square / 2.0);
  return {"block_frequency", chi_square, p, true};
}

double serial_correlation(const PackedBits& bits, std::size_t lag) {
  if (lag == 0) throw ParameterError("serial correlation lag must be >= 1");
  if (lag >= bits.size()) {
    throw SizeError("serial correlation lag must be shorter than the stream");
  }
  const std::size_t n = bits.size();
  const double mean =
      2.0 * static_cast<double>(bits.count_ones()) / static_cast<double>(n) - 1.0;
  auto dev = [&](std::size_t i) { return (bits[i] ? 1.0 : -1.0) - mean; };

  double variance = 0.0;
  for (std::size_t i = 0; i < n; ++i) variance += dev(i) * dev(i);
  variance /= static_cast<double>(n);
  if (variance == 0.0) return std::numeric_limits<double>::quiet_NaN();

  double covariance = 0.0;
  for (std::size_t i = 0; i + lag < n; ++i) covariance += dev(i) * dev(i + lag);
  covariance /= static_cast<double>(n - lag);
  return covariance / variance;
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double shannon_entropy_per_bit(const PackedBits& bits) {
  return binary_entropy(empirical_bias(bits).fraction_of_ones);
}

AnalysisReport analyze_bits(const PackedBits& bits,
                            const std::optional<PhotonDistribution>& source,
                            const std::optional<DetectorModel>& detector,
                            const AnalysisOptions& options,
                            const TruncationPolicy& policy) {
  AnalysisReport report;
  report.n_bits = bits.size();
  report.bias = empirical_bias(bits);
  report.shannon_entropy_per_bit = binary_entropy(report.bias.fraction_of_ones);

  if (source) {
    report.source = source_to_json(*source);
    report.theoretical_bias = even_odd_probabilities(*source, policy).odd;
    if (detector) {
      report.detector = detector_to_json(*detector);
      report.detector_theoretical_bias =
          0.5 * (1.0 - effective_parity_bias(*detector, *source, policy));
    }
  }

  auto guarded = [&](const char* name, auto&& test) {
    try {
      report.test_results.push_back(test());
    } catch (const SizeError&) {
      report.test_results.push_back({name, 0.0, 0.0, false});
    }
  };
  if (options.monobit) guarded("monobit", [&] { return monobit_test(bits); });
  if (options.runs) guarded("runs", [&] { return runs_test(bits); });
  if (options.block_frequency) {
    guarded("block_frequency",
            [&] { return block_frequency_test(bits, options.block_len); });
  }
  for (std::size_t lag : options.serial_lags) {
    if (lag == 0 || lag >= bits.size()) continue;
    report.serial_correlation.emplace_back(lag, serial_correlation(bits, lag));
  }
  return report;
}

nlohmann::json report_to_json(const AnalysisReport& report) {
  nlohmann::json j;
  j["n_bits"] = report.n_bits;
  j["empirical_bias"] = {
      {"fraction_of_ones", report.bias.fraction_of_ones},
      {"standard_error", report.bias.standard_error},
  };
  j["theoretical_bias"] = report.theoretical_bias
                              ? finite_or_null(*report.theoretical_bias)
                              : nlohmann::json(nullptr);
  j["detector_theoretical_bias"] =
      report.detector_theoretical_bias
          ? finite_or_null(*report.detector_theoretical_bias)
          : nlohmann::json(nullptr);
  j["source"] = report.source.value_or(nullptr);
  j["detector"] = report.detector.value_or(nullptr);
  j["shannon_entropy_per_bit"] = report.shannon_entropy_per_bit;
  j["alpha"] = kDefaultAlpha;
  auto tests = nlohmann::json::array();
  for (const auto& t : report.test_results) {
    tests.push_back({
        {"name", t.name},
        {"statistic", finite_or_null(t.statistic)},
        {"p_value", finite_or_null(t.p_value)},
        {"applicable", t.applicable},
        {"passed", t.passed()},
    });
  }
  j["test_results"] = std::move(tests);
  auto serial = nlohmann::json::array();
  for (const auto& [lag, value] : report.serial_correlation) {
    serial.push_back({{"lag", lag}, {"value", finite_or_null(value)}});
  }
  j["serial_correlation"] = std::move(serial);
  return j;
}

std::string report_summary(const AnalysisReport& report, double alpha) {
  std::ostringstream out;
  out << "bits analysed:        " << report.n_bits << '\n'
      << "fraction of ones:     " << format_g17(report.bias.fraction_of_ones)
      << " +/- " << report.bias.standard_error << '\n';
  if (report.theoretical_bias) {
    out << "theoretical P_odd:    " << format_g17(*report.theoretical_bias) << '\n';
  }
  if (report.detector_theoretical_bias) {
    out << "detector P_odd:       "
        << format_g17(*report.detector_theoretical_bias) << '\n';
  }
  out << "entropy per bit:      " << report.shannon_entropy_per_bit << '\n';
  for (const auto& t : report.test_results) {
    out << "test " << t.name << ": ";
    if (!t.applicable) {
      out << "not applicable\n";
      continue;
    }
    out << "statistic=" << t.statistic << " p=" << t.p_value << ' '
        << (t.passed(alpha) ? "PASS" : "FAIL") << '\n';
  }
  for (const auto& [lag, value] : report.serial_correlation) {
    out << "serial correlation lag " << lag << ": " << value << '\n';
  }
  return out.str();
}

std::vector<SweepRow> bias_sweep(SourceKind kind,
                                 std::span<const double> mean_photons,
                                 const DetectorModel& detector,
                                 const TruncationPolicy& policy) {
  std::vector<SweepRow> rows;
  rows.reserve(mean_photons.size());
  for (double mean : mean_photons) {
    const auto dist = PhotonDistribution::analytic(kind, mean);
    const auto probs = even_odd_probabilities(dist, policy);
    SweepRow row;
    row.mean_photons = mean;
    row.parity = parity_expectation_closed(dist);
    row.p_even = probs.even;
    row.p_odd = probs.odd;
    row.detector_parity = effective_parity_bias(detector, dist, policy);
    row.thermal_parity =
        parity_expectation_closed(PhotonDistribution::thermal(mean));
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "mean_photons,parity,p_even,p_odd,detector_parity,thermal_parity,"
         "p_even_5dp,p_odd_5dp,p_even_13dp,p_odd_13dp\n";
  for (const auto& r : rows) {
    out << format_g17(r.mean_photons) << ',' << format_g17(r.parity) << ','
        << format_g17(r.p_even) << ',' << format_g17(r.p_odd) << ','
        << format_g17(r.detector_parity) << ',' << format_g17(r.thermal_parity)
        << ',' << format_fixed(r.p_even, 5) << ',' << format_fixed(r.p_odd, 5)
        << ',' << format_fixed(r.p_even, 13) << ','
        << format_fixed(r.p_odd, 13) << '\n';
  }
}

std::string format_fixed(double value, int decimals) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

double ks_distance_uniform(std::vector<double> samples) {
  if (samples.empty()) throw EmptyInputError("KS distance of no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = std::clamp(samples[i], 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - x,
                  x - static_cast<double>(i) / n});
  }
  return d;
}

ChiSquareResult chi_square_gof(std::span<const double> observed,
                               std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2) {
    throw ParameterError("chi-square needs matching bins, at least two");
  }
  ChiSquareResult out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] > 0.0)) {
      throw ParameterError("chi-square expected counts must be positive");
    }
    const double diff = observed[i] - expected[i];
    out.statistic += diff * diff / expected[i];
  }
  out.degrees_of_freedom = static_cast<double>(observed.size() - 1);
  out.p_value =
      boost::math::gamma_q(out.degrees_of_freedom / 2.0, out.statistic / 2.0);
  return out;
}

}  // namespace pqrng

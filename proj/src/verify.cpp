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

#include "pqrng/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pqrng/bit_pipeline.hpp"
#include "pqrng/detector_models.hpp"
#include "pqrng/photon_statistics.hpp"
#include "pqrng/randomness_analysis.hpp"

namespace pqrng {
namespace {

template <typename T>
std::string describe(const char* label, T value) {
  std::ostringstream out;
  out.precision(17);
  out << label << value;
  return out.str();
}

// Law of the number of distinct ports hit when k photons are routed over
// `ports` ports, by walking all ports^k routings.
std::vector<double> enumerate_occupancy(std::uint64_t k, std::uint64_t ports) {
  std::vector<double> law(std::min(k, ports) + 1, 0.0);
  std::vector<std::uint64_t> routing(k, 0);
  const double weight = std::pow(static_cast<double>(ports), -static_cast<double>(k));
  for (;;) {
    std::vector<bool> hit(ports, false);
    for (auto port : routing) hit[port] = true;
    law[static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true))] += weight;
    std::uint64_t i = 0;
    while (i < k && ++routing[i] == ports) routing[i++] = 0;
    if (i == k) break;
  }
  return law;
}

CheckResult check_series_vs_closed() {
  double worst = 0.0;
  for (double mean : {0.0, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 16.0, 32.0, 50.0}) {
    for (auto kind : {SourceKind::Coherent, SourceKind::PhaseAveragedCoherent,
                      SourceKind::Thermal}) {
      const auto dist = PhotonDistribution::analytic(kind, mean);
      worst = std::max(worst, std::abs(parity_expectation_series(dist) -
                                       parity_expectation_closed(dist)));
    }
  }
  return {"parity series matches closed forms", worst < 1e-12,
          describe("max abs difference ", worst)};
}

CheckResult check_thermal_even_odd() {
  double worst = 0.0;
  for (double mean : {0.0, 0.5, 1.0, 2.0, 6.0, 16.0}) {
    const auto dist = PhotonDistribution::thermal(mean);
    const auto closed = even_odd_probabilities(dist);
    const auto series = even_odd_probabilities_series(dist);
    worst = std::max({worst, std::abs(closed.even - series.even),
                      std::abs(closed.odd - series.odd)});
  }
  return {"thermal P_e/P_o closed forms match series", worst < 1e-12,
          describe("max abs difference ", worst)};
}

CheckResult check_phase_averaging() {
  bool same = true;
  for (double mean : {1.0, 6.0, 16.0}) {
    const auto coherent = PhotonDistribution::coherent(mean);
    const auto averaged = PhotonDistribution::phase_averaged_coherent(mean);
    same = same && pmf_table(coherent) == pmf_table(averaged) &&
           parity_expectation_series(coherent) ==
               parity_expectation_series(averaged) &&
           parity_expectation_closed(coherent) ==
               parity_expectation_closed(averaged);
  }
  return {"phase-averaged coherent law identical to coherent", same,
          same ? "bit-identical" : "tables differ"};
}

CheckResult check_rounding_claims() {
  const auto at6 = even_odd_probabilities(PhotonDistribution::coherent(6.0));
  const auto at16 = even_odd_probabilities(PhotonDistribution::coherent(16.0));
  const bool ok = format_fixed(at6.even, 5) == "0.50000" &&
                  format_fixed(at6.odd, 5) == "0.50000" &&
                  format_fixed(at16.even, 13) == "0.5000000000000" &&
                  format_fixed(at16.odd, 13) == "0.5000000000000";
  return {"P_e = P_o = 1/2 at 5 decimals (n=6) and 13 decimals (n=16)", ok,
          "P_e(6)=" + format_fixed(at6.even, 8) +
              " P_e(16)=" + format_fixed(at16.even, 16)};
}

CheckResult check_monte_carlo(std::uint64_t seed) {
  constexpr std::uint64_t kPulses = 200'000;
  bool ok = true;
  std::ostringstream detail;
  for (double mean : {0.5, 1.0, 6.0}) {
    for (auto kind : {SourceKind::Coherent, SourceKind::Thermal}) {
      const auto dist = PhotonDistribution::analytic(kind, mean);
      const auto result = run_pipeline(dist, DetectorModel::ideal(), kPulses, seed);
      const double p_odd = even_odd_probabilities(dist).odd;
      const double f = empirical_bias(result.stream.bits).fraction_of_ones;
      const double sigma = std::sqrt(p_odd * (1.0 - p_odd) / kPulses);
      const double z = std::abs(f - p_odd) / sigma;
      ok = ok && z < 4.0;
      if (detail.tellp() > 0) detail << ' ';
      detail << to_string(kind) << '(' << mean << ") z=" << z;
    }
  }
  return {"Monte-Carlo parity within 4 sigma of P_o", ok, detail.str()};
}

CheckResult check_detector_oracles() {
  double worst = 0.0;
  for (std::uint64_t ports : {1, 2, 3, 4}) {
    for (std::uint64_t n = 0; n <= 6; ++n) {
      const auto exact =
          click_distribution_exact(DetectorModel::multiplexed(ports, 1.0, 0.0), n);
      const auto brute = enumerate_occupancy(n, ports);
      if (exact.size() != brute.size()) return {"multiplexed click law", false, "size"};
      for (std::size_t j = 0; j < exact.size(); ++j) {
        worst = std::max(worst, std::abs(exact[j] - brute[j]));
      }
    }
  }
  double single_port = 0.0;
  for (double mean : {0.5, 1.0, 3.0, 6.0}) {
    const auto dist = PhotonDistribution::coherent(mean);
    const double bias =
        effective_parity_bias(DetectorModel::multiplexed(1, 1.0, 0.0), dist);
    single_port = std::max(single_port, std::abs(bias - (2.0 * std::exp(-mean) - 1.0)));
  }
  const bool ok = worst < 1e-12 && single_port < 1e-12;
  return {"multiplexed click law matches routing enumeration", ok,
          describe("max abs difference ", worst) +
              describe(", single-port identity error ", single_port)};
}

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed) {
  return {
      check_series_vs_closed(), check_thermal_even_odd(),
      check_phase_averaging(),  check_rounding_claims(),
      check_monte_carlo(seed),  check_detector_oracles(),
  };
}

}  // namespace pqrng

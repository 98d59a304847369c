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

#include "pqrng/detector_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pqrng/compensated_sum.hpp"
#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

constexpr double kWorkLimit = 1e8;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(what) + " must lie in [0, 1]");
  }
}

// log(k!) for k = 0..n.
std::vector<double> log_factorials(std::uint64_t n) {
  std::vector<double> out(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    out[k] = std::lgamma(static_cast<double>(k) + 1.0);
  }
  return out;
}

// Binomial(n, p) pmf over k = 0..n.
std::vector<double> binomial_row(std::uint64_t n, double p,
                                 const std::vector<double>& log_fact) {
  std::vector<double> row(n + 1, 0.0);
  if (p >= 1.0) {
    row[n] = 1.0;
    return row;
  }
  if (p <= 0.0) {
    row[0] = 1.0;
    return row;
  }
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double log_mass = log_fact[n] - log_fact[k] - log_fact[n - k] +
                            static_cast<double>(k) * log_p +
                            static_cast<double>(n - k) * log_q;
    row[k] = std::exp(log_mass);
  }
  return row;
}

// Law of the number of occupied ports as photons are dropped one at a time
// into `ports` equiprobable ports: j -> j with j/M, j -> j+1 with (M-j)/M.
// After k photons this is C(M,j) j! S(k,j) / M^k.
class OccupancyChain {
 public:
  explicit OccupancyChain(std::uint64_t ports)
      : ports_(static_cast<double>(ports)), max_(ports), law_{1.0} {}

  const std::vector<double>& law() const noexcept { return law_; }

  void add_photon() {
    const std::size_t width = std::min<std::uint64_t>(law_.size() + 1, max_ + 1);
    std::vector<double> next(width, 0.0);
    for (std::size_t j = 0; j < law_.size(); ++j) {
      const double mass = law_[j];
      if (mass == 0.0) continue;
      const double occupied = static_cast<double>(j) / ports_;
      next[j] += mass * occupied;
      if (j < max_) next[j + 1] += mass * (1.0 - occupied);
    }
    law_ = std::move(next);
  }

 private:
  double ports_;
  std::uint64_t max_;
  std::vector<double> law_;
};

std::uint64_t thin(std::uint64_t n, double efficiency, SeededGenerator& gen) {
  if (efficiency >= 1.0) return n;
  std::uint64_t survivors = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (gen.bernoulli(efficiency)) ++survivors;
  }
  return survivors;
}

void check_work(const DetectorModel& model, std::uint64_t true_n) {
  const double n = static_cast<double>(true_n) + 1.0;
  const double ports = static_cast<double>(model.ports());
  double work = n * std::min(ports, n);
  if (model.dark_click_prob() > 0.0) work += std::min(ports, n) * ports;
  if (work > kWorkLimit) {
    throw SizeError("exact click distribution for true_n=" +
                    std::to_string(true_n) + " over " +
                    std::to_string(model.ports()) +
                    " ports exceeds the work limit");
  }
}

// <(-1)^reported> given k surviving photons, for k = 0..max_k.
std::vector<double> parity_given_survivors(const DetectorModel& model,
                                           std::uint64_t max_k) {
  std::vector<double> out(max_k + 1);
  switch (model.kind()) {
    case DetectorKind::Ideal:
      for (std::uint64_t k = 0; k <= max_k; ++k) out[k] = k % 2 ? -1.0 : 1.0;
      break;
    case DetectorKind::SaturatingPNR:
      for (std::uint64_t k = 0; k <= max_k; ++k) {
        out[k] = std::min(k, model.max_count()) % 2 ? -1.0 : 1.0;
      }
      break;
    case DetectorKind::Multiplexed: {
      // Each of the M - j dark ports flips parity with probability p_d, so
      // contributes a factor (1 - 2 p_d).
      const double dark_factor = 1.0 - 2.0 * model.dark_click_prob();
      OccupancyChain chain(model.ports());
      for (std::uint64_t k = 0; k <= max_k; ++k) {
        if (k > 0) chain.add_photon();
        const auto& law = chain.law();
        CompensatedSum sum;
        for (std::size_t j = 0; j < law.size(); ++j) {
          const double sign = j % 2 ? -1.0 : 1.0;
          const double dark =
              std::pow(dark_factor, static_cast<double>(model.ports() - j));
          sum += sign * law[j] * dark;
        }
        out[k] = sum.value();
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::Ideal:
      return "ideal";
    case DetectorKind::SaturatingPNR:
      return "saturating";
    case DetectorKind::Multiplexed:
      return "multiplexed";
  }
  return "unknown";
}

std::optional<DetectorKind> parse_detector_kind(std::string_view name) {
  if (name == "ideal") return DetectorKind::Ideal;
  if (name == "saturating") return DetectorKind::SaturatingPNR;
  if (name == "multiplexed") return DetectorKind::Multiplexed;
  return std::nullopt;
}

DetectorModel DetectorModel::ideal() { return DetectorModel(); }

DetectorModel DetectorModel::saturating(double efficiency,
                                        std::uint64_t max_count) {
  check_probability(efficiency, "detector efficiency");
  if (max_count < 1) throw ParameterError("max_count must be >= 1");
  DetectorModel model;
  model.kind_ = DetectorKind::SaturatingPNR;
  model.efficiency_ = efficiency;
  model.max_count_ = max_count;
  return model;
}

DetectorModel DetectorModel::multiplexed(std::uint64_t ports, double efficiency,
                                         double dark_click_prob) {
  check_probability(efficiency, "detector efficiency");
  if (ports < 1 || ports > kMaxPorts) {
    throw ParameterError("port count must lie in [1, " +
                         std::to_string(kMaxPorts) + "]");
  }
  if (!(dark_click_prob >= 0.0 && dark_click_prob < 1.0)) {
    throw ParameterError("dark click probability must lie in [0, 1)");
  }
  DetectorModel model;
  model.kind_ = DetectorKind::Multiplexed;
  model.efficiency_ = efficiency;
  model.ports_ = ports;
  model.dark_click_prob_ = dark_click_prob;
  return model;
}

std::uint64_t detect_count(const DetectorModel& model, std::uint64_t true_n,
                           SeededGenerator& gen, DetectorScratch& scratch) {
  switch (model.kind()) {
    case DetectorKind::Ideal:
      return true_n;
    case DetectorKind::SaturatingPNR:
      return std::min(thin(true_n, model.efficiency(), gen), model.max_count());
    case DetectorKind::Multiplexed:
      break;
  }
  const std::uint64_t survivors = thin(true_n, model.efficiency(), gen);
  const std::uint64_t ports = model.ports();
  auto& lit = scratch.lit;
  lit.assign(ports, 0);
  for (std::uint64_t i = 0; i < survivors; ++i) lit[gen.bounded(ports)] = 1;
  if (model.dark_click_prob() > 0.0) {
    for (auto& port : lit) {
      if (gen.bernoulli(model.dark_click_prob())) port = 1;
    }
  }
  return static_cast<std::uint64_t>(std::count(lit.begin(), lit.end(), 1));
}

DetectionOutcome detect(const DetectorModel& model, std::uint64_t true_n,
                        SeededGenerator& gen) {
  DetectorScratch scratch;
  DetectionOutcome outcome;
  outcome.true_count = true_n;
  outcome.reported_count = detect_count(model, true_n, gen, scratch);
  if (model.kind() == DetectorKind::Multiplexed) {
    outcome.clicks.assign(scratch.lit.begin(), scratch.lit.end());
  }
  return outcome;
}

std::vector<double> click_distribution_exact(const DetectorModel& model,
                                             std::uint64_t true_n) {
  if (model.kind() == DetectorKind::Ideal) {
    std::vector<double> out(true_n + 1, 0.0);
    out[true_n] = 1.0;
    return out;
  }
  const auto log_fact = log_factorials(true_n);
  const auto thinned = binomial_row(true_n, model.efficiency(), log_fact);

  if (model.kind() == DetectorKind::SaturatingPNR) {
    std::vector<double> out(std::min(true_n, model.max_count()) + 1, 0.0);
    for (std::uint64_t k = 0; k <= true_n; ++k) {
      out[std::min(k, model.max_count())] += thinned[k];
    }
    return out;
  }

  check_work(model, true_n);
  const std::uint64_t ports = model.ports();
  std::vector<double> lit_law(std::min(ports, true_n) + 1, 0.0);
  OccupancyChain chain(ports);
  for (std::uint64_t k = 0; k <= true_n; ++k) {
    if (k > 0) chain.add_photon();
    if (thinned[k] == 0.0) continue;
    const auto& law = chain.law();
    for (std::size_t j = 0; j < law.size(); ++j) lit_law[j] += thinned[k] * law[j];
  }

  const double p_dark = model.dark_click_prob();
  if (p_dark == 0.0) return lit_law;

  std::vector<double> out(ports + 1, 0.0);
  const auto dark_log_fact = log_factorials(ports);
  for (std::size_t j = 0; j < lit_law.size(); ++j) {
    if (lit_law[j] == 0.0) continue;
    const auto dark = binomial_row(ports - j, p_dark, dark_log_fact);
    for (std::size_t d = 0; d < dark.size(); ++d) out[j + d] += lit_law[j] * dark[d];
  }
  return out;
}

double effective_parity_bias(const DetectorModel& model,
                             const PhotonDistribution& dist,
                             const TruncationPolicy& policy) {
  const auto masses = pmf_table(dist, policy);
  const std::uint64_t max_n = masses.size() - 1;
  const auto parity = parity_given_survivors(model, max_n);
  const double efficiency = model.efficiency();

  CompensatedSum total;
  if (efficiency >= 1.0) {
    for (std::uint64_t n = 0; n <= max_n; ++n) total += masses[n] * parity[n];
    return total.value();
  }
  const auto log_fact = log_factorials(max_n);
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    if (masses[n] == 0.0) continue;
    const auto thinned = binomial_row(n, efficiency, log_fact);
    CompensatedSum given_n;
    for (std::uint64_t k = 0; k <= n; ++k) given_n += thinned[k] * parity[k];
    total += masses[n] * given_n.value();
  }
  return total.value();
}

}  // namespace pqrng

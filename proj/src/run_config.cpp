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

#include "pqrng/run_config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <set>
#include <string_view>

#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ParameterError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ParameterError("unknown key '" + std::string(where) + "." +
                           item.key() + "'");
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, std::string_view where, T& out) {
  const auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->template get<T>();
  } catch (const json::exception&) {
    throw ParameterError("key '" + std::string(where) + "." + key +
                         "' has the wrong type");
  }
}

std::string read_string(const json& obj, const char* key, std::string_view where,
                        std::string fallback) {
  read(obj, key, where, fallback);
  return fallback;
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ParameterError(std::string(what) + " must be finite");
}

}  // namespace

void RunConfig::validate() const {
  make_source();
  make_detector();
  if (pulses < 1) throw ParameterError("pulses must be >= 1");
  if (out.empty()) throw ParameterError("output path must not be empty");
  if (analysis.block_len < 20) {
    throw ParameterError("analysis.block_len must be >= 20");
  }
  for (std::size_t lag : analysis.serial_lags) {
    if (lag < 1) throw ParameterError("analysis.serial_lags entries must be >= 1");
  }
}

PhotonDistribution RunConfig::make_source() const {
  if (source.kind == SourceKind::Custom) {
    if (source.pmf.empty()) {
      throw ParameterError("custom source needs source.pmf or source.pmf_file");
    }
    return PhotonDistribution::custom(source.pmf);
  }
  if (!source.pmf.empty()) {
    throw ParameterError("source.pmf is only valid for the custom source");
  }
  return PhotonDistribution::analytic(source.kind, source.mean_photons);
}

DetectorModel RunConfig::make_detector() const {
  check_finite(detector.efficiency, "detector.efficiency");
  check_finite(detector.dark_prob, "detector.dark_prob");
  switch (detector.kind) {
    case DetectorKind::Ideal:
      if (detector.efficiency != 1.0) {
        throw ParameterError("the ideal detector has efficiency 1");
      }
      return DetectorModel::ideal();
    case DetectorKind::SaturatingPNR:
      return DetectorModel::saturating(detector.efficiency, detector.max_count);
    case DetectorKind::Multiplexed:
      return DetectorModel::multiplexed(detector.ports, detector.efficiency,
                                        detector.dark_prob);
  }
  throw ParameterError("unknown detector kind");
}

std::vector<double> parse_pmf_text(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw FormatError("pmf file: cannot parse a number at offset " +
                        std::to_string(i));
    }
    out.push_back(value);
    i = static_cast<std::size_t>(end - text.data());
  }
  if (out.empty()) throw FormatError("pmf file holds no probabilities");
  return out;
}

void resolve_pmf_file(RunConfig& config, const std::filesystem::path& base_dir) {
  if (config.source.pmf_file.empty()) return;
  std::filesystem::path path(config.source.pmf_file);
  if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
  config.source.pmf = parse_pmf_text(read_text_file(path));
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  reject_unknown(j, "config",
                 {"source", "detector", "pulses", "seed", "debias", "format",
                  "out", "report", "workers", "analysis", "provenance"});
  RunConfig config;

  if (const auto it = j.find("source"); it != j.end()) {
    const json& s = *it;
    reject_unknown(s, "source", {"kind", "mean_photons", "pmf", "pmf_file"});
    const auto kind = read_string(s, "kind", "source", "coherent");
    const auto parsed = parse_source_kind(kind);
    if (!parsed) throw ParameterError("unknown source kind '" + kind + "'");
    config.source.kind = *parsed;
    read(s, "mean_photons", "source", config.source.mean_photons);
    read(s, "pmf", "source", config.source.pmf);
    read(s, "pmf_file", "source", config.source.pmf_file);
  }

  if (const auto it = j.find("detector"); it != j.end()) {
    const json& d = *it;
    reject_unknown(d, "detector",
                   {"kind", "efficiency", "ports", "dark_prob", "max_count"});
    const auto kind = read_string(d, "kind", "detector", "ideal");
    const auto parsed = parse_detector_kind(kind);
    if (!parsed) throw ParameterError("unknown detector kind '" + kind + "'");
    config.detector.kind = *parsed;
    read(d, "efficiency", "detector", config.detector.efficiency);
    read(d, "ports", "detector", config.detector.ports);
    read(d, "dark_prob", "detector", config.detector.dark_prob);
    read(d, "max_count", "detector", config.detector.max_count);
  }

  read(j, "pulses", "config", config.pulses);
  read(j, "seed", "config", config.seed);
  read(j, "debias", "config", config.debias);
  const auto format = read_string(j, "format", "config", "raw");
  const auto parsed_format = parse_bit_format(format);
  if (!parsed_format) throw ParameterError("unknown format '" + format + "'");
  config.format = *parsed_format;
  read(j, "out", "config", config.out);
  read(j, "report", "config", config.report);
  read(j, "workers", "config", config.workers);

  if (const auto it = j.find("analysis"); it != j.end()) {
    const json& a = *it;
    reject_unknown(a, "analysis",
                   {"monobit", "runs", "block_frequency", "block_len",
                    "serial_lags"});
    read(a, "monobit", "analysis", config.analysis.monobit);
    read(a, "runs", "analysis", config.analysis.runs);
    read(a, "block_frequency", "analysis", config.analysis.block_frequency);
    read(a, "block_len", "analysis", config.analysis.block_len);
    read(a, "serial_lags", "analysis", config.analysis.serial_lags);
  }
  if (const auto it = j.find("provenance"); it != j.end() && !it->is_object()) {
    throw ParameterError("provenance must be a JSON object");
  }

  resolve_pmf_file(config, base_dir);
  config.validate();
  return config;
}

json config_to_json(const RunConfig& config) {
  json j;
  json source = {{"kind", std::string(to_string(config.source.kind))}};
  if (config.source.kind == SourceKind::Custom) {
    source["pmf"] = config.source.pmf;
  } else {
    source["mean_photons"] = config.source.mean_photons;
  }
  j["source"] = std::move(source);
  j["detector"] = {
      {"kind", std::string(to_string(config.detector.kind))},
      {"efficiency", config.detector.efficiency},
      {"ports", config.detector.ports},
      {"dark_prob", config.detector.dark_prob},
      {"max_count", config.detector.max_count},
  };
  j["pulses"] = config.pulses;
  j["seed"] = config.seed;
  j["debias"] = config.debias;
  j["format"] = std::string(to_string(config.format));
  j["out"] = config.out;
  j["report"] = config.report;
  j["analysis"] = {
      {"monobit", config.analysis.monobit},
      {"runs", config.analysis.runs},
      {"block_frequency", config.analysis.block_frequency},
      {"block_len", config.analysis.block_len},
      {"serial_lags", config.analysis.serial_lags},
  };
  return j;
}

RunConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

}  // namespace pqrng

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

#include "pqrng/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>

#include "pqrng/bit_pipeline.hpp"
#include "pqrng/bitstream_io.hpp"
#include "pqrng/errors.hpp"
#include "pqrng/randomness_analysis.hpp"
#include "pqrng/verify.hpp"

namespace pqrng {
namespace {

using nlohmann::json;

template <typename Fn>
int guarded(std::ostream& err, const char* command, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << command << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << command << ": " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << command << ": " << e.what() << '\n';
    return kExitValidation;
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

SourceKind source_kind_or_throw(const std::string& name) {
  const auto kind = parse_source_kind(name);
  if (!kind) throw ParameterError("unknown source kind '" + name + "'");
  return *kind;
}

DetectorKind detector_kind_or_throw(const std::string& name) {
  const auto kind = parse_detector_kind(name);
  if (!kind) throw ParameterError("unknown detector kind '" + name + "'");
  return *kind;
}

BitFormat format_or_throw(const std::string& name) {
  const auto format = parse_bit_format(name);
  if (!format) throw ParameterError("unknown format '" + name + "'");
  return *format;
}

// Flag values plus their CLI11 handles, so only flags actually given
// override a config file.
struct SourceFlags {
  std::string kind;
  double mean_photons = 0.0;
  std::string pmf_file;
  CLI::Option* kind_opt = nullptr;
  CLI::Option* mean_opt = nullptr;
  CLI::Option* pmf_opt = nullptr;

  void add(CLI::App& app) {
    kind_opt = app.add_option("--source", kind,
                              "coherent | thermal | phase-averaged | custom");
    mean_opt = app.add_option("--mean-photons", mean_photons, "mean photon number");
    pmf_opt = app.add_option("--pmf-file", pmf_file, "custom pmf table");
  }
  bool given() const {
    return kind_opt->count() + mean_opt->count() + pmf_opt->count() > 0;
  }
  void apply(SourceConfig& source) const {
    if (kind_opt->count()) source.kind = source_kind_or_throw(kind);
    if (mean_opt->count()) source.mean_photons = mean_photons;
    if (pmf_opt->count()) {
      source.pmf_file = pmf_file;
      source.pmf = parse_pmf_text(read_text_file(pmf_file));
    }
  }
};

struct DetectorFlags {
  std::string kind;
  double efficiency = 1.0;
  std::uint64_t ports = 0;
  double dark_prob = 0.0;
  std::uint64_t max_count = 0;
  std::vector<CLI::Option*> opts;
  CLI::Option* kind_opt = nullptr;

  void add(CLI::App& app) {
    kind_opt = app.add_option("--detector", kind, "ideal | saturating | multiplexed");
    opts = {
        kind_opt,
        app.add_option("--efficiency", efficiency, "per-photon detection efficiency"),
        app.add_option("--ports", ports, "multiplexed port count"),
        app.add_option("--dark-prob", dark_prob, "dark click probability per port"),
        app.add_option("--max-count", max_count, "saturating clip point"),
    };
  }
  bool given() const {
    for (auto* o : opts) {
      if (o->count()) return true;
    }
    return false;
  }
  void apply(DetectorConfig& detector) const {
    if (opts[0]->count()) detector.kind = detector_kind_or_throw(kind);
    if (opts[1]->count()) detector.efficiency = efficiency;
    if (opts[2]->count()) detector.ports = ports;
    if (opts[3]->count()) detector.dark_prob = dark_prob;
    if (opts[4]->count()) detector.max_count = max_count;
  }
};

PhotonDistribution build_source(const SourceConfig& source) {
  RunConfig tmp;
  tmp.source = source;
  return tmp.make_source();
}

DetectorModel build_detector(const DetectorConfig& detector) {
  RunConfig tmp;
  tmp.detector = detector;
  return tmp.make_detector();
}

}  // namespace

std::string metadata_path_for(const std::string& bits_path) {
  return bits_path + ".json";
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "generate", [&] {
    config.validate();
    const auto dist = config.make_source();
    const auto model = config.make_detector();

    std::mutex progress_mutex;
    std::uint64_t reported_decile = 0;
    PipelineOptions options;
    options.debias = config.debias;
    options.workers = config.workers;
    options.progress = [&](std::uint64_t done, std::uint64_t total) {
      const std::uint64_t decile = done * 10 / total;
      std::lock_guard lock(progress_mutex);
      if (decile > reported_decile) {
        reported_decile = decile;
        err << "generate: " << done << '/' << total << " pulses\n";
      }
    };
    const auto result = run_pipeline(dist, model, config.pulses, config.seed, options);
    const auto& stream = result.stream;

    write_bits_file(config.out, stream.bits, config.format);
    json meta = config_to_json(config);
    meta["provenance"] = stream_metadata_to_json(stream.meta);
    const std::string meta_path = metadata_path_for(config.out);
    write_text_file(meta_path, dump(meta));

    json summary = {
        {"bits", config.out},
        {"metadata", meta_path},
        {"bits_produced", stream.meta.bits_produced},
        {"pulses_consumed", stream.meta.pulses_consumed},
    };
    if (!config.report.empty()) {
      const auto report = analyze_bits(stream.bits, dist, model, config.analysis);
      write_text_file(config.report, dump(report_to_json(report)));
      err << report_summary(report);
      summary["report"] = config.report;
    }
    out << summary.dump() << '\n';
    return kExitOk;
  });
}

int cmd_analyze(const AnalyzeRequest& request, std::ostream& out,
                std::ostream& err) {
  return guarded(err, "analyze", [&] {
    BitFormat format = request.format.value_or(BitFormat::Raw);
    std::optional<std::size_t> bit_count = request.bit_count;
    std::optional<PhotonDistribution> source;
    std::optional<DetectorModel> detector;

    std::string metadata = request.metadata;
    if (metadata.empty() &&
        std::filesystem::is_regular_file(metadata_path_for(request.input))) {
      metadata = metadata_path_for(request.input);
    }
    if (!metadata.empty()) {
      const std::filesystem::path meta_path(metadata);
      json meta;
      try {
        meta = json::parse(read_text_file(meta_path));
      } catch (const json::parse_error& e) {
        throw FormatError("metadata " + metadata + ": " + e.what());
      }
      const RunConfig config = config_from_json(meta, meta_path.parent_path());
      if (!request.format) format = config.format;
      const auto prov = meta.find("provenance");
      if (!bit_count && prov != meta.end() && prov->contains("bits_produced")) {
        bit_count = (*prov)["bits_produced"].get<std::size_t>();
      }
      // A debiased stream no longer follows the source's parity law.
      if (!config.debias) {
        source = config.make_source();
        detector = config.make_detector();
      }
    }
    if (request.source) source = build_source(*request.source);
    if (request.detector) detector = build_detector(*request.detector);
    if (!source) detector.reset();

    const auto bits = read_bits_file(request.input, format, bit_count);
    const auto report = analyze_bits(bits, source, detector, request.analysis);
    const std::string document = dump(report_to_json(report));
    if (request.report.empty()) {
      out << document;
    } else {
      write_text_file(request.report, document);
    }
    err << report_summary(report);
    return kExitOk;
  });
}

int cmd_sweep(const SweepRequest& request, std::ostream& out, std::ostream& err) {
  return guarded(err, "sweep", [&] {
    if (request.kind == SourceKind::Custom) {
      throw ParameterError("sweep needs an analytic source kind");
    }
    if (request.grid.empty()) throw ParameterError("sweep grid is empty");
    const auto detector = build_detector(request.detector);
    const auto rows = bias_sweep(request.kind, request.grid, detector);
    if (request.out.empty()) {
      write_sweep_csv(out, rows);
    } else {
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      write_text_file(request.out, csv.str());
      err << "sweep: " << rows.size() << " rows written to " << request.out << '\n';
    }
    return kExitOk;
  });
}

int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream& err) {
  return guarded(err, "verify", [&] {
    int failures = 0;
    for (const auto& check : run_verification(seed)) {
      out << (check.passed ? "PASS  " : "FAIL  ") << check.name << "  ("
          << check.detail << ")\n";
      if (!check.passed) ++failures;
    }
    if (failures > 0) {
      err << "verify: " << failures << " check(s) failed\n";
      return static_cast<int>(kExitVerification);
    }
    return static_cast<int>(kExitOk);
  });
}

std::vector<double> parse_grid(const std::string& text) {
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
      throw ParameterError("cannot parse grid value '" + s + "'");
    }
    return v;
  };
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ':');) parts.push_back(to_double(item));
    if (parts.size() != 3 || parts[2] <= 0.0 || parts[1] < parts[0]) {
      throw ParameterError("grid range must be start:stop:step with step > 0");
    }
    const auto steps = static_cast<std::uint64_t>(
        std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (std::uint64_t i = 0; i <= steps; ++i) {
      grid.push_back(parts[0] + static_cast<double>(i) * parts[2]);
    }
    return grid;
  }
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) grid.push_back(to_double(item));
  if (grid.empty()) throw ParameterError("grid is empty");
  return grid;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Photon-number parity random bit generator simulator", "pqrng"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "simulate a pulse train and write bits");
  std::string config_path;
  SourceFlags gen_source;
  DetectorFlags gen_detector;
  std::uint64_t pulses = 0;
  std::uint64_t seed = 0;
  bool debias = false;
  std::string format;
  std::string out_path;
  std::string report_path;
  unsigned workers = 0;
  generate->add_option("--config", config_path, "JSON run configuration");
  gen_source.add(*generate);
  gen_detector.add(*generate);
  auto* pulses_opt = generate->add_option("--pulses", pulses, "number of pulses");
  auto* seed_opt = generate->add_option("--seed", seed, "master seed");
  auto* debias_opt = generate->add_flag("--debias", debias, "von Neumann debiasing");
  auto* format_opt = generate->add_option("--format", format, "raw | ascii | hex");
  auto* out_opt = generate->add_option("--out", out_path, "bitstream output path");
  auto* report_opt = generate->add_option("--report", report_path, "analysis report path");
  auto* workers_opt = generate->add_option("--workers", workers, "worker threads (0 = all)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "analyse a bitstream file");
  std::string input;
  std::string an_format;
  std::string meta_path;
  std::size_t bit_count = 0;
  std::string an_report;
  std::size_t block_len = AnalysisOptions{}.block_len;
  SourceFlags an_source;
  DetectorFlags an_detector;
  analyze->add_option("input", input, "bitstream file")->required();
  auto* an_format_opt = analyze->add_option("--format", an_format, "raw | ascii | hex");
  analyze->add_option("--meta", meta_path, "metadata document written by generate");
  auto* bits_opt = analyze->add_option("--bits", bit_count, "number of valid bits");
  analyze->add_option("--report", an_report, "report path (default: stdout)");
  analyze->add_option("--block-len", block_len, "block frequency test block length");
  an_source.add(*analyze);
  an_detector.add(*analyze);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "tabulate parity and bias over n");
  std::string sweep_kind = "coherent";
  std::string grid_spec = "0:16:1";
  std::string sweep_out;
  DetectorFlags sweep_detector;
  sweep->add_option("--source", sweep_kind, "coherent | thermal | phase-averaged");
  sweep->add_option("--mean-photons", grid_spec, "grid: start:stop:step or a,b,c");
  sweep->add_option("--out", sweep_out, "CSV path (default: stdout)");
  sweep_detector.add(*sweep);

  // verify
  auto* verify = app.add_subcommand("verify", "run the self-check battery");
  std::uint64_t verify_seed = 20260101;
  verify->add_option("--seed", verify_seed, "seed for the Monte-Carlo checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    const int code = app.exit(e, sink, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (generate->parsed()) {
    RunConfig config;
    const int load = guarded(err, "generate", [&] {
      if (!config_path.empty()) config = load_config(config_path);
      gen_source.apply(config.source);
      gen_detector.apply(config.detector);
      if (pulses_opt->count()) config.pulses = pulses;
      if (seed_opt->count()) config.seed = seed;
      if (debias_opt->count()) config.debias = debias;
      if (format_opt->count()) config.format = format_or_throw(format);
      if (out_opt->count()) config.out = out_path;
      if (report_opt->count()) config.report = report_path;
      if (workers_opt->count()) config.workers = workers;
      config.validate();
      return static_cast<int>(kExitOk);
    });
    if (load != kExitOk) return load;
    return cmd_generate(config, out, err);
  }

  if (analyze->parsed()) {
    AnalyzeRequest request;
    const int load = guarded(err, "analyze", [&] {
      request.input = input;
      if (an_format_opt->count()) request.format = format_or_throw(an_format);
      if (bits_opt->count()) request.bit_count = bit_count;
      request.metadata = meta_path;
      request.report = an_report;
      request.analysis.block_len = block_len;
      if (an_source.given()) {
        SourceConfig source;
        an_source.apply(source);
        request.source = source;
      }
      if (an_detector.given()) {
        DetectorConfig detector;
        an_detector.apply(detector);
        request.detector = detector;
      }
      return static_cast<int>(kExitOk);
    });
    if (load != kExitOk) return load;
    return cmd_analyze(request, out, err);
  }

  if (sweep->parsed()) {
    SweepRequest request;
    const int load = guarded(err, "sweep", [&] {
      request.kind = source_kind_or_throw(sweep_kind);
      request.grid = parse_grid(grid_spec);
      sweep_detector.apply(request.detector);
      request.out = sweep_out;
      return static_cast<int>(kExitOk);
    });
    if (load != kExitOk) return load;
    return cmd_sweep(request, out, err);
  }

  return cmd_verify(verify_seed, out, err);
}

}  // namespace pqrng

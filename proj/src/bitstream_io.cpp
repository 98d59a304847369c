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

#include "pqrng/bitstream_io.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "pqrng/errors.hpp"

namespace pqrng {
namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

PackedBits checked_bytes(std::vector<std::uint8_t> bytes,
                         std::optional<std::size_t> bit_count) {
  const std::size_t available = bytes.size() * 8;
  const std::size_t count = bit_count.value_or(available);
  if (count > available || (bytes.size() > 0 && count <= available - 8)) {
    throw FormatError("declared bit count " + std::to_string(count) +
                      " does not match " + std::to_string(bytes.size()) +
                      " bytes of data");
  }
  return PackedBits::from_bytes(std::move(bytes), count);
}

}  // namespace

std::string_view to_string(BitFormat format) {
  switch (format) {
    case BitFormat::Raw:
      return "raw";
    case BitFormat::Ascii:
      return "ascii";
    case BitFormat::Hex:
      return "hex";
  }
  return "unknown";
}

std::optional<BitFormat> parse_bit_format(std::string_view name) {
  if (name == "raw") return BitFormat::Raw;
  if (name == "ascii") return BitFormat::Ascii;
  if (name == "hex") return BitFormat::Hex;
  return std::nullopt;
}

std::string encode_bits(const PackedBits& bits, BitFormat format) {
  const auto& bytes = bits.bytes();
  std::string out;
  switch (format) {
    case BitFormat::Raw:
      out.assign(bytes.begin(), bytes.end());
      break;
    case BitFormat::Ascii:
      out.reserve(bits.size());
      for (std::size_t i = 0; i < bits.size(); ++i) out.push_back(bits[i] ? '1' : '0');
      break;
    case BitFormat::Hex:
      out.reserve(bytes.size() * 2);
      for (std::uint8_t b : bytes) {
        out.push_back(kHexDigits[b >> 4]);
        out.push_back(kHexDigits[b & 0xF]);
      }
      break;
  }
  return out;
}

PackedBits decode_bits(std::string_view data, BitFormat format,
                       std::optional<std::size_t> bit_count) {
  switch (format) {
    case BitFormat::Raw:
      return checked_bytes(std::vector<std::uint8_t>(data.begin(), data.end()),
                           bit_count);
    case BitFormat::Ascii: {
      PackedBits bits;
      bits.reserve(data.size());
      for (char c : data) {
        if (c == '0' || c == '1') {
          bits.push_back(c == '1');
        } else if (!is_space(c)) {
          throw FormatError("ascii bitstream contains a character other than "
                            "'0', '1' or whitespace");
        }
      }
      if (bit_count && *bit_count != bits.size()) {
        throw FormatError("declared bit count " + std::to_string(*bit_count) +
                          " but the file holds " + std::to_string(bits.size()));
      }
      return bits;
    }
    case BitFormat::Hex: {
      std::vector<std::uint8_t> bytes;
      bytes.reserve(data.size() / 2);
      int high = -1;
      for (char c : data) {
        if (is_space(c)) continue;
        const int v = hex_value(c);
        if (v < 0) throw FormatError("hex bitstream contains a non-hex character");
        if (high < 0) {
          high = v;
        } else {
          bytes.push_back(static_cast<std::uint8_t>(high << 4 | v));
          high = -1;
        }
      }
      if (high >= 0) throw FormatError("hex bitstream has an odd number of digits");
      return checked_bytes(std::move(bytes), bit_count);
    }
  }
  throw FormatError("unknown bit format");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_bits_file(const std::filesystem::path& path, const PackedBits& bits,
                     BitFormat format) {
  write_text_file(path, encode_bits(bits, format));
}

PackedBits read_bits_file(const std::filesystem::path& path, BitFormat format,
                          std::optional<std::size_t> bit_count) {
  return decode_bits(read_text_file(path), format, bit_count);
}

nlohmann::json source_to_json(const PhotonDistribution& dist) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(dist.kind()));
  if (dist.kind() == SourceKind::Custom) {
    const auto table = dist.pmf_table();
    j["pmf"] = std::vector<double>(table.begin(), table.end());
  } else {
    j["mean_photons"] = dist.mean_photons();
  }
  return j;
}

nlohmann::json detector_to_json(const DetectorModel& model) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(model.kind()));
  switch (model.kind()) {
    case DetectorKind::Ideal:
      break;
    case DetectorKind::SaturatingPNR:
      j["efficiency"] = model.efficiency();
      j["max_count"] = model.max_count();
      break;
    case DetectorKind::Multiplexed:
      j["efficiency"] = model.efficiency();
      j["ports"] = model.ports();
      j["dark_prob"] = model.dark_click_prob();
      break;
  }
  return j;
}

nlohmann::json stream_metadata_to_json(const StreamMetadata& meta) {
  nlohmann::json j;
  j["source"] = source_to_json(meta.source);
  j["detector"] = detector_to_json(meta.detector);
  j["master_seed"] = meta.master_seed;
  j["debias"] = meta.debiased ? "von-neumann" : "none";
  j["bit_convention"] = std::string(kBitConvention);
  j["pulse_model"] = std::string(kPulseModel);
  j["chunk_pulses"] = meta.chunk_pulses;
  j["pulses_consumed"] = meta.pulses_consumed;
  j["raw_bits"] = meta.raw_bits;
  j["bits_produced"] = meta.bits_produced;
  return j;
}

}  // namespace pqrng

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

#ifndef PQRNG_BITSTREAM_IO_HPP_
#define PQRNG_BITSTREAM_IO_HPP_

// Bitstream serialization.
//
//   raw    packed bytes, most significant bit first, final partial byte
//          zero-padded. The bit count travels in the metadata document.
//   ascii  one '0' or '1' character per bit, no separators.
//   hex    the raw bytes as lowercase hex, two digits per byte.
//
// Decoders ignore ASCII whitespace in ascii and hex input.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pqrng/bit_pipeline.hpp"

namespace pqrng {

enum class BitFormat { Raw, Ascii, Hex };

std::string_view to_string(BitFormat format);
std::optional<BitFormat> parse_bit_format(std::string_view name);

std::string encode_bits(const PackedBits& bits, BitFormat format);

// Without bit_count, raw and hex decode to 8 bits per byte. Throws
// FormatError on malformed input.
PackedBits decode_bits(std::string_view data, BitFormat format,
                       std::optional<std::size_t> bit_count = std::nullopt);

// Throw IoError on file-system failures.
void write_bits_file(const std::filesystem::path& path, const PackedBits& bits,
                     BitFormat format);
PackedBits read_bits_file(const std::filesystem::path& path, BitFormat format,
                          std::optional<std::size_t> bit_count = std::nullopt);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

nlohmann::json source_to_json(const PhotonDistribution& dist);
nlohmann::json detector_to_json(const DetectorModel& model);

// Provenance block of a stream: source, detector, seed, debias mode, bit
// convention, chunking, and pulse/bit counts.
nlohmann::json stream_metadata_to_json(const StreamMetadata& meta);

}  // namespace pqrng

#endif  // PQRNG_BITSTREAM_IO_HPP_

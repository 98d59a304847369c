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

#ifndef PQRNG_PACKED_BITS_HPP_
#define PQRNG_PACKED_BITS_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pqrng {

// Bit sequence packed most-significant-bit first within each byte. The unused
// low bits of the final byte are always zero, so the byte buffer is the raw
// serialized form.
class PackedBits {
 public:
  PackedBits() = default;
  PackedBits(std::initializer_list<int> bits);

  // Each element must be 0 or 1.
  static PackedBits from_bits(std::span<const std::uint8_t> bits);
  // Bits past bit_count in the last byte are cleared.
  static PackedBits from_bytes(std::vector<std::uint8_t> bytes,
                               std::size_t bit_count);

  void reserve(std::size_t bit_count) { bytes_.reserve((bit_count + 7) / 8); }

  void push_back(bool bit) {
    if (size_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ % 8));
    ++size_;
  }

  bool operator[](std::size_t i) const {
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  void append(const PackedBits& other);

  std::size_t count_ones() const noexcept;
  std::vector<std::uint8_t> unpack() const;

  bool operator==(const PackedBits&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

}  // namespace pqrng

#endif  // PQRNG_PACKED_BITS_HPP_

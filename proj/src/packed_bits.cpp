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

#include "pqrng/packed_bits.hpp"

#include <bit>

#include "pqrng/errors.hpp"

namespace pqrng {

PackedBits::PackedBits(std::initializer_list<int> bits) {
  reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw ParameterError("bits must be 0 or 1");
    push_back(b == 1);
  }
}

PackedBits PackedBits::from_bits(std::span<const std::uint8_t> bits) {
  PackedBits out;
  out.reserve(bits.size());
  for (std::uint8_t b : bits) {
    if (b > 1) throw ParameterError("bits must be 0 or 1");
    out.push_back(b == 1);
  }
  return out;
}

PackedBits PackedBits::from_bytes(std::vector<std::uint8_t> bytes,
                                  std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw ParameterError("bit count exceeds the byte buffer");
  }
  bytes.resize((bit_count + 7) / 8);
  if (bit_count % 8 != 0) {
    bytes.back() &= static_cast<std::uint8_t>(0xFFu << (8 - bit_count % 8));
  }
  PackedBits out;
  out.bytes_ = std::move(bytes);
  out.size_ = bit_count;
  return out;
}

void PackedBits::append(const PackedBits& other) {
  if (size_ % 8 == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    size_ += other.size_;
    return;
  }
  reserve(size_ + other.size_);
  for (std::size_t i = 0; i < other.size_; ++i) push_back(other[i]);
}

std::size_t PackedBits::count_ones() const noexcept {
  std::size_t ones = 0;
  for (std::uint8_t byte : bytes_) ones += std::popcount(byte);
  return ones;
}

std::vector<std::uint8_t> PackedBits::unpack() const {
  std::vector<std::uint8_t> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = (*this)[i];
  return out;
}

}  // namespace pqrng

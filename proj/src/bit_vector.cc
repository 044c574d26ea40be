// Copyright 2026 The argrw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "argrw/bit_vector.h"

#include <bit>
#include <stdexcept>

namespace argrw {

BitVector::BitVector(size_t num_bits)
    : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

BitVector BitVector::from_bits(std::initializer_list<int> bits) {
  BitVector v(bits.size());
  size_t i = 0;
  for (int b : bits) {
    if (b != 0 && b != 1) {
      throw std::invalid_argument("bit values must be 0 or 1");
    }
    v.set(i++, b == 1);
  }
  return v;
}

BitVector BitVector::from_bits(std::span<const uint8_t> bits) {
  BitVector v(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw std::invalid_argument("bit values must be 0 or 1");
    }
    v.set(i, bits[i] == 1);
  }
  return v;
}

BitVector BitVector::from_indices(size_t num_bits,
                                  std::span<const uint32_t> ones) {
  BitVector v(num_bits);
  for (uint32_t i : ones) {
    if (i >= num_bits) {
      throw std::out_of_range("bit index " + std::to_string(i) +
                              " out of range for length " +
                              std::to_string(num_bits));
    }
    v.set(i);
  }
  return v;
}

BitVector BitVector::from_string(std::string_view text) {
  BitVector v(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.set(i);
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit strings may only contain '0' and '1'");
    }
  }
  return v;
}

void BitVector::clear() {
  for (auto& w : words_) w = 0;
}

bool BitVector::none() const {
  for (uint64_t w : words_) {
    if (w) return false;
  }
  return true;
}

size_t BitVector::count() const {
  size_t n = 0;
  for (uint64_t w : words_) n += std::popcount(w);
  return n;
}

std::vector<uint32_t> BitVector::ones() const {
  std::vector<uint32_t> out;
  for (size_t k = 0; k < words_.size(); ++k) {
    uint64_t w = words_[k];
    while (w) {
      out.push_back(static_cast<uint32_t>(k * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<uint8_t> BitVector::to_bytes() const {
  std::vector<uint8_t> out(num_bits_);
  for (size_t i = 0; i < num_bits_; ++i) out[i] = get(i);
  return out;
}

std::string BitVector::to_string() const {
  std::string out(num_bits_, '0');
  for (size_t i = 0; i < num_bits_; ++i) {
    if (get(i)) out[i] = '1';
  }
  return out;
}

namespace {
void require_same_size(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("bit vector length mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}
}  // namespace

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_size(*this, other);
  for (size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_size(*this, other);
  for (size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
  return *this;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_size(*this, other);
  for (size_t k = 0; k < words_.size(); ++k) words_[k] |= other.words_[k];
  return *this;
}

bool BitVector::lex_less(const BitVector& other) const {
  size_t n = std::min(words_.size(), other.words_.size());
  for (size_t k = 0; k < n; ++k) {
    uint64_t diff = words_[k] ^ other.words_[k];
    if (diff) {
      int bit = std::countr_zero(diff);
      return ((words_[k] >> bit) & 1) == 0;
    }
  }
  return num_bits_ < other.num_bits_;
}

size_t BitVector::hash() const {
  // FNV-1a over words, folded with the length.
  uint64_t h = 0xcbf29ce484222325ULL ^ num_bits_;
  for (uint64_t w : words_) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<size_t>(h);
}

}  // namespace argrw

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

#ifndef ARGRW_BIT_VECTOR_H_
#define ARGRW_BIT_VECTOR_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace argrw {

// Fixed-length vector over GF(2), packed into 64-bit words. Bits past size()
// in the last word are always zero, so word-wise equality and hashing are
// exact.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t num_bits);

  // Builds a vector from explicit 0/1 values, e.g. {1, 0, 0}.
  static BitVector from_bits(std::initializer_list<int> bits);
  static BitVector from_bits(std::span<const uint8_t> bits);
  // Builds a vector of `num_bits` with the listed positions set.
  static BitVector from_indices(size_t num_bits, std::span<const uint32_t> ones);
  // Parses a string of '0'/'1' characters, bit 0 first.
  static BitVector from_string(std::string_view text);

  size_t size() const { return num_bits_; }
  bool empty() const { return num_bits_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool value = true) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }
  bool operator[](size_t i) const { return get(i); }

  void clear();
  bool none() const;
  bool any() const { return !none(); }
  size_t count() const;

  // Indices of set bits, ascending.
  std::vector<uint32_t> ones() const;
  std::vector<uint8_t> to_bytes() const;
  // '0'/'1' characters, bit 0 first.
  std::string to_string() const;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector& operator|=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }

  bool operator==(const BitVector& other) const = default;
  // Lexicographic order reading bit 0 first; a 0 sorts before a 1.
  bool lex_less(const BitVector& other) const;

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> mutable_words() { return words_; }
  size_t hash() const;

 private:
  size_t num_bits_ = 0;
  std::vector<uint64_t> words_;
};

struct BitVectorHash {
  size_t operator()(const BitVector& v) const { return v.hash(); }
};

// Orders by lex_less; usable as a std::map comparator.
struct BitVectorLess {
  bool operator()(const BitVector& a, const BitVector& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.lex_less(b);
  }
};

}  // namespace argrw

#endif  // ARGRW_BIT_VECTOR_H_

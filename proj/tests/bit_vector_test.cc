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

#include <random>
#include <stdexcept>
#include <unordered_set>

#include "gtest/gtest.h"

namespace argrw {
namespace {

TEST(BitVector, FactoriesAgree) {
  BitVector a = BitVector::from_string("10110");
  BitVector b = BitVector::from_bits({1, 0, 1, 1, 0});
  const uint32_t ones[] = {0, 2, 3};
  BitVector c = BitVector::from_indices(5, ones);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.to_string(), "10110");
  EXPECT_EQ(a.count(), 3u);
  EXPECT_EQ(a.ones(), (std::vector<uint32_t>{0, 2, 3}));
}

TEST(BitVector, WordBoundaries) {
  BitVector v(130);
  v.set(0);
  v.set(63);
  v.set(64);
  v.set(129);
  EXPECT_EQ(v.count(), 4u);
  EXPECT_EQ(v.ones(), (std::vector<uint32_t>{0, 63, 64, 129}));
  v.flip(64);
  EXPECT_FALSE(v.get(64));
  v.clear();
  EXPECT_TRUE(v.none());
}

TEST(BitVector, XorAndOr) {
  BitVector a = BitVector::from_string("1100");
  BitVector b = BitVector::from_string("1010");
  EXPECT_EQ((a ^ b).to_string(), "0110");
  EXPECT_EQ((a & b).to_string(), "1000");
  EXPECT_EQ((a | b).to_string(), "1110");
}

TEST(BitVector, SizeMismatchThrows) {
  BitVector a(3), b(4);
  EXPECT_THROW(a ^= b, std::invalid_argument);
  EXPECT_THROW(a &= b, std::invalid_argument);
}

TEST(BitVector, LexOrderPutsZeroFirstAtLowestIndex) {
  EXPECT_TRUE(BitVector::from_string("011").lex_less(
      BitVector::from_string("100")));
  EXPECT_FALSE(BitVector::from_string("100").lex_less(
      BitVector::from_string("011")));
  EXPECT_FALSE(BitVector::from_string("101").lex_less(
      BitVector::from_string("101")));
}

TEST(BitVector, HashDistinguishesRandomVectors) {
  std::mt19937_64 rng(7);
  std::unordered_set<BitVector, BitVectorHash> seen;
  for (int i = 0; i < 500; ++i) {
    BitVector v(100);
    for (size_t j = 0; j < 100; ++j) v.set(j, rng() & 1);
    seen.insert(v);
  }
  EXPECT_GT(seen.size(), 495u);
}

TEST(BitVector, RejectsBadText) {
  EXPECT_THROW(BitVector::from_string("10x"), std::invalid_argument);
}

}  // namespace
}  // namespace argrw

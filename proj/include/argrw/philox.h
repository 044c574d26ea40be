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

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).

#ifndef ARGRW_PHILOX_H_
#define ARGRW_PHILOX_H_

#include <array>
#include <cstdint>

namespace argrw {

using PhiloxCounter = std::array<uint32_t, 4>;
using PhiloxKey = std::array<uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr uint32_t kMulA = 0xD2511F53;
  constexpr uint32_t kMulB = 0xCD9E8D57;
  constexpr uint32_t kWeylA = 0x9E3779B9;
  constexpr uint32_t kWeylB = 0xBB67AE85;
  for (int round = 0; round < 10; ++round) {
    uint64_t pa = uint64_t{kMulA} * ctr[0];
    uint64_t pb = uint64_t{kMulB} * ctr[2];
    auto hi_a = static_cast<uint32_t>(pa >> 32), lo_a = static_cast<uint32_t>(pa);
    auto hi_b = static_cast<uint32_t>(pb >> 32), lo_b = static_cast<uint32_t>(pb);
    ctr = {hi_b ^ ctr[1] ^ key[0], lo_b, hi_a ^ ctr[3] ^ key[1], lo_a};
    key[0] += kWeylA;
    key[1] += kWeylB;
  }
  return ctr;
}

// Stream of 64-bit words addressed by (seed, stream, position). Every word
// is a pure function of its address.
class PhiloxStream {
 public:
  PhiloxStream(uint64_t seed, uint64_t stream)
      : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Two 64-bit words per block.
  std::array<uint64_t, 2> block(uint64_t block_index) const {
    PhiloxCounter out = philox4x32_10(
        {static_cast<uint32_t>(block_index),
         static_cast<uint32_t>(block_index >> 32),
         static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)},
        key_);
    return {(uint64_t{out[1]} << 32) | out[0], (uint64_t{out[3]} << 32) | out[2]};
  }

 private:
  PhiloxKey key_;
  uint64_t stream_;
};

}  // namespace argrw

#endif  // ARGRW_PHILOX_H_

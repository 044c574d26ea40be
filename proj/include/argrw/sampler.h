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

#ifndef ARGRW_SAMPLER_H_
#define ARGRW_SAMPLER_H_

#include <cstdint>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/error_model.h"

namespace argrw {

struct Shot {
  BitVector error;     // over mechanisms
  BitVector syndrome;  // over detectors
  BitVector logical;   // over observables

  bool operator==(const Shot&) const = default;
};

// Draws shots from a fixed model. Shot `i` under seed `s` is a pure function
// of (s, i): mechanism q uses 64-bit word q of Philox stream i keyed by s and
// is included iff that word is below p(q) * 2^64.
class ShotSampler {
 public:
  ShotSampler(const DetectorErrorModel& model, uint64_t seed);

  Shot sample(uint64_t shot_index) const;
  // Reuses the storage in `shot`; shot->error etc. must already be sized.
  void sample_into(uint64_t shot_index, Shot* shot) const;
  Shot make_empty_shot() const;

 private:
  const DetectorErrorModel* model_;
  uint64_t seed_;
  std::vector<uint64_t> thresholds_;
  std::vector<BitVector> detector_masks_;
  std::vector<BitVector> observable_masks_;
};

Shot sample_shot(const DetectorErrorModel& model, uint64_t seed,
                 uint64_t shot_index);

}  // namespace argrw

#endif  // ARGRW_SAMPLER_H_

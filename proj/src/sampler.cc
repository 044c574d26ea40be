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

#include "argrw/sampler.h"

#include <cmath>
#include <limits>

#include "argrw/philox.h"

namespace argrw {

ShotSampler::ShotSampler(const DetectorErrorModel& model, uint64_t seed)
    : model_(&model), seed_(seed) {
  thresholds_.reserve(model.num_mechanisms());
  for (const auto& m : model.mechanisms()) {
    // p in (0, 1) so p * 2^64 < 2^64; the largest double below 2^64 fits.
    double scaled = std::ldexp(m.probability, 64);
    thresholds_.push_back(scaled >= 18446744073709551615.0
                              ? std::numeric_limits<uint64_t>::max()
                              : static_cast<uint64_t>(scaled));
    detector_masks_.push_back(
        BitVector::from_indices(model.num_detectors(), m.detectors));
    observable_masks_.push_back(
        BitVector::from_indices(model.num_observables(), m.observables));
  }
}

Shot ShotSampler::make_empty_shot() const {
  return Shot{BitVector(model_->num_mechanisms()),
              BitVector(model_->num_detectors()),
              BitVector(model_->num_observables())};
}

Shot ShotSampler::sample(uint64_t shot_index) const {
  Shot shot = make_empty_shot();
  sample_into(shot_index, &shot);
  return shot;
}

void ShotSampler::sample_into(uint64_t shot_index, Shot* shot) const {
  shot->error.clear();
  shot->syndrome.clear();
  shot->logical.clear();
  PhiloxStream stream(seed_, shot_index);
  const size_t n = thresholds_.size();
  for (size_t q = 0; q < n; q += 2) {
    auto words = stream.block(q / 2);
    for (size_t k = 0; k < 2 && q + k < n; ++k) {
      if (words[k] < thresholds_[q + k]) {
        shot->error.set(q + k);
        shot->syndrome ^= detector_masks_[q + k];
        shot->logical ^= observable_masks_[q + k];
      }
    }
  }
}

Shot sample_shot(const DetectorErrorModel& model, uint64_t seed,
                 uint64_t shot_index) {
  return ShotSampler(model, seed).sample(shot_index);
}

}  // namespace argrw

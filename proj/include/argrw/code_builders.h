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

#ifndef ARGRW_CODE_BUILDERS_H_
#define ARGRW_CODE_BUILDERS_H_

#include <cstddef>

#include "argrw/error_model.h"

namespace argrw {

// Phenomenological bit-flip repetition code memory experiment.
//
// Detector `r * (distance - 1) + i` compares check i between rounds r-1 and
// r. Each round contributes `distance` data-flip mechanisms, and every pair
// of consecutive rounds contributes `distance - 1` measurement-flip
// mechanisms (omitted when p_meas == 0). Observable 0 is the value of data
// qubit 0, so it is flipped by data errors on qubit 0 in every round.
// Mechanisms are tagged with their round.
DetectorErrorModel build_repetition_code(size_t distance, size_t rounds,
                                         double p_data, double p_meas);

// X-error sector of the rotated surface code under phenomenological noise:
// (d^2 - 1) / 2 Z-type checks per round, data flips with probability p and
// measurement flips with probability p between consecutive rounds. Every
// mechanism triggers at most two detectors. Observable 0 is the logical Z
// along the first row of data qubits.
DetectorErrorModel build_surface_code_phenomenological(size_t distance,
                                                       size_t rounds, double p);

}  // namespace argrw

#endif  // ARGRW_CODE_BUILDERS_H_

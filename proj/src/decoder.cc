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

#include "argrw/decoder.h"

#include <string>

namespace argrw {

void validate_priors(std::span<const double> priors, size_t num_mechanisms) {
  if (priors.size() != num_mechanisms) {
    throw std::invalid_argument("expected " + std::to_string(num_mechanisms) +
                                " priors, got " +
                                std::to_string(priors.size()));
  }
  for (size_t q = 0; q < priors.size(); ++q) {
    if (!(priors[q] > 0 && priors[q] < 1)) {
      throw std::invalid_argument("prior " + std::to_string(q) + " = " +
                                  std::to_string(priors[q]) +
                                  " is outside (0, 1)");
    }
  }
}

}  // namespace argrw

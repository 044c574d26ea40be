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

#ifndef ARGRW_ML_ORACLE_H_
#define ARGRW_ML_ORACLE_H_

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/decoder.h"
#include "argrw/error_model.h"

namespace argrw {

inline constexpr size_t kMaxBruteForceMechanisms = 24;

struct WeightedError {
  BitVector error;
  double log_probability = 0;
  double probability = 0;
};

// Exhaustive maximum-likelihood decoding of one syndrome.
struct MlResult {
  // Most probable consistent error; ties go to the lexicographically smallest.
  BitVector correction;
  double correction_probability = 0;
  // Pr(s): total mass of consistent errors.
  double syndrome_probability = 0;
  // Total probability of consistent errors per logical class L(e).
  std::map<BitVector, double, BitVectorLess> class_likelihoods;
  // Every consistent error, most probable first.
  std::vector<WeightedError> spectrum;
};

// Throws std::invalid_argument above kMaxBruteForceMechanisms and
// UnsolvableSyndromeError when no error produces the syndrome.
MlResult decode_ml_bruteforce(const DetectorErrorModel& model,
                              const BitVector& syndrome);
MlResult decode_ml_bruteforce(const DetectorErrorModel& model,
                              std::span<const double> priors,
                              const BitVector& syndrome);

// One MlResult per reachable syndrome, from a single enumeration.
std::map<BitVector, MlResult, BitVectorLess> enumerate_all_syndromes(
    const DetectorErrorModel& model);

// The brute-force oracle behind the Decoder interface.
class MlOracleDecoder : public Decoder {
 public:
  explicit MlOracleDecoder(DetectorErrorModel model);

  BitVector decode(std::span<const double> priors,
                   const BitVector& syndrome) override;
  bool deterministic() const override { return true; }
  std::string name() const override { return "ml_exact"; }

 private:
  DetectorErrorModel model_;
};

}  // namespace argrw

#endif  // ARGRW_ML_ORACLE_H_

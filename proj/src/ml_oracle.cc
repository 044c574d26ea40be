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

#include "argrw/ml_oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace argrw {

namespace {

void check_cap(const DetectorErrorModel& model) {
  if (model.num_mechanisms() > kMaxBruteForceMechanisms) {
    throw std::invalid_argument(
        "brute-force decoding supports at most " +
        std::to_string(kMaxBruteForceMechanisms) + " mechanisms, model has " +
        std::to_string(model.num_mechanisms()));
  }
}

BitVector mask_to_error(uint32_t mask, size_t m) {
  BitVector e(m);
  for (; mask; mask &= mask - 1) e.set(std::countr_zero(mask));
  return e;
}

// Visits every error configuration in Gray-code order with its syndrome.
void for_each_error(const DetectorErrorModel& model,
                    const std::function<void(uint32_t, const BitVector&)>& fn) {
  const size_t m = model.num_mechanisms();
  std::vector<BitVector> columns;
  for (const auto& mech : model.mechanisms()) {
    columns.push_back(
        BitVector::from_indices(model.num_detectors(), mech.detectors));
  }
  BitVector syndrome(model.num_detectors());
  uint32_t gray = 0;
  fn(gray, syndrome);
  const uint64_t total = uint64_t{1} << m;
  for (uint64_t k = 1; k < total; ++k) {
    int bit = std::countr_zero(k);
    gray ^= uint32_t{1} << bit;
    syndrome ^= columns[bit];
    fn(gray, syndrome);
  }
}

void finish(const DetectorErrorModel& model, MlResult* result) {
  auto& spectrum = result->spectrum;
  std::sort(spectrum.begin(), spectrum.end(),
            [](const WeightedError& a, const WeightedError& b) {
              if (a.log_probability != b.log_probability) {
                return a.log_probability > b.log_probability;
              }
              return a.error.lex_less(b.error);
            });
  for (const auto& w : spectrum) {
    result->syndrome_probability += w.probability;
    result->class_likelihoods[logical_of(model, w.error)] += w.probability;
  }
  result->correction = spectrum.front().error;
  result->correction_probability = spectrum.front().probability;
}

WeightedError weigh(std::span<const double> priors, BitVector error) {
  WeightedError w;
  w.log_probability = log_probability(priors, error);
  w.probability = std::exp(w.log_probability);
  w.error = std::move(error);
  return w;
}

}  // namespace

MlResult decode_ml_bruteforce(const DetectorErrorModel& model,
                              const BitVector& syndrome) {
  return decode_ml_bruteforce(model, model.priors(), syndrome);
}

MlResult decode_ml_bruteforce(const DetectorErrorModel& model,
                              std::span<const double> priors,
                              const BitVector& syndrome) {
  check_cap(model);
  validate_priors(priors, model.num_mechanisms());
  if (syndrome.size() != model.num_detectors()) {
    throw std::invalid_argument("syndrome length does not match the model");
  }
  MlResult result;
  const size_t m = model.num_mechanisms();
  for_each_error(model, [&](uint32_t mask, const BitVector& s) {
    if (s == syndrome) result.spectrum.push_back(weigh(priors, mask_to_error(mask, m)));
  });
  if (result.spectrum.empty()) {
    throw UnsolvableSyndromeError("no error configuration produces syndrome " +
                                  syndrome.to_string());
  }
  finish(model, &result);
  return result;
}

std::map<BitVector, MlResult, BitVectorLess> enumerate_all_syndromes(
    const DetectorErrorModel& model) {
  check_cap(model);
  const auto priors = model.priors();
  const size_t m = model.num_mechanisms();
  std::map<BitVector, MlResult, BitVectorLess> out;
  for_each_error(model, [&](uint32_t mask, const BitVector& s) {
    out[s].spectrum.push_back(weigh(priors, mask_to_error(mask, m)));
  });
  for (auto& [s, result] : out) finish(model, &result);
  return out;
}

MlOracleDecoder::MlOracleDecoder(DetectorErrorModel model)
    : model_(std::move(model)) {
  check_cap(model_);
}

BitVector MlOracleDecoder::decode(std::span<const double> priors,
                                  const BitVector& syndrome) {
  return decode_ml_bruteforce(model_, priors, syndrome).correction;
}

}  // namespace argrw

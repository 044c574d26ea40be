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

#include "argrw/code_builders.h"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace argrw {

namespace {

void check_distance_and_rounds(size_t distance, size_t rounds) {
  if (distance < 3 || distance % 2 == 0) {
    throw std::invalid_argument("distance must be an odd integer >= 3, got " +
                                std::to_string(distance));
  }
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
}

void check_probability(double p, const char* name, bool allow_zero) {
  bool ok = allow_zero ? (p >= 0 && p < 0.5) : (p > 0 && p < 0.5);
  if (!ok) {
    throw std::invalid_argument(std::string(name) + " = " + std::to_string(p) +
                                " is outside the allowed range");
  }
}

// Appends measurement-flip mechanisms between round r and r+1 for every
// check, tagged with round r.
void add_measurement_layer(std::vector<ErrorMechanism>& out, size_t r,
                           size_t checks_per_round, double p) {
  for (size_t i = 0; i < checks_per_round; ++i) {
    ErrorMechanism m;
    m.probability = p;
    m.detectors = {static_cast<uint32_t>(r * checks_per_round + i),
                   static_cast<uint32_t>((r + 1) * checks_per_round + i)};
    m.round = static_cast<uint32_t>(r);
    out.push_back(std::move(m));
  }
}

}  // namespace

DetectorErrorModel build_repetition_code(size_t distance, size_t rounds,
                                         double p_data, double p_meas) {
  check_distance_and_rounds(distance, rounds);
  check_probability(p_data, "p_data", false);
  check_probability(p_meas, "p_meas", true);

  const size_t checks = distance - 1;
  std::vector<ErrorMechanism> mechanisms;
  for (size_t r = 0; r < rounds; ++r) {
    const auto base = static_cast<uint32_t>(r * checks);
    for (size_t j = 0; j < distance; ++j) {
      ErrorMechanism m;
      m.probability = p_data;
      if (j >= 1) m.detectors.push_back(base + static_cast<uint32_t>(j - 1));
      if (j + 1 < distance) m.detectors.push_back(base + static_cast<uint32_t>(j));
      if (j == 0) m.observables.push_back(0);
      m.round = static_cast<uint32_t>(r);
      mechanisms.push_back(std::move(m));
    }
    if (r + 1 < rounds && p_meas > 0) {
      add_measurement_layer(mechanisms, r, checks, p_meas);
    }
  }
  return DetectorErrorModel(std::move(mechanisms), rounds * checks, 1);
}

DetectorErrorModel build_surface_code_phenomenological(size_t distance,
                                                       size_t rounds,
                                                       double p) {
  check_distance_and_rounds(distance, rounds);
  check_probability(p, "p", false);

  // Plaquettes sit on the corners (i, j), 0 <= i, j <= d, of the d x d data
  // grid and cover data qubits (i-1..i, j-1..j). Z type iff i + j is even.
  // Weight-2 Z plaquettes live on the left and right edges only.
  const size_t d = distance;
  std::vector<std::vector<uint32_t>> checks_of_qubit(d * d);
  uint32_t num_checks = 0;
  for (size_t i = 0; i <= d; ++i) {
    for (size_t j = 0; j <= d; ++j) {
      if ((i + j) % 2 != 0) continue;
      if (i == 0 || i == d) continue;
      std::vector<size_t> covered;
      for (size_t r = i - 1; r <= std::min(i, d - 1); ++r) {
        for (size_t c = (j == 0 ? 0 : j - 1); c <= std::min(j, d - 1); ++c) {
          covered.push_back(r * d + c);
        }
      }
      for (size_t q : covered) checks_of_qubit[q].push_back(num_checks);
      ++num_checks;
    }
  }

  std::vector<ErrorMechanism> mechanisms;
  for (size_t r = 0; r < rounds; ++r) {
    const auto base = static_cast<uint32_t>(r * num_checks);
    std::vector<ErrorMechanism> layer;
    for (size_t q = 0; q < d * d; ++q) {
      ErrorMechanism m;
      m.probability = p;
      for (uint32_t c : checks_of_qubit[q]) m.detectors.push_back(base + c);
      if (q < d) m.observables.push_back(0);
      m.round = static_cast<uint32_t>(r);
      layer.push_back(std::move(m));
    }
    // Qubits seen by the same single boundary check collapse to one edge.
    DetectorErrorModel merged = canonicalize(DetectorErrorModel(
        std::move(layer), rounds * num_checks, 1));
    for (const auto& m : merged.mechanisms()) mechanisms.push_back(m);
    if (r + 1 < rounds) add_measurement_layer(mechanisms, r, num_checks, p);
  }
  return DetectorErrorModel(std::move(mechanisms), rounds * num_checks, 1);
}

}  // namespace argrw

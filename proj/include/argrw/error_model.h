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

#ifndef ARGRW_ERROR_MODEL_H_
#define ARGRW_ERROR_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "argrw/bit_vector.h"

namespace argrw {

// One independent error mechanism: with `probability` it flips every listed
// detector and logical observable.
struct ErrorMechanism {
  double probability = 0;
  std::vector<uint32_t> detectors;
  std::vector<uint32_t> observables;
  // Measurement round the mechanism belongs to. Only windowing reads it.
  std::optional<uint32_t> round;

  bool operator==(const ErrorMechanism&) const = default;
};

// Throws std::invalid_argument if the mechanism breaks an invariant
// (probability outside (0,1), unsorted or duplicated indices, no effect).
void validate_mechanism(const ErrorMechanism& mechanism);

// An ordered list of independent error mechanisms over a fixed set of
// detectors and logical observables. Immutable once constructed.
class DetectorErrorModel {
 public:
  DetectorErrorModel() = default;
  // Validates every mechanism and every index against the declared counts.
  DetectorErrorModel(std::vector<ErrorMechanism> mechanisms,
                     size_t num_detectors, size_t num_observables);

  // Infers counts as one past the largest referenced index.
  static DetectorErrorModel with_inferred_counts(
      std::vector<ErrorMechanism> mechanisms);

  const std::vector<ErrorMechanism>& mechanisms() const { return mechanisms_; }
  const ErrorMechanism& mechanism(size_t i) const { return mechanisms_[i]; }
  size_t num_mechanisms() const { return mechanisms_.size(); }
  size_t num_detectors() const { return num_detectors_; }
  size_t num_observables() const { return num_observables_; }

  // Per-mechanism prior probabilities, in mechanism order.
  std::vector<double> priors() const;

  bool operator==(const DetectorErrorModel&) const = default;

 private:
  std::vector<ErrorMechanism> mechanisms_;
  size_t num_detectors_ = 0;
  size_t num_observables_ = 0;
};

// Merges mechanisms with identical (detectors, observables) using the XOR
// combination p1(1-p2) + p2(1-p1). First-occurrence order and round tag are
// kept.
DetectorErrorModel canonicalize(const DetectorErrorModel& model);

// Column-major sparse matrix over GF(2).
class SparseBinaryMatrix {
 public:
  SparseBinaryMatrix() = default;
  SparseBinaryMatrix(size_t rows, std::vector<std::vector<uint32_t>> columns);

  size_t rows() const { return rows_; }
  size_t cols() const { return columns_.size(); }
  // Row indices set in column `c`, ascending.
  std::span<const uint32_t> column(size_t c) const { return columns_[c]; }
  bool get(size_t r, size_t c) const;

  // Row-major view, built on demand.
  std::vector<std::vector<uint32_t>> row_lists() const;
  std::vector<std::vector<uint8_t>> to_dense() const;

  // Product with a column vector over GF(2).
  BitVector multiply(const BitVector& v) const;

  bool operator==(const SparseBinaryMatrix&) const = default;

 private:
  size_t rows_ = 0;
  std::vector<std::vector<uint32_t>> columns_;
};

struct CheckMatrices {
  SparseBinaryMatrix check;       // num_detectors x num_mechanisms
  SparseBinaryMatrix observable;  // num_observables x num_mechanisms
};

CheckMatrices check_matrices(const DetectorErrorModel& model);

// S(e) and L(e). Throw std::invalid_argument on a length mismatch.
BitVector syndrome_of(const DetectorErrorModel& model, const BitVector& error);
BitVector logical_of(const DetectorErrorModel& model, const BitVector& error);

// ln Pr(e; p) = sum over e of ln p(q) plus sum over the rest of ln(1 - p(q)).
double log_probability(std::span<const double> priors, const BitVector& error);

}  // namespace argrw

#endif  // ARGRW_ERROR_MODEL_H_

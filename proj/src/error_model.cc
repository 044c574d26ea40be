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

#include "argrw/error_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace argrw {

namespace {

bool strictly_ascending(const std::vector<uint32_t>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](uint32_t a, uint32_t b) {
           return a >= b;
         }) == v.end();
}

}  // namespace

void validate_mechanism(const ErrorMechanism& m) {
  if (!(m.probability > 0 && m.probability < 1)) {
    throw std::invalid_argument("error probability " +
                                std::to_string(m.probability) +
                                " is outside (0, 1)");
  }
  if (!strictly_ascending(m.detectors)) {
    throw std::invalid_argument(
        "mechanism detectors must be sorted and duplicate-free");
  }
  if (!strictly_ascending(m.observables)) {
    throw std::invalid_argument(
        "mechanism observables must be sorted and duplicate-free");
  }
  if (m.detectors.empty() && m.observables.empty()) {
    throw std::invalid_argument(
        "mechanism flips neither a detector nor an observable");
  }
}

DetectorErrorModel::DetectorErrorModel(std::vector<ErrorMechanism> mechanisms,
                                       size_t num_detectors,
                                       size_t num_observables)
    : mechanisms_(std::move(mechanisms)),
      num_detectors_(num_detectors),
      num_observables_(num_observables) {
  for (size_t i = 0; i < mechanisms_.size(); ++i) {
    const auto& m = mechanisms_[i];
    validate_mechanism(m);
    if (!m.detectors.empty() && m.detectors.back() >= num_detectors_) {
      throw std::invalid_argument(
          "mechanism " + std::to_string(i) + " references detector " +
          std::to_string(m.detectors.back()) + " but only " +
          std::to_string(num_detectors_) + " are declared");
    }
    if (!m.observables.empty() && m.observables.back() >= num_observables_) {
      throw std::invalid_argument(
          "mechanism " + std::to_string(i) + " references observable " +
          std::to_string(m.observables.back()) + " but only " +
          std::to_string(num_observables_) + " are declared");
    }
  }
}

DetectorErrorModel DetectorErrorModel::with_inferred_counts(
    std::vector<ErrorMechanism> mechanisms) {
  size_t nd = 0, no = 0;
  for (const auto& m : mechanisms) {
    if (!m.detectors.empty()) nd = std::max<size_t>(nd, m.detectors.back() + 1);
    if (!m.observables.empty()) {
      no = std::max<size_t>(no, m.observables.back() + 1);
    }
  }
  return DetectorErrorModel(std::move(mechanisms), nd, no);
}

std::vector<double> DetectorErrorModel::priors() const {
  std::vector<double> p;
  p.reserve(mechanisms_.size());
  for (const auto& m : mechanisms_) p.push_back(m.probability);
  return p;
}

DetectorErrorModel canonicalize(const DetectorErrorModel& model) {
  using Key = std::pair<std::vector<uint32_t>, std::vector<uint32_t>>;
  std::map<Key, size_t> seen;
  std::vector<ErrorMechanism> out;
  for (const auto& m : model.mechanisms()) {
    Key key{m.detectors, m.observables};
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      out.push_back(m);
    } else {
      double& p = out[it->second].probability;
      p = p * (1 - m.probability) + m.probability * (1 - p);
    }
  }
  return DetectorErrorModel(std::move(out), model.num_detectors(),
                            model.num_observables());
}

SparseBinaryMatrix::SparseBinaryMatrix(size_t rows,
                                       std::vector<std::vector<uint32_t>> cols)
    : rows_(rows), columns_(std::move(cols)) {
  for (const auto& c : columns_) {
    if (!strictly_ascending(c) || (!c.empty() && c.back() >= rows_)) {
      throw std::invalid_argument(
          "sparse column entries must be sorted, unique and in range");
    }
  }
}

bool SparseBinaryMatrix::get(size_t r, size_t c) const {
  const auto& col = columns_[c];
  return std::binary_search(col.begin(), col.end(), static_cast<uint32_t>(r));
}

std::vector<std::vector<uint32_t>> SparseBinaryMatrix::row_lists() const {
  std::vector<std::vector<uint32_t>> rows(rows_);
  for (size_t c = 0; c < columns_.size(); ++c) {
    for (uint32_t r : columns_[c]) rows[r].push_back(static_cast<uint32_t>(c));
  }
  return rows;
}

std::vector<std::vector<uint8_t>> SparseBinaryMatrix::to_dense() const {
  std::vector<std::vector<uint8_t>> dense(rows_,
                                          std::vector<uint8_t>(cols(), 0));
  for (size_t c = 0; c < columns_.size(); ++c) {
    for (uint32_t r : columns_[c]) dense[r][c] = 1;
  }
  return dense;
}

BitVector SparseBinaryMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols()) {
    throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                " does not match matrix width " +
                                std::to_string(cols()));
  }
  BitVector out(rows_);
  for (uint32_t c : v.ones()) {
    for (uint32_t r : columns_[c]) out.flip(r);
  }
  return out;
}

CheckMatrices check_matrices(const DetectorErrorModel& model) {
  std::vector<std::vector<uint32_t>> h, l;
  h.reserve(model.num_mechanisms());
  l.reserve(model.num_mechanisms());
  for (const auto& m : model.mechanisms()) {
    h.push_back(m.detectors);
    l.push_back(m.observables);
  }
  return {SparseBinaryMatrix(model.num_detectors(), std::move(h)),
          SparseBinaryMatrix(model.num_observables(), std::move(l))};
}

namespace {
void require_error_length(const DetectorErrorModel& model,
                          const BitVector& error) {
  if (error.size() != model.num_mechanisms()) {
    throw std::invalid_argument(
        "error vector has length " + std::to_string(error.size()) +
        " but the model has " + std::to_string(model.num_mechanisms()) +
        " mechanisms");
  }
}
}  // namespace

BitVector syndrome_of(const DetectorErrorModel& model, const BitVector& error) {
  require_error_length(model, error);
  BitVector s(model.num_detectors());
  for (uint32_t q : error.ones()) {
    for (uint32_t d : model.mechanism(q).detectors) s.flip(d);
  }
  return s;
}

BitVector logical_of(const DetectorErrorModel& model, const BitVector& error) {
  require_error_length(model, error);
  BitVector l(model.num_observables());
  for (uint32_t q : error.ones()) {
    for (uint32_t o : model.mechanism(q).observables) l.flip(o);
  }
  return l;
}

double log_probability(std::span<const double> priors, const BitVector& error) {
  if (error.size() != priors.size()) {
    throw std::invalid_argument("error vector length does not match priors");
  }
  double total = 0;
  for (size_t q = 0; q < priors.size(); ++q) {
    total += error.get(q) ? std::log(priors[q]) : std::log1p(-priors[q]);
  }
  return total;
}

}  // namespace argrw

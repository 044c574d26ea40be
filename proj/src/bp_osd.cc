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

#include "argrw/bp_osd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace argrw {

void BpConfig::validate() const {
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be >= 1");
  }
  if (!(scaling_factor > 0 && scaling_factor <= 1)) {
    throw std::invalid_argument("min-sum scaling factor must be in (0, 1]");
  }
}

BpOsdDecoder::BpOsdDecoder(SparseBinaryMatrix check_matrix, BpConfig config)
    : check_(std::move(check_matrix)), config_(config) {
  config_.validate();
  auto rows = check_.row_lists();
  std::vector<std::vector<uint32_t>> by_var(check_.cols());
  check_begin_.push_back(0);
  for (size_t c = 0; c < rows.size(); ++c) {
    for (uint32_t v : rows[c]) {
      by_var[v].push_back(static_cast<uint32_t>(edge_check_.size()));
      edge_check_.push_back(static_cast<uint32_t>(c));
      edge_var_.push_back(v);
    }
    check_begin_.push_back(static_cast<uint32_t>(edge_check_.size()));
  }
  var_begin_.push_back(0);
  for (const auto& edges : by_var) {
    var_edges_.insert(var_edges_.end(), edges.begin(), edges.end());
    var_begin_.push_back(static_cast<uint32_t>(var_edges_.size()));
  }
  v2c_.resize(edge_check_.size());
  c2v_.resize(edge_check_.size());
  channel_.resize(check_.cols());
  hard_bits_.resize(check_.cols());
}

void BpOsdDecoder::check_syndrome_length(const BitVector& syndrome) const {
  if (syndrome.size() != check_.rows()) {
    throw std::invalid_argument("syndrome has length " +
                                std::to_string(syndrome.size()) +
                                " but the check matrix has " +
                                std::to_string(check_.rows()) + " rows");
  }
}

bool BpOsdDecoder::satisfies(const BitVector& syndrome) const {
  for (size_t c = 0; c + 1 < check_begin_.size(); ++c) {
    uint8_t parity = syndrome.get(c);
    for (uint32_t e = check_begin_[c]; e < check_begin_[c + 1]; ++e) {
      parity ^= hard_bits_[edge_var_[e]];
    }
    if (parity) return false;
  }
  return true;
}

BpResult BpOsdDecoder::decode_bp(std::span<const double> priors,
                                 const BitVector& syndrome) {
  validate_priors(priors, check_.cols());
  check_syndrome_length(syndrome);
  const size_t n = check_.cols();
  BpResult result;
  result.hard = BitVector(n);
  for (size_t v = 0; v < n; ++v) {
    channel_[v] = std::log1p(-priors[v]) - std::log(priors[v]);
  }
  result.soft.assign(channel_.begin(), channel_.end());
  if (syndrome.none()) {
    result.converged = true;
    return result;
  }

  const double alpha = config_.scaling_factor;
  for (size_t e = 0; e < edge_var_.size(); ++e) v2c_[e] = channel_[edge_var_[e]];
  std::fill(c2v_.begin(), c2v_.end(), 0.0);

  // Check-to-variable min-sum update for check c, reading v2c_.
  auto update_check = [&](size_t c) {
    const uint32_t begin = check_begin_[c], end = check_begin_[c + 1];
    bool negative = syndrome.get(c);
    double min1 = std::numeric_limits<double>::infinity(), min2 = min1;
    uint32_t argmin = begin;
    for (uint32_t e = begin; e < end; ++e) {
      double m = v2c_[e];
      if (m < 0) negative = !negative;
      double a = std::fabs(m);
      if (a < min1) {
        min2 = min1;
        min1 = a;
        argmin = e;
      } else if (a < min2) {
        min2 = a;
      }
    }
    for (uint32_t e = begin; e < end; ++e) {
      bool sign = negative != (v2c_[e] < 0);
      double mag = (e == argmin ? min2 : min1) * alpha;
      c2v_[e] = sign ? -mag : mag;
    }
  };

  for (size_t it = 1; it <= config_.max_iterations; ++it) {
    if (config_.schedule == BpSchedule::kParallel) {
      for (size_t c = 0; c < check_.rows(); ++c) update_check(c);
      for (size_t v = 0; v < n; ++v) {
        const uint32_t* begin = var_edges_.data() + var_begin_[v];
        const uint32_t* end = var_edges_.data() + var_begin_[v + 1];
        double total = channel_[v];
        for (const uint32_t* e = begin; e != end; ++e) total += c2v_[*e];
        result.soft[v] = total;
        for (const uint32_t* e = begin; e != end; ++e) {
          v2c_[*e] = total - c2v_[*e];
        }
      }
    } else {
      // Layered: each check sees the freshest variable beliefs.
      for (size_t c = 0; c < check_.rows(); ++c) {
        for (uint32_t e = check_begin_[c]; e < check_begin_[c + 1]; ++e) {
          v2c_[e] = result.soft[edge_var_[e]] - c2v_[e];
        }
        update_check(c);
        for (uint32_t e = check_begin_[c]; e < check_begin_[c + 1]; ++e) {
          result.soft[edge_var_[e]] = v2c_[e] + c2v_[e];
        }
      }
    }
    for (size_t v = 0; v < n; ++v) hard_bits_[v] = result.soft[v] < 0;
    result.iterations = it;
    if (satisfies(syndrome)) {
      result.converged = true;
      break;
    }
  }
  for (size_t v = 0; v < n; ++v) result.hard.set(v, hard_bits_[v]);
  return result;
}

BitVector BpOsdDecoder::decode_osd0(std::span<const double> soft,
                                    const BitVector& syndrome) {
  const size_t n = check_.cols();
  const size_t m = check_.rows();
  if (soft.size() != n) {
    throw std::invalid_argument("soft vector length does not match matrix");
  }
  check_syndrome_length(syndrome);
  BitVector correction(n);
  if (syndrome.none()) return correction;

  // Most likely flipped mechanisms first.
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](uint32_t a, uint32_t b) { return soft[a] < soft[b]; });

  const size_t words = (n + 63) / 64;
  osd_rows_.assign(m * words, 0);
  auto row = [&](size_t r) { return osd_rows_.data() + r * words; };
  for (size_t k = 0; k < n; ++k) {
    for (uint32_t r : check_.column(order[k])) {
      row(r)[k >> 6] |= uint64_t{1} << (k & 63);
    }
  }
  osd_aug_ = syndrome;

  std::vector<uint32_t> pivot_cols;
  size_t rank = 0;
  for (size_t k = 0; k < n && rank < m; ++k) {
    const uint64_t bit = uint64_t{1} << (k & 63);
    const size_t w = k >> 6;
    size_t pivot = rank;
    while (pivot < m && !(row(pivot)[w] & bit)) ++pivot;
    if (pivot == m) continue;
    if (pivot != rank) {
      std::swap_ranges(row(pivot), row(pivot) + words, row(rank));
      bool a = osd_aug_.get(pivot), b = osd_aug_.get(rank);
      osd_aug_.set(pivot, b);
      osd_aug_.set(rank, a);
    }
    const bool aug = osd_aug_.get(rank);
    for (size_t r = 0; r < m; ++r) {
      if (r == rank || !(row(r)[w] & bit)) continue;
      uint64_t* dst = row(r);
      const uint64_t* src = row(rank);
      for (size_t j = w; j < words; ++j) dst[j] ^= src[j];
      if (aug) osd_aug_.flip(r);
    }
    pivot_cols.push_back(static_cast<uint32_t>(k));
    ++rank;
  }
  for (size_t r = rank; r < m; ++r) {
    if (osd_aug_.get(r)) {
      throw UnsolvableSyndromeError(
          "syndrome is not in the column space of the check matrix");
    }
  }
  for (size_t i = 0; i < pivot_cols.size(); ++i) {
    if (osd_aug_.get(i)) correction.set(order[pivot_cols[i]]);
  }
  return correction;
}

BitVector BpOsdDecoder::decode(std::span<const double> priors,
                               const BitVector& syndrome) {
  BpResult bp = decode_bp(priors, syndrome);
  if (bp.converged) return std::move(bp.hard);
  return decode_osd0(bp.soft, syndrome);
}

BpResult decode_bp(const SparseBinaryMatrix& check_matrix,
                   std::span<const double> priors, const BitVector& syndrome,
                   const BpConfig& config) {
  return BpOsdDecoder(check_matrix, config).decode_bp(priors, syndrome);
}

BitVector decode_osd0(std::span<const double> soft, const BitVector& syndrome,
                      const SparseBinaryMatrix& check_matrix) {
  return BpOsdDecoder(check_matrix).decode_osd0(soft, syndrome);
}

BitVector decode_bp_osd(const SparseBinaryMatrix& check_matrix,
                        std::span<const double> priors,
                        const BitVector& syndrome, const BpConfig& config) {
  return BpOsdDecoder(check_matrix, config).decode(priors, syndrome);
}

}  // namespace argrw

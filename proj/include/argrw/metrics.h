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

// Rate estimation, simple post-selection baselines, and exact per-syndrome
// error bounds for small models.

#ifndef ARGRW_METRICS_H_
#define ARGRW_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/error_model.h"

namespace argrw {

struct ShotOutcome {
  bool accepted = false;
  bool logical_error = false;
};

// Mergeable tallies; merging is associative and commutative.
struct RateCounters {
  uint64_t shots = 0;
  uint64_t accepted = 0;
  uint64_t logical_errors = 0;  // among accepted shots

  void record(bool accepted_shot, bool logical_error);
  void record(const ShotOutcome& o) { record(o.accepted, o.logical_error); }
  RateCounters& merge(const RateCounters& other);
  bool operator==(const RateCounters&) const = default;
};

struct Interval {
  double lo = 0;
  double hi = 0;
};

// Score interval for k successes in n trials; z = 1.96 gives 95 %.
// n == 0 yields [0, 1].
Interval wilson_interval(uint64_t successes, uint64_t trials,
                         double z = 1.959963984540054);

inline bool intervals_overlap(const Interval& a, const Interval& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

struct RateEstimate {
  uint64_t shots = 0;
  uint64_t accepted = 0;
  uint64_t logical_errors = 0;
  double p_l = 0;
  double sigma_l = 0;
  double rejection_rate = 0;
  double sigma_rejection = 0;
  // Set when nothing was accepted; p_l and sigma_l are then 0.
  bool no_accepted = false;
  Interval p_l_wilson;
  Interval rejection_wilson;
};

// Throws std::invalid_argument for zero shots.
RateEstimate estimate_rates(const RateCounters& counters);
RateEstimate estimate_rates(std::span<const ShotOutcome> outcomes);

enum class TargetStatus { kAchieved, kSurpassed, kMissed };
const char* target_status_name(TargetStatus status);

// Compares the selected rate p_l_sel against eta * p_l within one combined
// standard deviation.
TargetStatus target_achieved(double p_l, double sigma_l, double p_l_sel,
                             double sigma_l_sel, double eta);

// Detector density: accept iff the syndrome weight is at most `threshold`.
bool strategy_detector_density(const BitVector& syndrome, size_t threshold);

// Sum of ln(1/p - 1) over the correction.
double correction_weight(const BitVector& correction,
                         std::span<const double> priors);
// Correction weight: accept iff correction_weight <= threshold.
bool strategy_correction_weight(const BitVector& correction,
                                std::span<const double> priors,
                                double threshold);

struct BoundReport {
  BitVector syndrome;
  double pr_s = 0;
  // Probability that the most likely correction has the wrong logical class.
  double p_l_cond = 0;
  double bound1 = 0;  // 1 - Pr(c) / Pr(s)
  size_t m = 0;       // number of consistent errors
  // Absent when m == 1.
  std::optional<double> delta;
  std::optional<double> bound2;  // (m - 1) e^-delta

  bool bound1_holds() const { return p_l_cond <= bound1 && bound1 <= 1; }
  bool bound2_holds() const { return !bound2 || p_l_cond < *bound2; }
  bool holds() const { return bound1_holds() && bound2_holds(); }
};

// Exhaustive; same cap and errors as decode_ml_bruteforce.
BoundReport check_conditional_bounds(const DetectorErrorModel& model,
                                     const BitVector& syndrome);
// One report per reachable syndrome, ordered by BitVectorLess.
std::vector<BoundReport> check_all_bounds(const DetectorErrorModel& model);

// Sum over syndromes of Pr(s) p_L(s) for the most-likely-error decoder.
double exact_total_logical_error_rate(const DetectorErrorModel& model);

struct SuppressionFactor {
  double value = 0;
  double sigma = 0;
  // False when the baseline saw no logical errors.
  bool defined = false;
};

SuppressionFactor suppression_factor(const RateEstimate& baseline,
                                     const RateEstimate& selected);

}  // namespace argrw

#endif  // ARGRW_METRICS_H_

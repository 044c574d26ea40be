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

#include "argrw/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "argrw/ml_oracle.h"

namespace argrw {

namespace {

double binomial_sigma(double p, uint64_t n) {
  return n == 0 ? 0 : std::sqrt(p * (1 - p) / static_cast<double>(n));
}

// Sums are taken in spectrum order (most probable first), so the partial
// sums of any subset stay below those of the full set in floating point.
BoundReport bounds_from(const BitVector& syndrome, const MlResult& ml,
                        const DetectorErrorModel& model) {
  BoundReport r;
  r.syndrome = syndrome;
  r.m = ml.spectrum.size();
  const BitVector c_class = logical_of(model, ml.correction);
  double total = 0, others = 0, wrong_class = 0;
  for (size_t i = 0; i < ml.spectrum.size(); ++i) {
    const auto& w = ml.spectrum[i];
    total += w.probability;
    if (i == 0) continue;
    others += w.probability;
    if (logical_of(model, w.error) != c_class) wrong_class += w.probability;
  }
  r.pr_s = total;
  r.p_l_cond = wrong_class / total;
  r.bound1 = others / total;
  if (r.m >= 2) {
    r.delta = ml.spectrum[0].log_probability - ml.spectrum[1].log_probability;
    r.bound2 = static_cast<double>(r.m - 1) * std::exp(-*r.delta);
  }
  return r;
}

}  // namespace

void RateCounters::record(bool accepted_shot, bool logical_error) {
  ++shots;
  if (accepted_shot) {
    ++accepted;
    if (logical_error) ++logical_errors;
  }
}

RateCounters& RateCounters::merge(const RateCounters& other) {
  shots += other.shots;
  accepted += other.accepted;
  logical_errors += other.logical_errors;
  return *this;
}

Interval wilson_interval(uint64_t successes, uint64_t trials, double z) {
  if (successes > trials) {
    throw std::invalid_argument("successes exceed trials");
  }
  if (trials == 0) return {0, 1};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

RateEstimate estimate_rates(const RateCounters& counters) {
  if (counters.shots == 0) {
    throw std::invalid_argument("rate estimate needs at least one shot");
  }
  if (counters.accepted > counters.shots ||
      counters.logical_errors > counters.accepted) {
    throw std::invalid_argument("inconsistent counters");
  }
  RateEstimate e;
  e.shots = counters.shots;
  e.accepted = counters.accepted;
  e.logical_errors = counters.logical_errors;
  const uint64_t rejected = e.shots - e.accepted;
  e.rejection_rate =
      static_cast<double>(rejected) / static_cast<double>(e.shots);
  e.sigma_rejection = binomial_sigma(e.rejection_rate, e.shots);
  e.rejection_wilson = wilson_interval(rejected, e.shots);
  e.no_accepted = e.accepted == 0;
  if (!e.no_accepted) {
    e.p_l = static_cast<double>(e.logical_errors) /
            static_cast<double>(e.accepted);
    e.sigma_l = binomial_sigma(e.p_l, e.accepted);
  }
  e.p_l_wilson = wilson_interval(e.logical_errors, e.accepted);
  return e;
}

RateEstimate estimate_rates(std::span<const ShotOutcome> outcomes) {
  RateCounters c;
  for (const auto& o : outcomes) c.record(o);
  return estimate_rates(c);
}

const char* target_status_name(TargetStatus status) {
  switch (status) {
    case TargetStatus::kAchieved:
      return "achieved";
    case TargetStatus::kSurpassed:
      return "surpassed";
    case TargetStatus::kMissed:
      return "missed";
  }
  return "unknown";
}

TargetStatus target_achieved(double p_l, double sigma_l, double p_l_sel,
                             double sigma_l_sel, double eta) {
  if (!(eta > 0 && eta < 1)) {
    throw std::invalid_argument("eta must lie in (0, 1)");
  }
  if (sigma_l < 0 || sigma_l_sel < 0) {
    throw std::invalid_argument("standard deviations must be non-negative");
  }
  const double target = eta * p_l;
  const double radius = std::hypot(eta * sigma_l, sigma_l_sel);
  const double gap = target - p_l_sel;
  if (std::abs(gap) <= radius) return TargetStatus::kAchieved;
  return gap > radius ? TargetStatus::kSurpassed : TargetStatus::kMissed;
}

bool strategy_detector_density(const BitVector& syndrome, size_t threshold) {
  return syndrome.count() <= threshold;
}

double correction_weight(const BitVector& correction,
                         std::span<const double> priors) {
  if (correction.size() != priors.size()) {
    throw std::invalid_argument("correction length does not match priors");
  }
  double w = 0;
  for (uint32_t q : correction.ones()) {
    w += std::log1p(-priors[q]) - std::log(priors[q]);
  }
  return w;
}

bool strategy_correction_weight(const BitVector& correction,
                                std::span<const double> priors,
                                double threshold) {
  return correction_weight(correction, priors) <= threshold;
}

BoundReport check_conditional_bounds(const DetectorErrorModel& model,
                                     const BitVector& syndrome) {
  return bounds_from(syndrome, decode_ml_bruteforce(model, syndrome), model);
}

std::vector<BoundReport> check_all_bounds(const DetectorErrorModel& model) {
  std::vector<BoundReport> out;
  for (const auto& [s, ml] : enumerate_all_syndromes(model)) {
    out.push_back(bounds_from(s, ml, model));
  }
  return out;
}

double exact_total_logical_error_rate(const DetectorErrorModel& model) {
  double total = 0;
  for (const auto& r : check_all_bounds(model)) total += r.pr_s * r.p_l_cond;
  return total;
}

SuppressionFactor suppression_factor(const RateEstimate& baseline,
                                     const RateEstimate& selected) {
  SuppressionFactor f;
  if (baseline.logical_errors == 0 || !(baseline.p_l > 0)) return f;
  f.defined = true;
  const double a = selected.p_l, b = baseline.p_l;
  f.value = a / b;
  f.sigma = std::hypot(selected.sigma_l / b, a * baseline.sigma_l / (b * b));
  return f;
}

}  // namespace argrw

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

#include "argrw/reweighting.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace argrw {

namespace {

const double kLogFloor = std::log(kProbabilityFloor);

void check_lengths(std::span<const double> priors, const BitVector& c) {
  if (priors.size() != c.size()) {
    throw std::invalid_argument("correction length does not match priors");
  }
}

// Writes exp(log_p) into *p, clamped at the floor.
void store(double log_p, double* p, size_t* clamp_events) {
  if (log_p < kLogFloor) {
    *p = kProbabilityFloor;
    if (clamp_events) ++*clamp_events;
  } else {
    *p = std::exp(log_p);
  }
}

}  // namespace

void ReweightRule::validate() const {
  if (variant == ReweightVariant::kRatio) {
    if (!(b >= 1)) {
      throw std::invalid_argument("ratio reweighting needs b >= 1, got " +
                                  std::to_string(b));
    }
  } else if (!(b > 0)) {
    throw std::invalid_argument("gap reweighting needs b > 0, got " +
                                std::to_string(b));
  }
  if (!std::isfinite(b)) throw std::invalid_argument("b must be finite");
}

Criterion Criterion::lec(size_t k) {
  if (k < 2) throw std::invalid_argument("kR-LEC needs k >= 2");
  return {Kind::kLec, k};
}

Criterion Criterion::parse(std::string_view name) {
  if (name == "PEC") return pec();
  constexpr std::string_view suffix = "R-LEC";
  if (name.size() > suffix.size() &&
      name.substr(name.size() - suffix.size()) == suffix) {
    std::string_view digits = name.substr(0, name.size() - suffix.size());
    size_t k = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) {
      return lec(k);
    }
  }
  throw std::invalid_argument("unknown criterion '" + std::string(name) +
                              "'; expected PEC or kR-LEC");
}

std::string Criterion::name() const {
  return kind == Kind::kPec ? "PEC" : std::to_string(rounds) + "R-LEC";
}

std::vector<double> reweight_ratio(std::span<const double> priors,
                                   const BitVector& correction, double b,
                                   size_t* clamp_events) {
  ReweightRule::ratio(b).validate();
  check_lengths(priors, correction);
  std::vector<double> out(priors.begin(), priors.end());
  if (b == 1) return out;
  for (uint32_t q : correction.ones()) {
    store(b * std::log(priors[q]), &out[q], clamp_events);
  }
  return out;
}

std::vector<double> reweight_gap(std::span<const double> priors,
                                 const BitVector& correction, double b,
                                 size_t* clamp_events) {
  ReweightRule::gap(b).validate();
  check_lengths(priors, correction);
  const auto support = correction.ones();
  if (support.empty()) {
    throw std::invalid_argument("gap reweighting needs a non-empty correction");
  }
  double log_pc = 0;
  for (uint32_t q : support) log_pc += std::log(priors[q]);
  std::vector<double> out(priors.begin(), priors.end());
  for (uint32_t q : support) {
    double log_p = std::log(priors[q]);
    store(log_p - b * log_p / log_pc, &out[q], clamp_events);
  }
  return out;
}

std::vector<double> reweight(std::span<const double> priors,
                             const BitVector& correction,
                             const ReweightRule& rule,
                             const BitVector* eligible,
                             size_t* clamp_events) {
  const BitVector* target = &correction;
  BitVector restricted;
  if (eligible) {
    restricted = correction & *eligible;
    target = &restricted;
    if (restricted.none()) {
      rule.validate();
      return {priors.begin(), priors.end()};
    }
  }
  return rule.variant == ReweightVariant::kRatio
             ? reweight_ratio(priors, *target, rule.b, clamp_events)
             : reweight_gap(priors, *target, rule.b, clamp_events);
}

PostSelection post_select(Decoder& decoder, std::span<const double> priors,
                          const BitVector& syndrome,
                          const SparseBinaryMatrix& logical_map,
                          const Criterion& criterion, const ReweightRule& rule,
                          const BitVector& first, const BitVector* eligible) {
  rule.validate();
  if (first.none()) {
    throw std::invalid_argument("post_select needs a non-empty correction");
  }
  PostSelection out;
  const BitVector first_class = logical_map.multiply(first);
  std::vector<double> current(priors.begin(), priors.end());
  const BitVector* previous = &first;
  const size_t total_rounds =
      criterion.kind == Criterion::Kind::kPec ? 2 : criterion.rounds;
  for (size_t round = 2; round <= total_rounds; ++round) {
    current = reweight(current, *previous, rule, eligible, &out.clamp_events);
    out.rounds_used = round;
    try {
      out.later_corrections.push_back(decoder.decode(current, syndrome));
    } catch (const DecodeError& e) {
      out.accepted = false;
      out.diagnostic = e.tag();
      return out;
    }
    const BitVector& latest = out.later_corrections.back();
    bool same = criterion.kind == Criterion::Kind::kPec
                    ? latest == first
                    : logical_map.multiply(latest) == first_class;
    if (!same) {
      out.accepted = false;
      return out;
    }
    previous = &latest;
  }
  out.accepted = true;
  return out;
}

Verdict argument_reweighting(Decoder& decoder, std::span<const double> priors,
                             const BitVector& syndrome,
                             const SparseBinaryMatrix& logical_map,
                             const Criterion& criterion,
                             const ReweightRule& rule,
                             const BitVector* eligible) {
  rule.validate();
  Verdict verdict;
  verdict.rounds_used = 1;
  BitVector first;
  try {
    first = decoder.decode(priors, syndrome);
  } catch (const DecodeError& e) {
    verdict.diagnostic = e.tag();
    return verdict;
  }
  verdict.round_corrections.push_back(first);
  if (first.none()) {
    verdict.accepted = true;
    verdict.correction = std::move(first);
    return verdict;
  }
  PostSelection ps = post_select(decoder, priors, syndrome, logical_map,
                                 criterion, rule, first, eligible);
  verdict.rounds_used = ps.rounds_used;
  verdict.clamp_events = ps.clamp_events;
  verdict.diagnostic = std::move(ps.diagnostic);
  for (auto& c : ps.later_corrections) {
    verdict.round_corrections.push_back(std::move(c));
  }
  verdict.accepted = ps.accepted;
  if (ps.accepted) verdict.correction = std::move(first);
  return verdict;
}

}  // namespace argrw

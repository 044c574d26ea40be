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

// Argument reweighting: decode, suppress the likelihood of the correction in
// the error model, decode again, and accept only if the answer is stable.
//
// Two suppression rules act on each mechanism q of the correction c:
//
//   ratio:  p'(q) = p(q)^b                               (b >= 1)
//   gap:    p'(q) = exp(-b ln p(q) / ln p(c)) p(q)        (b > 0)
//
// with p(c) the product of p(q) over c. Over the whole correction they give
// prod p' = (prod p)^b and prod p' = e^-b prod p respectively. Mechanisms
// outside c are untouched. Later rounds reweight the previous round's priors
// by the previous round's correction, so mechanisms can be suppressed more
// than once.
//
// Acceptance criteria:
//   PEC       second-round correction equals the first bit for bit;
//   kR-LEC    rounds 2..k all land in the first round's logical class,
//             stopping at the first mismatch.

#ifndef ARGRW_REWEIGHTING_H_
#define ARGRW_REWEIGHTING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/decoder.h"
#include "argrw/error_model.h"

namespace argrw {

// Reweighted priors never drop below this; each clamp is counted.
inline constexpr double kProbabilityFloor = 1e-300;

enum class ReweightVariant { kRatio, kGap };

struct ReweightRule {
  ReweightVariant variant = ReweightVariant::kRatio;
  double b = 1;

  static ReweightRule ratio(double b) { return {ReweightVariant::kRatio, b}; }
  static ReweightRule gap(double b) { return {ReweightVariant::kGap, b}; }
  // Ratio needs b >= 1 (b == 1 is the identity), gap needs b > 0.
  void validate() const;
};

struct Criterion {
  enum class Kind { kPec, kLec };
  Kind kind = Kind::kPec;
  size_t rounds = 2;  // total decoding rounds; PEC always uses 2

  static Criterion pec() { return {Kind::kPec, 2}; }
  // k-round logical-error criterion, k >= 2.
  static Criterion lec(size_t k);
  // "PEC", "2R-LEC", "3R-LEC", ...
  static Criterion parse(std::string_view name);
  std::string name() const;

  bool operator==(const Criterion&) const = default;
};

struct Verdict {
  bool accepted = false;
  // First-round correction; present iff accepted.
  std::optional<BitVector> correction;
  size_t rounds_used = 0;
  std::vector<BitVector> round_corrections;
  size_t clamp_events = 0;
  // Decoder failure tag when a round could not be decoded, else empty.
  std::string diagnostic;
};

// p'(q) = p(q)^b on c. When `clamp_events` is given, clamps are added to it.
std::vector<double> reweight_ratio(std::span<const double> priors,
                                   const BitVector& correction, double b,
                                   size_t* clamp_events = nullptr);
// Gap rule; `correction` must be non-empty.
std::vector<double> reweight_gap(std::span<const double> priors,
                                 const BitVector& correction, double b,
                                 size_t* clamp_events = nullptr);
// Applies `rule` to c, or only to c & *eligible when `eligible` is set.
std::vector<double> reweight(std::span<const double> priors,
                             const BitVector& correction,
                             const ReweightRule& rule,
                             const BitVector* eligible = nullptr,
                             size_t* clamp_events = nullptr);

struct PostSelection {
  bool accepted = false;
  size_t rounds_used = 1;
  // Corrections from round 2 onward.
  std::vector<BitVector> later_corrections;
  size_t clamp_events = 0;
  std::string diagnostic;
};

// Runs rounds 2..k given the non-empty first-round correction `first`.
// A decoder failure in any round rejects with `diagnostic` set.
PostSelection post_select(Decoder& decoder, std::span<const double> priors,
                          const BitVector& syndrome,
                          const SparseBinaryMatrix& logical_map,
                          const Criterion& criterion, const ReweightRule& rule,
                          const BitVector& first,
                          const BitVector* eligible = nullptr);

// Decodes once; an empty correction is accepted immediately, anything else
// goes through post_select and, if accepted, commits the first-round
// correction.
Verdict argument_reweighting(Decoder& decoder, std::span<const double> priors,
                             const BitVector& syndrome,
                             const SparseBinaryMatrix& logical_map,
                             const Criterion& criterion,
                             const ReweightRule& rule,
                             const BitVector* eligible = nullptr);

}  // namespace argrw

#endif  // ARGRW_REWEIGHTING_H_

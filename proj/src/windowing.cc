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

#include "argrw/windowing.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace argrw {

namespace {

constexpr uint32_t kUnmapped = std::numeric_limits<uint32_t>::max();

// Round of each detector: the latest round of any mechanism touching it.
// Detectors no mechanism touches are never part of a window.
std::vector<std::optional<size_t>> detector_rounds(
    const DetectorErrorModel& model) {
  std::vector<std::optional<size_t>> rounds(model.num_detectors());
  for (size_t q = 0; q < model.num_mechanisms(); ++q) {
    const auto& mech = model.mechanism(q);
    if (!mech.round) {
      throw std::invalid_argument("mechanism " + std::to_string(q) +
                                  " has no round tag; windowed decoding "
                                  "needs every mechanism tagged");
    }
    for (uint32_t d : mech.detectors) {
      auto& r = rounds[d];
      r = r ? std::max(*r, size_t{*mech.round}) : size_t{*mech.round};
    }
  }
  return rounds;
}

}  // namespace

WindowLayout WindowLayout::for_distance(size_t distance, size_t total_rounds,
                                        ReweightScope scope) {
  return {distance, distance, total_rounds, scope};
}

void WindowLayout::validate() const {
  if (n_com == 0) throw std::invalid_argument("n_com must be positive");
  if (total_rounds == 0) {
    throw std::invalid_argument("total_rounds must be positive");
  }
}

size_t WindowLayout::num_windows() const {
  validate();
  return (total_rounds + n_com - 1) / n_com;
}

size_t WindowLayout::window_start(size_t w) const {
  if (w >= num_windows()) {
    throw std::out_of_range("window " + std::to_string(w) + " of " +
                            std::to_string(num_windows()));
  }
  return w * n_com;
}

size_t WindowLayout::window_end(size_t w) const {
  return std::min(window_start(w) + n_com + n_buf, total_rounds);
}

size_t WindowLayout::commit_end(size_t w) const {
  if (w + 1 == num_windows()) return window_end(w);
  return window_start(w) + n_com;
}

WindowSlice window_slice(const DetectorErrorModel& model,
                         const WindowLayout& layout, size_t window_index) {
  WindowSlice slice{DetectorErrorModel({}, 0, model.num_observables()),
                    {}, {}, BitVector(), 0, 0, 0};
  slice.start_round = layout.window_start(window_index);
  slice.end_round = layout.window_end(window_index);
  slice.commit_end_round = layout.commit_end(window_index);
  const auto rounds = detector_rounds(model);
  auto in_window = [&](size_t r) {
    return r >= slice.start_round && r < slice.end_round;
  };

  std::vector<uint32_t> local(model.num_detectors(), kUnmapped);
  for (uint32_t d = 0; d < model.num_detectors(); ++d) {
    if (rounds[d] && in_window(*rounds[d])) {
      local[d] = static_cast<uint32_t>(slice.detector_map.size());
      slice.detector_map.push_back(d);
    }
  }

  std::vector<ErrorMechanism> mechanisms;
  std::vector<uint32_t> committed;
  for (uint32_t q = 0; q < model.num_mechanisms(); ++q) {
    const auto& mech = model.mechanism(q);
    if (!in_window(*mech.round)) continue;
    ErrorMechanism sub;
    sub.probability = mech.probability;
    sub.observables = mech.observables;
    sub.round = mech.round;
    for (uint32_t d : mech.detectors) {
      if (local[d] != kUnmapped) sub.detectors.push_back(local[d]);
    }
    if (sub.detectors.empty()) continue;
    std::sort(sub.detectors.begin(), sub.detectors.end());
    if (*mech.round < slice.commit_end_round) {
      committed.push_back(static_cast<uint32_t>(mechanisms.size()));
    }
    slice.mechanism_map.push_back(q);
    mechanisms.push_back(std::move(sub));
  }
  slice.commit_mask = BitVector::from_indices(mechanisms.size(), committed);
  slice.model = DetectorErrorModel(std::move(mechanisms),
                                   slice.detector_map.size(),
                                   model.num_observables());
  return slice;
}

SlidingWindowDecoder::SlidingWindowDecoder(const DetectorErrorModel& model,
                                           WindowLayout layout,
                                           const ModelDecoderFactory& factory)
    : model_(&model), layout_(layout) {
  const size_t n = layout_.num_windows();
  for (size_t w = 0; w < n; ++w) {
    slices_.push_back(window_slice(model, layout_, w));
    const auto& sub = slices_.back().model;
    logical_maps_.push_back(check_matrices(sub).observable);
    priors_.push_back(sub.priors());
    decoders_.push_back(factory(sub));
  }
  for (const auto& mech : model.mechanisms()) {
    detector_columns_.push_back(
        BitVector::from_indices(model.num_detectors(), mech.detectors));
  }
}

WindowVerdict SlidingWindowDecoder::decode(const BitVector& syndrome,
                                           const Criterion& criterion,
                                           const ReweightRule& rule) {
  rule.validate();
  return run(syndrome, &criterion, &rule);
}

WindowVerdict SlidingWindowDecoder::decode_plain(const BitVector& syndrome) {
  return run(syndrome, nullptr, nullptr);
}

WindowVerdict SlidingWindowDecoder::run(const BitVector& syndrome,
                                        const Criterion* criterion,
                                        const ReweightRule* rule) {
  if (syndrome.size() != model_->num_detectors()) {
    throw std::invalid_argument("syndrome length does not match the model");
  }
  WindowVerdict out;
  BitVector residual = syndrome;
  BitVector correction(model_->num_mechanisms());
  for (size_t w = 0; w < slices_.size(); ++w) {
    const WindowSlice& slice = slices_[w];
    BitVector local(slice.detector_map.size());
    for (size_t i = 0; i < slice.detector_map.size(); ++i) {
      if (residual.get(slice.detector_map[i])) local.set(i);
    }
    const BitVector* eligible =
        layout_.scope == ReweightScope::kCommitOnly ? &slice.commit_mask
                                                    : nullptr;
    Verdict v;
    if (criterion) {
      v = argument_reweighting(*decoders_[w], priors_[w], local,
                               logical_maps_[w], *criterion, *rule, eligible);
    } else {
      try {
        v.correction = decoders_[w]->decode(priors_[w], local);
        v.accepted = true;
      } catch (const DecodeError& e) {
        v.diagnostic = e.tag();
      }
    }
    out.windows_decoded = w + 1;
    out.clamp_events += v.clamp_events;
    if (!v.accepted) {
      out.rejecting_window = w;
      out.diagnostic = "window " + std::to_string(w);
      if (!v.diagnostic.empty()) out.diagnostic += ": " + v.diagnostic;
      return out;
    }
    for (uint32_t q : v.correction->ones()) {
      if (!slice.commit_mask.get(q)) continue;
      const uint32_t global = slice.mechanism_map[q];
      correction.flip(global);
      residual ^= detector_columns_[global];
    }
  }
  if (residual.any()) {
    out.diagnostic = "residual_syndrome";
    return out;
  }
  out.accepted = true;
  out.correction = std::move(correction);
  return out;
}

WindowVerdict decode_sliding_window(const DetectorErrorModel& model,
                                    const WindowLayout& layout,
                                    const ModelDecoderFactory& factory,
                                    const Criterion& criterion,
                                    const ReweightRule& rule,
                                    const BitVector& syndrome) {
  SlidingWindowDecoder decoder(model, layout, factory);
  return decoder.decode(syndrome, criterion, rule);
}

}  // namespace argrw

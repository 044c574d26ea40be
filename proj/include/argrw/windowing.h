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

// Sliding-window decoding with per-window argument reweighting.
//
// Window w spans rounds [w * n_com, min(w * n_com + n_com + n_buf, total)).
// Its first n_com rounds are committed; the last window is committed in
// full. A detector belongs to the round of the latest mechanism touching it,
// and a window sees the detectors whose round it spans plus the mechanisms
// tagged with those rounds (detectors outside the window are cut off).
// Committed mechanisms flip the residual syndrome handed to later windows.

#ifndef ARGRW_WINDOWING_H_
#define ARGRW_WINDOWING_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/decoder.h"
#include "argrw/error_model.h"
#include "argrw/reweighting.h"

namespace argrw {

enum class ReweightScope { kFullWindow, kCommitOnly };

struct WindowLayout {
  size_t n_com = 1;
  size_t n_buf = 0;
  size_t total_rounds = 1;
  ReweightScope scope = ReweightScope::kFullWindow;

  // Window of 2d rounds: d committed, d buffered.
  static WindowLayout for_distance(size_t distance, size_t total_rounds,
                                   ReweightScope scope =
                                       ReweightScope::kFullWindow);

  void validate() const;
  size_t num_windows() const;
  size_t window_start(size_t w) const;
  size_t window_end(size_t w) const;  // exclusive
  size_t commit_end(size_t w) const;  // exclusive
};

struct WindowSlice {
  DetectorErrorModel model;
  std::vector<uint32_t> detector_map;   // window detector -> model detector
  std::vector<uint32_t> mechanism_map;  // window mechanism -> model mechanism
  // Window mechanisms inside the commit region.
  BitVector commit_mask;
  size_t start_round = 0;
  size_t end_round = 0;
  size_t commit_end_round = 0;
};

// Throws std::invalid_argument for untagged mechanisms and
// std::out_of_range for a window index past the end.
WindowSlice window_slice(const DetectorErrorModel& model,
                         const WindowLayout& layout, size_t window_index);

// Builds a decoder for one window's sub-model.
using ModelDecoderFactory =
    std::function<std::unique_ptr<Decoder>(const DetectorErrorModel&)>;

struct WindowVerdict {
  bool accepted = false;
  // Committed correction over the full model; present iff accepted.
  std::optional<BitVector> correction;
  size_t windows_decoded = 0;
  std::optional<size_t> rejecting_window;
  // "window <i>: <decoder tag>" or "residual_syndrome" on failure.
  std::string diagnostic;
  size_t clamp_events = 0;
};

// Holds the window slices and one decoder per window. Not thread-safe.
class SlidingWindowDecoder {
 public:
  SlidingWindowDecoder(const DetectorErrorModel& model, WindowLayout layout,
                       const ModelDecoderFactory& factory);

  // Stops at the first rejecting window.
  WindowVerdict decode(const BitVector& syndrome, const Criterion& criterion,
                       const ReweightRule& rule);
  // Plain windowed decoding: one decode per window, no post-selection.
  WindowVerdict decode_plain(const BitVector& syndrome);

  const WindowLayout& layout() const { return layout_; }
  size_t num_windows() const { return slices_.size(); }
  const WindowSlice& slice(size_t w) const { return slices_[w]; }

 private:
  WindowVerdict run(const BitVector& syndrome, const Criterion* criterion,
                    const ReweightRule* rule);

  const DetectorErrorModel* model_;
  WindowLayout layout_;
  std::vector<WindowSlice> slices_;
  std::vector<SparseBinaryMatrix> logical_maps_;
  std::vector<std::vector<double>> priors_;
  std::vector<std::unique_ptr<Decoder>> decoders_;
  std::vector<BitVector> detector_columns_;
};

WindowVerdict decode_sliding_window(const DetectorErrorModel& model,
                                    const WindowLayout& layout,
                                    const ModelDecoderFactory& factory,
                                    const Criterion& criterion,
                                    const ReweightRule& rule,
                                    const BitVector& syndrome);

}  // namespace argrw

#endif  // ARGRW_WINDOWING_H_

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

#ifndef ARGRW_MATCHING_H_
#define ARGRW_MATCHING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/decoder.h"
#include "argrw/error_model.h"

namespace argrw {

// ln(1/p - 1). Throws std::domain_error unless 0 < p < 0.5.
double edge_weight(double p);

class NotMatchableError : public std::invalid_argument {
 public:
  NotMatchableError(size_t mechanism, size_t num_detectors);
  size_t mechanism() const { return mechanism_; }

 private:
  size_t mechanism_;
};

struct MatchingEdge {
  uint32_t u = 0;
  uint32_t v = 0;  // the boundary node for single-detector mechanisms
  uint32_t mechanism = 0;
  double weight = 0;
};

// Decoding graph: one node per detector plus a virtual boundary node, one
// edge per mechanism, with all-pairs shortest paths.
class MatchingGraph {
 public:
  MatchingGraph(size_t num_detectors, size_t num_mechanisms,
                std::vector<MatchingEdge> edges);

  size_t num_detectors() const { return num_detectors_; }
  size_t num_mechanisms() const { return num_mechanisms_; }
  uint32_t boundary() const { return static_cast<uint32_t>(num_detectors_); }
  size_t num_nodes() const { return num_detectors_ + 1; }
  const std::vector<MatchingEdge>& edges() const { return edges_; }

  // Infinity when unreachable.
  double distance(uint32_t from, uint32_t to) const {
    return dist_[from * num_nodes() + to];
  }
  // Mechanisms along the stored shortest path, from `to` back to `from`.
  std::vector<uint32_t> path_mechanisms(uint32_t from, uint32_t to) const;

 private:
  size_t num_detectors_;
  size_t num_mechanisms_;
  std::vector<MatchingEdge> edges_;
  std::vector<double> dist_;
  // Index of the last edge on the shortest path from row node to column
  // node, or UINT32_MAX.
  std::vector<uint32_t> pred_edge_;
};

// Throws NotMatchableError for a mechanism with 0 or more than 2 detectors.
MatchingGraph build_matching_graph(const DetectorErrorModel& model,
                                   std::span<const double> priors);

struct MwpmConfig {
  // Exact matching runs over subsets of triggered detectors.
  size_t max_defects = 16;
};

// Exact minimum-weight perfect matching of the triggered detectors, each of
// which may alternatively match to the boundary. Throws
// SyndromeTooDenseError above the defect cap and UnsolvableSyndromeError if
// some defect cannot be matched.
BitVector decode_mwpm(const MatchingGraph& graph, const BitVector& syndrome,
                      const MwpmConfig& config = {});

class MwpmDecoder : public Decoder {
 public:
  explicit MwpmDecoder(DetectorErrorModel model, MwpmConfig config = {});

  // Rebuilds the graph whenever the priors differ from the previous call.
  BitVector decode(std::span<const double> priors,
                   const BitVector& syndrome) override;
  bool deterministic() const override { return true; }
  std::string name() const override { return "mwpm"; }

 private:
  DetectorErrorModel model_;
  MwpmConfig config_;
  std::vector<double> cached_priors_;
  std::optional<MatchingGraph> graph_;
};

}  // namespace argrw

#endif  // ARGRW_MATCHING_H_

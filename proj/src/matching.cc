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

#include "argrw/matching.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

namespace argrw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr uint32_t kNoEdge = UINT32_MAX;
}  // namespace

double edge_weight(double p) {
  if (!(p > 0 && p < 0.5)) {
    throw std::domain_error("matching edge probability " + std::to_string(p) +
                            " is outside (0, 0.5)");
  }
  return std::log1p(-p) - std::log(p);
}

NotMatchableError::NotMatchableError(size_t mechanism, size_t num_detectors)
    : std::invalid_argument("mechanism " + std::to_string(mechanism) +
                            " triggers " + std::to_string(num_detectors) +
                            " detectors; matching needs 1 or 2"),
      mechanism_(mechanism) {}

MatchingGraph::MatchingGraph(size_t num_detectors, size_t num_mechanisms,
                             std::vector<MatchingEdge> edges)
    : num_detectors_(num_detectors),
      num_mechanisms_(num_mechanisms),
      edges_(std::move(edges)) {
  const size_t n = num_nodes();
  std::vector<std::vector<uint32_t>> incident(n);
  for (size_t e = 0; e < edges_.size(); ++e) {
    incident[edges_[e].u].push_back(static_cast<uint32_t>(e));
    incident[edges_[e].v].push_back(static_cast<uint32_t>(e));
  }
  dist_.assign(n * n, kInf);
  pred_edge_.assign(n * n, kNoEdge);

  using Item = std::pair<double, uint32_t>;
  for (uint32_t src = 0; src < n; ++src) {
    double* dist = dist_.data() + src * n;
    uint32_t* pred = pred_edge_.data() + src * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[src] = 0;
    queue.push({0.0, src});
    while (!queue.empty()) {
      auto [d, node] = queue.top();
      queue.pop();
      if (d > dist[node]) continue;
      for (uint32_t e : incident[node]) {
        const auto& edge = edges_[e];
        uint32_t next = edge.u == node ? edge.v : edge.u;
        double nd = d + edge.weight;
        if (nd < dist[next]) {
          dist[next] = nd;
          pred[next] = e;
          queue.push({nd, next});
        }
      }
    }
  }
}

std::vector<uint32_t> MatchingGraph::path_mechanisms(uint32_t from,
                                                     uint32_t to) const {
  std::vector<uint32_t> out;
  const uint32_t* pred = pred_edge_.data() + from * num_nodes();
  uint32_t node = to;
  while (node != from) {
    uint32_t e = pred[node];
    if (e == kNoEdge) {
      throw UnsolvableSyndromeError("no path between matching nodes " +
                                    std::to_string(from) + " and " +
                                    std::to_string(to));
    }
    out.push_back(edges_[e].mechanism);
    node = edges_[e].u == node ? edges_[e].v : edges_[e].u;
  }
  return out;
}

MatchingGraph build_matching_graph(const DetectorErrorModel& model,
                                   std::span<const double> priors) {
  validate_priors(priors, model.num_mechanisms());
  const auto boundary = static_cast<uint32_t>(model.num_detectors());
  std::vector<MatchingEdge> edges;
  edges.reserve(model.num_mechanisms());
  for (size_t q = 0; q < model.num_mechanisms(); ++q) {
    const auto& dets = model.mechanism(q).detectors;
    if (dets.empty() || dets.size() > 2) {
      throw NotMatchableError(q, dets.size());
    }
    MatchingEdge e;
    e.u = dets[0];
    e.v = dets.size() == 2 ? dets[1] : boundary;
    e.mechanism = static_cast<uint32_t>(q);
    e.weight = edge_weight(priors[q]);
    edges.push_back(e);
  }
  return MatchingGraph(model.num_detectors(), model.num_mechanisms(),
                       std::move(edges));
}

BitVector decode_mwpm(const MatchingGraph& graph, const BitVector& syndrome,
                      const MwpmConfig& config) {
  if (syndrome.size() != graph.num_detectors()) {
    throw std::invalid_argument("syndrome length does not match the graph");
  }
  BitVector correction(graph.num_mechanisms());
  const std::vector<uint32_t> defects = syndrome.ones();
  const size_t n = defects.size();
  if (n == 0) return correction;
  if (n > config.max_defects || n >= 31) {
    throw SyndromeTooDenseError(std::to_string(n) +
                                " triggered detectors exceed the exact "
                                "matching cap of " +
                                std::to_string(config.max_defects));
  }

  // best[mask]: cheapest way to match the defects in mask. The lowest defect
  // in the mask is matched either to the boundary (partner == n) or to
  // another defect in the mask.
  const uint32_t full = (uint32_t{1} << n) - 1;
  std::vector<double> best(size_t{full} + 1, kInf);
  std::vector<uint8_t> partner(size_t{full} + 1, 0);
  best[0] = 0;
  const uint32_t boundary = graph.boundary();
  for (uint32_t mask = 1; mask <= full; ++mask) {
    const int i = std::countr_zero(mask);
    const uint32_t rest = mask & (mask - 1);
    double value = graph.distance(defects[i], boundary) + best[rest];
    uint8_t choice = static_cast<uint8_t>(n);
    for (uint32_t others = rest; others; others &= others - 1) {
      const int j = std::countr_zero(others);
      double candidate = graph.distance(defects[i], defects[j]) +
                         best[rest & ~(uint32_t{1} << j)];
      if (candidate < value) {
        value = candidate;
        choice = static_cast<uint8_t>(j);
      }
    }
    best[mask] = value;
    partner[mask] = choice;
  }
  if (!std::isfinite(best[full])) {
    throw UnsolvableSyndromeError(
        "some triggered detector cannot reach a partner or the boundary");
  }

  for (uint32_t mask = full; mask;) {
    const int i = std::countr_zero(mask);
    const uint8_t j = partner[mask];
    uint32_t target = j == n ? boundary : defects[j];
    for (uint32_t q : graph.path_mechanisms(defects[i], target)) {
      correction.flip(q);
    }
    mask &= mask - 1;
    if (j != n) mask &= ~(uint32_t{1} << j);
  }
  return correction;
}

MwpmDecoder::MwpmDecoder(DetectorErrorModel model, MwpmConfig config)
    : model_(std::move(model)), config_(config) {
  // Fail early on non-graphlike models.
  graph_.emplace(build_matching_graph(model_, model_.priors()));
  cached_priors_ = model_.priors();
}

BitVector MwpmDecoder::decode(std::span<const double> priors,
                              const BitVector& syndrome) {
  if (!std::equal(priors.begin(), priors.end(), cached_priors_.begin(),
                  cached_priors_.end())) {
    graph_.emplace(build_matching_graph(model_, priors));
    cached_priors_.assign(priors.begin(), priors.end());
  }
  return decode_mwpm(*graph_, syndrome, config_);
}

}  // namespace argrw

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

#ifndef ARGRW_BP_OSD_H_
#define ARGRW_BP_OSD_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "argrw/bit_vector.h"
#include "argrw/decoder.h"
#include "argrw/error_model.h"

namespace argrw {

enum class BpSchedule { kParallel, kSerial };

struct BpConfig {
  size_t max_iterations = 200;
  double scaling_factor = 1.0;  // min-sum normalisation, in (0, 1]
  BpSchedule schedule = BpSchedule::kParallel;

  void validate() const;
};

struct BpResult {
  // Posterior log-likelihood ratios ln(Pr(q = 0) / Pr(q = 1)).
  std::vector<double> soft;
  BitVector hard;
  bool converged = false;
  size_t iterations = 0;
};

// Min-sum belief propagation plus order-0 ordered-statistics post-processing
// on the Tanner graph of a check matrix.
class BpOsdDecoder : public Decoder {
 public:
  BpOsdDecoder(SparseBinaryMatrix check_matrix, BpConfig config = {});

  // Runs min-sum until the hard decision satisfies the syndrome or
  // max_iterations is reached.
  BpResult decode_bp(std::span<const double> priors, const BitVector& syndrome);
  // Throws UnsolvableSyndromeError if the syndrome is outside the column
  // space of the check matrix.
  BitVector decode_osd0(std::span<const double> soft, const BitVector& syndrome);

  // BP hard decision if it converged, otherwise OSD-0 on the BP soft output.
  BitVector decode(std::span<const double> priors,
                   const BitVector& syndrome) override;
  bool deterministic() const override { return true; }
  std::string name() const override { return "bp_osd"; }

  const SparseBinaryMatrix& check_matrix() const { return check_; }
  const BpConfig& config() const { return config_; }

 private:
  void check_syndrome_length(const BitVector& syndrome) const;
  // Parity of each check under hard_bits_ matches the syndrome.
  bool satisfies(const BitVector& syndrome) const;

  SparseBinaryMatrix check_;
  BpConfig config_;
  // Edge e joins check edge_check_[e] and variable edge_var_[e]; edges are
  // grouped by check.
  std::vector<uint32_t> edge_check_, edge_var_;
  std::vector<uint32_t> check_begin_;  // size rows + 1
  // Edges of variable v: var_edges_[var_begin_[v] .. var_begin_[v + 1]).
  std::vector<uint32_t> var_begin_, var_edges_;
  // Scratch.
  std::vector<double> v2c_, c2v_, channel_;
  std::vector<uint8_t> hard_bits_;
  std::vector<uint64_t> osd_rows_;
  BitVector osd_aug_;
};

BpResult decode_bp(const SparseBinaryMatrix& check_matrix,
                   std::span<const double> priors, const BitVector& syndrome,
                   const BpConfig& config = {});
BitVector decode_osd0(std::span<const double> soft, const BitVector& syndrome,
                      const SparseBinaryMatrix& check_matrix);
BitVector decode_bp_osd(const SparseBinaryMatrix& check_matrix,
                        std::span<const double> priors,
                        const BitVector& syndrome, const BpConfig& config = {});

}  // namespace argrw

#endif  // ARGRW_BP_OSD_H_

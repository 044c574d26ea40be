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

#include <cmath>
#include <random>
#include <stdexcept>

#include "argrw/bp_osd.h"
#include "argrw/code_builders.h"
#include "argrw/matching.h"
#include "argrw/ml_oracle.h"
#include "argrw/sampler.h"
#include "gtest/gtest.h"

namespace argrw {
namespace {

ErrorMechanism mech(double p, std::vector<uint32_t> d,
                    std::vector<uint32_t> l = {}) {
  ErrorMechanism m;
  m.probability = p;
  m.detectors = std::move(d);
  m.observables = std::move(l);
  return m;
}

TEST(MlOracle, RepetitionSyndromeTenPercent) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  MlResult r = decode_ml_bruteforce(m, BitVector::from_string("10"));
  EXPECT_EQ(r.correction.to_string(), "100");
  EXPECT_NEAR(r.correction_probability, 0.081, 1e-15);
  EXPECT_NEAR(r.syndrome_probability, 0.090, 1e-15);
  ASSERT_EQ(r.spectrum.size(), 2u);
  EXPECT_EQ(r.spectrum[1].error.to_string(), "011");
  EXPECT_NEAR(r.class_likelihoods.at(BitVector::from_string("1")), 0.081,
              1e-15);
  EXPECT_NEAR(r.class_likelihoods.at(BitVector::from_string("0")), 0.009,
              1e-15);
}

TEST(MlOracle, EnumerationCoversAllSyndromes) {
  DetectorErrorModel m = build_repetition_code(5, 1, 0.1, 0);
  auto all = enumerate_all_syndromes(m);
  EXPECT_EQ(all.size(), 16u);
  double total = 0;
  for (const auto& [s, r] : all) {
    EXPECT_EQ(r.spectrum.size(), 2u);
    total += r.syndrome_probability;
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(MlOracle, UnsolvableAndCap) {
  DetectorErrorModel m({mech(0.1, {0})}, 2, 0);
  EXPECT_THROW(decode_ml_bruteforce(m, BitVector::from_string("01")),
               UnsolvableSyndromeError);
  std::vector<ErrorMechanism> many(25, mech(0.1, {0}));
  EXPECT_THROW(decode_ml_bruteforce(DetectorErrorModel(many, 1, 0),
                                    BitVector(1)),
               std::invalid_argument);
}

TEST(Matching, EdgeWeight) {
  EXPECT_NEAR(edge_weight(0.1), std::log(9.0), 1e-14);
  EXPECT_THROW(edge_weight(0.5), std::domain_error);
  EXPECT_THROW(edge_weight(0), std::domain_error);
}

TEST(Matching, RejectsHyperedges) {
  DetectorErrorModel m({mech(0.1, {0, 1, 2})}, 3, 0);
  EXPECT_THROW(MwpmDecoder{m}, NotMatchableError);
}

TEST(Matching, DefectCap) {
  DetectorErrorModel m = build_repetition_code(5, 5, 0.1, 0.1);
  MwpmDecoder dec(m, MwpmConfig{4});
  BitVector s(m.num_detectors());
  for (size_t i = 0; i < 5; ++i) s.set(i * 3);
  EXPECT_THROW(dec.decode(m.priors(), s), SyndromeTooDenseError);
}

TEST(Matching, GraphDistances) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  MatchingGraph g = build_matching_graph(m, m.priors());
  const double w = std::log(9.0);
  EXPECT_NEAR(g.distance(0, 1), w, 1e-14);
  EXPECT_NEAR(g.distance(0, g.boundary()), w, 1e-14);
  EXPECT_NEAR(g.distance(1, g.boundary()), w, 1e-14);
  EXPECT_EQ(g.path_mechanisms(0, 1), std::vector<uint32_t>{1});
}

TEST(BpOsd, ConfigValidation) {
  EXPECT_THROW((BpConfig{0, 1.0, BpSchedule::kParallel}.validate()),
               std::invalid_argument);
  EXPECT_THROW((BpConfig{10, 0.0, BpSchedule::kParallel}.validate()),
               std::invalid_argument);
}

TEST(BpOsd, ZeroSyndromeShortCircuits) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  BpResult r = decode_bp(check_matrices(m).check, m.priors(), BitVector(2));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_TRUE(r.hard.none());
}

TEST(BpOsd, OsdSolvesOrThrows) {
  DetectorErrorModel m({mech(0.1, {0, 1}), mech(0.2, {1, 2})}, 3, 0);
  SparseBinaryMatrix h = check_matrices(m).check;
  std::vector<double> soft{1.0, 2.0};
  EXPECT_EQ(decode_osd0(soft, BitVector::from_string("101"), h).to_string(),
            "11");
  EXPECT_THROW(decode_osd0(soft, BitVector::from_string("100"), h),
               UnsolvableSyndromeError);
}

TEST(BpOsd, OsdPrefersReliableColumns) {
  // Two mechanisms explain D0; the one with lower LLR must be picked.
  DetectorErrorModel m({mech(0.1, {0}), mech(0.2, {0})}, 1, 0);
  SparseBinaryMatrix h = check_matrices(m).check;
  EXPECT_EQ(decode_osd0(std::vector<double>{2.0, -1.0},
                        BitVector::from_string("1"), h)
                .to_string(),
            "01");
  EXPECT_EQ(decode_osd0(std::vector<double>{-1.0, 2.0},
                        BitVector::from_string("1"), h)
                .to_string(),
            "10");
}

// Every reachable syndrome: the decoder output has ML-optimal probability.
void expect_ml_optimal(const DetectorErrorModel& m, Decoder& dec) {
  const auto priors = m.priors();
  for (const auto& [s, ml] : enumerate_all_syndromes(m)) {
    BitVector c = dec.decode(priors, s);
    ASSERT_EQ(syndrome_of(m, c), s);
    EXPECT_EQ(log_probability(priors, c), ml.spectrum.front().log_probability)
        << dec.name() << " syndrome " << s.to_string();
  }
}

TEST(OracleEquivalence, RepetitionCodes) {
  for (size_t d : {3, 5}) {
    for (double p : {0.01, 0.1}) {
      DetectorErrorModel m = build_repetition_code(d, 1, p, 0);
      MwpmDecoder mwpm(m);
      BpOsdDecoder bp(check_matrices(m).check);
      expect_ml_optimal(m, mwpm);
      expect_ml_optimal(m, bp);
    }
  }
}

TEST(OracleEquivalence, MatchingOnSurfaceCode) {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 1, 0.05);
  MwpmDecoder mwpm(m);
  expect_ml_optimal(m, mwpm);
}

TEST(BpOsd, OutputsAreConsistentOnSampledShots) {
  for (auto schedule : {BpSchedule::kParallel, BpSchedule::kSerial}) {
    DetectorErrorModel m = build_surface_code_phenomenological(5, 3, 0.03);
    BpOsdDecoder dec(check_matrices(m).check,
                     BpConfig{200, 1.0, schedule});
    ShotSampler s(m, 11);
    const auto priors = m.priors();
    for (uint64_t i = 0; i < 300; ++i) {
      Shot shot = s.sample(i);
      BitVector c = dec.decode(priors, shot.syndrome);
      ASSERT_EQ(syndrome_of(m, c), shot.syndrome);
      EXPECT_EQ(dec.decode(priors, shot.syndrome), c);
    }
  }
}

TEST(Matching, ConsistentOnSampledShots) {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 3, 0.02);
  MwpmDecoder dec(m);
  ShotSampler s(m, 5);
  const auto priors = m.priors();
  for (uint64_t i = 0; i < 300; ++i) {
    Shot shot = s.sample(i);
    BitVector c = dec.decode(priors, shot.syndrome);
    ASSERT_EQ(syndrome_of(m, c), shot.syndrome);
  }
}

TEST(MlOracle, DecoderFollowsPriors) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  MlOracleDecoder dec(m);
  std::vector<double> priors{0.01, 0.1, 0.1};
  EXPECT_EQ(dec.decode(priors, BitVector::from_string("10")).to_string(),
            "011");
}

}  // namespace
}  // namespace argrw

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

#include "argrw/error_model.h"

#include <cmath>
#include <stdexcept>

#include "argrw/code_builders.h"
#include "argrw/dem_io.h"
#include "argrw/ml_oracle.h"
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

TEST(ErrorModel, RejectsInvalidMechanisms) {
  EXPECT_THROW(DetectorErrorModel({mech(0, {0})}, 1, 0), std::invalid_argument);
  EXPECT_THROW(DetectorErrorModel({mech(1, {0})}, 1, 0), std::invalid_argument);
  EXPECT_THROW(DetectorErrorModel({mech(0.1, {})}, 1, 0),
               std::invalid_argument);
  EXPECT_THROW(DetectorErrorModel({mech(0.1, {1, 0})}, 2, 0),
               std::invalid_argument);
  EXPECT_THROW(DetectorErrorModel({mech(0.1, {2})}, 2, 0),
               std::invalid_argument);
  EXPECT_THROW(DetectorErrorModel({mech(0.1, {0}, {1})}, 1, 1),
               std::invalid_argument);
}

TEST(ErrorModel, CanonicalizeMergesByXor) {
  DetectorErrorModel m({mech(0.1, {0}), mech(0.2, {1}), mech(0.3, {0})}, 2, 0);
  DetectorErrorModel c = canonicalize(m);
  ASSERT_EQ(c.num_mechanisms(), 2u);
  EXPECT_NEAR(c.mechanism(0).probability, 0.1 * 0.7 + 0.3 * 0.9, 1e-15);
  EXPECT_EQ(c.mechanism(1).detectors, std::vector<uint32_t>{1});
}

TEST(ErrorModel, CheckMatricesAndSyndrome) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  CheckMatrices cm = check_matrices(m);
  EXPECT_EQ(cm.check.to_dense(),
            (std::vector<std::vector<uint8_t>>{{1, 1, 0}, {0, 1, 1}}));
  EXPECT_EQ(cm.observable.to_dense(),
            (std::vector<std::vector<uint8_t>>{{1, 0, 0}}));
  BitVector e = BitVector::from_string("110");
  EXPECT_EQ(syndrome_of(m, e).to_string(), "01");
  EXPECT_EQ(logical_of(m, e).to_string(), "1");
  EXPECT_EQ(cm.check.multiply(e), syndrome_of(m, e));
  EXPECT_THROW(syndrome_of(m, BitVector(2)), std::invalid_argument);
}

TEST(ErrorModel, LogProbability) {
  std::vector<double> p{0.1, 0.2, 0.3};
  double lp = log_probability(p, BitVector::from_string("101"));
  EXPECT_NEAR(lp, std::log(0.1 * 0.8 * 0.3), 1e-14);
}

TEST(RepetitionCode, LayoutAndRounds) {
  DetectorErrorModel m = build_repetition_code(3, 2, 0.1, 0.05);
  EXPECT_EQ(m.num_detectors(), 4u);
  EXPECT_EQ(m.num_observables(), 1u);
  ASSERT_EQ(m.num_mechanisms(), 8u);
  // Round 0: data, then measurement; round 1: data.
  EXPECT_EQ(m.mechanism(0).detectors, std::vector<uint32_t>{0});
  EXPECT_EQ(m.mechanism(0).observables, std::vector<uint32_t>{0});
  EXPECT_EQ(m.mechanism(1).detectors, (std::vector<uint32_t>{0, 1}));
  EXPECT_EQ(m.mechanism(3).detectors, (std::vector<uint32_t>{0, 2}));
  EXPECT_EQ(m.mechanism(3).probability, 0.05);
  EXPECT_EQ(m.mechanism(3).round, 0u);
  EXPECT_EQ(m.mechanism(5).detectors, std::vector<uint32_t>{2});
  EXPECT_EQ(m.mechanism(5).round, 1u);
}

TEST(RepetitionCode, RejectsBadParameters) {
  EXPECT_THROW(build_repetition_code(4, 1, 0.1, 0), std::invalid_argument);
  EXPECT_THROW(build_repetition_code(1, 1, 0.1, 0), std::invalid_argument);
  EXPECT_THROW(build_repetition_code(3, 0, 0.1, 0), std::invalid_argument);
  EXPECT_THROW(build_repetition_code(3, 1, 0, 0), std::invalid_argument);
}

// Smallest weight of an undetectable error that flips the observable.
size_t logical_distance(const DetectorErrorModel& m) {
  MlResult r = decode_ml_bruteforce(m, BitVector(m.num_detectors()));
  size_t best = SIZE_MAX;
  for (const auto& w : r.spectrum) {
    if (logical_of(m, w.error).any()) best = std::min(best, w.error.count());
  }
  return best;
}

TEST(SurfaceCode, StructureForDistanceThree) {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 1, 0.01);
  EXPECT_EQ(m.num_detectors(), 4u);
  for (const auto& mech : m.mechanisms()) {
    EXPECT_LE(mech.detectors.size(), 2u);
    EXPECT_GE(mech.detectors.size(), 1u);
  }
  EXPECT_EQ(logical_distance(m), 3u);
  EXPECT_EQ(logical_distance(build_repetition_code(5, 1, 0.01, 0)), 5u);
}

TEST(SurfaceCode, RoundsAndMeasurementLayers) {
  DetectorErrorModel one = build_surface_code_phenomenological(3, 1, 0.01);
  DetectorErrorModel three = build_surface_code_phenomenological(3, 3, 0.01);
  EXPECT_EQ(three.num_detectors(), 12u);
  EXPECT_EQ(three.num_mechanisms(), 3 * one.num_mechanisms() + 2 * 4);
  for (const auto& mech : three.mechanisms()) ASSERT_TRUE(mech.round);
}

TEST(DemIo, ParsesAndInfersCounts) {
  DetectorErrorModel m = parse_dem(
      "# comment\n"
      "error(0.1) D0 L0\n"
      "  error(0.25) D1 D0\n"
      "\n"
      "round 2\n"
      "error(1e-3) D2\n");
  EXPECT_EQ(m.num_detectors(), 3u);
  EXPECT_EQ(m.num_observables(), 1u);
  ASSERT_EQ(m.num_mechanisms(), 3u);
  EXPECT_EQ(m.mechanism(1).detectors, (std::vector<uint32_t>{0, 1}));
  EXPECT_EQ(m.mechanism(0).round, 0u);
  EXPECT_EQ(m.mechanism(2).round, 2u);
  EXPECT_EQ(m.mechanism(2).probability, 1e-3);
}

TEST(DemIo, DeclaredCounts) {
  DetectorErrorModel m =
      parse_dem("detector_count 5\nobservable_count 2\nerror(0.1) D0\n");
  EXPECT_EQ(m.num_detectors(), 5u);
  EXPECT_EQ(m.num_observables(), 2u);
  EXPECT_THROW(parse_dem("detector_count 1\nerror(0.1) D3\n"), DemParseError);
}

TEST(DemIo, ErrorsCarryPositions) {
  try {
    parse_dem("error(0.1) D0\nerror(1.5) D1\n");
    FAIL() << "expected a parse error";
  } catch (const DemParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 7u);
  }
  EXPECT_THROW(parse_dem("error(0) D0"), DemParseError);
  EXPECT_THROW(parse_dem("error(0.1) D-1"), DemParseError);
  EXPECT_THROW(parse_dem("error(0.1) D0 ^ D1"), DemParseError);
  EXPECT_THROW(parse_dem("error(0.1) X3"), DemParseError);
  EXPECT_THROW(parse_dem("error(0.1)"), DemParseError);
  EXPECT_THROW(parse_dem("error(0.1) D0 D0"), DemParseError);
  EXPECT_THROW(parse_dem("repeat 3 {"), DemParseError);
  EXPECT_THROW(parse_dem("error(abc) D0"), DemParseError);
}

TEST(DemIo, RoundTrip) {
  for (const auto& m : {build_repetition_code(5, 3, 0.013, 0.021),
                        build_surface_code_phenomenological(3, 2, 0.0371)}) {
    EXPECT_EQ(parse_dem(to_dem_text(m)), m);
  }
}

}  // namespace
}  // namespace argrw

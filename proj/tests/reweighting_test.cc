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

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "argrw/bp_osd.h"
#include "argrw/code_builders.h"
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

// Records every prior vector it is asked to decode with.
class RecordingDecoder : public Decoder {
 public:
  explicit RecordingDecoder(DetectorErrorModel m) : inner_(std::move(m)) {}
  BitVector decode(std::span<const double> priors,
                   const BitVector& syndrome) override {
    calls.emplace_back(priors.begin(), priors.end());
    return inner_.decode(priors, syndrome);
  }
  bool deterministic() const override { return true; }
  std::string name() const override { return "recording"; }
  std::vector<std::vector<double>> calls;

 private:
  MlOracleDecoder inner_;
};

class FailingDecoder : public Decoder {
 public:
  BitVector decode(std::span<const double>, const BitVector&) override {
    throw UnsolvableSyndromeError("always");
  }
  bool deterministic() const override { return true; }
  std::string name() const override { return "failing"; }
};

TEST(Rule, Validation) {
  EXPECT_NO_THROW(ReweightRule::ratio(1).validate());
  EXPECT_THROW(ReweightRule::ratio(0.5).validate(), std::invalid_argument);
  EXPECT_THROW(ReweightRule::gap(0).validate(), std::invalid_argument);
  EXPECT_THROW(ReweightRule::gap(INFINITY).validate(), std::invalid_argument);
  EXPECT_NO_THROW(ReweightRule::gap(1e-12).validate());
}

TEST(Criterion, ParseAndName) {
  EXPECT_EQ(Criterion::parse("PEC"), Criterion::pec());
  EXPECT_EQ(Criterion::parse("3R-LEC"), Criterion::lec(3));
  EXPECT_EQ(Criterion::lec(4).name(), "4R-LEC");
  EXPECT_THROW(Criterion::parse("1R-LEC"), std::invalid_argument);
  EXPECT_THROW(Criterion::parse("R-LEC"), std::invalid_argument);
  EXPECT_THROW(Criterion::parse("pec"), std::invalid_argument);
}

TEST(ReweightRatio, Examples) {
  std::vector<double> p{0.1, 0.2};
  auto out = reweight_ratio(p, BitVector::from_string("10"), 2);
  EXPECT_NEAR(out[0], 0.01, 1e-17);
  EXPECT_EQ(out[1], 0.2);
  EXPECT_EQ(reweight_ratio(p, BitVector::from_string("11"), 1), p);
}

TEST(ReweightGap, Examples) {
  std::vector<double> p{0.1, 0.1, 0.3};
  auto one = reweight_gap(p, BitVector::from_string("100"), 2);
  EXPECT_NEAR(one[0], std::exp(-2.0) * 0.1, 1e-16);
  EXPECT_NEAR(one[0], 0.0135335, 1e-7);
  auto two = reweight_gap(p, BitVector::from_string("110"), 2);
  EXPECT_NEAR(two[0], std::exp(-1.0) * 0.1, 1e-16);
  EXPECT_NEAR(two[1], 0.0367879, 1e-7);
  EXPECT_EQ(two[2], 0.3);
  auto tiny = reweight_gap(p, BitVector::from_string("110"), 1e-12);
  EXPECT_NEAR(tiny[0], 0.1, 1e-12);
  EXPECT_THROW(reweight_gap(p, BitVector(3), 1), std::invalid_argument);
}

TEST(Reweight, ClampsAtFloor) {
  std::vector<double> p{1e-10, 0.5};
  size_t clamps = 0;
  auto out = reweight_ratio(p, BitVector::from_string("11"), 40, &clamps);
  EXPECT_EQ(out[0], kProbabilityFloor);
  EXPECT_EQ(clamps, 1u);
  EXPECT_NEAR(out[1], std::pow(0.5, 40), 1e-25);
}

TEST(Reweight, EligibleMaskRestrictsScope) {
  std::vector<double> p{0.1, 0.1};
  BitVector eligible = BitVector::from_string("01");
  auto out = reweight(p, BitVector::from_string("11"), ReweightRule::ratio(2),
                      &eligible);
  EXPECT_EQ(out[0], 0.1);
  EXPECT_NEAR(out[1], 0.01, 1e-17);
  BitVector none = BitVector::from_string("00");
  EXPECT_EQ(reweight(p, BitVector::from_string("11"), ReweightRule::gap(1),
                     &none),
            p);
}

// Factor identities in the log domain on random triples.
TEST(Reweight, FactorIdentities) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> logp(std::log(1e-6), std::log(0.5));
  std::uniform_real_distribution<double> bdist(1.0, 20.0);
  for (int t = 0; t < 1000; ++t) {
    size_t n = 1 + rng() % 40;
    std::vector<double> p(n);
    for (auto& x : p) x = std::exp(logp(rng));
    BitVector c(n);
    for (size_t i = 0; i < n; ++i) c.set(i, rng() & 1);
    if (c.none()) c.set(0);
    double b = bdist(rng);
    double log_pc = 0;
    for (uint32_t q : c.ones()) log_pc += std::log(p[q]);
    auto g = reweight_gap(p, c, b);
    auto r = reweight_ratio(p, c, b);
    double log_g = 0, log_r = 0;
    for (uint32_t q : c.ones()) {
      log_g += std::log(g[q]);
      log_r += std::log(r[q]);
    }
    EXPECT_LT(std::abs(log_g - (log_pc - b)) / std::abs(log_pc - b), 1e-12);
    EXPECT_LT(std::abs(log_r - b * log_pc) / std::abs(b * log_pc), 1e-12);
  }
}

class RepetitionPostSelect : public ::testing::Test {
 protected:
  DetectorErrorModel model_ = build_repetition_code(3, 1, 0.1, 0);
  SparseBinaryMatrix logical_ = check_matrices(model_).observable;
  BitVector syndrome_ = BitVector::from_string("10");
  BitVector first_ = BitVector::from_string("100");
};

TEST_F(RepetitionPostSelect, PecRejectsAtStrongSuppression) {
  MlOracleDecoder dec(model_);
  PostSelection ps = post_select(dec, model_.priors(), syndrome_, logical_,
                                 Criterion::pec(), ReweightRule::ratio(2),
                                 first_);
  EXPECT_FALSE(ps.accepted);
  ASSERT_EQ(ps.later_corrections.size(), 1u);
  EXPECT_EQ(ps.later_corrections[0].to_string(), "011");
}

TEST_F(RepetitionPostSelect, PecAcceptsAtWeakSuppression) {
  MlOracleDecoder dec(model_);
  PostSelection ps = post_select(dec, model_.priors(), syndrome_, logical_,
                                 Criterion::pec(), ReweightRule::ratio(1.1),
                                 first_);
  EXPECT_TRUE(ps.accepted);
  EXPECT_EQ(ps.rounds_used, 2u);
}

TEST(PostSelect, SameClassSwapSplitsPecAndLec) {
  DetectorErrorModel m({mech(0.10, {0}, {0}), mech(0.09, {0}, {0})}, 1, 1);
  SparseBinaryMatrix lm = check_matrices(m).observable;
  MlOracleDecoder dec(m);
  BitVector s = BitVector::from_string("1");
  BitVector c = BitVector::from_string("10");
  EXPECT_FALSE(post_select(dec, m.priors(), s, lm, Criterion::pec(),
                           ReweightRule::ratio(2), c)
                   .accepted);
  EXPECT_TRUE(post_select(dec, m.priors(), s, lm, Criterion::lec(2),
                          ReweightRule::ratio(2), c)
                  .accepted);
}

TEST(ArgumentReweighting, ShieldingFixture) {
  DetectorErrorModel m(
      {mech(0.10, {0}, {0}), mech(0.09, {0}, {0}), mech(0.05, {0})}, 1, 1);
  SparseBinaryMatrix lm = check_matrices(m).observable;
  RecordingDecoder dec(m);
  BitVector s = BitVector::from_string("1");
  Verdict two = argument_reweighting(dec, m.priors(), s, lm, Criterion::lec(2),
                                     ReweightRule::ratio(2));
  EXPECT_TRUE(two.accepted);
  EXPECT_EQ(two.correction->to_string(), "100");
  ASSERT_EQ(two.round_corrections.size(), 2u);
  EXPECT_EQ(two.round_corrections[1].to_string(), "010");

  dec.calls.clear();
  Verdict three = argument_reweighting(dec, m.priors(), s, lm,
                                       Criterion::lec(3),
                                       ReweightRule::ratio(2));
  EXPECT_FALSE(three.accepted);
  EXPECT_FALSE(three.correction);
  EXPECT_EQ(three.rounds_used, 3u);
  ASSERT_EQ(three.round_corrections.size(), 3u);
  EXPECT_EQ(three.round_corrections[2].to_string(), "001");
  // Cumulative: round three sees both e0 and e1 suppressed.
  ASSERT_EQ(dec.calls.size(), 3u);
  EXPECT_NEAR(dec.calls[2][0], 0.01, 1e-17);
  EXPECT_NEAR(dec.calls[2][1], 0.0081, 1e-17);
  EXPECT_EQ(dec.calls[2][2], 0.05);
}

TEST(ArgumentReweighting, ZeroSyndromeEarlyExit) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  RecordingDecoder dec(m);
  Verdict v = argument_reweighting(dec, m.priors(), BitVector(2),
                                   check_matrices(m).observable,
                                   Criterion::lec(3), ReweightRule::ratio(5));
  EXPECT_TRUE(v.accepted);
  EXPECT_TRUE(v.correction->none());
  EXPECT_EQ(v.rounds_used, 1u);
  EXPECT_EQ(dec.calls.size(), 1u);
}

TEST(ArgumentReweighting, DecoderFailureRejectsWithTag) {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.1, 0);
  FailingDecoder dec;
  Verdict v = argument_reweighting(dec, m.priors(), BitVector::from_string("10"),
                                   check_matrices(m).observable,
                                   Criterion::pec(), ReweightRule::ratio(2));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.diagnostic, "unsolvable");
}

// Shot by shot: PEC implies 2R-LEC, and (k+1)R-LEC implies kR-LEC.
TEST(ArgumentReweighting, NestingOnSampledShots) {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 3, 0.03);
  CheckMatrices cm = check_matrices(m);
  BpOsdDecoder dec(cm.check);
  ShotSampler sampler(m, 8);
  const auto priors = m.priors();
  for (auto rule : {ReweightRule::ratio(1.5), ReweightRule::gap(2)}) {
    for (uint64_t i = 0; i < 400; ++i) {
      Shot shot = sampler.sample(i);
      auto run = [&](const Criterion& c) {
        return argument_reweighting(dec, priors, shot.syndrome, cm.observable,
                                    c, rule)
            .accepted;
      };
      bool pec = run(Criterion::pec());
      bool l2 = run(Criterion::lec(2)), l3 = run(Criterion::lec(3)),
           l4 = run(Criterion::lec(4));
      EXPECT_TRUE(!pec || l2) << "shot " << i;
      EXPECT_TRUE(!l3 || l2) << "shot " << i;
      EXPECT_TRUE(!l4 || l3) << "shot " << i;
    }
  }
}

TEST(ArgumentReweighting, IdentityLimit) {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 2, 0.05);
  CheckMatrices cm = check_matrices(m);
  BpOsdDecoder dec(cm.check);
  ShotSampler sampler(m, 1);
  const auto priors = m.priors();
  for (uint64_t i = 0; i < 300; ++i) {
    Shot shot = sampler.sample(i);
    BitVector base = dec.decode(priors, shot.syndrome);
    Verdict v = argument_reweighting(dec, priors, shot.syndrome,
                                     cm.observable, Criterion::pec(),
                                     ReweightRule::ratio(1));
    ASSERT_TRUE(v.accepted);
    EXPECT_EQ(*v.correction, base);
  }
}

}  // namespace
}  // namespace argrw

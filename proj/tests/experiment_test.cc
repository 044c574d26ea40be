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

#include "argrw/experiment.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "argrw/code_builders.h"
#include "argrw/metrics.h"

namespace argrw {
namespace {

Json base_config() {
  return Json::parse(R"({
    "schema_version": 1,
    "model": {"builder": "repetition", "distance": 3, "rounds": 1, "p": 0.1},
    "decoder": "mwpm",
    "policy": {"criterion": "PEC", "rule": "ratio", "z": [0, 0.5, 2]},
    "shots": 2000,
    "seed": 7
  })");
}

std::string config_error_path(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<no error>";
}

TEST(ConfigTest, ParsesDefaults) {
  ExperimentConfig c = parse_config(base_config());
  EXPECT_EQ(c.decoder.name, "mwpm");
  EXPECT_EQ(c.criterion.name(), "PEC");
  EXPECT_EQ(c.z, (std::vector<double>{0, 0.5, 2}));
  EXPECT_EQ(c.workers, 1u);
  EXPECT_FALSE(c.window.has_value());
  EXPECT_EQ(c.model["p_meas"].get<double>(), 0.1);
}

TEST(ConfigTest, ErrorsCarryFieldPaths) {
  Json j = base_config();
  j["policy"]["z"][2] = -1;
  EXPECT_EQ(config_error_path(j), "policy.z[2]");

  j = base_config();
  j["shots"] = 0;
  EXPECT_EQ(config_error_path(j), "shots");

  j = base_config();
  j["decoder"] = "union_find";
  EXPECT_EQ(config_error_path(j), "decoder");

  j = base_config();
  j["model"]["distance"] = "three";
  EXPECT_EQ(config_error_path(j), "model.distance");

  j = base_config();
  j["schema_version"] = 2;
  EXPECT_EQ(config_error_path(j), "schema_version");
}

TEST(ConfigTest, RejectsUnknownKeys) {
  Json j = base_config();
  j["shotz"] = 10;
  EXPECT_THROW(parse_config(j), ConfigError);
  j = base_config();
  j["policy"]["tolerance"] = 1;
  EXPECT_EQ(config_error_path(j).rfind("policy", 0), 0u);
}

TEST(ConfigTest, ZAndPresetAreExclusive) {
  Json j = base_config();
  j["policy"]["z_preset"] = "surface";
  EXPECT_THROW(parse_config(j), ConfigError);
  j["policy"].erase("z");
  EXPECT_EQ(parse_config(j).z, z_preset("surface"));
}

TEST(ConfigTest, PresetsHaveDocumentedSizes) {
  EXPECT_EQ(z_preset("surface").size(), 17u);
  EXPECT_EQ(z_preset("surface").front(), 1e-12);
  EXPECT_EQ(z_preset("surface").back(), 1.0);
  EXPECT_EQ(z_preset("bb_small").size(), 10u);
  EXPECT_EQ(z_preset("bb").size(), 10u);
  EXPECT_THROW(z_preset("nope"), std::invalid_argument);
}

TEST(ConfigTest, RoundTripsThroughCanonicalJson) {
  ExperimentConfig c = parse_config(base_config());
  Json canon = config_to_json(c);
  EXPECT_EQ(config_to_json(parse_config(canon)), canon);
}

TEST(ConfigTest, ModelSourceStrings) {
  Json spec = model_spec_from_source("repetition:distance=5,rounds=2,p=0.01");
  EXPECT_EQ(spec["builder"], "repetition");
  EXPECT_EQ(spec["distance"], 5);
  EXPECT_EQ(load_model(spec).num_detectors(), 8u);
  EXPECT_TRUE(model_spec_from_source("foo.dem").contains("dem_file"));
}

TEST(ConfigTest, FingerprintTracksModel) {
  auto a = build_repetition_code(3, 1, 0.1, 0);
  auto b = build_repetition_code(3, 1, 0.2, 0);
  EXPECT_EQ(model_fingerprint(a), model_fingerprint(a));
  EXPECT_NE(model_fingerprint(a), model_fingerprint(b));
  EXPECT_EQ(model_fingerprint(a).size(), 16u);
}

TEST(ExperimentTest, ZeroZLeavesBaselineUntouched) {
  Json doc = run_experiment(parse_config(base_config()));
  const Json& base = doc["baseline"];
  const Json& row = doc["rows"][0];
  EXPECT_EQ(row["b"].get<double>(), 1.0);
  EXPECT_EQ(row["rejected"].get<uint64_t>(), 0u);
  EXPECT_EQ(row["logical_errors"], base["logical_errors"]);
  EXPECT_EQ(row["p_L"], base["p_L"]);
}

TEST(ExperimentTest, BaselineMatchesExactRate) {
  Json j = base_config();
  j["shots"] = 40000;
  Json doc = run_experiment(parse_config(j));
  const double exact =
      exact_total_logical_error_rate(build_repetition_code(3, 1, 0.1, 0));
  const double p = doc["baseline"]["p_L"].get<double>();
  EXPECT_LT(std::abs(p - exact), 4 * std::sqrt(exact * (1 - exact) / 40000));
}

TEST(ExperimentTest, RejectionGrowsWithZ) {
  Json doc = run_experiment(parse_config(base_config()));
  double prev = -1;
  for (const Json& row : doc["rows"]) {
    const double r = row["rejection_rate"].get<double>();
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(ExperimentTest, WorkerCountDoesNotChangeDocument) {
  ExperimentConfig c = parse_config(base_config());
  const std::string one = run_experiment(c).dump();
  c.workers = 5;
  EXPECT_EQ(run_experiment(c).dump(), one);
}

TEST(ExperimentTest, WindowedRunReportsRows) {
  Json j = base_config();
  j["model"]["rounds"] = 4;
  j["decoder"] = "bp_osd";
  j["window"] = {{"n_com", 2}, {"n_buf", 2}, {"scope", "full_window"}};
  j["shots"] = 500;
  Json doc = run_experiment(parse_config(j));
  EXPECT_EQ(doc["rows"].size(), 3u);
  EXPECT_EQ(doc["config"]["window"]["n_com"], 2);
}

TEST(ExperimentTest, StrategiesAreMonotone) {
  Json j = base_config();
  j["strategies"] = Json::parse(
      R"({"detector_density": [0, 1, 2], "correction_weight": [1, 3, 10]})");
  Json doc = run_experiment(parse_config(j));
  ASSERT_EQ(doc["strategies"].size(), 6u);
  std::map<std::string, double> prev;
  for (const Json& row : doc["strategies"]) {
    const std::string name = row["strategy"].get<std::string>();
    const double r = row["rejection_rate"].get<double>();
    if (prev.count(name)) EXPECT_LE(r, prev[name]) << name;
    prev[name] = r;
  }
  // Threshold 0 keeps only the empty syndrome, reached by no flips or all
  // three.
  const double keep = std::pow(0.9, 3) + std::pow(0.1, 3);
  const double rej = doc["strategies"][0]["rejection_rate"].get<double>();
  EXPECT_LT(std::abs(rej - (1 - keep)), 4 * std::sqrt(keep * (1 - keep) / 2000));
}

TEST(SweepReportTest, SharesBaselineAcrossSeries) {
  Json pec = run_experiment(parse_config(base_config()));
  Json j = base_config();
  j["policy"]["criterion"] = "3R-LEC";
  Json lec = run_experiment(parse_config(j));
  SweepReport r = sweep_report({pec, lec});
  size_t baselines = 0;
  for (const Json& row : r.document["rows"]) {
    baselines += row["series"] == "baseline";
  }
  EXPECT_EQ(baselines, 1u);
  EXPECT_EQ(r.document["rows"].size(), 7u);
  double prev = -1;
  for (const Json& row : r.document["rows"]) {
    EXPECT_GE(row["rejection_rate"].get<double>(), prev);
    prev = row["rejection_rate"].get<double>();
  }
  EXPECT_EQ(r.tsv.substr(0, r.tsv.find('\t')), "code");
  EXPECT_EQ(std::count(r.tsv.begin(), r.tsv.end(), '\n'), 8);
}

TEST(SweepReportTest, RejectsMixedModels) {
  Json a = run_experiment(parse_config(base_config()));
  Json j = base_config();
  j["model"]["p"] = 0.05;
  Json b = run_experiment(parse_config(j));
  EXPECT_THROW(sweep_report({a, b}), std::invalid_argument);
  EXPECT_THROW(sweep_report({}), std::invalid_argument);
  EXPECT_THROW(sweep_report({Json::object()}), std::invalid_argument);
}

TEST(BoundsDocumentTest, OneReportPerSyndrome) {
  bool ok = false;
  Json d3 = check_bounds_document(build_repetition_code(3, 1, 0.1, 0), &ok);
  EXPECT_TRUE(ok);
  EXPECT_EQ(d3["reports"].size(), 4u);
  Json d5 = check_bounds_document(build_repetition_code(5, 1, 0.01, 0), &ok);
  EXPECT_TRUE(ok);
  EXPECT_EQ(d5["reports"].size(), 16u);
  EXPECT_TRUE(d5["all_hold"].get<bool>());
}

}  // namespace
}  // namespace argrw

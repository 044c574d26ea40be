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

// Config-driven Monte Carlo experiments: sample shots, decode them once
// without post-selection and once per suppression strength b = 1 + z, and
// report rejection and logical error rates as JSON.

#ifndef ARGRW_EXPERIMENT_H_
#define ARGRW_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "argrw/bp_osd.h"
#include "argrw/error_model.h"
#include "argrw/matching.h"
#include "argrw/reweighting.h"
#include "argrw/windowing.h"
#include "json.hpp"

namespace argrw {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Invalid configuration; `path` locates the offending field, e.g.
// "policy.z[2]".
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::invalid_argument(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Named z grids.
//   surface    17 values from 1e-12 to 1
//   bb_small   10 values from 1e-8 to 4, for the [[18,4,4]] code
//   bb         10 values from 1e-15 to 0.5
std::vector<double> z_preset(const std::string& name);

struct DecoderSpec {
  std::string name = "bp_osd";  // bp_osd, mwpm or ml_exact
  BpConfig bp;
  MwpmConfig mwpm;
};

std::unique_ptr<Decoder> make_decoder(const DecoderSpec& spec,
                                      const DetectorErrorModel& model);

struct ExperimentConfig {
  // {"builder": "repetition" | "surface", ...} or {"dem_file": path}.
  Json model;
  DecoderSpec decoder;
  Criterion criterion = Criterion::lec(3);
  ReweightVariant rule = ReweightVariant::kRatio;
  std::vector<double> z;
  std::string z_preset;  // empty when z was listed explicitly
  // Absent for global decoding; total_rounds comes from the model.
  std::optional<WindowLayout> window;
  uint64_t shots = 0;
  uint64_t seed = 0;
  size_t workers = 1;
  std::string output;
  std::vector<size_t> detector_density_thresholds;
  std::vector<double> correction_weight_thresholds;
};

// Throws ConfigError.
ExperimentConfig parse_config(const Json& doc);
ExperimentConfig read_config_file(const std::string& path);
// Canonical form with defaults filled in. Omits workers and output, which
// do not affect results.
Json config_to_json(const ExperimentConfig& config);

// Builds the model described by a config "model" object.
DetectorErrorModel load_model(const Json& model_spec,
                              const std::string& path = "model");
// "repetition:distance=3,rounds=1,p=0.1" or "surface:..." become builder
// specs; anything else is taken as a DEM file path.
Json model_spec_from_source(const std::string& source);

// FNV-1a over the canonical DEM text, as 16 hex digits.
std::string model_fingerprint(const DetectorErrorModel& model);

// Deterministic in (config, seed) and independent of the worker count.
// Wall-clock time goes to *elapsed_seconds when given, never into the
// document.
Json run_experiment(const ExperimentConfig& config,
                    double* elapsed_seconds = nullptr);

struct SweepReport {
  Json document;
  std::string tsv;
};

// Merges results documents of one model into a table sorted by rejection
// rate. Throws std::invalid_argument on mismatched models.
SweepReport sweep_report(const std::vector<Json>& results);

// One bound report per reachable syndrome. Sets *all_hold.
Json check_bounds_document(const DetectorErrorModel& model, bool* all_hold);

}  // namespace argrw

#endif  // ARGRW_EXPERIMENT_H_

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

// Command-line front end: run, sweep-report, check-bounds, parse-dem.
//
// Exit codes: 0 success, 1 invalid input, 2 runtime failure, 3 a bound was
// violated.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "argrw/dem_io.h"
#include "argrw/experiment.h"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitBoundViolation = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

argrw::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return argrw::Json::parse(in);
  } catch (const argrw::Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " +
                                e.what());
  }
}

argrw::DetectorErrorModel model_from_source(const std::string& source) {
  return argrw::load_model(argrw::model_spec_from_source(source), "model");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-selection by argument reweighting for QEC decoders"};
  app.require_subcommand(1);

  std::string config_path, out_path, source, dem_path;
  std::optional<uint64_t> seed, shots;
  std::optional<size_t> workers;
  std::vector<std::string> result_paths;

  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--seed", seed, "Override the sampling seed");
  run->add_option("--shots", shots, "Override the number of shots");
  run->add_option("--workers", workers, "Worker threads");
  run->add_option("--out", out_path, "Results document path (default stdout)");

  auto* sweep = app.add_subcommand(
      "sweep-report", "Merge results documents into a plot-data table");
  sweep->add_option("results", result_paths, "Results documents")
      ->required();
  sweep->add_option("--out", out_path,
                    "Output prefix; writes <prefix>.tsv and <prefix>.json");

  auto* bounds = app.add_subcommand(
      "check-bounds", "Verify the per-syndrome error bounds exhaustively");
  bounds->add_option("model", source,
                     "DEM path or builder spec, e.g. "
                     "repetition:distance=3,rounds=1,p=0.1")
      ->required();
  bounds->add_option("--out", out_path, "Report path (default stdout)");

  auto* parse = app.add_subcommand(
      "parse-dem", "Validate a DEM file and print its canonical form");
  parse->add_option("dem", dem_path, "DEM file")->required();
  parse->add_option("--out", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) {
      argrw::ExperimentConfig cfg = argrw::read_config_file(config_path);
      if (seed) cfg.seed = *seed;
      if (shots) {
        if (*shots == 0) throw argrw::ConfigError("shots", "must be >= 1");
        cfg.shots = *shots;
      }
      if (workers) {
        if (*workers == 0) throw argrw::ConfigError("workers", "must be >= 1");
        cfg.workers = *workers;
      }
      if (!out_path.empty()) cfg.output = out_path;
      double elapsed = 0;
      argrw::Json doc = argrw::run_experiment(cfg, &elapsed);
      write_output(cfg.output, doc.dump(2) + "\n");
      std::fprintf(stderr, "%llu shots in %.2f s with %zu worker(s)\n",
                   static_cast<unsigned long long>(cfg.shots), elapsed,
                   cfg.workers);
    } else if (*sweep) {
      std::vector<argrw::Json> docs;
      for (const auto& p : result_paths) docs.push_back(read_json(p));
      argrw::SweepReport report = argrw::sweep_report(docs);
      if (out_path.empty()) {
        std::cout << report.tsv;
      } else {
        write_output(out_path + ".tsv", report.tsv);
        write_output(out_path + ".json", report.document.dump(2) + "\n");
      }
    } else if (*bounds) {
      argrw::DetectorErrorModel model = model_from_source(source);
      bool all_hold = false;
      argrw::Json doc = argrw::check_bounds_document(model, &all_hold);
      write_output(out_path, doc.dump(2) + "\n");
      if (!all_hold) {
        std::fprintf(stderr, "bound violation detected\n");
        return kExitBoundViolation;
      }
    } else if (*parse) {
      argrw::DetectorErrorModel model =
          argrw::canonicalize(argrw::read_dem_file(dem_path));
      write_output(out_path, argrw::to_dem_text(model));
    }
  } catch (const argrw::DemParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}

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

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "argrw/code_builders.h"
#include "argrw/dem_io.h"
#include "argrw/metrics.h"
#include "argrw/ml_oracle.h"
#include "argrw/sampler.h"

namespace argrw {

namespace {

constexpr const char* kVersion = "0.1.0";
// Upper bound on memoized syndromes; past it, shots are decoded uncached.
constexpr size_t kCacheCapacity = size_t{1} << 21;

// Reads a JSON object field by field and rejects keys nobody asked for.
class Fields {
 public:
  Fields(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  std::string at(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const Json* get(const std::string& key) {
    used_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = get(key);
    if (!v) throw ConfigError(at(key), "missing required field");
    return *v;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError(at(it.key()), "unknown key");
    }
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

uint64_t as_uint(const Json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<int64_t>() >= 0) {
    return static_cast<uint64_t>(v.get<int64_t>());
  }
  throw ConfigError(path, "expected a non-negative integer");
}

double as_double(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

Json parse_scalar(std::string_view text) {
  uint64_t u = 0;
  auto [pu, eu] = std::from_chars(text.data(), text.data() + text.size(), u);
  if (eu == std::errc() && pu == text.data() + text.size()) return u;
  double d = 0;
  auto [pd, ed] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ed == std::errc() && pd == text.data() + text.size()) return d;
  return std::string(text);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

Json interval_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

struct RowCounters {
  RateCounters rates;
  uint64_t clamp_events = 0;

  void merge(const RowCounters& o) {
    rates.merge(o.rates);
    clamp_events += o.clamp_events;
  }
};

Json row_json(const RowCounters& c, const RateEstimate* baseline) {
  RateEstimate e = estimate_rates(c.rates);
  Json row;
  row["shots"] = e.shots;
  row["accepted"] = e.accepted;
  row["rejected"] = e.shots - e.accepted;
  row["logical_errors"] = e.logical_errors;
  row["rejection_rate"] = e.rejection_rate;
  row["sigma_rejection"] = e.sigma_rejection;
  row["rejection_wilson95"] = interval_json(e.rejection_wilson);
  row["p_L"] = e.p_l;
  row["sigma_L"] = e.sigma_l;
  row["p_L_wilson95"] = interval_json(e.p_l_wilson);
  row["no_accepted"] = e.no_accepted;
  if (baseline) {
    SuppressionFactor f = suppression_factor(*baseline, e);
    row["suppression_factor"] = f.defined ? Json(f.value) : Json(nullptr);
    row["suppression_sigma"] = f.defined ? Json(f.sigma) : Json(nullptr);
  }
  row["clamp_events"] = c.clamp_events;
  return row;
}

size_t total_rounds(const DetectorErrorModel& model) {
  size_t r = 0;
  for (const auto& m : model.mechanisms()) {
    if (m.round) r = std::max<size_t>(r, *m.round + 1);
  }
  return std::max<size_t>(r, 1);
}

std::string model_label(const Json& spec) {
  if (spec.contains("dem_file")) {
    return std::filesystem::path(spec["dem_file"].get<std::string>())
        .filename()
        .string();
  }
  std::string out = spec["builder"].get<std::string>() + "(";
  bool first = true;
  for (auto it = spec.begin(); it != spec.end(); ++it) {
    if (it.key() == "builder") continue;
    if (!first) out += ",";
    first = false;
    out += it.key() + "=" +
           (it->is_number_float() ? format_double(it->get<double>())
                                  : it->dump());
  }
  return out + ")";
}

// Cached decoding outcome of one syndrome, shared by all shots that produce
// it. Logical classes are stored as raw observable words.
struct Outcome {
  bool baseline_ok = false;
  std::vector<uint64_t> baseline_class;
  std::vector<uint8_t> accepted;          // per z
  std::vector<uint64_t> classes;          // per z, words_per_class each
  std::vector<uint32_t> clamp_events;     // per z
  std::vector<uint8_t> dd_accept, cw_accept;
};

class OutcomeCache {
 public:
  std::shared_ptr<const Outcome> find(const BitVector& s) {
    std::lock_guard lock(mu_);
    auto it = map_.find(s);
    return it == map_.end() ? nullptr : it->second;
  }
  void insert(const BitVector& s, std::shared_ptr<const Outcome> o) {
    std::lock_guard lock(mu_);
    if (map_.size() < kCacheCapacity) map_.emplace(s, std::move(o));
  }

 private:
  std::mutex mu_;
  std::unordered_map<BitVector, std::shared_ptr<const Outcome>, BitVectorHash>
      map_;
};

std::vector<uint64_t> class_words(const SparseBinaryMatrix& logical_map,
                                  const BitVector& correction) {
  BitVector c = logical_map.multiply(correction);
  return {c.words().begin(), c.words().end()};
}

bool same_class(std::span<const uint64_t> a, const BitVector& logical) {
  return std::equal(a.begin(), a.end(), logical.words().begin(),
                    logical.words().end());
}

class Worker {
 public:
  Worker(const ExperimentConfig& config, const DetectorErrorModel& model)
      : config_(config),
        model_(model),
        matrices_(check_matrices(model)),
        priors_(model.priors()) {
    if (config.window) {
      windows_ = std::make_unique<SlidingWindowDecoder>(
          model, *config.window, [&](const DetectorErrorModel& sub) {
            return make_decoder(config.decoder, sub);
          });
    } else {
      decoder_ = make_decoder(config.decoder, model);
    }
    for (double z : config.z) {
      rules_.push_back({config.rule, 1 + z});
    }
  }

  bool deterministic() const {
    return decoder_ ? decoder_->deterministic() : true;
  }

  Outcome decode(const BitVector& syndrome) {
    Outcome o;
    const size_t nz = rules_.size();
    o.accepted.assign(nz, 0);
    o.clamp_events.assign(nz, 0);
    const size_t words = (model_.num_observables() + 63) / 64;
    o.classes.assign(nz * words, 0);
    std::optional<BitVector> base;
    if (windows_) {
      WindowVerdict v = windows_->decode_plain(syndrome);
      if (v.accepted) base = std::move(v.correction);
      for (size_t k = 0; k < nz; ++k) {
        WindowVerdict w = windows_->decode(syndrome, config_.criterion,
                                           rules_[k]);
        o.clamp_events[k] = static_cast<uint32_t>(w.clamp_events);
        if (!w.accepted) continue;
        o.accepted[k] = 1;
        auto cls = class_words(matrices_.observable, *w.correction);
        std::copy(cls.begin(), cls.end(), o.classes.begin() + k * words);
      }
    } else {
      try {
        base = decoder_->decode(priors_, syndrome);
      } catch (const DecodeError&) {
      }
      if (base) {
        auto cls = class_words(matrices_.observable, *base);
        for (size_t k = 0; k < nz; ++k) {
          std::copy(cls.begin(), cls.end(), o.classes.begin() + k * words);
          if (base->none()) {
            o.accepted[k] = 1;
            continue;
          }
          PostSelection ps =
              post_select(*decoder_, priors_, syndrome, matrices_.observable,
                          config_.criterion, rules_[k], *base);
          o.accepted[k] = ps.accepted;
          o.clamp_events[k] = static_cast<uint32_t>(ps.clamp_events);
        }
      }
    }
    o.baseline_ok = base.has_value();
    if (base) o.baseline_class = class_words(matrices_.observable, *base);
    for (size_t t : config_.detector_density_thresholds) {
      o.dd_accept.push_back(strategy_detector_density(syndrome, t));
    }
    for (double t : config_.correction_weight_thresholds) {
      o.cw_accept.push_back(base &&
                            strategy_correction_weight(*base, priors_, t));
    }
    return o;
  }

 private:
  const ExperimentConfig& config_;
  const DetectorErrorModel& model_;
  CheckMatrices matrices_;
  std::vector<double> priors_;
  std::unique_ptr<Decoder> decoder_;
  std::unique_ptr<SlidingWindowDecoder> windows_;
  std::vector<ReweightRule> rules_;
};

struct Tally {
  RowCounters baseline;
  uint64_t decoder_failures = 0;
  std::vector<RowCounters> rows, dd, cw;

  void merge(const Tally& o) {
    baseline.merge(o.baseline);
    decoder_failures += o.decoder_failures;
    for (size_t i = 0; i < rows.size(); ++i) rows[i].merge(o.rows[i]);
    for (size_t i = 0; i < dd.size(); ++i) dd[i].merge(o.dd[i]);
    for (size_t i = 0; i < cw.size(); ++i) cw[i].merge(o.cw[i]);
  }
};

void run_range(const ExperimentConfig& config, const DetectorErrorModel& model,
               uint64_t begin, uint64_t end, OutcomeCache* cache,
               Tally* tally) {
  Worker worker(config, model);
  const bool use_cache = worker.deterministic();
  ShotSampler sampler(model, config.seed);
  Shot shot = sampler.make_empty_shot();
  const size_t words = (model.num_observables() + 63) / 64;
  for (uint64_t i = begin; i < end; ++i) {
    sampler.sample_into(i, &shot);
    std::shared_ptr<const Outcome> o = use_cache ? cache->find(shot.syndrome)
                                                 : nullptr;
    if (!o) {
      o = std::make_shared<const Outcome>(worker.decode(shot.syndrome));
      if (use_cache) cache->insert(shot.syndrome, o);
    }
    const bool base_error =
        !o->baseline_ok || !same_class(o->baseline_class, shot.logical);
    tally->baseline.rates.record(true, base_error);
    if (!o->baseline_ok) ++tally->decoder_failures;
    for (size_t k = 0; k < tally->rows.size(); ++k) {
      std::span<const uint64_t> cls(o->classes.data() + k * words, words);
      tally->rows[k].rates.record(o->accepted[k],
                                  !same_class(cls, shot.logical));
      tally->rows[k].clamp_events += o->clamp_events[k];
    }
    for (size_t k = 0; k < tally->dd.size(); ++k) {
      tally->dd[k].rates.record(o->dd_accept[k], base_error);
    }
    for (size_t k = 0; k < tally->cw.size(); ++k) {
      tally->cw[k].rates.record(o->cw_accept[k], base_error);
    }
  }
}

const char* scope_name(ReweightScope s) {
  return s == ReweightScope::kFullWindow ? "full_window" : "commit_only";
}

Json window_json(const std::optional<WindowLayout>& w) {
  if (!w) return "global";
  return Json{{"n_com", w->n_com},
              {"n_buf", w->n_buf},
              {"scope", scope_name(w->scope)}};
}

std::string window_label(const Json& w) {
  if (w.is_string()) return w.get<std::string>();
  return std::to_string(w["n_com"].get<size_t>()) + "+" +
         std::to_string(w["n_buf"].get<size_t>()) + ":" +
         w["scope"].get<std::string>();
}

Json parse_model_spec(const Json& v, const std::string& path) {
  Fields f(v, path);
  Json out;
  const Json* dem = f.get("dem_file");
  const Json* builder = f.get("builder");
  if (dem && builder) {
    throw ConfigError(path, "give either 'builder' or 'dem_file', not both");
  }
  if (dem) {
    std::string file = as_string(*dem, f.at("dem_file"));
    if (!std::filesystem::exists(file)) {
      throw ConfigError(f.at("dem_file"), "file '" + file + "' does not exist");
    }
    out["dem_file"] = file;
  } else if (builder) {
    std::string name = as_string(*builder, f.at("builder"));
    out["builder"] = name;
    if (name != "repetition" && name != "surface") {
      throw ConfigError(f.at("builder"), "unknown builder '" + name +
                                             "'; expected repetition or "
                                             "surface");
    }
    out["distance"] = as_uint(f.require("distance"), f.at("distance"));
    const Json* rounds = f.get("rounds");
    out["rounds"] = rounds ? as_uint(*rounds, f.at("rounds")) : 1;
    out["p"] = as_double(f.require("p"), f.at("p"));
    if (name == "repetition") {
      const Json* pm = f.get("p_meas");
      out["p_meas"] = pm ? as_double(*pm, f.at("p_meas")) : out["p"].get<double>();
    }
  } else {
    throw ConfigError(path, "needs 'builder' or 'dem_file'");
  }
  f.finish();
  return out;
}

DecoderSpec parse_decoder(const Json& v, const std::string& path) {
  DecoderSpec spec;
  if (v.is_string()) {
    spec.name = v.get<std::string>();
  } else {
    Fields f(v, path);
    spec.name = as_string(f.require("name"), f.at("name"));
    if (spec.name == "bp_osd") {
      if (const Json* x = f.get("max_iterations")) {
        spec.bp.max_iterations = as_uint(*x, f.at("max_iterations"));
      }
      if (const Json* x = f.get("scaling_factor")) {
        spec.bp.scaling_factor = as_double(*x, f.at("scaling_factor"));
      }
      if (const Json* x = f.get("schedule")) {
        std::string s = as_string(*x, f.at("schedule"));
        if (s == "parallel") {
          spec.bp.schedule = BpSchedule::kParallel;
        } else if (s == "serial") {
          spec.bp.schedule = BpSchedule::kSerial;
        } else {
          throw ConfigError(f.at("schedule"),
                            "expected 'parallel' or 'serial'");
        }
      }
      try {
        spec.bp.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(path, e.what());
      }
    } else if (spec.name == "mwpm") {
      if (const Json* x = f.get("max_defects")) {
        spec.mwpm.max_defects = as_uint(*x, f.at("max_defects"));
      }
    }
    f.finish();
  }
  if (spec.name != "bp_osd" && spec.name != "mwpm" && spec.name != "ml_exact") {
    throw ConfigError(path, "unknown decoder '" + spec.name +
                                "'; expected bp_osd, mwpm or ml_exact");
  }
  return spec;
}

Json decoder_json(const DecoderSpec& spec) {
  Json out{{"name", spec.name}};
  if (spec.name == "bp_osd") {
    out["max_iterations"] = spec.bp.max_iterations;
    out["scaling_factor"] = spec.bp.scaling_factor;
    out["schedule"] =
        spec.bp.schedule == BpSchedule::kParallel ? "parallel" : "serial";
  } else if (spec.name == "mwpm") {
    out["max_defects"] = spec.mwpm.max_defects;
  }
  return out;
}

}  // namespace

std::vector<double> z_preset(const std::string& name) {
  if (name == "surface") {
    return {1e-12, 1e-6, 1e-3, 0.01, 0.02, 0.04, 0.06, 0.1, 0.2,
            0.3,   0.4,  0.5,  0.6,  0.7,  0.8,  0.9,  1};
  }
  if (name == "bb_small") {
    return {1e-8, 0.1, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4};
  }
  if (name == "bb") {
    return {1e-15, 1e-8, 1e-4, 1e-3, 0.01, 0.1, 0.2, 0.3, 0.4, 0.5};
  }
  throw std::invalid_argument("unknown z preset '" + name +
                              "'; expected surface, bb_small or bb");
}

std::unique_ptr<Decoder> make_decoder(const DecoderSpec& spec,
                                      const DetectorErrorModel& model) {
  if (spec.name == "bp_osd") {
    return std::make_unique<BpOsdDecoder>(check_matrices(model).check,
                                          spec.bp);
  }
  if (spec.name == "mwpm") {
    return std::make_unique<MwpmDecoder>(model, spec.mwpm);
  }
  if (spec.name == "ml_exact") return std::make_unique<MlOracleDecoder>(model);
  throw std::invalid_argument("unknown decoder '" + spec.name + "'");
}

ExperimentConfig parse_config(const Json& doc) {
  Fields f(doc, "");
  const Json& version = f.require("schema_version");
  if (!version.is_number_integer() || version.get<int64_t>() != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported schema version " +
                                            version.dump() + "; expected " +
                                            std::to_string(kSchemaVersion));
  }
  ExperimentConfig c;
  c.model = parse_model_spec(f.require("model"), "model");
  if (const Json* d = f.get("decoder")) c.decoder = parse_decoder(*d, "decoder");

  Fields policy(f.require("policy"), "policy");
  if (const Json* crit = policy.get("criterion")) {
    try {
      c.criterion = Criterion::parse(as_string(*crit, "policy.criterion"));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError("policy.criterion", e.what());
    }
  }
  if (const Json* rule = policy.get("rule")) {
    std::string r = as_string(*rule, "policy.rule");
    if (r == "ratio") {
      c.rule = ReweightVariant::kRatio;
    } else if (r == "gap") {
      c.rule = ReweightVariant::kGap;
    } else {
      throw ConfigError("policy.rule", "expected 'ratio' or 'gap'");
    }
  }
  const Json* z = policy.get("z");
  const Json* preset = policy.get("z_preset");
  if (z && preset) {
    throw ConfigError("policy", "give either 'z' or 'z_preset', not both");
  }
  if (preset) {
    c.z_preset = as_string(*preset, "policy.z_preset");
    try {
      c.z = z_preset(c.z_preset);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("policy.z_preset", e.what());
    }
  } else if (z) {
    if (!z->is_array() || z->empty()) {
      throw ConfigError("policy.z", "expected a non-empty array");
    }
    for (size_t i = 0; i < z->size(); ++i) {
      std::string p = "policy.z[" + std::to_string(i) + "]";
      double v = as_double((*z)[i], p);
      if (v < 0) throw ConfigError(p, "z must be non-negative");
      c.z.push_back(v);
    }
  } else {
    throw ConfigError("policy", "needs 'z' or 'z_preset'");
  }
  policy.finish();
  for (double zv : c.z) ReweightRule{c.rule, 1 + zv}.validate();

  if (const Json* w = f.get("window")) {
    if (w->is_string()) {
      if (w->get<std::string>() != "global") {
        throw ConfigError("window", "expected 'global' or a layout object");
      }
    } else {
      Fields wf(*w, "window");
      WindowLayout layout;
      layout.n_com = as_uint(wf.require("n_com"), "window.n_com");
      if (layout.n_com == 0) throw ConfigError("window.n_com", "must be >= 1");
      layout.n_buf = as_uint(wf.require("n_buf"), "window.n_buf");
      if (const Json* s = wf.get("scope")) {
        std::string scope = as_string(*s, "window.scope");
        if (scope == "full_window") {
          layout.scope = ReweightScope::kFullWindow;
        } else if (scope == "commit_only") {
          layout.scope = ReweightScope::kCommitOnly;
        } else {
          throw ConfigError("window.scope",
                            "expected 'full_window' or 'commit_only'");
        }
      }
      wf.finish();
      c.window = layout;
    }
  }

  c.shots = as_uint(f.require("shots"), "shots");
  if (c.shots == 0) throw ConfigError("shots", "must be >= 1");
  if (const Json* s = f.get("seed")) c.seed = as_uint(*s, "seed");
  if (const Json* w = f.get("workers")) {
    c.workers = as_uint(*w, "workers");
    if (c.workers == 0) throw ConfigError("workers", "must be >= 1");
  }
  if (const Json* o = f.get("output")) c.output = as_string(*o, "output");

  if (const Json* s = f.get("strategies")) {
    Fields sf(*s, "strategies");
    if (const Json* dd = sf.get("detector_density")) {
      if (!dd->is_array()) {
        throw ConfigError("strategies.detector_density", "expected an array");
      }
      for (size_t i = 0; i < dd->size(); ++i) {
        c.detector_density_thresholds.push_back(as_uint(
            (*dd)[i],
            "strategies.detector_density[" + std::to_string(i) + "]"));
      }
    }
    if (const Json* cw = sf.get("correction_weight")) {
      if (!cw->is_array()) {
        throw ConfigError("strategies.correction_weight", "expected an array");
      }
      for (size_t i = 0; i < cw->size(); ++i) {
        c.correction_weight_thresholds.push_back(as_double(
            (*cw)[i],
            "strategies.correction_weight[" + std::to_string(i) + "]"));
      }
    }
    sf.finish();
  }
  f.finish();
  return c;
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", "malformed JSON in '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

Json config_to_json(const ExperimentConfig& c) {
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["model"] = c.model;
  out["decoder"] = decoder_json(c.decoder);
  Json policy;
  policy["criterion"] = c.criterion.name();
  policy["rule"] = c.rule == ReweightVariant::kRatio ? "ratio" : "gap";
  if (!c.z_preset.empty()) policy["z_preset"] = c.z_preset;
  policy["z"] = c.z;
  out["policy"] = policy;
  out["window"] = window_json(c.window);
  out["shots"] = c.shots;
  out["seed"] = c.seed;
  if (!c.detector_density_thresholds.empty() ||
      !c.correction_weight_thresholds.empty()) {
    out["strategies"] = {
        {"detector_density", c.detector_density_thresholds},
        {"correction_weight", c.correction_weight_thresholds}};
  }
  return out;
}

DetectorErrorModel load_model(const Json& spec, const std::string& path) {
  Json s = parse_model_spec(spec, path);
  try {
    if (s.contains("dem_file")) {
      return read_dem_file(s["dem_file"].get<std::string>());
    }
    const auto name = s["builder"].get<std::string>();
    const auto d = s["distance"].get<size_t>();
    const auto r = s["rounds"].get<size_t>();
    const auto p = s["p"].get<double>();
    if (name == "repetition") {
      return build_repetition_code(d, r, p, s["p_meas"].get<double>());
    }
    return build_surface_code_phenomenological(d, r, p);
  } catch (const DemParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
}

Json model_spec_from_source(const std::string& source) {
  const size_t colon = source.find(':');
  const std::string head = source.substr(0, colon);
  if (colon == std::string::npos ||
      (head != "repetition" && head != "surface")) {
    return Json{{"dem_file", source}};
  }
  Json spec{{"builder", head}};
  std::string_view rest(source);
  rest.remove_prefix(colon + 1);
  while (!rest.empty()) {
    size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("model", "expected key=value, got '" +
                                     std::string(item) + "'");
    }
    spec[std::string(item.substr(0, eq))] = parse_scalar(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return spec;
}

std::string model_fingerprint(const DetectorErrorModel& model) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : to_dem_text(model)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json run_experiment(const ExperimentConfig& config, double* elapsed_seconds) {
  const auto start = std::chrono::steady_clock::now();
  const DetectorErrorModel model = load_model(config.model);
  ExperimentConfig cfg = config;
  if (cfg.window) cfg.window->total_rounds = total_rounds(model);
  if (cfg.shots == 0) throw ConfigError("shots", "must be >= 1");

  // Surfaces decoder/model incompatibilities before any sampling.
  {
    Worker probe(cfg, model);
    if (cfg.criterion.kind == Criterion::Kind::kPec && !probe.deterministic()) {
      throw ConfigError("decoder", "PEC needs a deterministic decoder");
    }
  }

  const size_t workers =
      static_cast<size_t>(std::min<uint64_t>(cfg.workers, cfg.shots));
  Tally empty;
  empty.rows.resize(cfg.z.size());
  empty.dd.resize(cfg.detector_density_thresholds.size());
  empty.cw.resize(cfg.correction_weight_thresholds.size());
  std::vector<Tally> tallies(workers, empty);
  OutcomeCache cache;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    const uint64_t begin = cfg.shots * w / workers;
    const uint64_t end = cfg.shots * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        run_range(cfg, model, begin, end, &cache, &tallies[w]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Tally total = empty;
  for (const auto& t : tallies) total.merge(t);

  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "results";
  doc["config"] = config_to_json(cfg);
  doc["model"] = {{"label", model_label(cfg.model)},
                  {"fingerprint", model_fingerprint(model)},
                  {"num_detectors", model.num_detectors()},
                  {"num_mechanisms", model.num_mechanisms()},
                  {"num_observables", model.num_observables()},
                  {"rounds", total_rounds(model)}};
  const RateEstimate base = estimate_rates(total.baseline.rates);
  Json baseline = row_json(total.baseline, nullptr);
  baseline["decoder_failures"] = total.decoder_failures;
  doc["baseline"] = baseline;
  Json rows = Json::array();
  for (size_t k = 0; k < cfg.z.size(); ++k) {
    Json row;
    row["z"] = cfg.z[k];
    row["b"] = 1 + cfg.z[k];
    row.update(row_json(total.rows[k], &base));
    rows.push_back(row);
  }
  doc["rows"] = rows;
  Json strategies = Json::array();
  for (size_t k = 0; k < total.dd.size(); ++k) {
    Json row{{"strategy", "detector_density"},
             {"threshold", cfg.detector_density_thresholds[k]}};
    row.update(row_json(total.dd[k], &base));
    strategies.push_back(row);
  }
  for (size_t k = 0; k < total.cw.size(); ++k) {
    Json row{{"strategy", "correction_weight"},
             {"threshold", cfg.correction_weight_thresholds[k]}};
    row.update(row_json(total.cw[k], &base));
    strategies.push_back(row);
  }
  doc["strategies"] = strategies;
  doc["runtime"] = {{"version", kVersion}};
  if (elapsed_seconds) {
    *elapsed_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  }
  return doc;
}

SweepReport sweep_report(const std::vector<Json>& results) {
  if (results.empty()) {
    throw std::invalid_argument("sweep report needs at least one document");
  }
  std::string fingerprint;
  Json rows = Json::array();
  std::set<std::string> baselines;
  for (size_t i = 0; i < results.size(); ++i) {
    const Json& doc = results[i];
    if (!doc.is_object() || doc.value("kind", "") != "results" ||
        !doc.contains("model") || !doc.contains("rows")) {
      throw std::invalid_argument("document " + std::to_string(i) +
                                  " is not a results document");
    }
    const std::string fp = doc["model"]["fingerprint"].get<std::string>();
    if (i == 0) {
      fingerprint = fp;
    } else if (fp != fingerprint) {
      throw std::invalid_argument(
          "documents describe different models (" + fingerprint + " vs " +
          fp + ")");
    }
    const Json& cfg = doc["config"];
    const std::string decoder = cfg["decoder"]["name"].get<std::string>();
    const std::string window = window_label(cfg["window"]);
    const std::string code = doc["model"]["label"].get<std::string>();
    auto make_row = [&](const std::string& series, const Json& src) {
      Json r;
      r["code"] = code;
      r["series"] = series;
      r["decoder"] = decoder;
      r["window"] = window;
      for (const char* key :
           {"z", "b", "shots", "rejection_rate", "sigma_rejection", "p_L",
            "sigma_L", "suppression_factor", "suppression_sigma"}) {
        r[key] = src.contains(key) ? src[key] : Json(nullptr);
      }
      return r;
    };
    const std::string base_key = decoder + "|" + window + "|" +
                                 cfg["seed"].dump() + "|" +
                                 cfg["shots"].dump();
    if (baselines.insert(base_key).second) {
      Json r = make_row("baseline", doc["baseline"]);
      r["suppression_factor"] = 1.0;
      r["suppression_sigma"] = nullptr;
      rows.push_back(r);
    }
    const std::string series = cfg["policy"]["criterion"].get<std::string>() +
                               "/" + cfg["policy"]["rule"].get<std::string>();
    for (const Json& row : doc["rows"]) rows.push_back(make_row(series, row));
  }
  std::vector<Json> sorted(rows.begin(), rows.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Json& a, const Json& b) {
                     return a["rejection_rate"].get<double>() <
                            b["rejection_rate"].get<double>();
                   });

  SweepReport report;
  report.document["schema_version"] = kSchemaVersion;
  report.document["kind"] = "sweep";
  report.document["model_fingerprint"] = fingerprint;
  report.document["rows"] = sorted;
  const std::vector<std::string> columns{
      "code",  "series", "decoder", "window",
      "z",     "b",      "shots",   "rejection_rate",
      "sigma_rejection", "p_L",     "sigma_L",
      "suppression_factor", "suppression_sigma"};
  std::ostringstream tsv;
  for (size_t i = 0; i < columns.size(); ++i) {
    tsv << (i ? "\t" : "") << columns[i];
  }
  tsv << "\n";
  for (const Json& r : sorted) {
    for (size_t i = 0; i < columns.size(); ++i) {
      const Json& v = r[columns[i]];
      tsv << (i ? "\t" : "");
      if (v.is_null()) {
        tsv << "NA";
      } else if (v.is_string()) {
        tsv << v.get<std::string>();
      } else if (v.is_number_float()) {
        tsv << format_double(v.get<double>());
      } else {
        tsv << v.dump();
      }
    }
    tsv << "\n";
  }
  report.tsv = tsv.str();
  return report;
}

Json check_bounds_document(const DetectorErrorModel& model, bool* all_hold) {
  Json reports = Json::array();
  bool ok = true;
  double total = 0;
  for (const BoundReport& r : check_all_bounds(model)) {
    ok = ok && r.holds();
    total += r.pr_s * r.p_l_cond;
    reports.push_back({{"syndrome", r.syndrome.to_string()},
                       {"pr_s", r.pr_s},
                       {"p_L", r.p_l_cond},
                       {"bound1", r.bound1},
                       {"m", r.m},
                       {"delta", r.delta ? Json(*r.delta) : Json(nullptr)},
                       {"bound2", r.bound2 ? Json(*r.bound2) : Json(nullptr)},
                       {"bound1_holds", r.bound1_holds()},
                       {"bound2_holds", r.bound2_holds()}});
  }
  if (all_hold) *all_hold = ok;
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "bounds";
  doc["model"] = {{"fingerprint", model_fingerprint(model)},
                  {"num_detectors", model.num_detectors()},
                  {"num_mechanisms", model.num_mechanisms()}};
  doc["all_hold"] = ok;
  doc["exact_total_logical_error_rate"] = total;
  doc["reports"] = reports;
  return doc;
}

}  // namespace argrw

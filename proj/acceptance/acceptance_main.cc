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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "argrw/bp_osd.h"
#include "argrw/code_builders.h"
#include "argrw/experiment.h"
#include "argrw/matching.h"
#include "argrw/metrics.h"
#include "argrw/ml_oracle.h"
#include "argrw/reweighting.h"
#include "argrw/sampler.h"
#include "argrw/windowing.h"

namespace argrw {
namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Memoizes a per-syndrome computation for deterministic decoders.
template <typename T>
class SyndromeMemo {
 public:
  explicit SyndromeMemo(std::function<T(const BitVector&)> fn)
      : fn_(std::move(fn)) {}
  const T& operator()(const BitVector& s) {
    auto it = map_.find(s);
    if (it == map_.end()) it = map_.emplace(s, fn_(s)).first;
    return it->second;
  }

 private:
  std::function<T(const BitVector&)> fn_;
  std::unordered_map<BitVector, T, BitVectorHash> map_;
};

std::vector<DetectorErrorModel> small_repetition_codes() {
  std::vector<DetectorErrorModel> out;
  for (size_t d : {3, 5}) {
    for (double p : {0.01, 0.1}) out.push_back(build_repetition_code(d, 1, p, 0));
  }
  return out;
}

Result oracle_equivalence() {
  const auto start = Clock::now();
  size_t checked = 0, mismatches = 0;
  for (const auto& m : small_repetition_codes()) {
    const auto priors = m.priors();
    MwpmDecoder mwpm(m);
    BpOsdDecoder bp(check_matrices(m).check);
    for (const auto& [s, ml] : enumerate_all_syndromes(m)) {
      const double best = ml.spectrum.front().log_probability;
      for (Decoder* dec : {static_cast<Decoder*>(&mwpm),
                           static_cast<Decoder*>(&bp)}) {
        BitVector c = dec->decode(priors, s);
        ++checked;
        if (syndrome_of(m, c) != s || log_probability(priors, c) != best) {
          ++mismatches;
        }
      }
    }
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && checked == 2 * (4 + 16 + 4 + 16) && t < 60,
          std::to_string(checked) + " decodes, " + std::to_string(mismatches) +
              " differ from the ML optimum, " + fmt("%.2f s", t)};
}

Result conditional_bounds() {
  const auto start = Clock::now();
  size_t reports = 0, violations = 0;
  std::string worst;
  bool mc_ok = true;
  uint64_t seed = 100;
  for (const auto& m : small_repetition_codes()) {
    for (const auto& r : check_all_bounds(m)) {
      ++reports;
      if (!r.holds()) ++violations;
    }
    const double exact = exact_total_logical_error_rate(m);
    auto table = enumerate_all_syndromes(m);
    ShotSampler sampler(m, seed++);
    RateCounters c;
    Shot shot = sampler.make_empty_shot();
    for (uint64_t i = 0; i < 1000000; ++i) {
      sampler.sample_into(i, &shot);
      const BitVector& corr = table.at(shot.syndrome).correction;
      c.record(true, logical_of(m, corr) != shot.logical);
    }
    RateEstimate e = estimate_rates(c);
    const double sigma = std::sqrt(exact * (1 - exact) / 1e6);
    const double z = std::abs(e.p_l - exact) / sigma;
    mc_ok = mc_ok && z < 4;
    worst += (worst.empty() ? "" : ", ") + fmt("%.2f sigma", z);
  }
  const double t = seconds_since(start);
  return {violations == 0 && reports == 40 && mc_ok && t < 300,
          std::to_string(reports) + " syndromes, " +
              std::to_string(violations) +
              " bound violations; Monte Carlo vs exact: " + worst + ", " +
              fmt("%.1f s", t)};
}

Result identity_limit() {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 3, 0.02);
  CheckMatrices cm = check_matrices(m);
  BpOsdDecoder dec(cm.check);
  const auto priors = m.priors();
  ShotSampler sampler(m, 3);
  uint64_t rejected = 0, differing = 0;
  for (auto criterion : {Criterion::pec(), Criterion::lec(3)}) {
    SyndromeMemo<std::pair<BitVector, Verdict>> memo([&](const BitVector& s) {
      return std::pair{dec.decode(priors, s),
                       argument_reweighting(dec, priors, s, cm.observable,
                                            criterion, ReweightRule::ratio(1))};
    });
    Shot shot = sampler.make_empty_shot();
    for (uint64_t i = 0; i < 100000; ++i) {
      sampler.sample_into(i, &shot);
      const auto& [base, v] = memo(shot.syndrome);
      if (!v.accepted) {
        ++rejected;
      } else if (*v.correction != base) {
        ++differing;
      }
    }
  }
  return {rejected == 0 && differing == 0,
          "PEC and 3R-LEC at b=1 over 1e5 shots: " + std::to_string(rejected) +
              " rejected, " + std::to_string(differing) +
              " corrections differ from baseline"};
}

Result high_b_limit() {
  DetectorErrorModel m = build_repetition_code(3, 1, 0.01, 0);
  CheckMatrices cm = check_matrices(m);
  BpOsdDecoder dec(cm.check);
  const auto priors = m.priors();
  SyndromeMemo<Verdict> memo([&](const BitVector& s) {
    return argument_reweighting(dec, priors, s, cm.observable,
                                Criterion::pec(), ReweightRule::ratio(50));
  });
  ShotSampler sampler(m, 4);
  Shot shot = sampler.make_empty_shot();
  RateCounters c;
  uint64_t nonzero_accepted = 0;
  for (uint64_t i = 0; i < 1000000; ++i) {
    sampler.sample_into(i, &shot);
    const Verdict& v = memo(shot.syndrome);
    if (v.accepted && shot.syndrome.any()) ++nonzero_accepted;
    c.record(v.accepted,
             v.accepted && logical_of(m, *v.correction) != shot.logical);
  }
  RateEstimate e = estimate_rates(c);
  const double p = 0.01;
  const double expected =
      std::pow(p, 3) / (std::pow(1 - p, 3) + std::pow(p, 3));
  // Binomial sigma at the reference rate: a handful of events is expected.
  const double sigma = std::sqrt(expected * (1 - expected) / e.accepted);
  const double z = std::abs(e.p_l - expected) / sigma;
  return {nonzero_accepted == 0 && z < 4,
          std::to_string(nonzero_accepted) +
              " accepted shots with non-zero syndrome; p_L " +
              fmt("%.3e", e.p_l) + " (" + std::to_string(e.logical_errors) +
              "/" + std::to_string(e.accepted) + ") vs " +
              fmt("%.4e", expected) + fmt(", %.2f sigma", z)};
}

Result nesting() {
  DetectorErrorModel m = build_surface_code_phenomenological(3, 3, 0.02);
  CheckMatrices cm = check_matrices(m);
  BpOsdDecoder dec(cm.check);
  const auto priors = m.priors();
  const ReweightRule rule = ReweightRule::ratio(1.5);
  SyndromeMemo<std::array<bool, 3>> memo([&](const BitVector& s) {
    auto run = [&](const Criterion& c) {
      return argument_reweighting(dec, priors, s, cm.observable, c, rule)
          .accepted;
    };
    return std::array<bool, 3>{run(Criterion::pec()), run(Criterion::lec(2)),
                               run(Criterion::lec(3))};
  });
  ShotSampler sampler(m, 5);
  Shot shot = sampler.make_empty_shot();
  uint64_t violations = 0, acc[3] = {0, 0, 0};
  for (uint64_t i = 0; i < 100000; ++i) {
    sampler.sample_into(i, &shot);
    const auto& a = memo(shot.syndrome);
    for (int k = 0; k < 3; ++k) acc[k] += a[k];
    if ((a[0] && !a[1]) || (a[2] && !a[1])) ++violations;
  }
  return {violations == 0,
          std::to_string(violations) + " violations; accepted PEC " +
              std::to_string(acc[0]) + ", 2R-LEC " + std::to_string(acc[1]) +
              ", 3R-LEC " + std::to_string(acc[2]) + " of 1e5"};
}

ExperimentConfig suppression_config() {
  return parse_config(Json::parse(R"({
    "schema_version": 1,
    "model": {"builder": "repetition", "distance": 5, "rounds": 5, "p": 0.05},
    "decoder": {"name": "bp_osd"},
    "policy": {"criterion": "3R-LEC", "rule": "ratio", "z_preset": "surface"},
    "shots": 10000000,
    "seed": 2026
  })"));
}

Json suppression_document;

Result error_suppression() {
  double elapsed = 0;
  suppression_document = run_experiment(suppression_config(), &elapsed);
  const Json& base = suppression_document["baseline"];
  const double base_p = base["p_L"].get<double>();
  const Interval base_ci{base["p_L_wilson95"][0].get<double>(),
                         base["p_L_wilson95"][1].get<double>()};
  std::string best = "none";
  bool pass = false;
  for (const Json& row : suppression_document["rows"]) {
    const double p = row["p_L"].get<double>();
    const double rej = row["rejection_rate"].get<double>();
    const Interval ci{row["p_L_wilson95"][0].get<double>(),
                      row["p_L_wilson95"][1].get<double>()};
    if (p < 0.5 * base_p && rej < 0.2 && !intervals_overlap(ci, base_ci)) {
      if (!pass || p < std::stod(best.substr(best.find("p_L ") + 4))) {
        best = "z=" + fmt("%g", row["z"].get<double>()) + " rejection " +
               fmt("%.4f", rej) + " p_L " + fmt("%.4e", p);
      }
      pass = true;
    }
  }
  return {pass && elapsed < 1800,
          "baseline p_L " + fmt("%.4e", base_p) + "; best qualifying " + best +
              "; " + fmt("%.0f s", elapsed)};
}

Result shielding() {
  auto mech = [](double p, uint32_t obs_count) {
    ErrorMechanism e;
    e.probability = p;
    e.detectors = {0};
    if (obs_count) e.observables = {0};
    return e;
  };
  DetectorErrorModel m({mech(0.10, 1), mech(0.09, 1), mech(0.05, 0)}, 1, 1);
  SparseBinaryMatrix lm = check_matrices(m).observable;
  BitVector s = BitVector::from_string("1");
  bool two_all = true, three_none = true;
  for (int rep = 0; rep < 100; ++rep) {
    MlOracleDecoder dec(m);
    two_all &= argument_reweighting(dec, m.priors(), s, lm, Criterion::lec(2),
                                    ReweightRule::ratio(2))
                   .accepted;
    three_none &= !argument_reweighting(dec, m.priors(), s, lm,
                                        Criterion::lec(3),
                                        ReweightRule::ratio(2))
                       .accepted;
  }
  return {two_all && three_none,
          std::string("2R-LEC ") + (two_all ? "accepts" : "does not accept") +
              ", 3R-LEC " + (three_none ? "rejects" : "does not reject") +
              " (100 repetitions)"};
}

std::unique_ptr<Decoder> bp_factory(const DetectorErrorModel& sub) {
  return std::make_unique<BpOsdDecoder>(check_matrices(sub).check);
}

Result sliding_window() {
  DetectorErrorModel m = build_repetition_code(3, 4, 0.03, 0.03);
  CheckMatrices cm = check_matrices(m);
  BpOsdDecoder global(cm.check);
  const auto priors = m.priors();
  const Criterion crit = Criterion::lec(3);
  const ReweightRule rule = ReweightRule::ratio(2);
  SlidingWindowDecoder single(m, {4, 0, 4}, bp_factory);
  SlidingWindowDecoder windowed(m, {2, 2, 4}, bp_factory);
  SyndromeMemo<Verdict> global_memo([&](const BitVector& s) {
    return argument_reweighting(global, priors, s, cm.observable, crit, rule);
  });
  SyndromeMemo<WindowVerdict> single_memo(
      [&](const BitVector& s) { return single.decode(s, crit, rule); });
  SyndromeMemo<WindowVerdict> window_memo(
      [&](const BitVector& s) { return windowed.decode(s, crit, rule); });
  ShotSampler sampler(m, 8);
  Shot shot = sampler.make_empty_shot();
  uint64_t mismatches = 0;
  RateCounters g, w;
  for (uint64_t i = 0; i < 100000; ++i) {
    sampler.sample_into(i, &shot);
    const Verdict& gv = global_memo(shot.syndrome);
    const WindowVerdict& sv = single_memo(shot.syndrome);
    const WindowVerdict& wv = window_memo(shot.syndrome);
    if (gv.accepted != sv.accepted || gv.correction != sv.correction) {
      ++mismatches;
    }
    g.record(gv.accepted,
             gv.accepted && logical_of(m, *gv.correction) != shot.logical);
    w.record(wv.accepted,
             wv.accepted && logical_of(m, *wv.correction) != shot.logical);
  }
  RateEstimate ge = estimate_rates(g), we = estimate_rates(w);
  const double sigma = std::hypot(ge.sigma_l, we.sigma_l);
  const double z = sigma > 0 ? std::abs(ge.p_l - we.p_l) / sigma
                             : (ge.p_l == we.p_l ? 0 : INFINITY);
  return {mismatches == 0 && z < 4,
          std::to_string(mismatches) +
              " single-window mismatches; 2+2 window p_L " +
              fmt("%.4e", we.p_l) + " vs global " + fmt("%.4e", ge.p_l) +
              fmt(" (%.2f sigma); rejection ", z) +
              fmt("%.4f", we.rejection_rate) + " vs " +
              fmt("%.4f", ge.rejection_rate)};
}

Result reweight_algebra() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> logp(std::log(1e-8), std::log(0.5));
  std::uniform_real_distribution<double> bdist(1.0, 30.0);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const size_t n = 1 + rng() % 64;
    std::vector<double> p(n);
    for (auto& x : p) x = std::exp(logp(rng));
    BitVector c(n);
    for (size_t i = 0; i < n; ++i) c.set(i, rng() & 1);
    if (c.none()) c.set(rng() % n);
    const double b = bdist(rng);
    double log_pc = 0;
    for (uint32_t q : c.ones()) log_pc += std::log(p[q]);
    const auto g = reweight_gap(p, c, b);
    const auto r = reweight_ratio(p, c, b);
    double log_g = 0, log_r = 0;
    for (uint32_t q : c.ones()) {
      log_g += std::log(g[q]);
      log_r += std::log(r[q]);
    }
    worst = std::max(worst,
                     std::abs(log_g - (log_pc - b)) / std::abs(log_pc - b));
    worst = std::max(worst, std::abs(log_r - b * log_pc) / std::abs(b * log_pc));
  }
  return {worst < 1e-12,
          "1000 triples, worst relative error " + fmt("%.2e", worst)};
}

Result determinism() {
  ExperimentConfig cfg = suppression_config();
  cfg.workers = 8;
  const Json doc = run_experiment(cfg);
  const bool same = doc.dump(2) == suppression_document.dump(2);
  return {same, std::string("1 vs 8 workers: results documents ") +
                    (same ? "byte-identical" : "differ")};
}

}  // namespace
}  // namespace argrw

int main() {
  using argrw::Result;
  struct Criterion {
    const char* name;
    Result (*run)();
  };
  const Criterion criteria[] = {
      {"1 oracle equivalence", argrw::oracle_equivalence},
      {"2 conditional error bounds", argrw::conditional_bounds},
      {"3 identity limit", argrw::identity_limit},
      {"4 high-b limit", argrw::high_b_limit},
      {"5 acceptance nesting", argrw::nesting},
      {"6 error suppression", argrw::error_suppression},
      {"7 shielding fixture", argrw::shielding},
      {"8 sliding-window consistency", argrw::sliding_window},
      {"9 gap/ratio algebra", argrw::reweight_algebra},
      {"10 determinism", argrw::determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    failures += !r.pass;
    std::printf("%s criterion %s: %s\n", r.pass ? "PASS" : "FAIL", c.name,
                r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}

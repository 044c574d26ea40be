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

// Python bindings. Bit vectors cross the boundary as 1-D uint8 arrays and
// JSON documents as strings; argrw/__init__.py wraps the latter in dicts.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "argrw/bp_osd.h"
#include "argrw/code_builders.h"
#include "argrw/dem_io.h"
#include "argrw/error_model.h"
#include "argrw/experiment.h"
#include "argrw/matching.h"
#include "argrw/metrics.h"
#include "argrw/ml_oracle.h"
#include "argrw/reweighting.h"
#include "argrw/sampler.h"
#include "argrw/windowing.h"

namespace py = pybind11;

namespace argrw {
namespace {

using Bits = py::array_t<uint8_t, py::array::c_style | py::array::forcecast>;
using Reals = py::array_t<double, py::array::c_style | py::array::forcecast>;

BitVector to_bits(const Bits& a, size_t expected, const char* what) {
  if (a.ndim() != 1 || static_cast<size_t>(a.shape(0)) != expected) {
    throw py::value_error(std::string(what) + " must be a 1-D array of length " +
                          std::to_string(expected));
  }
  BitVector v(expected);
  const uint8_t* p = a.data();
  for (size_t i = 0; i < expected; ++i) {
    if (p[i] > 1) throw py::value_error(std::string(what) + " must be 0/1");
    if (p[i]) v.set(i);
  }
  return v;
}

Reals to_reals(const std::vector<double>& v) {
  Reals out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Bits from_bits(const BitVector& v) {
  Bits out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  uint8_t* p = out.mutable_data();
  for (size_t i = 0; i < v.size(); ++i) p[i] = v.get(i);
  return out;
}

std::vector<double> to_priors(const std::optional<Reals>& a,
                              const DetectorErrorModel& model) {
  if (!a) return model.priors();
  if (a->ndim() != 1 ||
      static_cast<size_t>(a->shape(0)) != model.num_mechanisms()) {
    throw py::value_error("priors must have one entry per mechanism");
  }
  std::vector<double> p(a->data(), a->data() + a->shape(0));
  validate_priors(p, model.num_mechanisms());
  return p;
}

// A decoder bundled with the model it was built for.
struct PyDecoder {
  DetectorErrorModel model;
  SparseBinaryMatrix logical_map;
  std::unique_ptr<Decoder> decoder;
};

std::shared_ptr<PyDecoder> make_py_decoder(const DetectorErrorModel& model,
                                           const std::string& name,
                                           size_t max_iterations,
                                           double scaling_factor,
                                           const std::string& schedule,
                                           size_t max_defects) {
  DecoderSpec spec;
  spec.name = name;
  spec.bp.max_iterations = max_iterations;
  spec.bp.scaling_factor = scaling_factor;
  if (schedule == "serial") {
    spec.bp.schedule = BpSchedule::kSerial;
  } else if (schedule != "parallel") {
    throw py::value_error("schedule must be 'parallel' or 'serial'");
  }
  spec.mwpm.max_defects = max_defects;
  auto d = std::make_shared<PyDecoder>();
  d->model = model;
  d->logical_map = check_matrices(model).observable;
  d->decoder = make_decoder(spec, d->model);
  return d;
}

ReweightRule make_rule(const std::string& rule, double b) {
  ReweightRule r;
  if (rule == "ratio") {
    r = ReweightRule::ratio(b);
  } else if (rule == "gap") {
    r = ReweightRule::gap(b);
  } else {
    throw py::value_error("rule must be 'ratio' or 'gap'");
  }
  r.validate();
  return r;
}

py::dict verdict_dict(bool accepted, const std::optional<BitVector>& correction,
                      size_t clamp_events, const std::string& diagnostic) {
  py::dict d;
  d["accepted"] = accepted;
  d["correction"] =
      correction ? py::object(from_bits(*correction)) : py::object(py::none());
  d["clamp_events"] = clamp_events;
  d["diagnostic"] = diagnostic;
  return d;
}

}  // namespace
}  // namespace argrw

PYBIND11_MODULE(_core, m) {
  using namespace argrw;
  m.doc() = "Argument reweighting post-selection for QEC decoders";

  py::register_exception<DemParseError>(m, "DemParseError", PyExc_ValueError);
  py::register_exception<DecodeError>(m, "DecodeError", PyExc_RuntimeError);

  py::class_<DetectorErrorModel>(m, "DetectorErrorModel")
      .def_static("from_text", &parse_dem, py::arg("text"))
      .def_static("from_file", &read_dem_file, py::arg("path"))
      .def_static("repetition_code", &build_repetition_code,
                  py::arg("distance"), py::arg("rounds"), py::arg("p"),
                  py::arg("p_meas"))
      .def_static("surface_code", &build_surface_code_phenomenological,
                  py::arg("distance"), py::arg("rounds"), py::arg("p"))
      .def_property_readonly("num_detectors",
                             &DetectorErrorModel::num_detectors)
      .def_property_readonly("num_mechanisms",
                             &DetectorErrorModel::num_mechanisms)
      .def_property_readonly("num_observables",
                             &DetectorErrorModel::num_observables)
      .def_property_readonly("priors",
                             [](const DetectorErrorModel& self) {
                               return to_reals(self.priors());
                             })
      .def("to_text",
           [](const DetectorErrorModel& self) { return to_dem_text(self); })
      .def("canonical",
           [](const DetectorErrorModel& self) { return canonicalize(self); })
      .def("fingerprint", &model_fingerprint)
      .def("syndrome_of",
           [](const DetectorErrorModel& self, const Bits& error) {
             return from_bits(syndrome_of(
                 self, to_bits(error, self.num_mechanisms(), "error")));
           })
      .def("logical_of",
           [](const DetectorErrorModel& self, const Bits& error) {
             return from_bits(logical_of(
                 self, to_bits(error, self.num_mechanisms(), "error")));
           });

  py::class_<ShotSampler>(m, "ShotSampler")
      .def(py::init<const DetectorErrorModel&, uint64_t>(), py::arg("model"),
           py::arg("seed"), py::keep_alive<1, 2>())
      .def(
          "sample",
          [](const ShotSampler& self, uint64_t index) {
            Shot s = self.sample(index);
            return py::make_tuple(from_bits(s.error), from_bits(s.syndrome),
                                  from_bits(s.logical));
          },
          py::arg("index"))
      .def(
          "sample_batch",
          [](const ShotSampler& self, uint64_t start, size_t count) {
            Shot s = self.make_empty_shot();
            const size_t nd = s.syndrome.size(), no = s.logical.size();
            py::array_t<uint8_t> syn({count, nd}), obs({count, no});
            auto sv = syn.mutable_unchecked<2>();
            auto ov = obs.mutable_unchecked<2>();
            for (size_t i = 0; i < count; ++i) {
              self.sample_into(start + i, &s);
              for (size_t j = 0; j < nd; ++j) sv(i, j) = s.syndrome.get(j);
              for (size_t j = 0; j < no; ++j) ov(i, j) = s.logical.get(j);
            }
            return py::make_tuple(syn, obs);
          },
          py::arg("start"), py::arg("count"));

  py::class_<PyDecoder, std::shared_ptr<PyDecoder>>(m, "Decoder")
      .def(py::init(&make_py_decoder), py::arg("model"),
           py::arg("name") = "bp_osd", py::arg("max_iterations") = 200,
           py::arg("scaling_factor") = 1.0, py::arg("schedule") = "parallel",
           py::arg("max_defects") = 16)
      .def_property_readonly(
          "name", [](const PyDecoder& self) { return self.decoder->name(); })
      .def(
          "decode",
          [](PyDecoder& self, const Bits& syndrome,
             const std::optional<Reals>& priors) {
            BitVector s =
                to_bits(syndrome, self.model.num_detectors(), "syndrome");
            return from_bits(
                self.decoder->decode(to_priors(priors, self.model), s));
          },
          py::arg("syndrome"), py::arg("priors") = py::none())
      .def(
          "reweight_decode",
          [](PyDecoder& self, const Bits& syndrome, const std::string& criterion,
             const std::string& rule, double b,
             const std::optional<Reals>& priors) {
            BitVector s =
                to_bits(syndrome, self.model.num_detectors(), "syndrome");
            Verdict v = argument_reweighting(
                *self.decoder, to_priors(priors, self.model), s,
                self.logical_map, Criterion::parse(criterion),
                make_rule(rule, b));
            py::dict d = verdict_dict(v.accepted, v.correction,
                                      v.clamp_events, v.diagnostic);
            d["rounds_used"] = v.rounds_used;
            return d;
          },
          py::arg("syndrome"), py::arg("criterion") = "3R-LEC",
          py::arg("rule") = "ratio", py::arg("b") = 2.0,
          py::arg("priors") = py::none());

  m.def(
      "reweight",
      [](const Reals& priors, const Bits& correction, double b,
         const std::string& rule) {
        std::vector<double> p(priors.data(), priors.data() + priors.size());
        BitVector c = to_bits(correction, p.size(), "correction");
        auto out = reweight(p, c, make_rule(rule, b));
        return to_reals(out);
      },
      py::arg("priors"), py::arg("correction"), py::arg("b"),
      py::arg("rule") = "ratio");

  m.def(
      "window_decode",
      [](const DetectorErrorModel& model, const Bits& syndrome, size_t n_com,
         size_t n_buf, const std::string& scope, const std::string& decoder,
         const std::optional<std::string>& criterion, const std::string& rule,
         double b) {
        WindowLayout layout{n_com, n_buf, 0, ReweightScope::kFullWindow};
        if (scope == "commit_only") {
          layout.scope = ReweightScope::kCommitOnly;
        } else if (scope != "full_window") {
          throw py::value_error("scope must be 'full_window' or 'commit_only'");
        }
        for (const auto& mech : model.mechanisms()) {
          if (mech.round) {
            layout.total_rounds =
                std::max(layout.total_rounds, size_t{*mech.round} + 1);
          }
        }
        DecoderSpec spec;
        spec.name = decoder;
        SlidingWindowDecoder dec(
            model, layout,
            [&](const DetectorErrorModel& sub) { return make_decoder(spec, sub); });
        BitVector s = to_bits(syndrome, model.num_detectors(), "syndrome");
        WindowVerdict v = criterion ? dec.decode(s, Criterion::parse(*criterion),
                                                 make_rule(rule, b))
                                    : dec.decode_plain(s);
        py::dict d =
            verdict_dict(v.accepted, v.correction, v.clamp_events, v.diagnostic);
        d["windows_decoded"] = v.windows_decoded;
        d["rejecting_window"] = v.rejecting_window
                                    ? py::object(py::int_(*v.rejecting_window))
                                    : py::object(py::none());
        return d;
      },
      py::arg("model"), py::arg("syndrome"), py::arg("n_com"),
      py::arg("n_buf"), py::arg("scope") = "full_window",
      py::arg("decoder") = "bp_osd", py::arg("criterion") = py::none(),
      py::arg("rule") = "ratio", py::arg("b") = 2.0);

  m.def(
      "wilson_interval",
      [](uint64_t k, uint64_t n, double z) {
        Interval i = wilson_interval(k, n, z);
        return py::make_tuple(i.lo, i.hi);
      },
      py::arg("successes"), py::arg("trials"),
      py::arg("z") = 1.959963984540054);

  m.def("exact_logical_error_rate", &exact_total_logical_error_rate,
        py::arg("model"));

  m.def(
      "_run_experiment",
      [](const std::string& config, size_t workers) {
        ExperimentConfig c = parse_config(Json::parse(config));
        if (workers) c.workers = workers;
        Json doc;
        {
          py::gil_scoped_release release;
          doc = run_experiment(c);
        }
        return doc.dump();
      },
      py::arg("config"), py::arg("workers") = 0);
  m.def(
      "_sweep_report",
      [](const std::vector<std::string>& docs) {
        std::vector<Json> parsed;
        for (const auto& d : docs) parsed.push_back(Json::parse(d));
        SweepReport r = sweep_report(parsed);
        return py::make_tuple(r.document.dump(), r.tsv);
      },
      py::arg("documents"));
  m.def(
      "_check_bounds",
      [](const DetectorErrorModel& model) {
        return check_bounds_document(model, nullptr).dump();
      },
      py::arg("model"));
  m.def("_model_spec", [](const std::string& source) {
    return load_model(model_spec_from_source(source));
  });
}

// Copyright 2026 The ctta Authors.
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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctta/diffusion/sampler.hpp"
#include "ctta/diffusion/schedule.hpp"
#include "ctta/dsl/prompt.hpp"
#include "ctta/lex/lexicon.hpp"
#include "ctta/sed/metrics.hpp"

#ifndef CTTA_DEFAULT_DATA_DIR
#define CTTA_DEFAULT_DATA_DIR "data"
#endif

namespace py = pybind11;
using namespace ctta;

namespace {

// Prompts cross the boundary as plain dicts:
//   {"caption": str, "events": [{"description", "spans": [(s, e)], "speech"?}]}
py::dict to_dict(const dsl::StructuredPrompt& p) {
  py::list events;
  for (const auto& e : p.events) {
    py::dict ev;
    ev["description"] = e.description;
    py::list spans;
    for (const auto& s : e.spans) spans.append(py::make_tuple(s.start.seconds(), s.end.seconds()));
    ev["spans"] = spans;
    ev["speech"] = e.speech ? py::cast(*e.speech) : py::none();
    events.append(ev);
  }
  py::dict d;
  d["caption"] = p.caption;
  d["events"] = events;
  return d;
}

dsl::StructuredPrompt from_dict(const py::dict& d) {
  dsl::StructuredPrompt p;
  p.caption = d["caption"].cast<std::string>();
  for (const auto& item : d["events"].cast<py::list>()) {
    const auto ev = item.cast<py::dict>();
    dsl::EventSpec e;
    e.description = ev["description"].cast<std::string>();
    for (const auto& s : ev["spans"].cast<py::list>()) {
      const auto pair = s.cast<std::pair<double, double>>();
      e.spans.push_back(dsl::TimeSpan::from_seconds(pair.first, pair.second));
    }
    if (ev.contains("speech") && !ev["speech"].is_none()) e.speech = ev["speech"].cast<std::string>();
    p.events.push_back(std::move(e));
  }
  return p;
}

// Clips as {clip_id: [(label, start, end), ...]}.
std::vector<sed::ClipAnnotations> clips_from(
    const std::map<std::string, std::vector<std::tuple<std::string, double, double>>>& m) {
  std::vector<sed::ClipAnnotations> out;
  for (const auto& [id, events] : m) {
    sed::ClipAnnotations c{id, {}};
    for (const auto& [label, s, e] : events) {
      c.events.push_back({label, dsl::TimeSpan::from_seconds(s, e), std::nullopt});
    }
    out.push_back(std::move(c));
  }
  return out;
}

py::dict counts_dict(const sed::Counts& c) {
  py::dict d;
  d["precision"] = c.precision();
  d["recall"] = c.recall();
  d["f1"] = c.f1();
  d["tp"] = c.tp;
  d["fp"] = c.fp;
  d["fn"] = c.fn;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ctta, m) {
  m.doc() = "Native core of the ctta package";
  py::register_exception<dsl::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("parse", [](const std::string& text) { return to_dict(dsl::parse(text)); });
  m.def("serialize", [](const py::dict& d) { return dsl::serialize(from_dict(d)); });
  m.def("canonicalize", [](const std::string& text) { return dsl::canonicalize(text); });
  m.def("validate", [](const std::string& text) {
    std::vector<std::string> out;
    for (const auto& v : dsl::validate(dsl::parse(text))) {
      out.push_back(std::string(dsl::to_string(v.kind)) + ": " + v.message);
    }
    return out;
  }, "Violations of a prompt against a 10 s clip; empty when valid.");

  py::class_<lex::PhonemeLexicon>(m, "PhonemeLexicon")
      .def("__len__", &lex::PhonemeLexicon::size)
      .def("find", [](const lex::PhonemeLexicon& l, const std::string& w) -> py::object {
        const auto* p = l.find(w);
        return p ? py::cast(*p) : py::none();
      });
  m.def("load_lexicon", [](const std::string& path) { return lex::load_lexicon_file(path); });
  m.def("g2p", [](const std::string& text, const lex::PhonemeLexicon& lexicon,
                  const std::string& policy) {
    return lex::g2p(text, lexicon, lex::parse_oov_policy(policy));
  }, py::arg("text"), py::arg("lexicon"), py::arg("oov") = "error");
  m.def("_source_lexicon_path",
        [] { return std::string(CTTA_DEFAULT_DATA_DIR) + "/lexicon/cmudict.dict"; });

  m.def("cfg_combine", [](const std::vector<double>& c, const std::vector<double>& u, double w) {
    return diffusion::cfg_combine(c, u, w);
  });
  m.def("cosine_alpha_bar", [](int steps) { return diffusion::NoiseSchedule::cosine(steps).alpha_bars(); });

  m.def("event_based_f1", [](const std::map<std::string, std::vector<std::tuple<std::string, double, double>>>& truth,
                             const std::map<std::string, std::vector<std::tuple<std::string, double, double>>>& pred,
                             double onset, double offset_abs, double offset_rel) {
    const auto r = sed::event_based_f1(clips_from(truth), clips_from(pred), {onset, offset_abs, offset_rel});
    py::dict d = counts_dict(r.overall);
    d["macro_f1"] = r.macro_f1();
    return d;
  }, py::arg("truth"), py::arg("pred"), py::arg("onset_collar") = 0.2,
     py::arg("offset_collar_abs") = 0.2, py::arg("offset_collar_rel") = 0.2);
  m.def("clip_level_macro_f1", [](const std::map<std::string, std::vector<std::tuple<std::string, double, double>>>& truth,
                                  const std::map<std::string, std::vector<std::tuple<std::string, double, double>>>& pred) {
    return sed::clip_level_macro_f1(clips_from(truth), clips_from(pred)).macro_f1();
  });
}

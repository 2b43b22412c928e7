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

#include <cstdio>
#include <sstream>

#include "ctta/sed/report.hpp"

namespace ctta::sed {

EvaluationReport evaluate(std::span<const ClipAnnotations> truth,
                          std::span<const ClipAnnotations> pred, const EbConfig& config,
                          bool macro_eb) {
  return {event_based_f1(truth, pred, config), clip_level_macro_f1(truth, pred), config, macro_eb};
}

std::string percent(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * score);
  return buf;
}

namespace {

void row(std::ostream& os, const char* metric, const char* scope, const std::string& cls,
         const Counts& c) {
  os << metric << '\t' << scope << '\t' << cls << '\t' << percent(c.precision()) << '\t'
     << percent(c.recall()) << '\t' << percent(c.f1()) << '\t' << c.tp << '\t' << c.fp << '\t'
     << c.fn << '\n';
}

}  // namespace

std::string format_report(const EvaluationReport& r) {
  std::ostringstream os;
  os << "# collars: onset " << r.config.onset_collar << " s, offset max(" << r.config.offset_collar_abs
     << " s, " << r.config.offset_collar_rel << " x length); headline Eb "
     << (r.macro_eb ? "macro" : "micro") << '\n';
  os << "metric\tscope\tclass\tprecision\trecall\tf1\ttp\tfp\tfn\n";
  row(os, "Eb", "micro", "*", r.eb.overall);
  os << "Eb\tmacro\t*\t-\t-\t" << percent(r.eb.macro_f1()) << "\t-\t-\t-\n";
  os << "At\tmacro\t*\t-\t-\t" << percent(r.at.macro_f1()) << "\t-\t-\t-\n";
  for (const auto& [cls, c] : r.eb.per_class) row(os, "Eb", "class", cls, c);
  for (const auto& [cls, c] : r.at.per_class) row(os, "At", "class", cls, c);
  return os.str();
}

std::string headline(const EvaluationReport& r) {
  return "Eb=" + percent(r.headline_eb()) + " At=" + percent(r.headline_at());
}

}  // namespace ctta::sed

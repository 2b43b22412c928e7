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

#include <algorithm>
#include <set>
#include <unordered_map>

#include "ctta/sed/matching.hpp"
#include "ctta/sed/metrics.hpp"

namespace ctta::sed {

void EbConfig::validate() const {
  if (!(onset_collar >= 0.0) || !(offset_collar_abs >= 0.0) || !(offset_collar_rel >= 0.0)) {
    throw std::invalid_argument("collars must be non-negative");
  }
}

double Counts::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Counts::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Counts::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

namespace {

double macro_over(const std::map<std::string, Counts>& per_class,
                  const std::vector<std::string>& classes) {
  if (classes.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& c : classes) sum += per_class.at(c).f1();
  return sum / static_cast<double>(classes.size());
}

using ClipIndex = std::unordered_map<std::string, const ClipAnnotations*>;

ClipIndex index_clips(std::span<const ClipAnnotations> clips, const char* side) {
  ClipIndex index;
  for (const auto& clip : clips) {
    if (!index.emplace(clip.clip_id, &clip).second) {
      throw EvaluationError(std::string("duplicate clip_id '") + clip.clip_id + "' in " + side);
    }
  }
  return index;
}

// Clip ids in truth order, followed by prediction-only ids in their order.
std::vector<std::string> all_clip_ids(std::span<const ClipAnnotations> truth,
                                      std::span<const ClipAnnotations> pred,
                                      const ClipIndex& truth_index) {
  std::vector<std::string> ids;
  for (const auto& c : truth) ids.push_back(c.clip_id);
  for (const auto& c : pred) {
    if (!truth_index.contains(c.clip_id)) ids.push_back(c.clip_id);
  }
  return ids;
}

std::map<std::string, std::vector<dsl::TimeSpan>> by_class(const ClipAnnotations* clip) {
  std::map<std::string, std::vector<dsl::TimeSpan>> out;
  if (clip == nullptr) return out;
  for (const auto& e : clip->events) out[e.label].push_back(e.span);
  return out;
}

std::vector<std::string> truth_classes_of(std::span<const ClipAnnotations> truth) {
  std::set<std::string> classes;
  for (const auto& clip : truth) {
    for (const auto& e : clip.events) classes.insert(e.label);
  }
  return {classes.begin(), classes.end()};
}

const ClipAnnotations* find(const ClipIndex& index, const std::string& id) {
  const auto it = index.find(id);
  return it == index.end() ? nullptr : it->second;
}

}  // namespace

double EventBasedResult::macro_f1() const { return macro_over(per_class, truth_classes); }
double ClipLevelResult::macro_f1() const { return macro_over(per_class, truth_classes); }

EventBasedResult event_based_f1(std::span<const ClipAnnotations> truth,
                                std::span<const ClipAnnotations> pred, const EbConfig& config) {
  config.validate();
  const ClipIndex ti = index_clips(truth, "truth");
  const ClipIndex pi = index_clips(pred, "predictions");
  EventBasedResult result;
  result.truth_classes = truth_classes_of(truth);
  for (const auto& c : result.truth_classes) result.per_class[c];
  for (const auto& id : all_clip_ids(truth, pred, ti)) {
    const auto t_classes = by_class(find(ti, id));
    const auto p_classes = by_class(find(pi, id));
    std::set<std::string> labels;
    for (const auto& [label, _] : t_classes) labels.insert(label);
    for (const auto& [label, _] : p_classes) labels.insert(label);
    static const std::vector<dsl::TimeSpan> kNone;
    for (const auto& label : labels) {
      const auto ts = t_classes.find(label);
      const auto ps = p_classes.find(label);
      const auto& t = ts == t_classes.end() ? kNone : ts->second;
      const auto& p = ps == p_classes.end() ? kNone : ps->second;
      const long matched =
          static_cast<long>(maximum_matching(collar_graph(t, p, config), p.size()).size());
      Counts c{matched, static_cast<long>(p.size()) - matched,
               static_cast<long>(t.size()) - matched};
      result.per_class[label] += c;
      result.overall += c;
    }
  }
  return result;
}

ClipLevelResult clip_level_macro_f1(std::span<const ClipAnnotations> truth,
                                    std::span<const ClipAnnotations> pred) {
  const ClipIndex ti = index_clips(truth, "truth");
  const ClipIndex pi = index_clips(pred, "predictions");
  ClipLevelResult result;
  result.truth_classes = truth_classes_of(truth);
  for (const auto& c : result.truth_classes) result.per_class[c];
  for (const auto& id : all_clip_ids(truth, pred, ti)) {
    const auto t_classes = by_class(find(ti, id));
    const auto p_classes = by_class(find(pi, id));
    std::set<std::string> labels;
    for (const auto& [label, _] : t_classes) labels.insert(label);
    for (const auto& [label, _] : p_classes) labels.insert(label);
    for (const auto& label : labels) {
      const bool in_truth = t_classes.contains(label);
      const bool in_pred = p_classes.contains(label);
      Counts& c = result.per_class[label];
      if (in_truth && in_pred) ++c.tp;
      else if (in_pred) ++c.fp;
      else ++c.fn;
    }
  }
  return result;
}

}  // namespace ctta::sed

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

#include "ctta/diffusion/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ctta::diffusion {

ScheduleFamily parse_schedule_family(std::string_view name) {
  if (name == "cosine") return ScheduleFamily::kCosine;
  if (name == "linear") return ScheduleFamily::kLinear;
  throw std::invalid_argument("unknown schedule family '" + std::string(name) + "'");
}

std::string_view to_string(ScheduleFamily family) {
  return family == ScheduleFamily::kCosine ? "cosine" : "linear";
}

NoiseSchedule::NoiseSchedule(std::vector<double> alpha_bar, ScheduleFamily family)
    : alpha_bar_(std::move(alpha_bar)), family_(family) {
  if (alpha_bar_.size() < 2) throw std::invalid_argument("schedule needs at least one step");
  if (alpha_bar_.front() != 1.0) throw std::invalid_argument("alpha_bar[0] must be 1");
  for (std::size_t t = 1; t < alpha_bar_.size(); ++t) {
    if (!(alpha_bar_[t] < alpha_bar_[t - 1]) || !(alpha_bar_[t] > 0.0)) {
      throw std::invalid_argument("alpha_bar must be strictly decreasing and positive (t=" +
                                  std::to_string(t) + ")");
    }
  }
}

NoiseSchedule NoiseSchedule::cosine(int steps, double offset) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const auto f = [&](int t) {
    const double x = (static_cast<double>(t) / steps + offset) / (1.0 + offset);
    const double c = std::cos(x * std::numbers::pi / 2.0);
    return c * c;
  };
  std::vector<double> alpha_bar(static_cast<std::size_t>(steps) + 1, 1.0);
  for (int t = 1; t <= steps; ++t) {
    const double beta = std::min(1.0 - f(t) / f(t - 1), 0.999);
    alpha_bar[t] = alpha_bar[t - 1] * (1.0 - beta);
  }
  return NoiseSchedule(std::move(alpha_bar), ScheduleFamily::kCosine);
}

NoiseSchedule NoiseSchedule::linear(int steps, double beta_start, double beta_end) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const double scale = 1000.0 / steps;
  std::vector<double> alpha_bar(static_cast<std::size_t>(steps) + 1, 1.0);
  for (int t = 1; t <= steps; ++t) {
    const double frac = steps == 1 ? 0.0 : static_cast<double>(t - 1) / (steps - 1);
    const double beta = std::min(scale * (beta_start + frac * (beta_end - beta_start)), 0.999);
    alpha_bar[t] = alpha_bar[t - 1] * (1.0 - beta);
  }
  return NoiseSchedule(std::move(alpha_bar), ScheduleFamily::kLinear);
}

NoiseSchedule NoiseSchedule::make(ScheduleFamily family, int steps) {
  return family == ScheduleFamily::kCosine ? cosine(steps) : linear(steps);
}

void NoiseSchedule::check_step(int t) const {
  if (t < 1 || t > steps()) {
    throw std::out_of_range("step " + std::to_string(t) + " outside [1, " +
                            std::to_string(steps()) + "]");
  }
}

double NoiseSchedule::alpha_bar(int t) const {
  if (t < 0 || t > steps()) {
    throw std::out_of_range("step " + std::to_string(t) + " outside [0, " +
                            std::to_string(steps()) + "]");
  }
  return alpha_bar_[static_cast<std::size_t>(t)];
}

double NoiseSchedule::alpha(int t) const {
  check_step(t);
  return alpha_bar_[t] / alpha_bar_[t - 1];
}

double NoiseSchedule::posterior_variance(int t) const {
  check_step(t);
  if (t == 1) return 0.0;
  return (1.0 - alpha_bar_[t - 1]) / (1.0 - alpha_bar_[t]) * beta(t);
}

}  // namespace ctta::diffusion

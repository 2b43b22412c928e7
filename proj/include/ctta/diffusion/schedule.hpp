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

#pragma once

#include <string_view>
#include <vector>

namespace ctta::diffusion {

enum class ScheduleFamily { kCosine, kLinear };

ScheduleFamily parse_schedule_family(std::string_view name);
std::string_view to_string(ScheduleFamily family);

/// Discrete forward process with cumulative signal retention alpha_bar[t],
/// t = 0..T, alpha_bar[0] = 1, strictly decreasing and positive.
class NoiseSchedule {
 public:
  NoiseSchedule(std::vector<double> alpha_bar, ScheduleFamily family);

  /// Squared-cosine schedule with offset s; per-step betas capped at 0.999.
  static NoiseSchedule cosine(int steps, double offset = 0.008);
  /// Betas linear between the endpoints, scaled by 1000 / steps.
  static NoiseSchedule linear(int steps, double beta_start = 1e-4, double beta_end = 0.02);
  static NoiseSchedule make(ScheduleFamily family, int steps);

  int steps() const { return static_cast<int>(alpha_bar_.size()) - 1; }
  ScheduleFamily family() const { return family_; }

  double alpha_bar(int t) const;
  /// alpha_bar[t] / alpha_bar[t - 1]
  double alpha(int t) const;
  double beta(int t) const { return 1.0 - alpha(t); }
  /// Variance of q(z_{t-1} | z_t, z_0); zero at t = 1.
  double posterior_variance(int t) const;

  const std::vector<double>& alpha_bars() const { return alpha_bar_; }

 private:
  void check_step(int t) const;

  std::vector<double> alpha_bar_;
  ScheduleFamily family_;
};

}  // namespace ctta::diffusion

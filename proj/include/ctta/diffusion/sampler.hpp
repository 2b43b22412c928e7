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

#include <functional>
#include <span>
#include <stdexcept>
#include <string_view>

#include "ctta/common/rng.hpp"
#include "ctta/diffusion/condition.hpp"
#include "ctta/diffusion/denoiser.hpp"
#include "ctta/diffusion/schedule.hpp"

namespace ctta::diffusion {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// z_t = sqrt(alpha_bar[t]) z0 + sqrt(1 - alpha_bar[t]) eps, 1 <= t <= T.
Latent forward_noise(std::span<const double> z0, int t, std::span<const double> eps,
                     const NoiseSchedule& schedule);

/// ||eps - denoiser(forward_noise(z0, t, eps), t, c)||^2
double diffusion_loss(const Denoiser& denoiser, std::span<const double> z0,
                      const Condition& c, int t, std::span<const double> eps,
                      const NoiseSchedule& schedule);

/// eps_uncond + w (eps_cond - eps_uncond), evaluated as a blend so that w = 0
/// and w = 1 return their operands exactly.
Latent cfg_combine(std::span<const double> eps_cond, std::span<const double> eps_uncond,
                   double w);

enum class ReverseMode {
  kAncestral,      // posterior mean plus fresh noise with variance beta-tilde
  kDeterministic,  // noise-free update through the predicted z0
};

ReverseMode parse_reverse_mode(std::string_view name);
std::string_view to_string(ReverseMode mode);

/// One reverse update z_t -> z_{t-1}. Ancestral mode draws dim() normals
/// from `rng` except at t = 1; deterministic mode never touches it.
Latent reverse_step(std::span<const double> z, int t, std::span<const double> eps_hat,
                    const NoiseSchedule& schedule, ReverseMode mode, Rng& rng);

/// Two-phase guidance policy: steps t > t1 use (c1, w_low), steps t <= t1
/// use (c2, w_high). Phase one therefore has T - t1 steps and phase two t1.
struct GuidanceSchedule {
  Condition c1;
  Condition c2;
  double w_low = 3.0;
  double w_high = 9.0;
  int t1 = 88;
  int steps = 100;

  /// Throws std::invalid_argument unless 1 <= t1 <= T, both scales are
  /// non-negative and `steps` matches the noise schedule.
  void validate(const NoiseSchedule& schedule) const;
  int phase_of(int t) const { return t > t1 ? 1 : 2; }
};

struct StepRecord {
  int t;
  int phase;
  Condition condition;
  double w;
};

/// Called after each step with the latent z_{t-1}.
using StepObserver = std::function<void(const StepRecord&, std::span<const double>)>;

/// Single-phase classifier-free guided sampling from z_T down to z_0.
Latent sample_guided(const Denoiser& denoiser, const Condition& c, double w,
                     const NoiseSchedule& schedule, std::span<const double> z_T, Rng& rng,
                     ReverseMode mode = ReverseMode::kAncestral,
                     const StepObserver& observer = {});

/// Progressively guided sampling under `guidance`. The unconditional branch
/// uses the null condition in both phases.
Latent sample_progressive(const Denoiser& denoiser, const GuidanceSchedule& guidance,
                          const NoiseSchedule& schedule, std::span<const double> z_T,
                          Rng& rng, ReverseMode mode = ReverseMode::kAncestral,
                          const StepObserver& observer = {});

/// dim() independent standard normals.
Latent standard_normal(std::size_t dim, Rng& rng);

}  // namespace ctta::diffusion

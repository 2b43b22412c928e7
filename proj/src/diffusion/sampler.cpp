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

#include "ctta/diffusion/sampler.hpp"

#include <cmath>
#include <string>

namespace ctta::diffusion {

namespace {

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                     std::to_string(b));
  }
}

void require_step(int t, const NoiseSchedule& schedule) {
  if (t < 1 || t > schedule.steps()) {
    throw std::out_of_range("step " + std::to_string(t) + " outside [1, " +
                            std::to_string(schedule.steps()) + "]");
  }
}

Latent guided_eps(const Denoiser& denoiser, std::span<const double> z, int t,
                  const Condition& c, double w) {
  const Latent cond = denoiser.predict(z, t, c);
  const Latent uncond = denoiser.predict(z, t, Condition::null());
  return cfg_combine(cond, uncond, w);
}

}  // namespace

Latent forward_noise(std::span<const double> z0, int t, std::span<const double> eps,
                     const NoiseSchedule& schedule) {
  require_same(z0.size(), eps.size(), "forward_noise");
  require_step(t, schedule);
  const double a = std::sqrt(schedule.alpha_bar(t));
  const double s = std::sqrt(1.0 - schedule.alpha_bar(t));
  Latent z(z0.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = a * z0[i] + s * eps[i];
  return z;
}

double diffusion_loss(const Denoiser& denoiser, std::span<const double> z0,
                      const Condition& c, int t, std::span<const double> eps,
                      const NoiseSchedule& schedule) {
  require_same(z0.size(), denoiser.dim(), "diffusion_loss");
  const Latent z = forward_noise(z0, t, eps, schedule);
  const Latent predicted = denoiser.predict(z, t, c);
  require_same(predicted.size(), eps.size(), "diffusion_loss");
  double loss = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double d = eps[i] - predicted[i];
    loss += d * d;
  }
  return loss;
}

Latent cfg_combine(std::span<const double> eps_cond, std::span<const double> eps_uncond,
                   double w) {
  require_same(eps_cond.size(), eps_uncond.size(), "cfg_combine");
  Latent out(eps_cond.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (1.0 - w) * eps_uncond[i] + w * eps_cond[i];
  }
  return out;
}

ReverseMode parse_reverse_mode(std::string_view name) {
  if (name == "ancestral") return ReverseMode::kAncestral;
  if (name == "deterministic") return ReverseMode::kDeterministic;
  throw std::invalid_argument("unknown sampling mode '" + std::string(name) + "'");
}

std::string_view to_string(ReverseMode mode) {
  return mode == ReverseMode::kAncestral ? "ancestral" : "deterministic";
}

Latent reverse_step(std::span<const double> z, int t, std::span<const double> eps_hat,
                    const NoiseSchedule& schedule, ReverseMode mode, Rng& rng) {
  require_same(z.size(), eps_hat.size(), "reverse_step");
  require_step(t, schedule);
  const double ab_t = schedule.alpha_bar(t);
  const double ab_prev = schedule.alpha_bar(t - 1);
  Latent out(z.size());
  if (mode == ReverseMode::kAncestral) {
    const double alpha = schedule.alpha(t);
    const double coef = (1.0 - alpha) / std::sqrt(1.0 - ab_t);
    const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);
    const double sigma = std::sqrt(schedule.posterior_variance(t));
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = inv_sqrt_alpha * (z[i] - coef * eps_hat[i]);
    }
    if (t > 1) {
      for (double& v : out) v += sigma * rng.normal();
    }
  } else {
    const double sa = std::sqrt(ab_t), sn = std::sqrt(1.0 - ab_t);
    const double sa_prev = std::sqrt(ab_prev), sn_prev = std::sqrt(1.0 - ab_prev);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double z0_hat = (z[i] - sn * eps_hat[i]) / sa;
      out[i] = sa_prev * z0_hat + sn_prev * eps_hat[i];
    }
  }
  return out;
}

void GuidanceSchedule::validate(const NoiseSchedule& schedule) const {
  if (steps != schedule.steps()) {
    throw std::invalid_argument("guidance schedule has " + std::to_string(steps) +
                                " steps but the noise schedule has " +
                                std::to_string(schedule.steps()));
  }
  if (t1 < 1 || t1 > steps) {
    throw std::invalid_argument("t1 = " + std::to_string(t1) + " outside [1, " +
                                std::to_string(steps) + "]");
  }
  if (!(w_low >= 0.0) || !(w_high >= 0.0)) {
    throw std::invalid_argument("guidance scales must be non-negative");
  }
}

Latent standard_normal(std::size_t dim, Rng& rng) {
  Latent z(dim);
  for (double& v : z) v = rng.normal();
  return z;
}

Latent sample_guided(const Denoiser& denoiser, const Condition& c, double w,
                     const NoiseSchedule& schedule, std::span<const double> z_T, Rng& rng,
                     ReverseMode mode, const StepObserver& observer) {
  require_same(z_T.size(), denoiser.dim(), "sample_guided");
  Latent z(z_T.begin(), z_T.end());
  for (int t = schedule.steps(); t >= 1; --t) {
    const Latent eps = guided_eps(denoiser, z, t, c, w);
    z = reverse_step(z, t, eps, schedule, mode, rng);
    if (observer) observer({t, 1, c, w}, z);
  }
  return z;
}

Latent sample_progressive(const Denoiser& denoiser, const GuidanceSchedule& guidance,
                          const NoiseSchedule& schedule, std::span<const double> z_T,
                          Rng& rng, ReverseMode mode, const StepObserver& observer) {
  guidance.validate(schedule);
  require_same(z_T.size(), denoiser.dim(), "sample_progressive");
  Latent z(z_T.begin(), z_T.end());
  for (int t = schedule.steps(); t >= 1; --t) {
    const int phase = guidance.phase_of(t);
    const Condition& c = phase == 1 ? guidance.c1 : guidance.c2;
    const double w = phase == 1 ? guidance.w_low : guidance.w_high;
    const Latent eps = guided_eps(denoiser, z, t, c, w);
    z = reverse_step(z, t, eps, schedule, mode, rng);
    if (observer) observer({t, phase, c, w}, z);
  }
  return z;
}

}  // namespace ctta::diffusion

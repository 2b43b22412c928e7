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

#include <map>

#include "ctta/diffusion/denoiser.hpp"
#include "ctta/diffusion/schedule.hpp"

namespace ctta::diffusion {

/// Data distribution N(mu, sigma2 I).
struct GaussianCondition {
  Latent mu;
  double sigma2 = 1.0;
};

/// Bayes-optimal eps-predictor for Gaussian data:
///   eps(z, t) = sqrt(1 - ab) (z - sqrt(ab) mu) / (ab sigma2 + 1 - ab).
Latent gaussian_optimal_eps(std::span<const double> z, double alpha_bar,
                            const GaussianCondition& target);

/// Analytic denoiser over a fixed set of Gaussian targets, one per
/// condition. The null condition maps to `unconditional`. Unknown conditions
/// throw std::out_of_range.
class GaussianOracleDenoiser final : public Denoiser {
 public:
  GaussianOracleDenoiser(NoiseSchedule schedule, GaussianCondition unconditional,
                         std::map<Condition, GaussianCondition> conditional = {});

  std::size_t dim() const override { return unconditional_.mu.size(); }
  Latent predict(std::span<const double> z, int t, const Condition& c) const override;

  const GaussianCondition& target(const Condition& c) const;

 private:
  NoiseSchedule schedule_;
  GaussianCondition unconditional_;
  std::map<Condition, GaussianCondition> conditional_;
};

}  // namespace ctta::diffusion

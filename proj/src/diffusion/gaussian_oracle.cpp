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

#include "ctta/diffusion/gaussian_oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctta::diffusion {

Latent gaussian_optimal_eps(std::span<const double> z, double alpha_bar,
                            const GaussianCondition& target) {
  if (z.size() != target.mu.size()) throw std::invalid_argument("oracle: dimension mismatch");
  const double coef = std::sqrt(1.0 - alpha_bar) /
                      (alpha_bar * target.sigma2 + 1.0 - alpha_bar);
  const double shift = std::sqrt(alpha_bar);
  Latent eps(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) eps[i] = coef * (z[i] - shift * target.mu[i]);
  return eps;
}

GaussianOracleDenoiser::GaussianOracleDenoiser(NoiseSchedule schedule,
                                               GaussianCondition unconditional,
                                               std::map<Condition, GaussianCondition> conditional)
    : schedule_(std::move(schedule)),
      unconditional_(std::move(unconditional)),
      conditional_(std::move(conditional)) {
  const auto check = [&](const GaussianCondition& g) {
    if (!(g.sigma2 > 0.0)) throw std::invalid_argument("oracle: sigma2 must be positive");
    if (g.mu.size() != unconditional_.mu.size()) {
      throw std::invalid_argument("oracle: all targets need the same dimension");
    }
  };
  check(unconditional_);
  for (const auto& [c, g] : conditional_) check(g);
}

const GaussianCondition& GaussianOracleDenoiser::target(const Condition& c) const {
  if (c.is_null()) return unconditional_;
  const auto it = conditional_.find(c);
  if (it == conditional_.end()) {
    throw std::out_of_range("oracle has no target for condition " + c.to_string());
  }
  return it->second;
}

Latent GaussianOracleDenoiser::predict(std::span<const double> z, int t,
                                       const Condition& c) const {
  return gaussian_optimal_eps(z, schedule_.alpha_bar(t), target(c));
}

}  // namespace ctta::diffusion

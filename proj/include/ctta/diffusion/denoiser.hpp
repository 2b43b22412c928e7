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

#include <cstddef>
#include <span>
#include <vector>

#include "ctta/diffusion/condition.hpp"

namespace ctta::diffusion {

using Latent = std::vector<double>;

/// Noise predictor eps(z_t, t, c). Implementations must be deterministic and
/// safe to call concurrently once constructed.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual std::size_t dim() const = 0;
  virtual Latent predict(std::span<const double> z, int t, const Condition& c) const = 0;
};

}  // namespace ctta::diffusion

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

#include <cmath>
#include <sstream>

#include "ctta/diffusion/sampler.hpp"
#include "ctta/diffusion/toy_denoiser.hpp"

namespace ctta::diffusion {

std::vector<ToySample> make_toy_dataset(std::size_t count, const ToyDataConfig& config,
                                        std::uint64_t seed) {
  if (config.dim < 3) throw std::invalid_argument("toy dataset: dim must be at least 3");
  Rng rng(seed);
  std::vector<ToySample> out;
  out.reserve(count);
  const auto sign = [](int id) { return id == 0 ? -1.0 : 1.0; };
  for (std::size_t i = 0; i < count; ++i) {
    ToySample s;
    s.text = static_cast<int>(rng.below(2));
    s.timing = static_cast<int>(rng.below(2));
    s.phoneme = static_cast<int>(rng.below(2));
    s.z0.resize(config.dim);
    for (auto& v : s.z0) v = config.noise_std * rng.normal();
    s.z0[0] += config.text_offset * sign(s.text);
    s.z0[1] += config.timing_offset * sign(s.timing);
    s.z0[2] += config.phoneme_offset * sign(s.phoneme);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CurriculumStage> default_curriculum(int steps_per_stage) {
  return {
      {"text", steps_per_stage, {0.1, 0.9, 0.0, 0.0}},
      {"text+timing", steps_per_stage, {0.1, 0.45, 0.45, 0.0}},
      {"text+timing+phoneme", steps_per_stage, {0.1, 0.3, 0.3, 0.3}},
  };
}

double inverse_lr(double base_rate, long step, long total_steps, double gamma, double power) {
  const long warm = static_cast<long>(std::floor(0.99 * static_cast<double>(total_steps)));
  if (step < warm) return base_rate;
  const double t_prime = static_cast<double>(step - warm);
  return base_rate * std::pow(1.0 + t_prime / gamma, -power);
}

ValidationLoss validation_loss(const Denoiser& model, std::span<const ToySample> samples,
                               const NoiseSchedule& schedule, std::size_t draws,
                               std::uint64_t seed) {
  if (samples.empty()) throw std::invalid_argument("validation loss: no samples");
  Rng rng(seed);
  ValidationLoss out;
  const std::size_t dim = model.dim();
  for (std::size_t i = 0; i < draws; ++i) {
    const ToySample& s = samples[rng.below(samples.size())];
    const int t = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(schedule.steps())));
    const Latent eps = standard_normal(dim, rng);
    for (const double e : eps) out.zero_baseline += e * e;
    for (int level = 0; level < kConditionLevels; ++level) {
      const Condition c = s.condition(static_cast<ConditionLevel>(level));
      out.by_level[level] += diffusion_loss(model, s.z0, c, t, eps, schedule);
    }
  }
  const double n = static_cast<double>(draws == 0 ? 1 : draws);
  out.zero_baseline /= n;
  for (auto& v : out.by_level) v /= n;
  return out;
}

namespace {

std::string diverged_message(long step, double loss) {
  std::ostringstream os;
  os << "training diverged at step " << step << " (loss " << loss << ")";
  return os.str();
}

ConditionLevel draw_level(const std::array<double, kConditionLevels>& probs, Rng& rng) {
  double total = 0.0;
  for (const double p : probs) total += p;
  double u = rng.uniform() * total;
  for (int level = 0; level < kConditionLevels; ++level) {
    if (u < probs[level]) return static_cast<ConditionLevel>(level);
    u -= probs[level];
  }
  for (int level = kConditionLevels - 1; level >= 0; --level) {
    if (probs[level] > 0.0) return static_cast<ConditionLevel>(level);
  }
  throw std::invalid_argument("curriculum: stage has no positive level probability");
}

}  // namespace

TrainingDivergedError::TrainingDivergedError(long step, double loss)
    : std::runtime_error(diverged_message(step, loss)), step_(step) {}

TrainingResult train_toy_denoiser(std::span<const ToySample> train,
                                  std::span<const ToySample> validation,
                                  std::span<const CurriculumStage> curriculum,
                                  const NoiseSchedule& schedule, const TrainerConfig& config) {
  if (train.empty()) throw std::invalid_argument("toy trainer: empty training set");
  if (config.batch_size == 0) throw std::invalid_argument("toy trainer: batch size must be positive");
  const std::size_t dim = train.front().z0.size();
  for (const auto& s : train) {
    if (s.z0.size() != dim) throw ShapeError("toy trainer: inconsistent latent dimensions");
  }
  for (const auto& stage : curriculum) {
    if (stage.steps < 0) throw std::invalid_argument("curriculum: negative step count");
    for (const double p : stage.level_probs) {
      if (!(p >= 0.0)) throw std::invalid_argument("curriculum: negative level probability");
    }
  }

  ToyShape shape;
  shape.dim = static_cast<std::uint32_t>(dim);
  shape.hidden = config.hidden;
  shape.embed = config.embed;
  shape.time_features = config.time_features;
  shape.steps = static_cast<std::uint32_t>(schedule.steps());
  const auto id_range = [&](int ToySample::*field) {
    int hi = 1;
    for (const auto& s : train) hi = std::max(hi, s.*field + 1);
    for (const auto& s : validation) hi = std::max(hi, s.*field + 1);
    return static_cast<std::uint32_t>(hi);
  };
  shape.n_text = id_range(&ToySample::text);
  shape.n_timing = id_range(&ToySample::timing);
  shape.n_phoneme = id_range(&ToySample::phoneme);

  Rng rng(config.seed);
  ToyDenoiser model(shape, rng.next_u64());
  const std::uint64_t validation_seed = rng.next_u64();
  const std::size_t n = model.parameters().size();
  std::vector<double> grad(n), m(n, 0.0), v(n, 0.0);

  long total_steps = 0;
  for (const auto& stage : curriculum) total_steps += stage.steps;

  TrainingResult result{std::move(model), {}};
  ToyDenoiser& net = result.model;
  long step = 0;
  const double scale = 1.0 / static_cast<double>(config.batch_size);
  for (const auto& stage : curriculum) {
    for (int k = 0; k < stage.steps; ++k, ++step) {
      std::fill(grad.begin(), grad.end(), 0.0);
      const ConditionLevel level = draw_level(stage.level_probs, rng);
      double loss = 0.0;
      for (std::size_t b = 0; b < config.batch_size; ++b) {
        const ToySample& s = train[rng.below(train.size())];
        const int t =
            1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(schedule.steps())));
        const Latent eps = standard_normal(dim, rng);
        const Latent z = forward_noise(s.z0, t, eps, schedule);
        loss += net.accumulate_gradient(z, t, s.condition(level), eps, scale, grad);
      }
      loss *= scale;
      if (!std::isfinite(loss)) throw TrainingDivergedError(step, loss);

      const double lr = config.inverse_lr_tail
                            ? inverse_lr(config.learning_rate, step, total_steps,
                                         config.inverse_lr_gamma, config.inverse_lr_power)
                            : config.learning_rate;
      const double t_adam = static_cast<double>(step + 1);
      const double c1 = 1.0 - std::pow(config.beta1, t_adam);
      const double c2 = 1.0 - std::pow(config.beta2, t_adam);
      auto& p = net.mutable_parameters();
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
        v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        p[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + config.epsilon);
      }
    }
    StageReport report{stage.name, stage.steps, {}};
    if (!validation.empty()) {
      report.validation =
          validation_loss(net, validation, schedule, config.validation_draws, validation_seed);
    }
    result.stages.push_back(std::move(report));
  }
  return result;
}

}  // namespace ctta::diffusion

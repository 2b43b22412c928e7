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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctta/common/rng.hpp"
#include "ctta/diffusion/denoiser.hpp"
#include "ctta/diffusion/schedule.hpp"

namespace ctta::diffusion {

struct ToyShape {
  std::uint32_t dim = 8;
  std::uint32_t hidden = 64;
  std::uint32_t embed = 16;
  std::uint32_t time_features = 8;
  std::uint32_t n_text = 2;
  std::uint32_t n_timing = 2;
  std::uint32_t n_phoneme = 2;
  std::uint32_t steps = 100;

  std::size_t input_size() const { return dim + time_features + embed; }
  std::size_t parameter_count() const;

  bool operator==(const ToyShape&) const = default;
};

/// Two-hidden-layer tanh perceptron eps-predictor. The input is the noisy
/// latent, sinusoidal features of t / T and a condition embedding formed by
/// summing a per-level vector with the learned rows of every field the
/// condition reveals.
class ToyDenoiser final : public Denoiser {
 public:
  /// Small random initialization drawn from `seed`.
  ToyDenoiser(ToyShape shape, std::uint64_t seed);
  ToyDenoiser(ToyShape shape, std::vector<double> parameters);

  std::size_t dim() const override { return shape_.dim; }
  Latent predict(std::span<const double> z, int t, const Condition& c) const override;

  const ToyShape& shape() const { return shape_; }
  const std::vector<double>& parameters() const { return params_; }
  std::vector<double>& mutable_parameters() { return params_; }

  /// Accumulates d(loss)/d(params) into `grad` for loss = scale * ||eps - out||^2
  /// and returns the unscaled squared error.
  double accumulate_gradient(std::span<const double> z, int t, const Condition& c,
                             std::span<const double> eps, double scale,
                             std::span<double> grad) const;

 private:
  struct Forward;
  void forward(std::span<const double> z, int t, const Condition& c, Forward& f) const;
  void check_condition(const Condition& c) const;

  ToyShape shape_;
  std::vector<double> params_;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat little-endian binary: 8-byte magic "CTTATOY\0", u32 format version,
/// eight u32 shape fields (dim, hidden, embed, time_features, n_text,
/// n_timing, n_phoneme, steps), u64 parameter count, then float64 values.
void save_checkpoint(const ToyDenoiser& model, const std::filesystem::path& path);
ToyDenoiser load_checkpoint(const std::filesystem::path& path);

inline constexpr std::uint32_t kCheckpointVersion = 1;

// ---------------------------------------------------------------------------
// Training

/// One synthetic example: a latent and the ids of its text, timing and
/// phoneme attributes.
struct ToySample {
  Latent z0;
  int text = 0;
  int timing = 0;
  int phoneme = 0;

  Condition condition(ConditionLevel level) const {
    return Condition::at_level(level, text, timing, phoneme);
  }
};

/// z0 = text_offset * (+/-1 on axis 0) + timing_offset * (+/-1 on axis 1)
///      + phoneme_offset * (+/-1 on axis 2) + noise_std * N(0, I).
/// Attribute ids are uniform over {0, 1}; id 0 maps to -1, id 1 to +1.
struct ToyDataConfig {
  std::uint32_t dim = 8;
  double text_offset = 1.0;
  double timing_offset = 1.0;
  double phoneme_offset = 1.0;
  double noise_std = 0.5;
};

std::vector<ToySample> make_toy_dataset(std::size_t count, const ToyDataConfig& config,
                                        std::uint64_t seed);

/// A curriculum stage: how many optimizer steps, and the probability with
/// which each batch is conditioned at each level (indexed by ConditionLevel;
/// the null entry is the condition-dropout rate).
struct CurriculumStage {
  std::string name;
  int steps = 0;
  std::array<double, kConditionLevels> level_probs{};
};

/// text -> <text, timing> -> <text, timing, phoneme>, each with 10% dropout
/// to the null condition.
std::vector<CurriculumStage> default_curriculum(int steps_per_stage);

struct TrainerConfig {
  std::uint32_t hidden = 64;
  std::uint32_t embed = 16;
  std::uint32_t time_features = 8;
  std::size_t batch_size = 128;
  double learning_rate = 2e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Constant rate for the first 99% of the run, then
  /// lr * (1 + t' / gamma)^-power over the final 1%.
  bool inverse_lr_tail = false;
  double inverse_lr_gamma = 1e6;
  double inverse_lr_power = 0.5;
  std::size_t validation_draws = 4096;
  std::uint64_t seed = 0;
};

double inverse_lr(double base_rate, long step, long total_steps, double gamma = 1e6,
                  double power = 0.5);

/// Mean noise-prediction loss per condition level on fixed draws of (sample, t,
/// eps), with the loss of always predicting zero on the same draws.
struct ValidationLoss {
  std::array<double, kConditionLevels> by_level{};
  double zero_baseline = 0.0;
};

ValidationLoss validation_loss(const Denoiser& model, std::span<const ToySample> samples,
                               const NoiseSchedule& schedule, std::size_t draws,
                               std::uint64_t seed);

struct StageReport {
  std::string name;
  int steps = 0;
  ValidationLoss validation;
};

class TrainingDivergedError : public std::runtime_error {
 public:
  TrainingDivergedError(long step, double loss);
  long step() const { return step_; }

 private:
  long step_;
};

struct TrainingResult {
  ToyDenoiser model;
  std::vector<StageReport> stages;
};

/// Adam on the noise-prediction objective, stage after stage.
/// `validation` is scored after every stage.
TrainingResult train_toy_denoiser(std::span<const ToySample> train,
                                  std::span<const ToySample> validation,
                                  std::span<const CurriculumStage> curriculum,
                                  const NoiseSchedule& schedule,
                                  const TrainerConfig& config = {});

}  // namespace ctta::diffusion

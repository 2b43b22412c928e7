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

#include <cstdio>

#include <json.hpp>

#include "ctta/common/rng.hpp"
#include "ctta/pipeline/atomic_file.hpp"
#include "ctta/pipeline/sample.hpp"

namespace ctta::pipeline {

using nlohmann::ordered_json;

SampleResult cmd_sample(const diffusion::SamplerConfig& config, const std::filesystem::path& out_dir,
                        bool dump_trajectory) {
  config.validate();
  const auto denoiser = diffusion::make_denoiser(config);
  const auto schedule = config.noise_schedule();
  const auto guidance = config.guidance();
  guidance.validate(schedule);

  SampleResult result;
  std::string samples_text, steps_text = "chain\tstep\tphase\tcondition\tw\n", trajectory_text;
  for (std::size_t chain = 0; chain < config.chains; ++chain) {
    Rng rng(Rng::derive(config.seed, chain));
    const auto z_T = diffusion::standard_normal(denoiser->dim(), rng);
    const auto observer = [&](const diffusion::StepRecord& rec, std::span<const double> z) {
      char w[32];
      std::snprintf(w, sizeof w, "%g", rec.w);
      steps_text += std::to_string(chain) + '\t' + std::to_string(rec.t) + '\t' +
                    std::to_string(rec.phase) + '\t' + rec.condition.to_string() + '\t' + w + '\n';
      if (chain == 0) result.steps.push_back(rec);
      if (dump_trajectory) {
        ordered_json j;
        j["chain"] = chain;
        j["t"] = rec.t;
        j["z"] = std::vector<double>(z.begin(), z.end());
        trajectory_text += j.dump() + '\n';
      }
    };
    auto z0 = diffusion::sample_progressive(*denoiser, guidance, schedule, z_T, rng, config.mode,
                                            observer);
    ordered_json j;
    j["chain"] = chain;
    j["z0"] = z0;
    samples_text += j.dump() + '\n';
    result.samples.push_back(std::move(z0));
  }
  result.samples_path = out_dir / "samples.jsonl";
  result.steps_path = out_dir / "steps.tsv";
  write_file_atomic(result.samples_path, samples_text);
  write_file_atomic(result.steps_path, steps_text);
  if (dump_trajectory) write_file_atomic(out_dir / "trajectory.jsonl", trajectory_text);
  return result;
}

}  // namespace ctta::pipeline

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

// ctta: prompt tooling, scene simulation, sampling and evaluation.
//
// Exit codes: 0 success, 1 the input was read but rejected (invalid prompt,
// planner gave up), 2 usage, configuration or I/O errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctta/diffusion/toy_denoiser.hpp"
#include "ctta/dsl/prompt.hpp"
#include "ctta/lex/vocabulary.hpp"
#include "ctta/pipeline/atomic_file.hpp"
#include "ctta/pipeline/config.hpp"
#include "ctta/pipeline/evaluate.hpp"
#include "ctta/pipeline/ingest.hpp"
#include "ctta/pipeline/planner.hpp"
#include "ctta/pipeline/sample.hpp"
#include "ctta/pipeline/simulate.hpp"

namespace {

using namespace ctta;
using nlohmann::ordered_json;

constexpr int kRejected = 1;
constexpr int kInputError = 2;

// Prompts from a positional argument, or one per line from a file or stdin.
std::vector<std::string> read_prompts(const std::string& inline_text, const std::string& file) {
  if (!inline_text.empty()) return {inline_text};
  std::ifstream f;
  std::istream* in = &std::cin;
  if (!file.empty() && file != "-") {
    f.open(file);
    if (!f) throw std::runtime_error("cannot open " + file);
    in = &f;
  }
  std::vector<std::string> out;
  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

ordered_json prompt_json(const dsl::StructuredPrompt& p) {
  ordered_json j;
  j["caption"] = p.caption;
  j["events"] = ordered_json::array();
  for (const auto& e : p.events) {
    ordered_json ev;
    ev["description"] = e.description;
    ev["spans"] = ordered_json::array();
    for (const auto& s : e.spans) ev["spans"].push_back({s.start.seconds(), s.end.seconds()});
    if (e.speech) ev["speech"] = *e.speech;
    j["events"].push_back(std::move(ev));
  }
  return j;
}

std::string violation_text(const dsl::Violation& v) {
  return std::string(dsl::to_string(v.kind)) + ": " + v.message;
}

int run_parse(const std::string& text, const std::string& file) {
  int status = 0;
  const auto prompts = read_prompts(text, file);
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    if (prompts[i].find_first_not_of(" \t") == std::string::npos && text.empty()) continue;
    try {
      const auto p = dsl::parse(prompts[i]);
      const auto violations = dsl::validate(p);
      auto j = prompt_json(p);
      j["canonical"] = dsl::serialize(p);
      j["valid"] = violations.empty();
      j["violations"] = ordered_json::array();
      for (const auto& v : violations) j["violations"].push_back(violation_text(v));
      for (const auto& w : dsl::overlap_warnings(p)) {
        std::cerr << "line " << i + 1 << ": warning: " << violation_text(w) << "\n";
      }
      std::cout << j.dump() << "\n";
      if (!violations.empty()) status = kRejected;
    } catch (const dsl::ParseError& e) {
      std::cerr << "line " << i + 1 << ": " << e.what() << "\n";
      status = kRejected;
    }
  }
  return status;
}

int run_fmt(const std::string& text, const std::string& file) {
  int status = 0;
  const auto prompts = read_prompts(text, file);
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    try {
      std::cout << dsl::canonicalize(prompts[i]) << "\n";
    } catch (const dsl::ParseError& e) {
      std::cerr << "line " << i + 1 << ": " << e.what() << "\n";
      status = kRejected;
    } catch (const dsl::InvariantError& e) {
      std::cerr << "line " << i + 1 << ": " << e.what() << "\n";
      status = kRejected;
    }
  }
  return status;
}

struct TokenizeArgs {
  std::string text, file, lexicon, oov = "error", corpus, vocab_out;
};

int run_tokenize(const TokenizeArgs& a) {
  const auto lexicon =
      lex::load_lexicon_file(a.lexicon.empty() ? pipeline::default_lexicon_path() : std::filesystem::path(a.lexicon));
  const auto policy = lex::parse_oov_policy(a.oov);
  std::vector<dsl::StructuredPrompt> prompts;
  for (const auto& line : read_prompts(a.text, a.file)) {
    if (line.find_first_not_of(" \t") == std::string::npos && a.text.empty()) continue;
    prompts.push_back(dsl::parse(line));
  }
  std::string corpus;
  if (!a.corpus.empty()) {
    std::ifstream in(a.corpus);
    if (!in) throw std::runtime_error("cannot open " + a.corpus);
    std::ostringstream buf;
    buf << in.rdbuf();
    corpus = buf.str();
  } else {
    for (const auto& p : prompts) corpus += lex::base_text(p) + "\n";
  }
  const auto vocab = lex::build_vocab(std::string_view(corpus), lexicon);
  if (!a.vocab_out.empty()) {
    std::ostringstream os;
    vocab.write_tsv(os);
    pipeline::write_file_atomic(a.vocab_out, os.str());
  }
  for (const auto& p : prompts) {
    const auto t = lex::tokenize_prompt(p, vocab, lexicon, policy);
    ordered_json j;
    j["ids"] = t.tokens;
    j["tokens"] = ordered_json::array();
    for (const auto id : t.tokens) j["tokens"].push_back(vocab.token(id));
    std::cout << j.dump() << "\n";
  }
  return 0;
}

int run_train_toy(const std::string& out, int steps_per_stage, std::uint64_t seed, int T) {
  const diffusion::ToyDataConfig data;
  const auto train = diffusion::make_toy_dataset(4096, data, seed);
  const auto valid = diffusion::make_toy_dataset(1024, data, seed + 1);
  const auto schedule = diffusion::NoiseSchedule::cosine(T);
  diffusion::TrainerConfig cfg;
  cfg.seed = seed;
  const auto curriculum = diffusion::default_curriculum(steps_per_stage);
  auto result = diffusion::train_toy_denoiser(train, valid, curriculum, schedule, cfg);
  for (const auto& s : result.stages) {
    std::cout << s.name << "\tzero-baseline " << s.validation.zero_baseline;
    for (int l = 0; l < diffusion::kConditionLevels; ++l) {
      std::cout << "\t" << diffusion::to_string(static_cast<diffusion::ConditionLevel>(l)) << " "
                << s.validation.by_level[l];
    }
    std::cout << "\n";
  }
  diffusion::save_checkpoint(result.model, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ctta: structured prompts, scene simulation, guided sampling and SED scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ctta 0.1.0");

  std::string text, file;
  auto* parse_cmd = app.add_subcommand("parse", "Parse and validate structured prompts");
  parse_cmd->add_option("prompt", text, "Prompt text; otherwise one per line from --file/stdin");
  parse_cmd->add_option("-f,--file", file, "File with one prompt per line ('-' for stdin)");

  auto* fmt_cmd = app.add_subcommand("fmt", "Print prompts in canonical form");
  fmt_cmd->add_option("prompt", text, "Prompt text; otherwise one per line from --file/stdin");
  fmt_cmd->add_option("-f,--file", file, "File with one prompt per line ('-' for stdin)");

  TokenizeArgs tok;
  auto* tok_cmd = app.add_subcommand("tokenize", "Tokenize prompts with phoneme speech tokens");
  tok_cmd->add_option("prompt", tok.text, "Prompt text; otherwise one per line from --file/stdin");
  tok_cmd->add_option("-f,--file", tok.file, "File with one prompt per line ('-' for stdin)");
  tok_cmd->add_option("--lexicon", tok.lexicon, "CMU-format dictionary (default: shipped)");
  tok_cmd->add_option("--oov", tok.oov, "Out-of-vocabulary policy: error, skip, letter_fallback")
      ->capture_default_str();
  tok_cmd->add_option("--corpus", tok.corpus, "Text for the base vocabulary (default: the prompts)");
  tok_cmd->add_option("--vocab-out", tok.vocab_out, "Write the extended vocabulary as TSV");

  std::string config_path, out_dir;
  std::size_t count = 0;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  auto* sim_cmd = app.add_subcommand("simulate", "Compose simulated speech scenes");
  sim_cmd->add_option("-c,--config", config_path, "Pipeline config (JSON)")->required();
  sim_cmd->add_option("-n,--count", count, "Number of scenes")->required();
  sim_cmd->add_option("-o,--out", out_dir, "Output directory (default: config output_dir)");
  sim_cmd->add_option("--workers", workers, "Worker threads (default: config workers)");
  sim_cmd->add_option("--seed", seed, "Override dataset_seed");

  std::string annotations, transcripts, captions, ingest_out;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a manifest from timed annotations");
  ingest_cmd->add_option("--annotations", annotations, "TSV: clip_id, label, start, end")
      ->required();
  ingest_cmd->add_option("--transcripts", transcripts, "TSV: clip_id, event_index, transcript")
      ->required();
  ingest_cmd->add_option("--captions", captions, "TSV: clip_id, caption");
  ingest_cmd->add_option("-o,--out", ingest_out, "Output manifest (JSONL)")->required();

  std::string caption, speech, endpoint, model, side_file, plan_out;
  std::optional<double> timeout;
  auto* plan_cmd = app.add_subcommand("plan", "Ask an LLM endpoint for a structured prompt");
  plan_cmd->add_option("-c,--config", config_path, "Pipeline config (JSON)");
  plan_cmd->add_option("--caption", caption, "Free-form caption");
  plan_cmd->add_option("--speech", speech, "Words to be spoken");
  plan_cmd->add_option("--endpoint", endpoint, "Override planner.endpoint");
  plan_cmd->add_option("--model", model, "Override planner.model");
  plan_cmd->add_option("--timeout", timeout, "Override planner.timeout_seconds");
  plan_cmd->add_option("--side-file", side_file, "Where raw answers go if parsing fails")
      ->capture_default_str();
  plan_cmd->add_option("-o,--out", plan_out, "Also write the canonical prompt here");

  std::string sampler_path, schedule_name, mode_name, denoiser_name, checkpoint;
  std::optional<int> steps, t1;
  std::optional<double> w_low, w_high;
  std::optional<std::size_t> chains;
  bool trajectory = false;
  std::string sample_out = "sample_out";
  auto* sample_cmd = app.add_subcommand("sample", "Run progressively guided sampling");
  sample_cmd->add_option("-c,--config", sampler_path, "Sampler config (JSON)");
  sample_cmd->add_option("--steps", steps, "Total steps T");
  sample_cmd->add_option("--t1", t1, "Transition step; phase one covers t > t1");
  sample_cmd->add_option("--w-low", w_low, "Phase-one guidance scale");
  sample_cmd->add_option("--w-high", w_high, "Phase-two guidance scale");
  sample_cmd->add_option("--schedule", schedule_name, "cosine or linear");
  sample_cmd->add_option("--mode", mode_name, "ancestral or deterministic");
  sample_cmd->add_option("--denoiser", denoiser_name, "gaussian_oracle or toy_checkpoint");
  sample_cmd->add_option("--checkpoint", checkpoint, "Toy denoiser checkpoint");
  sample_cmd->add_option("--seed", seed, "Sampling seed");
  sample_cmd->add_option("--chains", chains, "Number of trajectories");
  sample_cmd->add_flag("--trajectory", trajectory, "Also dump every intermediate latent");
  sample_cmd->add_option("-o,--out", sample_out, "Output directory")->capture_default_str();

  std::string truth, pred, report_path;
  sed::EbConfig eb;
  bool macro = false;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predicted events against truth");
  eval_cmd->add_option("--truth", truth, "Truth manifest (JSONL) or TSV")->required();
  eval_cmd->add_option("--pred", pred, "Predicted manifest (JSONL) or TSV")->required();
  eval_cmd->add_option("--onset-collar", eb.onset_collar, "Seconds")->capture_default_str();
  eval_cmd->add_option("--offset-collar", eb.offset_collar_abs, "Seconds")->capture_default_str();
  eval_cmd->add_option("--offset-collar-rel", eb.offset_collar_rel, "Fraction of truth length")
      ->capture_default_str();
  eval_cmd->add_flag("--macro", macro, "Headline Eb as the macro average over classes");
  eval_cmd->add_option("--report", report_path, "Write the TSV report here");

  std::string train_out;
  int steps_per_stage = 600;
  int train_steps = 100;
  std::uint64_t train_seed = 0;
  auto* train_cmd = app.add_subcommand("train-toy", "Train the toy denoiser through the curriculum");
  train_cmd->add_option("-o,--out", train_out, "Checkpoint path")->required();
  train_cmd->add_option("--steps-per-stage", steps_per_stage, "Optimizer steps per stage")
      ->capture_default_str();
  train_cmd->add_option("--steps", train_steps, "Diffusion steps T")->capture_default_str();
  train_cmd->add_option("--seed", train_seed, "Seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version are successes; every usage error maps to kInputError.
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*parse_cmd) return run_parse(text, file);
    if (*fmt_cmd) return run_fmt(text, file);
    if (*tok_cmd) return run_tokenize(tok);

    if (*sim_cmd) {
      auto config = pipeline::load_config(config_path);
      if (seed) config.dataset_seed = *seed;
      if (workers) config.workers = std::max<std::size_t>(1, *workers);
      const auto res = pipeline::cmd_simulate(config, count, out_dir.empty() ? config.output_dir : std::filesystem::path(out_dir));
      std::cout << "wrote " << res.records.size() << " scenes to " << res.manifest.string() << "\n";
      return 0;
    }
    if (*ingest_cmd) {
      std::optional<std::filesystem::path> cap;
      if (!captions.empty()) cap = captions;
      const auto res = pipeline::cmd_ingest(annotations, transcripts, cap, ingest_out);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "wrote " << res.records.size() << " records to " << ingest_out << "\n";
      return 0;
    }
    if (*plan_cmd) {
      auto config = config_path.empty() ? pipeline::default_config() : pipeline::load_config(config_path);
      if (!endpoint.empty()) config.planner.endpoint = endpoint;
      if (!model.empty()) config.planner.model = model;
      if (timeout) config.planner.timeout_seconds = *timeout;
      if (caption.empty() && speech.empty()) {
        std::cerr << "plan: give --caption, --speech or both\n";
        return kInputError;
      }
      pipeline::PlanRequest req;
      if (!caption.empty()) req.caption = caption;
      if (!speech.empty()) req.speech = speech;
      try {
        const auto res = pipeline::cmd_plan(req, config.planner,
                                            side_file.empty() ? "planner_raw.txt" : side_file);
        for (const auto& w : res.warnings) std::cerr << "warning: " << violation_text(w) << "\n";
        std::cout << res.canonical << "\n";
        if (!plan_out.empty()) pipeline::write_file_atomic(plan_out, res.canonical + "\n");
        return 0;
      } catch (const pipeline::PlannerError& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == pipeline::PlannerError::Kind::kUnparseable ? kRejected : kInputError;
      }
    }
    if (*sample_cmd) {
      auto config = sampler_path.empty() ? diffusion::SamplerConfig{}
                                         : diffusion::load_sampler_config(sampler_path);
      if (steps) {
        config.steps = *steps;
        if (!t1 && config.t1 > config.steps) config.t1 = config.steps;
      }
      if (t1) config.t1 = *t1;
      if (w_low) config.w_low = *w_low;
      if (w_high) config.w_high = *w_high;
      if (!schedule_name.empty()) config.schedule = diffusion::parse_schedule_family(schedule_name);
      if (!mode_name.empty()) config.mode = diffusion::parse_reverse_mode(mode_name);
      if (!denoiser_name.empty()) config.denoiser = diffusion::parse_denoiser_kind(denoiser_name);
      if (!checkpoint.empty()) config.checkpoint = checkpoint;
      if (seed) config.seed = *seed;
      if (chains) config.chains = *chains;
      const auto res = pipeline::cmd_sample(config, sample_out, trajectory);
      pipeline::write_file_atomic(std::filesystem::path(sample_out) / "sampler_config.json",
                                  diffusion::sampler_config_to_json(config) + "\n");
      std::cout << "wrote " << res.samples.size() << " samples to " << res.samples_path.string()
                << "\n";
      return 0;
    }
    if (*eval_cmd) {
      if (!std::filesystem::exists(truth)) {
        std::cerr << "evaluate: truth file not found: " << truth << "\n";
        return kInputError;
      }
      if (!std::filesystem::exists(pred)) {
        std::cerr << "evaluate: prediction file not found: " << pred << "\n";
        return kInputError;
      }
      const auto report = pipeline::cmd_evaluate(truth, pred, eb, macro, report_path);
      std::cout << sed::headline(report) << "\n";
      return 0;
    }
    if (*train_cmd) return run_train_toy(train_out, steps_per_stage, train_seed, train_steps);
  } catch (const dsl::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kRejected;
  } catch (const std::exception& e) {
    std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

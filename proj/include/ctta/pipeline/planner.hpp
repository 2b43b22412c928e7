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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctta/dsl/prompt.hpp"
#include "ctta/pipeline/config.hpp"

namespace ctta::pipeline {

inline constexpr const char* kPlannerTemplateVersion = "v1";

struct ChatMessage {
  std::string role;
  std::string content;
};

/// One chat-completion round trip; returns the assistant text.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

class PlannerError : public std::runtime_error {
 public:
  enum class Kind { kNetwork, kAuth, kHttp, kMalformedResponse, kUnparseable };
  PlannerError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// POSTs `{"model", "messages", "temperature": 0}` to the configured URL and
/// reads choices[0].message.content. Sends a bearer token when one is set.
class HttpChatClient final : public ChatClient {
 public:
  /// Throws ConfigError when the endpoint is unset or not an http(s) URL.
  explicit HttpChatClient(PlannerConfig config);
  std::string complete(const std::vector<ChatMessage>& messages) override;

 private:
  PlannerConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

struct PlanRequest {
  std::optional<std::string> caption;
  std::optional<std::string> speech;
};

/// The three-stage planning instruction, template version v1.
std::string render_planner_instruction(const PlanRequest& request);
std::string render_repair_instruction(const std::string& error);

/// The text after the last line starting with "FINAL:", or else the last
/// line containing "@{". Surrounding backticks are removed.
std::optional<std::string> extract_structured_prompt(const std::string& response);

struct PlanResult {
  dsl::StructuredPrompt prompt;
  std::string canonical;
  int attempts = 0;
  std::vector<std::string> raw_responses;
  std::vector<dsl::Violation> warnings;
};

/// Asks once, and once more with a repair instruction if the answer does not
/// parse and validate. On final failure the raw answers go to `side_file`
/// (when non-empty) and PlannerError(kUnparseable) is thrown.
PlanResult plan(ChatClient& client, const PlanRequest& request,
                const std::filesystem::path& side_file = {});

/// plan() over HTTP. Fails with ConfigError before any network traffic if no
/// endpoint is configured.
PlanResult cmd_plan(const PlanRequest& request, const PlannerConfig& config,
                    const std::filesystem::path& side_file = {});

}  // namespace ctta::pipeline

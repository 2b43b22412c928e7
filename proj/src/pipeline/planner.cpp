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

#include <cctype>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "ctta/dsl/prompt.hpp"
#include "ctta/pipeline/atomic_file.hpp"
#include "ctta/pipeline/planner.hpp"

namespace ctta::pipeline {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_ticks(std::string_view s) {
  s = trim(s);
  while (!s.empty() && s.front() == '`') s.remove_prefix(1);
  while (!s.empty() && s.back() == '`') s.remove_suffix(1);
  return trim(s);
}

}  // namespace

HttpChatClient::HttpChatClient(PlannerConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint;
  if (url.empty()) throw ConfigError("planner: no endpoint configured (planner.endpoint)");
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("planner: endpoint is not a URL: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("planner: endpoint must use http or https: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (origin_.size() <= scheme_end + 3) throw ConfigError("planner: endpoint has no host: " + url);
}

std::string HttpChatClient::complete(const std::vector<ChatMessage>& messages) {
  json body = {{"model", config_.model}, {"messages", json::array()}, {"temperature", 0}};
  for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});

  httplib::Client client(origin_);
  const auto secs = static_cast<time_t>(config_.timeout_seconds);
  const auto usecs = static_cast<time_t>((config_.timeout_seconds - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  httplib::Headers headers;
  if (config_.api_key) headers.emplace("Authorization", "Bearer " + *config_.api_key);

  const auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw PlannerError(PlannerError::Kind::kNetwork,
                       "planner: request to " + config_.endpoint + " failed: " +
                           httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403) {
    throw PlannerError(PlannerError::Kind::kAuth, "planner: endpoint rejected credentials (HTTP " +
                                                      std::to_string(res->status) + "); check " +
                                                      kPlannerKeyEnv);
  }
  if (res->status < 200 || res->status >= 300) {
    throw PlannerError(PlannerError::Kind::kHttp,
                       "planner: HTTP " + std::to_string(res->status) + " from " + config_.endpoint);
  }
  try {
    const json j = json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw PlannerError(PlannerError::Kind::kMalformedResponse,
                       std::string("planner: unexpected response shape: ") + e.what());
  }
}

std::string render_planner_instruction(const PlanRequest& request) {
  const auto show = [](const std::optional<std::string>& v) {
    return v && !trim(*v).empty() ? *v : std::string("(none)");
  };
  std::ostringstream os;
  os << "[planner template " << kPlannerTemplateVersion << "]\n"
     << "Task: write a structured prompt for a 10 s audio clip.\n"
     << "Caption: " << show(request.caption) << "\n"
     << "Speech text: " << show(request.speech) << "\n\n"
     << "Work in three parts.\n"
     << "1. Events. One line per sound source: a label, then spans <start,end> in seconds with\n"
     << "0 <= start < end <= 10 and at most two decimals. List several spans on the line when the\n"
     << "source starts and stops more than once.\n"
     << "2. Words. For each speaker event, the exact words. Copy given speech text verbatim,\n"
     << "divided across turns if there are several. With no speech text, write one short line\n"
     << "a person in this place might say.\n"
     << "3. Prompt. A caption sentence (write one if none was given), then\n"
     << "@{label & <start,end> \"words\"} per event. Only speaker events get quoted words.\n"
     << "Inside quotes write \\\" for a quote and \\\\ for a backslash.\n\n"
     << "End with a single line:\n"
     << "FINAL: <structured prompt>\n";
  return os.str();
}

std::string render_repair_instruction(const std::string& error) {
  return "The structured prompt in your answer is invalid: " + error +
         "\nReply with a single line of the form FINAL: <structured prompt>, fixing the problem.";
}

std::optional<std::string> extract_structured_prompt(const std::string& response) {
  std::vector<std::string_view> lines;
  std::string_view rest = response;
  while (!rest.empty()) {
    const auto nl = rest.find('\n');
    lines.push_back(rest.substr(0, nl));
    if (nl == std::string_view::npos) break;
    rest.remove_prefix(nl + 1);
  }
  constexpr std::string_view kFinal = "FINAL:";
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    const auto line = strip_ticks(*it);
    if (line.starts_with(kFinal)) return std::string(strip_ticks(line.substr(kFinal.size())));
  }
  for (auto it = lines.rbegin(); it != lines.rend(); ++it) {
    if (it->find("@{") != std::string_view::npos) return std::string(strip_ticks(*it));
  }
  return std::nullopt;
}

namespace {

// Empty string on success, else the reason the answer was rejected.
std::string try_accept(const std::string& raw, PlanResult& result) {
  const auto text = extract_structured_prompt(raw);
  if (!text) return "no line starting with FINAL: and no @{...} block was found";
  try {
    dsl::StructuredPrompt prompt = dsl::parse(*text);
    const auto violations = dsl::validate(prompt);
    if (!violations.empty()) return violations.front().message;
    if (prompt.events.empty()) return "the prompt has no event blocks";
    result.canonical = dsl::serialize(prompt);
    result.warnings = dsl::overlap_warnings(prompt);
    result.prompt = std::move(prompt);
    return {};
  } catch (const dsl::ParseError& e) {
    return e.what();
  }
}

}  // namespace

PlanResult plan(ChatClient& client, const PlanRequest& request,
                const std::filesystem::path& side_file) {
  PlanResult result;
  std::vector<ChatMessage> messages{{"user", render_planner_instruction(request)}};
  std::string error;
  for (int attempt = 1; attempt <= 2; ++attempt) {
    result.attempts = attempt;
    const std::string raw = client.complete(messages);
    result.raw_responses.push_back(raw);
    error = try_accept(raw, result);
    if (error.empty()) return result;
    messages.push_back({"assistant", raw});
    messages.push_back({"user", render_repair_instruction(error)});
  }
  std::string message = "planner: response could not be parsed after 2 attempts: " + error;
  if (!side_file.empty()) {
    std::string dump;
    for (std::size_t i = 0; i < result.raw_responses.size(); ++i) {
      dump += "=== attempt " + std::to_string(i + 1) + " ===\n" + result.raw_responses[i] + "\n";
    }
    write_file_atomic(side_file, dump);
    message += " (raw responses saved to " + side_file.string() + ")";
  }
  throw PlannerError(PlannerError::Kind::kUnparseable, message);
}

PlanResult cmd_plan(const PlanRequest& request, const PlannerConfig& config,
                    const std::filesystem::path& side_file) {
  HttpChatClient client(config);
  return plan(client, request, side_file);
}

}  // namespace ctta::pipeline

// Copyright 2026 The NLS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nls/provider.hpp"

#include <cstdio>
#include <system_error>

#include <nlohmann/json.hpp>

#include "nls/error.hpp"

namespace nls {

using ordered_json = nlohmann::ordered_json;

void ValidateRequest(const CompletionRequest& request) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kInvalidRequest, m); };
  if (request.model_id.empty()) fail("request has no model id");
  if (request.messages.empty() || request.messages.front().role != Role::kSystem) {
    fail("first message must be the system prompt");
  }
  bool has_user = false;
  for (const auto& m : request.messages) {
    if (m.content.empty()) fail("dispatched messages must not be empty");
    has_user = has_user || m.role == Role::kUser;
  }
  if (!has_user) fail("request carries no user message");
  if (request.temperature && (*request.temperature < 0.0 || *request.temperature > 2.0)) {
    fail("temperature must lie in [0, 2]");
  }
}

std::string SerializeRequestBody(const CompletionRequest& request) {
  ordered_json body;
  body["model"] = request.model_id;
  ordered_json messages = ordered_json::array();
  for (const auto& m : request.messages) {
    ordered_json msg;
    msg["role"] = RoleName(m.role);
    msg["content"] = m.content;
    messages.push_back(std::move(msg));
  }
  body["messages"] = std::move(messages);
  if (request.temperature) body["temperature"] = *request.temperature;
  return body.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

CompletionResponse ParseResponseBody(std::string_view body, std::string_view requested_model) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorCode::kMalformedResponse, "provider response is not JSON");
  }
  const nlohmann::json* content = nullptr;
  if (doc.is_object()) {
    auto choices = doc.find("choices");
    if (choices != doc.end() && choices->is_array() && !choices->empty()) {
      const auto& first = (*choices)[0];
      if (first.is_object()) {
        auto msg = first.find("message");
        if (msg != first.end() && msg->is_object()) {
          auto c = msg->find("content");
          if (c != msg->end() && c->is_string()) content = &*c;
        }
      }
    }
  }
  if (content == nullptr) {
    throw Error(ErrorCode::kMalformedResponse,
                "provider response lacks choices[0].message.content");
  }
  CompletionResponse out;
  out.content = content->get<std::string>();
  out.model_id = std::string(requested_model);
  if (auto m = doc.find("model"); m != doc.end() && m->is_string()) out.model_id = m->get<std::string>();
  if (auto u = doc.find("usage"); u != doc.end() && u->is_object()) {
    auto pt = u->find("prompt_tokens");
    auto ct = u->find("completion_tokens");
    if (pt != u->end() && ct != u->end() && pt->is_number_unsigned() && ct->is_number_unsigned()) {
      out.usage = TokenUsage{pt->get<std::uint64_t>(), ct->get<std::uint64_t>()};
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ReplayProvider

ReplayProvider::ReplayProvider(std::filesystem::path fixture_dir, std::size_t first_turn)
    : dir_(std::move(fixture_dir)), next_(first_turn) {}

std::filesystem::path ReplayProvider::FixturePath(const std::filesystem::path& dir,
                                                  std::size_t turn) {
  char name[32];
  std::snprintf(name, sizeof(name), "turn_%03zu.json", turn);
  return dir / name;
}

std::size_t ReplayProvider::next_turn() const {
  std::lock_guard<std::mutex> lock(mu_);
  return next_;
}

CompletionResponse ReplayProvider::Complete(const ProviderConfig& /*config*/,
                                            const CompletionRequest& request) {
  ValidateRequest(request);
  std::size_t turn;
  {
    std::lock_guard<std::mutex> lock(mu_);
    turn = next_;
    const auto path = FixturePath(dir_, turn);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
      if (turn == 0 || !std::filesystem::exists(FixturePath(dir_, 0), ec)) {
        throw Error(ErrorCode::kFixtureMissing, "no replay fixture " + path.string());
      }
      throw Error(ErrorCode::kFixtureExhausted,
                  "replay fixtures exhausted after " + std::to_string(turn) + " turn(s) in " +
                      dir_.string());
    }
    ++next_;
  }
  const auto path = FixturePath(dir_, turn);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorCode::kMalformedResponse, "replay fixture is not JSON: " + path.string());
  }
  auto c = doc.is_object() ? doc.find("content") : doc.end();
  if (!doc.is_object() || c == doc.end() || !c->is_string()) {
    throw Error(ErrorCode::kMalformedResponse,
                "replay fixture lacks a string \"content\": " + path.string());
  }
  CompletionResponse out;
  out.content = c->get<std::string>();
  out.model_id = request.model_id;
  return out;
}

}  // namespace nls

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

// Chat-completion backends.
//
// Two implementations share the Provider interface: HttpProvider speaks the
// OpenAI-compatible `POST {base_url}/chat/completions` dialect, and
// ReplayProvider serves canned `turn_NNN.json` fixtures so the whole pipeline
// can run offline and deterministically.

#ifndef NLS_PROVIDER_HPP_
#define NLS_PROVIDER_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nls/session.hpp"

namespace nls {

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct CompletionRequest {
  std::string model_id;
  std::vector<ChatMessage> messages;
  std::optional<double> temperature;  // unset -> provider default
};

struct TokenUsage {
  std::uint64_t prompt_tokens = 0;
  std::uint64_t completion_tokens = 0;

  bool operator==(const TokenUsage&) const = default;
};

struct CompletionResponse {
  std::string content;  // verbatim assistant message
  std::string model_id;
  std::optional<TokenUsage> usage;
};

// messages[0] must be the system prompt, at least one user message must be
// present, dispatched messages must be non-empty and temperature must lie in
// [0, 2]. Throws Error(kInvalidRequest).
void ValidateRequest(const CompletionRequest& request);

// Stable field order: model, messages, temperature (omitted when unset).
std::string SerializeRequestBody(const CompletionRequest& request);

// Extracts choices[0].message.content. Throws kMalformedResponse.
CompletionResponse ParseResponseBody(std::string_view body, std::string_view requested_model);

class Provider {
 public:
  virtual ~Provider() = default;
  virtual CompletionResponse Complete(const ProviderConfig& config,
                                      const CompletionRequest& request) = 0;
};

struct RetryPolicy {
  // Retries after the first attempt; only Transport and RateLimited retry.
  int max_retries = 3;
  std::vector<std::chrono::milliseconds> backoff = {std::chrono::seconds(1),
                                                    std::chrono::seconds(2),
                                                    std::chrono::seconds(4)};
  // Injected so tests do not sleep for real.
  std::function<void(std::chrono::milliseconds)> sleep;
};

class HttpProvider : public Provider {
 public:
  explicit HttpProvider(RetryPolicy policy = {},
                        std::chrono::seconds timeout = std::chrono::seconds(120));

  CompletionResponse Complete(const ProviderConfig& config,
                              const CompletionRequest& request) override;

 private:
  CompletionResponse Attempt(const ProviderConfig& config, const std::string& body,
                             const std::string& model,
                             std::optional<std::chrono::milliseconds>& retry_after);

  RetryPolicy policy_;
  std::chrono::seconds timeout_;
};

// Serves turn_000.json, turn_001.json, ... in call order. `first_turn`
// skips fixtures already consumed by earlier invocations on the same session.
class ReplayProvider : public Provider {
 public:
  explicit ReplayProvider(std::filesystem::path fixture_dir, std::size_t first_turn = 0);

  CompletionResponse Complete(const ProviderConfig& config,
                              const CompletionRequest& request) override;

  std::size_t next_turn() const;

  static std::filesystem::path FixturePath(const std::filesystem::path& dir, std::size_t turn);

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::size_t next_;
};

}  // namespace nls

#endif  // NLS_PROVIDER_HPP_

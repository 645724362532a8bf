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

#include <charconv>
#include <thread>

#include <httplib.h>

#include "nls/error.hpp"
#include "nls/provider.hpp"

namespace nls {

namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint SplitBaseUrl(std::string_view base_url) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "base_url must start with http:// or https://: " + std::string(base_url));
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.scheme_host_port = std::string(base_url.substr(0, path_start));
  std::string prefix =
      path_start == std::string_view::npos ? std::string() : std::string(base_url.substr(path_start));
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  ep.path = prefix + "/chat/completions";
  return ep;
}

std::optional<std::chrono::milliseconds> ParseRetryAfter(const httplib::Result& res) {
  if (!res->has_header("Retry-After")) return std::nullopt;
  const std::string v = res->get_header_value("Retry-After");
  long long seconds = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), seconds);
  if (ec != std::errc() || seconds < 0) return std::nullopt;
  return std::chrono::seconds(seconds);
}

bool Retryable(ErrorCode code) {
  return code == ErrorCode::kTransport || code == ErrorCode::kRateLimited;
}

}  // namespace

HttpProvider::HttpProvider(RetryPolicy policy, std::chrono::seconds timeout)
    : policy_(std::move(policy)), timeout_(timeout) {
  if (!policy_.sleep) {
    policy_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

CompletionResponse HttpProvider::Complete(const ProviderConfig& config,
                                          const CompletionRequest& request) {
  if (!config.has_key()) throw Error(ErrorCode::kNotConfigured, "no API key configured");
  ValidateRequest(request);
  const std::string body = SerializeRequestBody(request);

  for (int attempt = 0;; ++attempt) {
    std::optional<std::chrono::milliseconds> retry_after;
    try {
      return Attempt(config, body, request.model_id, retry_after);
    } catch (const Error& e) {
      if (!Retryable(e.code()) || attempt >= policy_.max_retries) throw;
      std::chrono::milliseconds wait{0};
      if (retry_after) {
        wait = *retry_after;
      } else if (!policy_.backoff.empty()) {
        const auto i = std::min<std::size_t>(static_cast<std::size_t>(attempt),
                                             policy_.backoff.size() - 1);
        wait = policy_.backoff[i];
      }
      policy_.sleep(wait);
    }
  }
}

CompletionResponse HttpProvider::Attempt(const ProviderConfig& config, const std::string& body,
                                         const std::string& model,
                                         std::optional<std::chrono::milliseconds>& retry_after) {
  const Endpoint ep = SplitBaseUrl(config.base_url);
  httplib::Client client(ep.scheme_host_port);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  client.set_bearer_token_auth(config.api_key);

  auto res = client.Post(ep.path, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::kTransport,
                "request to " + ep.scheme_host_port + " failed: " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 200) return ParseResponseBody(res->body, model);
  if (status == 401 || status == 403) {
    throw Error(ErrorCode::kAuthFailed,
                "provider rejected the API key (HTTP " + std::to_string(status) + ")");
  }
  if (status == 429) {
    retry_after = ParseRetryAfter(res);
    throw Error(ErrorCode::kRateLimited, "provider rate limit hit (HTTP 429)");
  }
  if (status >= 500) {
    throw Error(ErrorCode::kTransport, "provider server error (HTTP " + std::to_string(status) + ")");
  }
  throw Error(ErrorCode::kProviderRejected,
              "provider rejected the request (HTTP " + std::to_string(status) + "): " + res->body);
}

}  // namespace nls

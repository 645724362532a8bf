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

// Configuration and lifecycle of one design conversation.
//
// A session moves through a fixed command order: an API key and a model are
// configured, one initial prompt starts generation, and any number of
// adjustments follow. Every operation takes the state by value and returns
// the successor state; nothing here talks to the network.
//
// Sessions persist as JSON Lines. The first line is a header record
//
//   {"schema":"nls-session","version":1,"id":...,"created":...,
//    "config":{...},"artifact_dir":...,"artifacts":[...]}
//
// and each following line is one transcript entry with the fields
// index, role, kind, content, timestamp. The API key is never written; the
// header only records that the key lives in the config store.

#ifndef NLS_SESSION_HPP_
#define NLS_SESSION_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nls/artifact.hpp"
#include "nls/text.hpp"

namespace nls {

inline constexpr int kSessionSchemaVersion = 1;
inline constexpr std::string_view kDefaultBaseUrl = "https://api.openai.com/v1";

struct ProviderConfig {
  std::string api_key;
  std::string base_url = std::string(kDefaultBaseUrl);
  std::string model_category;
  std::string model_id;

  bool has_key() const { return !api_key.empty(); }
  bool has_model() const { return !model_category.empty() && !model_id.empty(); }

  bool operator==(const ProviderConfig&) const = default;
};

enum class Role { kSystem, kUser, kAssistant };
enum class EntryKind { kInitialPrompt, kAdjustment, kResponse, kLedgerUpdate };

std::string_view RoleName(Role role);
std::optional<Role> ParseRole(std::string_view name);
std::string_view EntryKindName(EntryKind kind);
std::optional<EntryKind> ParseEntryKind(std::string_view name);

struct TranscriptEntry {
  std::size_t index = 0;
  Role role = Role::kUser;
  EntryKind kind = EntryKind::kInitialPrompt;
  std::string content;
  Timestamp timestamp{};

  bool operator==(const TranscriptEntry&) const = default;
};

struct SessionState {
  std::string id;
  ProviderConfig config;
  std::vector<TranscriptEntry> transcript;
  std::vector<HdlArtifact> artifacts;
  Timestamp created{};
  // Where generated HDL files are written, relative to the session file
  // unless absolute. Empty means "not chosen yet".
  std::string artifact_dir;

  bool operator==(const SessionState&) const = default;

  bool started() const;
  std::size_t adjustment_count() const;
  std::size_t response_count() const;
  const TranscriptEntry* initial_prompt() const;
};

// Category name -> ordered model ids. Categories keep their load order.
class ModelCatalog {
 public:
  using Category = std::pair<std::string, std::vector<std::string>>;

  ModelCatalog() = default;
  // Throws Error(kInvalidCatalog) if a model id appears twice.
  explicit ModelCatalog(std::vector<Category> categories);

  // Seeded with the models the tool was first evaluated against.
  static ModelCatalog Default();
  // {"categories": {"OpenAI-o1": ["OpenAI-o1-preview", ...], ...}}
  static ModelCatalog FromJson(std::string_view json);
  static ModelCatalog Load(const std::filesystem::path& path);
  std::string ToJson() const;

  const std::vector<Category>& categories() const { return categories_; }
  const std::vector<std::string>* Find(std::string_view category) const;

 private:
  std::vector<Category> categories_;
};

SessionState NewSession(Timestamp now = Now());

// Replaces any previously stored key. Throws kEmptyKey for blank keys.
SessionState SetApiKey(SessionState state, std::string_view key);

// Throws kUnknownCategory / kUnknownModel.
SessionState SelectModel(SessionState state, const ModelCatalog& catalog,
                         std::string_view category, std::string_view model);

// Appends the initial prompt. Throws kNotConfigured when the key or model
// is missing and kAlreadyStarted on a second call.
SessionState BeginGeneration(SessionState state, std::string_view prompt,
                             Timestamp now = Now());

// Every post-initial user message counts as one adjustment.
// Throws kNoInitialPrompt before BeginGeneration.
SessionState AddAdjustment(SessionState state, std::string_view note,
                           Timestamp now = Now());

SessionState AppendResponse(SessionState state, std::string content,
                            Timestamp now = Now());
SessionState AppendLedgerSnapshot(SessionState state, std::string system_prompt,
                                  Timestamp now = Now());

// Message for kNotConfigured naming every missing step, or nullopt when
// generation may proceed.
std::optional<std::string> MissingConfigurationSteps(const ProviderConfig& config);

// Validates transcript and artifact invariants; throws kInvalidArgument.
void CheckSessionInvariants(const SessionState& state);

std::string SerializeSession(const SessionState& state);
// Throws kIo on malformed input and kSchemaVersionMismatch on an unknown
// schema version.
SessionState ParseSession(std::string_view text);
void SaveSession(const SessionState& state, const std::filesystem::path& path);
SessionState LoadSession(const std::filesystem::path& path);

// Key-value config document holding api_key, base_url, model_category and
// model_id. Written with owner-only permissions.
namespace config_store {

// $NLS_HOME, else $XDG_CONFIG_HOME/nls, else $HOME/.config/nls.
std::filesystem::path DefaultDirectory(const std::map<std::string, std::string>& env);

ProviderConfig Load(const std::filesystem::path& path);  // missing file -> defaults
void Save(const ProviderConfig& config, const std::filesystem::path& path);

}  // namespace config_store

// Exclusive advisory lock on a session file, held for the object lifetime.
// Throws kSessionLocked when another holder exists.
class SessionLock {
 public:
  explicit SessionLock(const std::filesystem::path& session_path);
  ~SessionLock();
  SessionLock(const SessionLock&) = delete;
  SessionLock& operator=(const SessionLock&) = delete;

  const std::filesystem::path& path() const { return lock_path_; }

 private:
  std::filesystem::path lock_path_;
};

}  // namespace nls

#endif  // NLS_SESSION_HPP_

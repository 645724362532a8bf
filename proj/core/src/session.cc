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

#include "nls/session.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <random>
#include <set>
#include <system_error>

#include <nlohmann/json.hpp>

#include "nls/error.hpp"

namespace nls {

using ordered_json = nlohmann::ordered_json;

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kSystem: return "system";
    case Role::kUser: return "user";
    case Role::kAssistant: return "assistant";
  }
  return "user";
}

std::optional<Role> ParseRole(std::string_view name) {
  if (name == "system") return Role::kSystem;
  if (name == "user") return Role::kUser;
  if (name == "assistant") return Role::kAssistant;
  return std::nullopt;
}

std::string_view EntryKindName(EntryKind kind) {
  switch (kind) {
    case EntryKind::kInitialPrompt: return "initial_prompt";
    case EntryKind::kAdjustment: return "adjustment";
    case EntryKind::kResponse: return "response";
    case EntryKind::kLedgerUpdate: return "ledger_update";
  }
  return "response";
}

std::optional<EntryKind> ParseEntryKind(std::string_view name) {
  if (name == "initial_prompt") return EntryKind::kInitialPrompt;
  if (name == "adjustment") return EntryKind::kAdjustment;
  if (name == "response") return EntryKind::kResponse;
  if (name == "ledger_update") return EntryKind::kLedgerUpdate;
  return std::nullopt;
}

bool SessionState::started() const { return initial_prompt() != nullptr; }

std::size_t SessionState::adjustment_count() const {
  return static_cast<std::size_t>(std::count_if(
      transcript.begin(), transcript.end(),
      [](const TranscriptEntry& e) { return e.kind == EntryKind::kAdjustment; }));
}

std::size_t SessionState::response_count() const {
  return static_cast<std::size_t>(std::count_if(
      transcript.begin(), transcript.end(),
      [](const TranscriptEntry& e) { return e.kind == EntryKind::kResponse; }));
}

const TranscriptEntry* SessionState::initial_prompt() const {
  for (const auto& e : transcript) {
    if (e.kind == EntryKind::kInitialPrompt) return &e;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// ModelCatalog

ModelCatalog::ModelCatalog(std::vector<Category> categories)
    : categories_(std::move(categories)) {
  std::set<std::string> seen;
  for (const auto& [name, models] : categories_) {
    if (name.empty()) throw Error(ErrorCode::kInvalidCatalog, "empty category name");
    for (const auto& m : models) {
      if (!seen.insert(m).second) {
        throw Error(ErrorCode::kInvalidCatalog, "duplicate model id in catalog: " + m);
      }
    }
  }
}

ModelCatalog ModelCatalog::Default() {
  return ModelCatalog({
      {"GPT-4o", {"ChatGPT-4o"}},
      {"OpenAI-o1", {"OpenAI-o1-preview", "OpenAI-o1-mini"}},
      {"Claude-3.5", {"Claude-3.5-sonnet"}},
      {"Llama-3.1", {"Llama-3.1"}},
  });
}

ModelCatalog ModelCatalog::FromJson(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::kInvalidCatalog, std::string("catalog is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("categories") || !doc["categories"].is_object()) {
    throw Error(ErrorCode::kInvalidCatalog, "catalog needs a \"categories\" object");
  }
  std::vector<Category> cats;
  for (const auto& [name, models] : doc["categories"].items()) {
    if (!models.is_array()) {
      throw Error(ErrorCode::kInvalidCatalog, "category " + name + " must list model ids");
    }
    Category cat{name, {}};
    for (const auto& m : models) {
      if (!m.is_string() || m.get<std::string>().empty()) {
        throw Error(ErrorCode::kInvalidCatalog, "category " + name + " has a non-string model id");
      }
      cat.second.push_back(m.get<std::string>());
    }
    cats.push_back(std::move(cat));
  }
  return ModelCatalog(std::move(cats));
}

ModelCatalog ModelCatalog::Load(const std::filesystem::path& path) {
  return FromJson(ReadFile(path));
}

std::string ModelCatalog::ToJson() const {
  ordered_json cats = ordered_json::object();
  for (const auto& [name, models] : categories_) cats[name] = models;
  ordered_json doc;
  doc["categories"] = std::move(cats);
  return doc.dump(2) + "\n";
}

const std::vector<std::string>* ModelCatalog::Find(std::string_view category) const {
  for (const auto& [name, models] : categories_) {
    if (name == category) return &models;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Lifecycle

namespace {

std::string RandomSessionId() {
  std::random_device rd;
  std::uniform_int_distribution<unsigned> byte(0, 255);
  std::string id;
  char buf[3];
  for (int i = 0; i < 16; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", byte(rd));
    id += buf;
  }
  return id;
}

SessionState Append(SessionState state, Role role, EntryKind kind, std::string content,
                    Timestamp now) {
  TranscriptEntry e;
  e.index = state.transcript.size();
  e.role = role;
  e.kind = kind;
  e.content = std::move(content);
  e.timestamp = now;
  state.transcript.push_back(std::move(e));
  return state;
}

}  // namespace

SessionState NewSession(Timestamp now) {
  SessionState s;
  s.id = RandomSessionId();
  s.created = now;
  return s;
}

SessionState SetApiKey(SessionState state, std::string_view key) {
  if (Trim(key).empty()) throw Error(ErrorCode::kEmptyKey, "API key is empty");
  state.config.api_key = std::string(key);
  return state;
}

SessionState SelectModel(SessionState state, const ModelCatalog& catalog,
                         std::string_view category, std::string_view model) {
  const auto* models = catalog.Find(category);
  if (models == nullptr) {
    throw Error(ErrorCode::kUnknownCategory,
                "unknown model category '" + std::string(category) + "'");
  }
  if (std::find(models->begin(), models->end(), model) == models->end()) {
    throw Error(ErrorCode::kUnknownModel, "model '" + std::string(model) +
                                              "' is not listed under category '" +
                                              std::string(category) + "'");
  }
  state.config.model_category = std::string(category);
  state.config.model_id = std::string(model);
  return state;
}

std::optional<std::string> MissingConfigurationSteps(const ProviderConfig& config) {
  std::vector<std::string> missing;
  if (!config.has_key()) missing.emplace_back("add-key (no API key stored)");
  if (!config.has_model()) missing.emplace_back("select-model (no model selected)");
  if (missing.empty()) return std::nullopt;
  std::string msg = "not configured: run ";
  for (std::size_t i = 0; i < missing.size(); ++i) {
    if (i > 0) msg += " and ";
    msg += missing[i];
  }
  msg += " before generate";
  return msg;
}

SessionState BeginGeneration(SessionState state, std::string_view prompt, Timestamp now) {
  if (auto missing = MissingConfigurationSteps(state.config)) {
    throw Error(ErrorCode::kNotConfigured, *missing);
  }
  if (state.started()) {
    throw Error(ErrorCode::kAlreadyStarted, "session already has an initial prompt");
  }
  if (Trim(prompt).empty()) throw Error(ErrorCode::kInvalidArgument, "prompt is empty");
  return Append(std::move(state), Role::kUser, EntryKind::kInitialPrompt, std::string(prompt),
                now);
}

SessionState AddAdjustment(SessionState state, std::string_view note, Timestamp now) {
  if (!state.started()) {
    throw Error(ErrorCode::kNoInitialPrompt, "no initial prompt: run generate first");
  }
  if (Trim(note).empty()) throw Error(ErrorCode::kInvalidArgument, "adjustment note is empty");
  return Append(std::move(state), Role::kUser, EntryKind::kAdjustment, std::string(note), now);
}

SessionState AppendResponse(SessionState state, std::string content, Timestamp now) {
  return Append(std::move(state), Role::kAssistant, EntryKind::kResponse, std::move(content),
                now);
}

SessionState AppendLedgerSnapshot(SessionState state, std::string system_prompt,
                                  Timestamp now) {
  return Append(std::move(state), Role::kSystem, EntryKind::kLedgerUpdate,
                std::move(system_prompt), now);
}

void CheckSessionInvariants(const SessionState& s) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kInvalidArgument, m); };
  std::optional<std::size_t> initial;
  bool seen_user = false;
  for (std::size_t i = 0; i < s.transcript.size(); ++i) {
    const auto& e = s.transcript[i];
    if (e.index != i) fail("transcript indices are not contiguous at " + std::to_string(i));
    const bool user_kind = e.kind == EntryKind::kInitialPrompt || e.kind == EntryKind::kAdjustment;
    const Role expected = user_kind ? Role::kUser
                          : e.kind == EntryKind::kResponse ? Role::kAssistant
                                                           : Role::kSystem;
    if (e.role != expected) fail("entry " + std::to_string(i) + " has a role that does not match its kind");
    if (e.kind == EntryKind::kInitialPrompt) {
      if (initial) fail("more than one initial prompt");
      if (seen_user) fail("initial prompt is not the first user entry");
      initial = i;
    }
    if (e.kind == EntryKind::kAdjustment && !initial) fail("adjustment precedes the initial prompt");
    if (e.role == Role::kUser) seen_user = true;
  }
  for (const auto& a : s.artifacts) {
    if (a.response_index >= s.transcript.size() ||
        s.transcript[a.response_index].kind != EntryKind::kResponse) {
      fail("artifact " + a.module_name + " references a missing response entry");
    }
  }
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

std::string DumpLine(const ordered_json& j) {
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kIo, "malformed session file: " + what);
}

const ordered_json& Field(const ordered_json& obj, const char* name) {
  auto it = obj.find(name);
  if (it == obj.end()) Malformed(std::string("missing field '") + name + "'");
  return *it;
}

std::string StringField(const ordered_json& obj, const char* name) {
  const auto& v = Field(obj, name);
  if (!v.is_string()) Malformed(std::string("field '") + name + "' is not a string");
  return v.get<std::string>();
}

Timestamp TimeField(const ordered_json& obj, const char* name) {
  auto t = ParseRfc3339(StringField(obj, name));
  if (!t) Malformed(std::string("field '") + name + "' is not an RFC 3339 timestamp");
  return *t;
}

}  // namespace

std::string SerializeSession(const SessionState& s) {
  ordered_json header;
  header["schema"] = "nls-session";
  header["version"] = kSessionSchemaVersion;
  header["id"] = s.id;
  header["created"] = FormatRfc3339(s.created);
  ordered_json cfg;
  cfg["base_url"] = s.config.base_url;
  cfg["model_category"] = s.config.model_category;
  cfg["model_id"] = s.config.model_id;
  cfg["api_key"] = "config-store";
  header["config"] = std::move(cfg);
  header["artifact_dir"] = s.artifact_dir;
  ordered_json arts = ordered_json::array();
  for (const auto& a : s.artifacts) {
    ordered_json j;
    j["module_name"] = a.module_name;
    j["language"] = HdlLanguageName(a.language);
    j["response_index"] = a.response_index;
    j["text"] = a.text;
    arts.push_back(std::move(j));
  }
  header["artifacts"] = std::move(arts);

  std::string out = DumpLine(header);
  for (const auto& e : s.transcript) {
    ordered_json j;
    j["index"] = e.index;
    j["role"] = RoleName(e.role);
    j["kind"] = EntryKindName(e.kind);
    j["content"] = e.content;
    j["timestamp"] = FormatRfc3339(e.timestamp);
    out += DumpLine(j);
  }
  return out;
}

SessionState ParseSession(std::string_view text) {
  if (text.empty()) Malformed("file is empty");
  if (text.back() != '\n') Malformed("file is truncated (no trailing newline)");
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }

  auto parse_line = [](std::string_view line, std::size_t lineno) {
    try {
      auto j = ordered_json::parse(line);
      if (!j.is_object()) Malformed("line " + std::to_string(lineno) + " is not an object");
      return j;
    } catch (const ordered_json::parse_error&) {
      Malformed("line " + std::to_string(lineno) + " is not valid JSON");
    }
  };

  const ordered_json header = parse_line(lines[0], 1);
  if (StringField(header, "schema") != "nls-session") Malformed("not an nls-session file");
  const auto& version = Field(header, "version");
  if (!version.is_number_integer()) Malformed("version is not an integer");
  if (version.get<long long>() != kSessionSchemaVersion) {
    throw Error(ErrorCode::kSchemaVersionMismatch,
                "unsupported session schema version " + std::to_string(version.get<long long>()) +
                    " (expected " + std::to_string(kSessionSchemaVersion) + ")");
  }

  SessionState s;
  try {
    s.id = StringField(header, "id");
    s.created = TimeField(header, "created");
    const auto& cfg = Field(header, "config");
    if (!cfg.is_object()) Malformed("config is not an object");
    s.config.base_url = StringField(cfg, "base_url");
    s.config.model_category = StringField(cfg, "model_category");
    s.config.model_id = StringField(cfg, "model_id");
    s.artifact_dir = StringField(header, "artifact_dir");
    const auto& arts = Field(header, "artifacts");
    if (!arts.is_array()) Malformed("artifacts is not an array");
    for (const auto& j : arts) {
      HdlArtifact a;
      a.module_name = StringField(j, "module_name");
      auto lang = ParseHdlLanguage(StringField(j, "language"));
      if (!lang) Malformed("unknown artifact language");
      a.language = *lang;
      const auto& ri = Field(j, "response_index");
      if (!ri.is_number_unsigned()) Malformed("response_index is not a natural number");
      a.response_index = ri.get<std::size_t>();
      a.text = StringField(j, "text");
      s.artifacts.push_back(std::move(a));
    }

    static const std::vector<std::string> kEntryFields = {"index", "role", "kind", "content",
                                                          "timestamp"};
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const ordered_json j = parse_line(lines[i], i + 1);
      if (j.size() != kEntryFields.size()) Malformed("entry on line " + std::to_string(i + 1) + " has unexpected fields");
      TranscriptEntry e;
      const auto& idx = Field(j, "index");
      if (!idx.is_number_unsigned()) Malformed("index is not a natural number");
      e.index = idx.get<std::size_t>();
      auto role = ParseRole(StringField(j, "role"));
      auto kind = ParseEntryKind(StringField(j, "kind"));
      if (!role || !kind) Malformed("unknown role or kind on line " + std::to_string(i + 1));
      e.role = *role;
      e.kind = *kind;
      e.content = StringField(j, "content");
      e.timestamp = TimeField(j, "timestamp");
      s.transcript.push_back(std::move(e));
    }
  } catch (const ordered_json::exception& e) {
    Malformed(e.what());
  }

  try {
    CheckSessionInvariants(s);
  } catch (const Error& e) {
    Malformed(e.what());
  }
  return s;
}

void SaveSession(const SessionState& state, const std::filesystem::path& path) {
  WriteFileAtomic(path, SerializeSession(state));
}

SessionState LoadSession(const std::filesystem::path& path) {
  return ParseSession(ReadFile(path));
}

// ---------------------------------------------------------------------------
// Config store

namespace config_store {

std::filesystem::path DefaultDirectory(const std::map<std::string, std::string>& env) {
  auto get = [&](const char* k) -> std::string {
    auto it = env.find(k);
    return it == env.end() ? std::string() : it->second;
  };
  if (auto home = get("NLS_HOME"); !home.empty()) return home;
  if (auto xdg = get("XDG_CONFIG_HOME"); !xdg.empty()) return std::filesystem::path(xdg) / "nls";
  if (auto home = get("HOME"); !home.empty()) {
    return std::filesystem::path(home) / ".config" / "nls";
  }
  return std::filesystem::path(".nls");
}

ProviderConfig Load(const std::filesystem::path& path) {
  ProviderConfig cfg;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return cfg;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error&) {
    throw Error(ErrorCode::kIo, "config store is not valid JSON: " + path.string());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kIo, "config store is not an object: " + path.string());
  auto str = [&](const char* k, std::string& out) {
    if (auto it = doc.find(k); it != doc.end() && it->is_string()) out = it->get<std::string>();
  };
  str("api_key", cfg.api_key);
  str("base_url", cfg.base_url);
  str("model_category", cfg.model_category);
  str("model_id", cfg.model_id);
  return cfg;
}

void Save(const ProviderConfig& cfg, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  ordered_json doc;
  doc["api_key"] = cfg.api_key;
  doc["base_url"] = cfg.base_url;
  doc["model_category"] = cfg.model_category;
  doc["model_id"] = cfg.model_id;
  const std::string body = doc.dump(2) + "\n";

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  if (fd < 0) throw Error(ErrorCode::kIo, "cannot write config store " + path.string());
  const ssize_t n = ::write(fd, body.data(), body.size());
  ::close(fd);
  if (n != static_cast<ssize_t>(body.size())) {
    throw Error(ErrorCode::kIo, "short write to config store " + path.string());
  }
  std::filesystem::permissions(tmp, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write,
                               ec);
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot replace config store " + path.string());
}

}  // namespace config_store

// ---------------------------------------------------------------------------
// SessionLock

SessionLock::SessionLock(const std::filesystem::path& session_path) : lock_path_(session_path) {
  lock_path_ += ".lock";
  const int fd = ::open(lock_path_.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
  if (fd < 0) {
    if (errno == EEXIST) {
      throw Error(ErrorCode::kSessionLocked,
                  "session is in use by another invocation (remove " + lock_path_.string() +
                      " if no other nls process is running)");
    }
    throw Error(ErrorCode::kIo, "cannot create lock file " + lock_path_.string());
  }
  const std::string pid = std::to_string(::getpid()) + "\n";
  [[maybe_unused]] ssize_t n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

SessionLock::~SessionLock() {
  std::error_code ec;
  std::filesystem::remove(lock_path_, ec);
}

}  // namespace nls

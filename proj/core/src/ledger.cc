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

#include "nls/ledger.hpp"

#include <cstdio>
#include <system_error>

#include <nlohmann/json.hpp>

#include "nls/error.hpp"

namespace nls {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kBaseTemplate =
    "You are an experienced digital hardware engineer. Write synthesizable "
    "Verilog code for the design the user describes.\n"
    "Put each module in a fenced ```verilog code block. Anything that is not "
    "code, such as explanations, assumptions and port descriptions, must be "
    "written as Verilog comments.";

struct BuiltinRule {
  const char* id;
  const char* text;
};

// One rule per lint check so a finding can point at the rule that prevents it.
constexpr BuiltinRule kBuiltinRules[] = {
    {"NLS001",
     "Allocate registers deliberately: declare only the registers the design "
     "needs, and make sure every register is both assigned and used."},
    {"NLS002",
     "Declare every reg, wire and integer at module scope, never inside an "
     "always block."},
    {"NLS003",
     "Write plain Verilog-2005. Do not use SystemVerilog constructs such as "
     "typedef, enum, logic, always_ff, always_comb, interfaces or array-valued "
     "parameters."},
    {"NLS004",
     "Check the logic of every always block and state machine: give each case "
     "statement a default branch, never mix blocking and non-blocking "
     "assignments to one signal, and keep sensitivity lists complete so every "
     "transition is correct."},
    {"NLS005",
     "Work out fixed-point formats (integer and fraction bits) in a reference "
     "model, for example in Python, before writing the Verilog, and size every "
     "multiplication result so no bits are silently dropped."},
    {"NLS006",
     "Never declare arrays in the module port list; pass flattened vectors "
     "through the ports and unpack them inside the module."},
};

constexpr std::string_view kListHeading = "Avoid the following common issues:";

}  // namespace

const AmendmentRule* PromptLedger::Find(std::string_view id) const {
  for (const auto& r : rules) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::string_view DefaultBaseTemplate() { return kBaseTemplate; }

PromptLedger DefaultLedger() {
  PromptLedger ledger;
  ledger.base_template = std::string(kBaseTemplate);
  for (const auto& b : kBuiltinRules) {
    AmendmentRule r;
    r.id = b.id;
    r.text = b.text;
    r.source = RuleSource::kBuiltin;
    r.added = Timestamp{};  // fixed so the default ledger is reproducible
    ledger.rules.push_back(std::move(r));
  }
  return ledger;
}

PromptLedger AddRule(PromptLedger ledger, std::string_view text, Timestamp now) {
  const std::string normalized = NormalizeWhitespace(text);
  if (normalized.empty()) throw Error(ErrorCode::kEmptyRule, "rule text is empty");
  std::size_t user_rules = 0;
  for (const auto& r : ledger.rules) {
    if (NormalizeWhitespace(r.text) == normalized) {
      throw Error(ErrorCode::kDuplicateRule, "rule already present as " + r.id);
    }
    if (r.source == RuleSource::kUser) ++user_rules;
  }
  std::string id;
  char buf[16];
  do {
    std::snprintf(buf, sizeof(buf), "USR%03zu", ++user_rules);
    id = buf;
  } while (ledger.Find(id) != nullptr);

  AmendmentRule r;
  r.id = std::move(id);
  r.text = std::string(Trim(text));
  r.source = RuleSource::kUser;
  r.added = now;
  ledger.rules.push_back(std::move(r));
  return ledger;
}

PromptLedger DisableRule(PromptLedger ledger, std::string_view id) {
  for (auto& r : ledger.rules) {
    if (r.id == id) {
      r.disabled = true;
      return ledger;
    }
  }
  throw Error(ErrorCode::kUnknownRule, "no rule with id " + std::string(id));
}

std::string RenderSystemPrompt(const PromptLedger& ledger) {
  std::string out = ledger.base_template;
  out += "\n\n";
  out += kListHeading;
  out += "\n";
  std::size_t n = 0;
  for (const auto& r : ledger.rules) {
    if (r.disabled) continue;
    out += std::to_string(++n) + ". " + r.text + "\n";
  }
  if (n == 0) out += "(none)\n";
  return out;
}

std::string SerializeLedger(const PromptLedger& ledger) {
  ordered_json doc;
  doc["schema"] = "nls-ledger";
  doc["version"] = kLedgerSchemaVersion;
  doc["base_template"] = ledger.base_template;
  ordered_json rules = ordered_json::array();
  for (const auto& r : ledger.rules) {
    ordered_json j;
    j["id"] = r.id;
    j["text"] = r.text;
    j["source"] = r.source == RuleSource::kBuiltin ? "builtin" : "user";
    j["added"] = FormatRfc3339(r.added);
    j["disabled"] = r.disabled;
    rules.push_back(std::move(j));
  }
  doc["rules"] = std::move(rules);
  return doc.dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n";
}

PromptLedger ParseLedger(std::string_view text) {
  auto bad = [](const std::string& m) -> Error {
    return Error(ErrorCode::kIo, "malformed ledger file: " + m);
  };
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error&) {
    throw bad("not valid JSON");
  }
  try {
    if (!doc.is_object() || doc.at("schema") != "nls-ledger") throw bad("not an nls-ledger document");
    const auto& version = doc.at("version");
    if (!version.is_number_integer()) throw bad("version is not an integer");
    if (version.get<long long>() != kLedgerSchemaVersion) {
      throw Error(ErrorCode::kSchemaVersionMismatch,
                  "unsupported ledger schema version " + std::to_string(version.get<long long>()));
    }
    PromptLedger ledger;
    ledger.base_template = doc.at("base_template").get<std::string>();
    for (const auto& j : doc.at("rules")) {
      AmendmentRule r;
      r.id = j.at("id").get<std::string>();
      r.text = j.at("text").get<std::string>();
      const auto source = j.at("source").get<std::string>();
      if (source != "builtin" && source != "user") throw bad("unknown rule source " + source);
      r.source = source == "builtin" ? RuleSource::kBuiltin : RuleSource::kUser;
      auto added = ParseRfc3339(j.at("added").get<std::string>());
      if (!added) throw bad("rule " + r.id + " has an invalid timestamp");
      r.added = *added;
      r.disabled = j.value("disabled", false);
      if (r.id.empty() || Trim(r.text).empty()) throw bad("rule with empty id or text");
      if (ledger.Find(r.id) != nullptr) throw bad("duplicate rule id " + r.id);
      ledger.rules.push_back(std::move(r));
    }
    return ledger;
  } catch (const ordered_json::exception& e) {
    throw bad(e.what());
  }
}

void SaveLedger(const PromptLedger& ledger, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  WriteFileAtomic(path, SerializeLedger(ledger));
}

PromptLedger LoadLedger(const std::filesystem::path& path) { return ParseLedger(ReadFile(path)); }

PromptLedger LoadLedgerOrDefault(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return DefaultLedger();
  return LoadLedger(path);
}

}  // namespace nls

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

// The system prompt is a base template followed by an ordered list of
// amendment rules. Builtin rules mirror the lint catalog (NLS001..NLS006);
// users append their own with AddRule. Rules are never removed, only
// disabled, so a ledger's history stays reconstructible.

#ifndef NLS_LEDGER_HPP_
#define NLS_LEDGER_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nls/text.hpp"

namespace nls {

inline constexpr int kLedgerSchemaVersion = 1;

enum class RuleSource { kBuiltin, kUser };

struct AmendmentRule {
  std::string id;
  std::string text;
  RuleSource source = RuleSource::kUser;
  Timestamp added{};
  bool disabled = false;

  bool operator==(const AmendmentRule&) const = default;
};

struct PromptLedger {
  std::string base_template;
  std::vector<AmendmentRule> rules;

  bool operator==(const PromptLedger&) const = default;

  const AmendmentRule* Find(std::string_view id) const;
};

std::string_view DefaultBaseTemplate();

// Base template plus the six builtin rules NLS001..NLS006.
PromptLedger DefaultLedger();

// Appends a user rule with id "USRnnn". Throws kEmptyRule for blank text and
// kDuplicateRule when the whitespace-normalized text matches an existing
// rule.
PromptLedger AddRule(PromptLedger ledger, std::string_view text, Timestamp now = Now());

// Soft delete. Throws kUnknownRule.
PromptLedger DisableRule(PromptLedger ledger, std::string_view id);

// base_template, a blank line, then the enabled rules as a numbered list in
// insertion order. With no enabled rules the list reads "(none)".
std::string RenderSystemPrompt(const PromptLedger& ledger);

// {"schema":"nls-ledger","version":1,"base_template":...,"rules":[...]}
std::string SerializeLedger(const PromptLedger& ledger);
// Throws kIo on malformed input, kSchemaVersionMismatch on unknown versions.
PromptLedger ParseLedger(std::string_view json);
void SaveLedger(const PromptLedger& ledger, const std::filesystem::path& path);
PromptLedger LoadLedger(const std::filesystem::path& path);
// DefaultLedger() when the file does not exist yet.
PromptLedger LoadLedgerOrDefault(const std::filesystem::path& path);

}  // namespace nls

#endif  // NLS_LEDGER_HPP_

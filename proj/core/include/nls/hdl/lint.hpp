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

#ifndef NLS_HDL_LINT_HPP_
#define NLS_HDL_LINT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nls/artifact.hpp"
#include "nls/hdl/module_tree.hpp"

namespace nls::hdl {

enum class Severity { kError, kWarning };

std::string_view SeverityName(Severity severity);  // "error" / "warning"

struct Diagnostic {
  std::string rule_id;  // NLS001..NLS006
  Severity severity = Severity::kWarning;
  std::string file;
  std::uint32_t line = 1;
  std::uint32_t col = 1;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

struct RuleInfo {
  std::string_view id;
  Severity severity;
  std::string_view title;
  bool verilog_only;
};

// NLS001..NLS006 in id order.
const std::vector<RuleInfo>& RuleCatalog();
const RuleInfo* FindRule(std::string_view id);

// Rules over one parsed module. SystemVerilog input gets NLS001, NLS004 and
// NLS005 only.
std::vector<Diagnostic> Lint(const ModuleTree& tree, HdlLanguage language, std::string_view file);

// Tokenizes and parses every module in `source`. SystemVerilog keywords
// outside any module also count toward NLS003. Never throws; a source
// without modules yields no diagnostics.
std::vector<Diagnostic> LintSource(std::string_view source, HdlLanguage language,
                                   std::string_view file);

// `.sv` and `.svh` are SystemVerilog, everything else Verilog.
HdlLanguage LanguageForPath(const std::filesystem::path& path);

// Reads and lints one file. Throws Error(kIo) when unreadable.
std::vector<Diagnostic> LintFile(const std::filesystem::path& path,
                                 std::optional<HdlLanguage> language = std::nullopt);

// By (file, line, col, rule_id).
void SortDiagnostics(std::vector<Diagnostic>& diags);

// One `file:line:col: [RULE] severity: message` line per diagnostic.
std::string FormatText(const std::vector<Diagnostic>& diags);
// JSON array of {rule_id, severity, file, line, col, message}, newline-terminated.
std::string FormatJson(const std::vector<Diagnostic>& diags);

// 0 clean, 1 warnings only, 2 errors present.
int ExitStatus(const std::vector<Diagnostic>& diags);

}  // namespace nls::hdl

#endif  // NLS_HDL_LINT_HPP_

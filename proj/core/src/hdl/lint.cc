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

#include "nls/hdl/lint.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include <nlohmann/json.hpp>

#include "nls/hdl/token.hpp"
#include "nls/text.hpp"

namespace nls::hdl {

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

const std::vector<RuleInfo>& RuleCatalog() {
  static const std::vector<RuleInfo> kRules = {
      {"NLS001", Severity::kWarning, "register never assigned or never read", false},
      {"NLS002", Severity::kError, "declaration inside an always block", true},
      {"NLS003", Severity::kError, "SystemVerilog construct in Verilog source", true},
      {"NLS004", Severity::kWarning, "always-block logic structure risk", false},
      {"NLS005", Severity::kWarning, "product wider than its destination", false},
      {"NLS006", Severity::kError, "array declared in the port list", true},
  };
  return kRules;
}

const RuleInfo* FindRule(std::string_view id) {
  for (const auto& r : RuleCatalog()) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

namespace {

class Emitter {
 public:
  Emitter(std::string_view file, HdlLanguage language, std::vector<Diagnostic>& out)
      : file_(file), language_(language), out_(out) {}

  void Emit(std::string_view rule, SourcePos pos, std::string message) {
    const RuleInfo* info = FindRule(rule);
    if (info == nullptr) return;
    if (info->verilog_only && language_ != HdlLanguage::kVerilog) return;
    Diagnostic d;
    d.rule_id = std::string(rule);
    d.severity = info->severity;
    d.file = file_;
    d.line = std::max<std::uint32_t>(1, pos.line);
    d.col = std::max<std::uint32_t>(1, pos.col);
    d.message = std::move(message);
    out_.push_back(std::move(d));
  }

 private:
  std::string file_;
  HdlLanguage language_;
  std::vector<Diagnostic>& out_;
};

std::string Quote(std::string_view name) { return "'" + std::string(name) + "'"; }

void CheckRegisters(const ModuleTree& tree, Emitter& e) {
  for (const auto& d : tree.declarations) {
    if (d.scope != DeclScope::kModule || d.kind != DeclKind::kReg) continue;
    const Port* port = tree.FindPort(d.name);
    if (port != nullptr && port->direction == PortDirection::kInput) continue;
    const bool assigned = d.has_initializer || tree.assigned.count(d.name) != 0;
    const bool read = tree.reads.count(d.name) != 0;
    if (!assigned) {
      e.Emit("NLS001", d.pos, "register " + Quote(d.name) + " is declared but never assigned");
    } else if (!read && port == nullptr) {
      e.Emit("NLS001", d.pos, "register " + Quote(d.name) + " is assigned but never read");
    }
  }
  for (const auto& p : tree.ports) {
    if (!p.is_reg || p.direction != PortDirection::kOutput) continue;
    if (tree.FindDeclaration(p.name) != nullptr) continue;  // covered above
    if (tree.assigned.count(p.name) == 0) {
      e.Emit("NLS001", p.pos, "output register " + Quote(p.name) + " is never assigned");
    }
  }
}

void CheckAlwaysLocalDeclarations(const ModuleTree& tree, Emitter& e) {
  for (const auto& d : tree.declarations) {
    if (d.scope != DeclScope::kAlwaysBlock || d.kind == DeclKind::kOther) continue;
    e.Emit("NLS002", d.keyword_pos,
           Quote(d.type_keyword) + " declaration of " + Quote(d.name) +
               " inside an always block; declare it at module scope");
  }
}

void CheckSvConstructs(const ModuleTree& tree, Emitter& e) {
  for (const auto& c : tree.sv_constructs) {
    if (c.keyword == "parameter") {
      e.Emit("NLS003", c.pos, c.detail + " is not Verilog-2005");
    } else {
      e.Emit("NLS003", c.pos, "SystemVerilog keyword " + Quote(c.keyword) + " in Verilog source");
    }
  }
}

void CheckLogicStructure(const ModuleTree& tree, Emitter& e) {
  // Case without default in combinational logic infers latches.
  for (const auto& b : tree.always_blocks) {
    if (!b.combinational()) continue;
    for (const auto& c : b.cases) {
      if (!c.has_default) {
        e.Emit("NLS004", c.pos, "case statement without default in combinational always block");
      }
    }
  }

  // Blocking and non-blocking assignment to one signal.
  std::map<std::string, std::vector<const Assignment*>> by_target;
  for (const auto& b : tree.always_blocks) {
    for (const auto& a : b.assigns) {
      if (a.kind != AssignKind::kContinuous && b.local_names.count(a.lhs) == 0) {
        by_target[a.lhs].push_back(&a);
      }
    }
  }
  for (auto& [name, list] : by_target) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Assignment* x, const Assignment* y) { return x->pos < y->pos; });
    const AssignKind first = list.front()->kind;
    for (const Assignment* a : list) {
      if (a->kind != first) {
        e.Emit("NLS004", a->pos,
               "signal " + Quote(name) + " gets both blocking and non-blocking assignments");
        break;
      }
    }
  }

  // Explicit sensitivity list missing a signal the block reads.
  for (const auto& b : tree.always_blocks) {
    if (b.sensitivity_kind != SensitivityKind::kExplicit) continue;
    std::set<std::string> written;
    for (const auto& a : b.assigns) written.insert(a.lhs);
    std::vector<std::string> missing;
    for (const auto& name : b.reads) {
      if (written.count(name) != 0 || b.local_names.count(name) != 0) continue;
      if (tree.genvars.count(name) != 0 || tree.FindParameter(name) != nullptr) continue;
      if (tree.subprograms.count(name) != 0) continue;
      const Declaration* d = tree.FindDeclaration(name);
      const Port* p = tree.FindPort(name);
      if (d == nullptr && p == nullptr) continue;
      if (d != nullptr && (d->kind == DeclKind::kInteger || d->type_keyword == "genvar")) continue;
      if (std::find(b.sensitivity_signals.begin(), b.sensitivity_signals.end(), name) !=
          b.sensitivity_signals.end()) {
        continue;
      }
      missing.push_back(name);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + Quote(m);
      e.Emit("NLS004", b.pos, "sensitivity list " + b.sensitivity + " is missing " + list);
    }
  }
}

void CheckProductWidth(const Assignment& a, Emitter& e) {
  if (!a.rhs_has_multiply || a.lhs_is_concatenation) return;
  if (!a.rhs_width_estimate || !a.lhs_width) return;
  if (*a.rhs_width_estimate <= *a.lhs_width) return;
  e.Emit("NLS005", a.pos,
         "product is " + std::to_string(*a.rhs_width_estimate) + " bits but " + Quote(a.lhs) +
             " holds " + std::to_string(*a.lhs_width) + "; select the intended bits explicitly");
}

void CheckProducts(const ModuleTree& tree, Emitter& e) {
  for (const auto& b : tree.always_blocks) {
    for (const auto& a : b.assigns) CheckProductWidth(a, e);
  }
  for (const auto& a : tree.assigns_continuous) CheckProductWidth(a, e);
  for (const auto& a : tree.other_assigns) CheckProductWidth(a, e);
}

void CheckArrayPorts(const ModuleTree& tree, Emitter& e) {
  for (const auto& p : tree.ports) {
    if (p.is_array_port) {
      e.Emit("NLS006", p.pos, "port " + Quote(p.name) + " is declared as an array in the port list");
    }
  }
}

}  // namespace

std::vector<Diagnostic> Lint(const ModuleTree& tree, HdlLanguage language, std::string_view file) {
  std::vector<Diagnostic> out;
  Emitter e(file, language, out);
  CheckRegisters(tree, e);
  CheckAlwaysLocalDeclarations(tree, e);
  CheckSvConstructs(tree, e);
  CheckLogicStructure(tree, e);
  CheckProducts(tree, e);
  CheckArrayPorts(tree, e);
  SortDiagnostics(out);
  return out;
}

std::vector<Diagnostic> LintSource(std::string_view source, HdlLanguage language,
                                   std::string_view file) {
  const std::vector<Token> tokens = Tokenize(source);
  const std::vector<ModuleTree> modules = ParseModules(tokens);
  std::vector<Diagnostic> out;
  for (const auto& m : modules) {
    auto d = Lint(m, language, file);
    out.insert(out.end(), d.begin(), d.end());
  }
  Emitter e(file, language, out);
  std::size_t next = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    while (next < modules.size() && i >= modules[next].last_token) ++next;
    if (next < modules.size() && i >= modules[next].first_token) continue;
    const Token& t = tokens[i];
    if (t.kind == TokenKind::kKeyword && IsSvOnlyKeyword(t.text)) {
      e.Emit("NLS003", {t.line, t.col},
             "SystemVerilog keyword " + Quote(t.text) + " in Verilog source");
    }
  }
  SortDiagnostics(out);
  return out;
}

HdlLanguage LanguageForPath(const std::filesystem::path& path) {
  const std::string ext = ToLower(path.extension().string());
  return ext == ".sv" || ext == ".svh" ? HdlLanguage::kSystemVerilog : HdlLanguage::kVerilog;
}

std::vector<Diagnostic> LintFile(const std::filesystem::path& path,
                                 std::optional<HdlLanguage> language) {
  const std::string source = ReadFile(path);
  return LintSource(source, language.value_or(LanguageForPath(path)), path.string());
}

void SortDiagnostics(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.file, a.line, a.col, a.rule_id) < std::tie(b.file, b.line, b.col, b.rule_id);
  });
}

std::string FormatText(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    out += d.file + ":" + std::to_string(d.line) + ":" + std::to_string(d.col) + ": [" +
           d.rule_id + "] " + std::string(SeverityName(d.severity)) + ": " + d.message + "\n";
  }
  return out;
}

std::string FormatJson(const std::vector<Diagnostic>& diags) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : diags) {
    nlohmann::ordered_json j;
    j["rule_id"] = d.rule_id;
    j["severity"] = SeverityName(d.severity);
    j["file"] = d.file;
    j["line"] = d.line;
    j["col"] = d.col;
    j["message"] = d.message;
    arr.push_back(std::move(j));
  }
  return arr.dump(2, ' ', false, nlohmann::ordered_json::error_handler_t::replace) + "\n";
}

int ExitStatus(const std::vector<Diagnostic>& diags) {
  int status = 0;
  for (const auto& d : diags) {
    status = std::max(status, d.severity == Severity::kError ? 2 : 1);
  }
  return status;
}

}  // namespace nls::hdl

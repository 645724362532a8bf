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

// Structural summary of one Verilog module, recovered by a tolerant parser.
//
// This is not an elaborated netlist. It records just enough for the lint
// rules: ports and their shapes, declarations and the scope they live in,
// always blocks with their sensitivity and assignments, and the set of
// identifiers read anywhere in the module. Regions the parser does not
// understand are skipped to the next `;` and noted in `notes`.

#ifndef NLS_HDL_MODULE_TREE_HPP_
#define NLS_HDL_MODULE_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nls/hdl/token.hpp"

namespace nls::hdl {

struct SourcePos {
  std::uint32_t line = 0;
  std::uint32_t col = 0;

  auto operator<=>(const SourcePos&) const = default;
};

// `[msb:lsb]` with the bounds folded to integers when they are constant.
struct BitRange {
  std::string msb_text;
  std::string lsb_text;
  std::optional<std::int64_t> msb;
  std::optional<std::int64_t> lsb;

  std::optional<std::int64_t> width() const;
};

enum class PortDirection { kInput, kOutput, kInout };

struct Port {
  std::string name;
  PortDirection direction = PortDirection::kInput;
  std::optional<BitRange> packed;  // nullopt: scalar
  bool is_array_port = false;      // unpacked dimension after the name
  bool is_reg = false;
  bool direction_known = false;    // false for a non-ANSI header name never declared
  SourcePos pos;                   // of the name

  // 1 for scalars, nullopt when the range is not constant.
  std::optional<std::int64_t> width() const;
};

enum class DeclKind { kReg, kWire, kInteger, kOther };
enum class DeclScope { kModule, kAlwaysBlock };

struct Declaration {
  std::string name;
  DeclKind kind = DeclKind::kOther;
  std::string type_keyword;  // reg, wire, logic, ...
  std::optional<BitRange> packed;
  bool is_array = false;  // has an unpacked dimension
  bool has_initializer = false;
  DeclScope scope = DeclScope::kModule;
  std::optional<std::size_t> always_index;  // set when scope == kAlwaysBlock
  SourcePos pos;                            // of the name
  SourcePos keyword_pos;                    // of the type keyword

  std::optional<std::int64_t> width() const;
};

struct Parameter {
  std::string name;
  bool local = false;
  std::optional<std::int64_t> value;
  bool is_array = false;  // unpacked dimension, several packed ranges or '{...}
  SourcePos pos;
};

enum class AssignKind { kBlocking, kNonBlocking, kContinuous };

struct Assignment {
  std::string lhs;
  AssignKind kind = AssignKind::kBlocking;
  // Width of each [..] select applied to the target, in order. 1 for an
  // index, the range width for a part-select, nullopt when not constant.
  std::vector<std::optional<std::int64_t>> lhs_selects;
  bool lhs_is_concatenation = false;
  std::vector<Token> rhs;  // significant tokens only
  SourcePos pos;           // of the target name

  // Filled in once every declaration of the module is known.
  std::optional<std::int64_t> lhs_width;
  std::optional<std::int64_t> rhs_width_estimate;
  bool rhs_has_multiply = false;
};

struct CaseStatement {
  SourcePos pos;
  bool has_default = false;
};

enum class SensitivityKind {
  kNone,      // no event control (e.g. `always #5 clk = ~clk;`)
  kStar,      // @* / @(*) / always_comb / always_latch
  kExplicit,  // @(a or b) without edges
  kEdge,      // posedge/negedge present, or always_ff
};

struct AlwaysBlock {
  std::string keyword;  // always, always_ff, always_comb, always_latch
  SourcePos pos;
  std::string sensitivity;  // source text of the event control, verbatim
  SensitivityKind sensitivity_kind = SensitivityKind::kNone;
  std::vector<std::string> sensitivity_signals;
  std::size_t first_token = 0;  // token index range [first_token, last_token)
  std::size_t last_token = 0;
  std::vector<CaseStatement> cases;
  bool has_case_without_default = false;
  std::vector<Assignment> assigns;
  std::set<std::string> reads;
  std::set<std::string> local_names;  // declared inside the block

  bool combinational() const {
    return sensitivity_kind == SensitivityKind::kStar ||
           sensitivity_kind == SensitivityKind::kExplicit;
  }
};

struct SvConstruct {
  std::string keyword;  // the SV keyword, or "parameter" for array parameters
  std::string detail;
  SourcePos pos;
};

struct ParseNote {
  SourcePos pos;
  std::string message;
};

struct ModuleTree {
  std::string name;
  SourcePos pos;                // of the `module` keyword
  std::size_t first_token = 0;  // token index range, endmodule inclusive
  std::size_t last_token = 0;
  std::vector<Port> ports;
  std::vector<Declaration> declarations;
  std::vector<Parameter> parameters;
  std::vector<AlwaysBlock> always_blocks;
  std::vector<Assignment> assigns_continuous;
  std::vector<Assignment> other_assigns;  // initial blocks, tasks, initializers
  std::set<std::string> reads;
  std::set<std::string> assigned;
  std::set<std::string> genvars;
  std::set<std::string> subprograms;  // function and task names
  std::vector<SvConstruct> sv_constructs;
  std::vector<ParseNote> notes;

  const Port* FindPort(const std::string& name) const;
  // Module-scope declaration, if any.
  const Declaration* FindDeclaration(const std::string& name) const;
  const Parameter* FindParameter(const std::string& name) const;
};

// Parses the first module in `tokens`. Throws Error(kNoModuleHeader) when
// there is no `module` keyword outside comments and strings.
ModuleTree ParseModule(const std::vector<Token>& tokens);

// Every module in order; empty when there are none.
std::vector<ModuleTree> ParseModules(const std::vector<Token>& tokens);

}  // namespace nls::hdl

#endif  // NLS_HDL_MODULE_TREE_HPP_

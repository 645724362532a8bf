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

#include <algorithm>
#include <cstdlib>
#include <string_view>

#include "hdl/width.hpp"
#include "nls/error.hpp"
#include "nls/hdl/module_tree.hpp"

namespace nls::hdl {

std::optional<std::int64_t> BitRange::width() const {
  if (!msb || !lsb) return std::nullopt;
  return std::abs(*msb - *lsb) + 1;
}

std::optional<std::int64_t> Port::width() const { return packed ? packed->width() : 1; }

std::optional<std::int64_t> Declaration::width() const {
  if (packed) return packed->width();
  if (kind == DeclKind::kInteger || type_keyword == "int") return 32;
  if (type_keyword == "byte") return 8;
  if (type_keyword == "shortint") return 16;
  if (type_keyword == "longint" || type_keyword == "time") return 64;
  if (type_keyword == "real" || type_keyword == "realtime") return std::nullopt;
  return 1;
}

const Port* ModuleTree::FindPort(const std::string& port_name) const {
  for (const auto& p : ports) {
    if (p.name == port_name) return &p;
  }
  return nullptr;
}

const Declaration* ModuleTree::FindDeclaration(const std::string& decl_name) const {
  for (const auto& d : declarations) {
    if (d.name == decl_name && d.scope == DeclScope::kModule) return &d;
  }
  return nullptr;
}

const Parameter* ModuleTree::FindParameter(const std::string& param_name) const {
  for (const auto& p : parameters) {
    if (p.name == param_name) return &p;
  }
  return nullptr;
}

namespace {

bool IsDeclKeyword(std::string_view w) {
  static constexpr std::string_view kWords[] = {
      "reg",   "wire",   "integer", "logic",    "bit",     "byte",  "int",   "shortint",
      "longint", "real", "realtime", "time",    "tri",     "tri0",  "tri1",  "wand",
      "wor",   "uwire",  "supply0", "supply1",  "trireg",  "triand", "trior", "event",
      "genvar"};
  return std::find(std::begin(kWords), std::end(kWords), w) != std::end(kWords);
}

bool IsTypeModifier(std::string_view w) {
  return w == "signed" || w == "unsigned" || w == "vectored" || w == "scalared" ||
         w == "automatic" || w == "static" || w == "var" || w == "const";
}

bool IsDirection(std::string_view w) { return w == "input" || w == "output" || w == "inout"; }

bool IsBlockEnd(std::string_view w) {
  return w == "end" || w == "endcase" || w == "endmodule" || w == "endfunction" ||
         w == "endtask" || w == "join" || w == "join_any" || w == "join_none" ||
         w == "endgenerate";
}

// Keywords that can only begin a module item; a statement never runs into one.
bool IsModuleItemStart(std::string_view w) {
  return w == "always" || w == "always_ff" || w == "always_comb" || w == "always_latch" ||
         w == "assign" || w == "initial" || w == "module" || w == "function" || w == "task" ||
         w == "endmodule";
}

DeclKind KindOf(std::string_view w) {
  if (w == "reg" || w == "logic" || w == "bit") return DeclKind::kReg;
  if (w == "wire" || w == "tri" || w == "uwire" || w == "wand" || w == "wor") return DeclKind::kWire;
  if (w == "integer") return DeclKind::kInteger;
  return DeclKind::kOther;
}

SourcePos PosOf(const Token& t) { return {t.line, t.col}; }

// Where parsed statements deposit their findings.
struct Ctx {
  std::optional<std::size_t> always_index;
  std::vector<Assignment>* sink = nullptr;  // nullptr: discard assignments
  bool record_decls = false;
  bool continuous = false;
};

class ModuleParser {
 public:
  ModuleParser(const std::vector<Token>& sig, const std::vector<std::size_t>& orig,
               const std::vector<Token>& all, std::size_t begin, std::size_t end)
      : t_(sig), orig_(orig), all_(all), p_(begin), end_(end) {}

  ModuleTree Run() {
    m_.pos = PosOf(Tok());
    m_.first_token = orig_[p_];
    Next();  // module / macromodule
    while (AtKw("automatic") || AtKw("static")) Next();
    if (Tok().kind == TokenKind::kIdentifier) {
      m_.name = Tok().text;
      Next();
    } else {
      Note("module has no name");
    }
    while (AtOp("::") || AtKw("import")) SkipStatement(nullptr);  // package imports
    if (AtPunct("#")) {
      Next();
      if (AtPunct("(")) {
        const std::size_t close = GroupEnd();
        Next();
        ParseParamList(close - 1, false);
        p_ = close;
      }
    }
    if (AtPunct("(")) {
      const std::size_t close = GroupEnd();
      Next();
      ParsePortList(close - 1);
      p_ = close;
    }
    if (AtPunct(";")) {
      Next();
    } else {
      Note("expected ';' after module header");
    }
    ParseItems();
    if (p_ < end_ && AtKw("endmodule")) {
      m_.last_token = orig_[p_] + 1;
      Next();
      if (AtPunct(":")) {
        Next();
        if (p_ < end_) Next();
      }
    } else {
      m_.last_token = end_ > 0 && end_ <= orig_.size() ? orig_[end_ - 1] + 1 : all_.size();
      Note("missing endmodule");
    }
    CollectSvConstructs();
    ComputeWidths();
    return std::move(m_);
  }

  std::size_t position() const { return p_; }

 private:
  // --- token access -------------------------------------------------------

  const Token& Tok(std::size_t k = 0) const {
    static const Token kEof{TokenKind::kWhitespace, "", 0, 0, 0};
    return p_ + k < end_ ? t_[p_ + k] : kEof;
  }
  void Next() {
    if (p_ < end_) ++p_;
  }
  bool AtEnd() const { return p_ >= end_; }
  bool AtKw(std::string_view w, std::size_t k = 0) const {
    return Tok(k).kind == TokenKind::kKeyword && Tok(k).text == w;
  }
  bool AtPunct(std::string_view w, std::size_t k = 0) const {
    return Tok(k).kind == TokenKind::kPunct && Tok(k).text == w;
  }
  bool AtOp(std::string_view w, std::size_t k = 0) const {
    return Tok(k).kind == TokenKind::kOperator && Tok(k).text == w;
  }
  bool AtIdent(std::size_t k = 0) const {
    const Token& t = Tok(k);
    return t.kind == TokenKind::kIdentifier && !t.text.empty() && t.text[0] != '$' &&
           t.text[0] != '`';
  }

  static bool IsOpen(const Token& t) {
    return t.kind == TokenKind::kPunct && (t.text == "(" || t.text == "[" || t.text == "{");
  }
  static bool IsClose(const Token& t) {
    return t.kind == TokenKind::kPunct && (t.text == ")" || t.text == "]" || t.text == "}");
  }

  // Index just past the group opening at p_ (bounded by end_).
  std::size_t GroupEnd() const {
    int depth = 0;
    for (std::size_t i = p_; i < end_; ++i) {
      if (IsOpen(t_[i])) ++depth;
      if (IsClose(t_[i]) && --depth == 0) return i + 1;
      if (depth <= 0) return i + 1;
    }
    return end_;
  }

  std::span<const Token> Span(std::size_t from, std::size_t to) const {
    if (to < from) to = from;
    return std::span<const Token>(t_).subspan(from, to - from);
  }

  void Note(std::string message) { m_.notes.push_back({PosOf(Tok()), std::move(message)}); }

  // --- reads --------------------------------------------------------------

  void Reads(std::size_t from, std::size_t to, const Ctx* ctx) {
    for (std::size_t i = from; i < to && i < end_; ++i) {
      const Token& t = t_[i];
      if (t.kind != TokenKind::kIdentifier || t.text.empty() || t.text[0] == '$' ||
          t.text[0] == '`') {
        continue;
      }
      if (i > 0 && t_[i - 1].kind == TokenKind::kPunct && t_[i - 1].text == ".") continue;
      if (i + 1 < end_ && t_[i + 1].kind == TokenKind::kPunct && t_[i + 1].text == "(" &&
          m_.subprograms.count(t.text) != 0) {
        continue;
      }
      m_.reads.insert(t.text);
      if (ctx != nullptr && ctx->always_index) m_.always_blocks[*ctx->always_index].reads.insert(t.text);
    }
  }

  // Skips to just past the next depth-0 ';', stopping early (without
  // consuming) at a block end or module item keyword. Identifiers are reads.
  void SkipStatement(const Ctx* ctx, bool mark_assigned = false) {
    const std::size_t from = p_;
    int depth = 0;
    while (!AtEnd()) {
      const Token& t = Tok();
      if (depth == 0 && t.kind == TokenKind::kKeyword &&
          (IsBlockEnd(t.text) || IsModuleItemStart(t.text)) && p_ != from) {
        break;
      }
      if (IsOpen(t)) ++depth;
      if (IsClose(t)) depth = std::max(0, depth - 1);
      Next();
      if (depth == 0 && t.kind == TokenKind::kPunct && t.text == ";") break;
    }
    Reads(from, p_, ctx);
    if (mark_assigned) {
      for (std::size_t i = from; i < p_; ++i) {
        if (t_[i].kind == TokenKind::kIdentifier) m_.assigned.insert(t_[i].text);
      }
    }
  }

  // --- parameters -----------------------------------------------------------

  // Parses `[parameter|localparam] [type] [ranges] name [dims] = value, ...`
  // up to `stop` (exclusive) or a depth-0 ';'.
  void ParseParamList(std::size_t stop, bool local) {
    while (p_ < stop && !AtPunct(";")) {
      const std::size_t item_start = p_;
      if (AtKw("parameter")) {
        local = false;
        Next();
      } else if (AtKw("localparam")) {
        local = true;
        Next();
      }
      int packed_ranges = 0;
      while (p_ < stop && (Tok().kind == TokenKind::kKeyword || AtPunct("["))) {
        if (AtPunct("[")) {
          ++packed_ranges;
          p_ = GroupEnd();
        } else {
          Next();
        }
      }
      // A user type name precedes the parameter name: `parameter my_t P = ...`.
      if (AtIdent() && AtIdent(1)) Next();
      Parameter param;
      if (AtIdent()) {
        param.name = Tok().text;
        param.pos = PosOf(Tok());
        Next();
      }
      param.local = local;
      param.is_array = packed_ranges >= 2;
      while (AtPunct("[")) {
        param.is_array = true;
        p_ = GroupEnd();
      }
      if (AtOp("=")) {
        Next();
        const std::size_t v = p_;
        int depth = 0;
        while (p_ < stop) {
          const Token& t = Tok();
          if (depth == 0 && t.kind == TokenKind::kPunct && (t.text == "," || t.text == ";")) break;
          if (IsOpen(t)) ++depth;
          if (IsClose(t)) --depth;
          Next();
        }
        if (p_ > v && t_[v].text == "'" && v + 1 < p_ && t_[v + 1].text == "{") param.is_array = true;
        param.value = EvalConstant(Span(v, p_), params_);
        Reads(v, p_, nullptr);
      }
      if (!param.name.empty()) {
        if (param.value) params_[param.name] = *param.value;
        if (param.is_array) {
          m_.sv_constructs.push_back({"parameter", "array-valued parameter " + param.name, param.pos});
        }
        m_.parameters.push_back(std::move(param));
      }
      if (AtPunct(",")) Next();
      if (p_ == item_start) Next();
    }
  }

  // --- ports ----------------------------------------------------------------

  BitRange RangeAt() {
    // At '[': reads `[msb:lsb]` and moves past it.
    BitRange r;
    const std::size_t close = GroupEnd();
    std::size_t colon = close;
    int depth = 0;
    for (std::size_t i = p_ + 1; i + 1 < close; ++i) {
      if (IsOpen(t_[i])) ++depth;
      if (IsClose(t_[i])) --depth;
      if (depth == 0 && t_[i].kind == TokenKind::kPunct && t_[i].text == ":") {
        colon = i;
        break;
      }
    }
    auto text = [&](std::size_t a, std::size_t b) {
      std::string s;
      for (std::size_t i = a; i < b; ++i) s += t_[i].text;
      return s;
    };
    if (colon < close) {
      r.msb_text = text(p_ + 1, colon);
      r.lsb_text = text(colon + 1, close - 1);
      r.msb = EvalConstant(Span(p_ + 1, colon), params_);
      r.lsb = EvalConstant(Span(colon + 1, close - 1), params_);
    } else {
      // `[N]` as a packed size is SV shorthand for [N-1:0].
      r.msb_text = text(p_ + 1, close - 1);
      r.lsb_text = "0";
      auto n = EvalConstant(Span(p_ + 1, close - 1), params_);
      if (n) r.msb = *n - 1;
      r.lsb = 0;
    }
    Reads(p_ + 1, close - 1, nullptr);
    p_ = close;
    return r;
  }

  void ParsePortList(std::size_t stop) {
    bool ansi = false;
    PortDirection dir = PortDirection::kInput;
    bool is_reg = false;
    std::optional<BitRange> packed;
    while (p_ < stop) {
      const std::size_t item_start = p_;
      bool saw_type = false;
      while (p_ < stop && !AtPunct(",")) {
        const Token& t = Tok();
        if (t.kind == TokenKind::kKeyword && IsDirection(t.text)) {
          ansi = true;
          dir = t.text == "input" ? PortDirection::kInput
                : t.text == "output" ? PortDirection::kOutput
                                     : PortDirection::kInout;
          is_reg = false;
          packed.reset();
          Next();
        } else if (t.kind == TokenKind::kKeyword &&
                   (IsDeclKeyword(t.text) || IsTypeModifier(t.text))) {
          if (t.text == "reg" || t.text == "logic" || t.text == "bit") is_reg = true;
          saw_type = true;
          Next();
        } else if (AtPunct("[")) {
          BitRange r = RangeAt();
          if (!packed) packed = r;
          saw_type = true;
        } else if (AtIdent() && (AtIdent(1) || AtPunct(".", 1))) {
          // Interface or user-typed port: `bus_if.master m` / `my_t x`.
          ansi = true;
          Next();
          if (AtPunct(".")) {
            Next();
            Next();
          }
          saw_type = true;
        } else if (AtIdent()) {
          Port port;
          port.name = t.text;
          port.pos = PosOf(t);
          Next();
          while (AtPunct("[")) {
            port.is_array_port = true;
            p_ = GroupEnd();
          }
          if (AtOp("=")) {
            while (p_ < stop && !AtPunct(",")) Next();
          }
          if (ansi || saw_type) {
            port.direction = dir;
            port.direction_known = true;
            port.is_reg = is_reg;
            port.packed = packed;
          }
          if (m_.FindPort(port.name) == nullptr) m_.ports.push_back(std::move(port));
        } else {
          Next();
        }
      }
      if (AtPunct(",")) Next();
      if (p_ == item_start) Next();
    }
  }

  // Body `input [7:0] a, b;` style declaration.
  void ParsePortDecl() {
    const PortDirection dir = AtKw("input")    ? PortDirection::kInput
                              : AtKw("output") ? PortDirection::kOutput
                                               : PortDirection::kInout;
    Next();
    bool is_reg = false;
    std::optional<BitRange> packed;
    while (!AtEnd() && !AtPunct(";")) {
      const Token& t = Tok();
      if (t.kind == TokenKind::kKeyword && (IsDeclKeyword(t.text) || IsTypeModifier(t.text))) {
        if (t.text == "reg" || t.text == "logic" || t.text == "bit") is_reg = true;
        Next();
      } else if (AtPunct("[")) {
        BitRange r = RangeAt();
        if (!packed) packed = r;
      } else if (AtIdent()) {
        Port port;
        port.name = t.text;
        port.pos = PosOf(t);
        Next();
        while (AtPunct("[")) {
          port.is_array_port = true;
          p_ = GroupEnd();
        }
        port.direction = dir;
        port.direction_known = true;
        port.is_reg = is_reg;
        port.packed = packed;
        auto it = std::find_if(m_.ports.begin(), m_.ports.end(),
                               [&](const Port& q) { return q.name == port.name; });
        if (it != m_.ports.end()) {
          *it = std::move(port);
        } else {
          m_.ports.push_back(std::move(port));
        }
      } else if (t.kind == TokenKind::kKeyword && IsModuleItemStart(t.text)) {
        Note("unterminated port declaration");
        return;
      } else {
        Next();
      }
    }
    if (AtPunct(";")) Next();
  }

  // --- declarations -----------------------------------------------------------

  // At a declaration keyword (or user type name when `user_type`).
  void ParseDeclaration(const Ctx& ctx, bool user_type = false) {
    const Token& kw = Tok();
    const SourcePos kw_pos = PosOf(kw);
    std::string type_keyword = kw.text;
    DeclKind kind = user_type ? DeclKind::kOther : KindOf(kw.text);
    const bool is_genvar = kw.text == "genvar";
    Next();
    // `wire logic`, `var logic` and friends: the last data keyword names the type.
    while (!AtEnd() && Tok().kind == TokenKind::kKeyword &&
           (IsDeclKeyword(Tok().text) || IsTypeModifier(Tok().text))) {
      if (IsDeclKeyword(Tok().text) && kind == DeclKind::kOther) {
        kind = KindOf(Tok().text);
        type_keyword = Tok().text;
      }
      Next();
    }
    if (AtPunct("(")) p_ = GroupEnd();  // drive strength
    std::optional<BitRange> packed;
    while (AtPunct("[")) {
      BitRange r = RangeAt();
      if (!packed) packed = r;
    }
    if (AtPunct("#")) {
      Next();
      if (AtPunct("(")) {
        p_ = GroupEnd();
      } else {
        Next();
      }
    }
    while (!AtEnd() && !AtPunct(";")) {
      if (!AtIdent()) {
        if (Tok().kind == TokenKind::kKeyword && (IsBlockEnd(Tok().text) || IsModuleItemStart(Tok().text))) {
          Note("unterminated declaration");
          return;
        }
        Next();
        continue;
      }
      Declaration d;
      d.name = Tok().text;
      d.pos = PosOf(Tok());
      d.keyword_pos = kw_pos;
      d.kind = kind;
      d.type_keyword = type_keyword;
      d.packed = packed;
      const std::size_t name_at = p_;
      Next();
      while (AtPunct("[")) {
        d.is_array = true;
        const std::size_t close = GroupEnd();
        Reads(p_ + 1, close - 1, &ctx);
        p_ = close;
      }
      if (AtOp("=")) {
        d.has_initializer = true;
        Next();
        const std::size_t v = p_;
        SkipExpression();
        Reads(v, p_, &ctx);
        m_.assigned.insert(d.name);
        if (ctx.sink != nullptr || !ctx.always_index) {
          Assignment a;
          a.lhs = d.name;
          a.pos = d.pos;
          a.kind = kind == DeclKind::kWire && !ctx.always_index ? AssignKind::kContinuous
                                                                : AssignKind::kBlocking;
          a.rhs.assign(t_.begin() + static_cast<std::ptrdiff_t>(v),
                       t_.begin() + static_cast<std::ptrdiff_t>(p_));
          if (a.kind == AssignKind::kContinuous) {
            m_.assigns_continuous.push_back(std::move(a));
          } else if (ctx.always_index) {
            m_.always_blocks[*ctx.always_index].assigns.push_back(std::move(a));
          } else {
            m_.other_assigns.push_back(std::move(a));
          }
        }
      }
      (void)name_at;
      if (is_genvar) m_.genvars.insert(d.name);
      if (ctx.always_index) {
        d.scope = DeclScope::kAlwaysBlock;
        d.always_index = ctx.always_index;
        m_.always_blocks[*ctx.always_index].local_names.insert(d.name);
      }
      if (ctx.record_decls) m_.declarations.push_back(std::move(d));
      if (AtPunct(",")) Next();
    }
    if (AtPunct(";")) Next();
  }

  // Moves past an expression ending at a depth-0 ',' or ';' (not consumed).
  void SkipExpression() {
    int depth = 0;
    while (!AtEnd()) {
      const Token& t = Tok();
      if (depth == 0 && t.kind == TokenKind::kPunct && (t.text == "," || t.text == ";")) return;
      if (depth == 0 && IsClose(t)) return;
      if (depth == 0 && t.kind == TokenKind::kKeyword &&
          (IsBlockEnd(t.text) || IsModuleItemStart(t.text))) {
        return;
      }
      if (IsOpen(t)) ++depth;
      if (IsClose(t)) --depth;
      Next();
    }
  }

  // --- statements -------------------------------------------------------------

  // Tries `lvalue op rhs`. On success consumes through the terminator (';'
  // unless `in_list`, where ',' also ends it) and returns true.
  bool TryAssignment(const Ctx& ctx, bool in_list = false, bool in_for_header = false) {
    const std::size_t start = p_;
    std::vector<std::pair<std::string, SourcePos>> targets;
    std::vector<std::optional<std::int64_t>> selects;
    bool concat = false;
    std::vector<std::pair<std::size_t, std::size_t>> index_reads;
    if (AtPunct("{")) {
      concat = true;
      const std::size_t close = GroupEnd();
      int depth = 0;
      for (std::size_t i = p_; i < close; ++i) {
        if (IsOpen(t_[i])) ++depth;
        if (IsClose(t_[i])) --depth;
        if (t_[i].kind == TokenKind::kIdentifier && depth == 1 && t_[i].text[0] != '$') {
          targets.emplace_back(t_[i].text, PosOf(t_[i]));
        } else if (t_[i].kind == TokenKind::kIdentifier) {
          index_reads.emplace_back(i, i + 1);
        }
      }
      p_ = close;
    } else if (AtIdent()) {
      targets.emplace_back(Tok().text, PosOf(Tok()));
      Next();
      while (AtPunct("[") || AtPunct(".")) {
        if (AtPunct(".")) {
          Next();
          if (AtIdent()) Next();
          continue;
        }
        const std::size_t close = GroupEnd();
        selects.push_back(SelectWidth(Span(p_ + 1, close - 1), params_));
        index_reads.emplace_back(p_ + 1, close - 1);
        p_ = close;
      }
    } else {
      return false;
    }
    AssignKind kind = ctx.continuous ? AssignKind::kContinuous : AssignKind::kBlocking;
    bool reads_lhs = false;
    bool unary = false;
    const Token& op = Tok();
    if (op.kind != TokenKind::kOperator) {
      p_ = start;
      return false;
    }
    if (op.text == "=") {
    } else if (op.text == "<=") {
      kind = AssignKind::kNonBlocking;
    } else if (op.text == "+=" || op.text == "-=" || op.text == "*=" || op.text == "/=" ||
               op.text == "%=" || op.text == "&=" || op.text == "|=" || op.text == "^=" ||
               op.text == "<<=" || op.text == ">>=" || op.text == "<<<=" || op.text == ">>>=") {
      reads_lhs = true;
    } else if (op.text == "++" || op.text == "--") {
      reads_lhs = true;
      unary = true;
    } else {
      p_ = start;
      return false;
    }
    Next();
    if (AtPunct("#")) {
      Next();
      if (AtPunct("(")) {
        p_ = GroupEnd();
      } else {
        Next();
      }
    } else if (AtPunct("@")) {
      Next();
      if (AtPunct("(")) {
        p_ = GroupEnd();
      } else {
        Next();
      }
    }
    const std::size_t rhs_from = p_;
    if (!unary) {
      int depth = 0;
      while (!AtEnd()) {
        const Token& t = Tok();
        if (depth == 0 && t.kind == TokenKind::kPunct &&
            (t.text == ";" || (in_list && t.text == ","))) {
          break;
        }
        if (depth == 0 && in_for_header && IsClose(t)) break;
        if (depth == 0 && t.kind == TokenKind::kKeyword &&
            (IsBlockEnd(t.text) || IsModuleItemStart(t.text) || t.text == "else")) {
          break;
        }
        if (IsOpen(t)) ++depth;
        if (IsClose(t)) --depth;
        Next();
      }
    }
    const std::size_t rhs_to = p_;
    Reads(rhs_from, rhs_to, &ctx);
    for (const auto& [a, b] : index_reads) Reads(a, b, &ctx);
    for (const auto& [name, pos] : targets) {
      m_.assigned.insert(name);
      if (reads_lhs) {
        m_.reads.insert(name);
        if (ctx.always_index) m_.always_blocks[*ctx.always_index].reads.insert(name);
      }
      Assignment a;
      a.lhs = name;
      a.kind = kind;
      a.lhs_selects = selects;
      a.lhs_is_concatenation = concat;
      a.pos = pos;
      if (!reads_lhs) {
        a.rhs.assign(t_.begin() + static_cast<std::ptrdiff_t>(rhs_from),
                     t_.begin() + static_cast<std::ptrdiff_t>(rhs_to));
      }
      if (ctx.sink != nullptr) ctx.sink->push_back(std::move(a));
    }
    if (AtPunct(";") || (in_list && AtPunct(","))) Next();
    return true;
  }

  void ParseStatement(const Ctx& ctx) {
    if (AtEnd()) return;
    const Token& t = Tok();
    if (t.kind == TokenKind::kKeyword) {
      const std::string& w = t.text;
      if (IsBlockEnd(w) || IsModuleItemStart(w)) return;
      if (w == "begin" || w == "fork") {
        Next();
        SkipLabel();
        ParseBlockBody(ctx);
        if (!AtEnd() && Tok().kind == TokenKind::kKeyword &&
            (AtKw("end") || AtKw("join") || AtKw("join_any") || AtKw("join_none"))) {
          Next();
          SkipLabel();
        } else {
          Note("missing 'end'");
        }
        return;
      }
      if (w == "if") {
        Next();
        ParenReads(ctx);
        ParseStatement(ctx);
        if (AtKw("else")) {
          Next();
          ParseStatement(ctx);
        }
        return;
      }
      if (w == "unique" || w == "priority" || w == "unique0") {
        Next();
        ParseStatement(ctx);
        return;
      }
      if (w == "case" || w == "casex" || w == "casez") {
        ParseCase(ctx);
        return;
      }
      if (w == "for") {
        Next();
        ParseForHeader(ctx);
        ParseStatement(ctx);
        return;
      }
      if (w == "while" || w == "repeat" || w == "wait") {
        Next();
        ParenReads(ctx);
        ParseStatement(ctx);
        return;
      }
      if (w == "forever") {
        Next();
        ParseStatement(ctx);
        return;
      }
      if (IsDeclKeyword(w)) {
        ParseDeclaration(ctx);
        return;
      }
      if (w == "assign" || w == "force" || w == "deassign" || w == "release") {
        Next();
        if (!TryAssignment(ctx)) SkipStatement(&ctx);
        return;
      }
      if (IsDirection(w)) {  // task/function arguments
        SkipStatement(&ctx);
        return;
      }
      if (w == "parameter" || w == "localparam") {
        const bool local = w == "localparam";
        Next();
        ParseParamList(end_, local);
        if (AtPunct(";")) Next();
        return;
      }
      Note("skipped statement starting with '" + w + "'");
      SkipStatement(&ctx);
      return;
    }
    if (AtPunct(";")) {
      Next();
      return;
    }
    if (AtPunct("#")) {
      Next();
      if (AtPunct("(")) {
        p_ = GroupEnd();
      } else {
        Next();
      }
      ParseStatement(ctx);
      return;
    }
    if (AtPunct("@")) {
      Next();
      if (AtPunct("(")) {
        ParenReads(ctx);
      } else {
        Next();
      }
      ParseStatement(ctx);
      return;
    }
    if (AtIdent() && AtIdent(1) && (AtPunct(";", 2) || AtPunct(",", 2) || AtOp("=", 2) ||
                                    AtPunct("[", 2))) {
      ParseDeclaration(ctx, true);  // user-typed local
      return;
    }
    if (AtIdent() || AtPunct("{")) {
      if (TryAssignment(ctx)) return;
    }
    SkipStatement(&ctx);
  }

  void ParseBlockBody(const Ctx& ctx) {
    while (!AtEnd()) {
      const Token& t = Tok();
      if (t.kind == TokenKind::kKeyword &&
          (t.text == "end" || t.text == "join" || t.text == "join_any" || t.text == "join_none" ||
           t.text == "endcase" || t.text == "endmodule" || t.text == "endfunction" ||
           t.text == "endtask" || IsModuleItemStart(t.text))) {
        return;
      }
      const std::size_t before = p_;
      ParseStatement(ctx);
      if (p_ == before) {
        Note("unexpected '" + t.text + "'");
        Next();
      }
    }
  }

  void SkipLabel() {
    if (AtPunct(":")) {
      Next();
      if (AtIdent()) Next();
    }
  }

  void ParenReads(const Ctx& ctx) {
    if (!AtPunct("(")) return;
    const std::size_t close = GroupEnd();
    Reads(p_ + 1, close - 1, &ctx);
    p_ = close;
  }

  void ParseForHeader(const Ctx& ctx) {
    if (!AtPunct("(")) return;
    const std::size_t close = GroupEnd();
    Next();
    // init ; cond ; step
    for (int part = 0; part < 3 && p_ < close - 1; ++part) {
      const std::size_t part_start = p_;
      if (part != 1) {
        while (Tok().kind == TokenKind::kKeyword && p_ < close - 1) {
          if (Tok().text == "genvar") {
            if (AtIdent(1)) m_.genvars.insert(Tok(1).text);
          }
          Next();
        }
        while (p_ < close - 1 && !AtPunct(";")) {
          const std::size_t before = p_;
          if (!(AtIdent() && TryAssignment(ctx, true, true))) {
            Next();
          }
          if (AtPunct(",")) Next();
          if (p_ == before) Next();
        }
      } else {
        while (p_ < close - 1 && !AtPunct(";")) Next();
        Reads(part_start, p_, &ctx);
      }
      if (AtPunct(";")) Next();
    }
    p_ = close;
  }

  void ParseCase(const Ctx& ctx) {
    CaseStatement cs;
    cs.pos = PosOf(Tok());
    Next();
    ParenReads(ctx);
    if (AtKw("inside")) Next();
    while (!AtEnd() && !AtKw("endcase")) {
      const Token& t = Tok();
      if (t.kind == TokenKind::kKeyword && (IsModuleItemStart(t.text) || t.text == "end")) {
        Note("missing endcase");
        break;
      }
      const std::size_t before = p_;
      if (AtKw("default")) {
        cs.has_default = true;
        Next();
        if (AtPunct(":")) Next();
        ParseStatement(ctx);
      } else {
        const std::size_t from = p_;
        int depth = 0;
        while (!AtEnd()) {
          const Token& u = Tok();
          if (depth == 0 && u.kind == TokenKind::kPunct && (u.text == ":" || u.text == ";")) break;
          if (depth == 0 && u.kind == TokenKind::kKeyword && (u.text == "endcase" || u.text == "end")) break;
          if (IsOpen(u)) ++depth;
          if (IsClose(u)) --depth;
          Next();
        }
        Reads(from, p_, &ctx);
        if (AtPunct(":")) {
          Next();
          ParseStatement(ctx);
        } else if (AtPunct(";")) {
          Next();
        }
      }
      if (p_ == before) Next();
    }
    if (AtKw("endcase")) Next();
    if (ctx.always_index) {
      auto& block = m_.always_blocks[*ctx.always_index];
      block.cases.push_back(cs);
      if (!cs.has_default) block.has_case_without_default = true;
    }
  }

  // --- module items -----------------------------------------------------------

  void ParseAlways() {
    AlwaysBlock block;
    block.keyword = Tok().text;
    block.pos = PosOf(Tok());
    block.first_token = orig_[p_];
    Next();
    if (block.keyword == "always_comb" || block.keyword == "always_latch") {
      block.sensitivity_kind = SensitivityKind::kStar;
    } else if (block.keyword == "always_ff") {
      block.sensitivity_kind = SensitivityKind::kEdge;
    }
    if (AtPunct("@")) {
      const std::size_t at = p_;
      Next();
      if (AtOp("*")) {
        block.sensitivity_kind = SensitivityKind::kStar;
        Next();
      } else if (AtPunct("(")) {
        const std::size_t close = GroupEnd();
        bool edge = false;
        bool star = false;
        for (std::size_t i = p_ + 1; i + 1 < close; ++i) {
          const Token& u = t_[i];
          if (u.kind == TokenKind::kKeyword && (u.text == "posedge" || u.text == "negedge")) edge = true;
          if (u.kind == TokenKind::kOperator && u.text == "*") star = true;
          if (u.kind == TokenKind::kIdentifier && u.text[0] != '$' &&
              std::find(block.sensitivity_signals.begin(), block.sensitivity_signals.end(),
                        u.text) == block.sensitivity_signals.end()) {
            block.sensitivity_signals.push_back(u.text);
          }
        }
        if (block.keyword != "always_ff") {
          block.sensitivity_kind = edge   ? SensitivityKind::kEdge
                                   : star ? SensitivityKind::kStar
                                          : SensitivityKind::kExplicit;
        }
        p_ = close;
      } else if (AtIdent()) {
        block.sensitivity_signals.push_back(Tok().text);
        if (block.keyword == "always") block.sensitivity_kind = SensitivityKind::kExplicit;
        Next();
      }
      for (std::size_t i = orig_[at]; i < (p_ < end_ ? orig_[p_] : all_.size()); ++i) {
        block.sensitivity += all_[i].text;
      }
      while (!block.sensitivity.empty() &&
             (block.sensitivity.back() == ' ' || block.sensitivity.back() == '\n' ||
              block.sensitivity.back() == '\t' || block.sensitivity.back() == '\r')) {
        block.sensitivity.pop_back();
      }
    }
    const std::size_t index = m_.always_blocks.size();
    m_.always_blocks.push_back(std::move(block));
    Ctx ctx;
    ctx.always_index = index;
    ctx.record_decls = true;
    ctx.sink = &scratch_;
    scratch_.clear();
    ParseStatement(ctx);
    auto& b = m_.always_blocks[index];
    for (auto& a : scratch_) b.assigns.push_back(std::move(a));
    scratch_.clear();
    b.last_token = p_ < end_ ? orig_[p_] : (end_ > 0 ? orig_[end_ - 1] + 1 : 0);
  }

  void ParseSubprogram() {
    const bool is_function = AtKw("function");
    const std::string_view closer = is_function ? "endfunction" : "endtask";
    Next();
    // Name: the identifier right before the first '(' or ';'.
    std::string name;
    while (!AtEnd() && !AtPunct("(") && !AtPunct(";")) {
      if (AtIdent()) name = Tok().text;
      if (AtPunct("[")) {
        p_ = GroupEnd();
        continue;
      }
      Next();
    }
    if (!name.empty()) m_.subprograms.insert(name);
    if (AtPunct("(")) p_ = GroupEnd();
    if (AtPunct(";")) Next();
    std::vector<Assignment> discard;
    Ctx ctx;
    ctx.sink = is_function ? &discard : &m_.other_assigns;
    while (!AtEnd() && !AtKw(closer) && !AtKw("endmodule")) {
      const std::size_t before = p_;
      ParseStatement(ctx);
      if (p_ == before) Next();
    }
    if (AtKw(closer)) {
      Next();
      SkipLabel();
    } else {
      Note(std::string("missing ") + std::string(closer));
    }
  }

  void ParseContinuousAssign() {
    Next();  // assign
    if (AtPunct("(")) p_ = GroupEnd();  // drive strength
    if (AtPunct("#")) {
      Next();
      if (AtPunct("(")) {
        p_ = GroupEnd();
      } else {
        Next();
      }
    }
    Ctx ctx;
    ctx.continuous = true;
    ctx.sink = &m_.assigns_continuous;
    while (!AtEnd()) {
      const std::size_t before = p_;
      if (!TryAssignment(ctx, true)) {
        Note("malformed continuous assignment");
        SkipStatement(nullptr);
        return;
      }
      if (p_ == before || (p_ > 0 && t_[p_ - 1].text == ";")) return;
      if (!AtIdent() && !AtPunct("{")) return;
    }
  }

  void ParseItems() {
    Ctx module_ctx;
    module_ctx.record_decls = true;
    while (!AtEnd()) {
      const Token& t = Tok();
      const std::size_t before = p_;
      if (t.kind == TokenKind::kKeyword) {
        const std::string& w = t.text;
        if (w == "endmodule") return;
        if (w == "module" || w == "macromodule") {
          return;  // next module begins; endmodule was missing
        }
        if (IsDirection(w)) {
          ParsePortDecl();
        } else if (w == "parameter" || w == "localparam") {
          Next();
          ParseParamList(end_, w == "localparam");
          if (AtPunct(";")) Next();
        } else if (IsDeclKeyword(w)) {
          Ctx ctx = module_ctx;
          ParseDeclaration(ctx);
        } else if (w == "assign") {
          ParseContinuousAssign();
        } else if (w == "always" || w == "always_ff" || w == "always_comb" ||
                   w == "always_latch") {
          ParseAlways();
        } else if (w == "initial" || w == "final") {
          Next();
          Ctx ctx;
          ctx.sink = &m_.other_assigns;
          ParseStatement(ctx);
        } else if (w == "function" || w == "task") {
          ParseSubprogram();
        } else if (w == "generate" || w == "endgenerate" || w == "else" || w == "end") {
          Next();
          SkipLabel();
        } else if (w == "begin") {
          Next();
          SkipLabel();
        } else if (w == "if") {
          Next();
          ParenReads(module_ctx);
        } else if (w == "for") {
          Next();
          Ctx ctx;
          ParseForHeader(ctx);
        } else if (w == "case") {
          SkipPast("endcase");
        } else if (w == "specify") {
          SkipPast("endspecify");
        } else if (w == "defparam" || w == "typedef" || w == "import" || w == "enum" ||
                   w == "struct" || w == "union") {
          SkipStatement(nullptr);
        } else {
          // Gate primitives and anything unrecognized connect their operands.
          SkipStatement(nullptr, true);
        }
      } else if (AtPunct(";")) {
        Next();
      } else if (AtIdent() && AtIdent(1) &&
                 (AtPunct(";", 2) || AtPunct(",", 2) || AtOp("=", 2) || AtPunct("[", 2))) {
        ParseDeclaration(module_ctx, true);
      } else if (AtIdent()) {
        // Instantiation: every connected net may be read or driven.
        SkipStatement(nullptr, true);
      } else {
        Note("skipped '" + t.text + "'");
        SkipStatement(nullptr);
      }
      if (p_ == before) Next();
    }
  }

  void SkipPast(std::string_view closer) {
    const std::size_t from = p_;
    while (!AtEnd() && !AtKw(closer) && !AtKw("endmodule")) Next();
    Reads(from, p_, nullptr);
    if (AtKw(closer)) Next();
  }

  // --- post-processing -----------------------------------------------------

  void CollectSvConstructs() {
    const std::size_t first = first_sig_;
    for (std::size_t i = first; i < p_ && i < end_; ++i) {
      const Token& t = t_[i];
      if (t.kind == TokenKind::kKeyword && IsSvOnlyKeyword(t.text)) {
        m_.sv_constructs.push_back({t.text, "", PosOf(t)});
      }
    }
    std::stable_sort(m_.sv_constructs.begin(), m_.sv_constructs.end(),
                     [](const SvConstruct& a, const SvConstruct& b) { return a.pos < b.pos; });
  }

  std::optional<SignalShape> Lookup(const std::string& name) const {
    const Port* port = m_.FindPort(name);
    const Declaration* decl = m_.FindDeclaration(name);
    if (decl == nullptr) {
      for (const auto& d : m_.declarations) {
        if (d.name == name) {
          decl = &d;
          break;
        }
      }
    }
    if (port == nullptr && decl == nullptr) return std::nullopt;
    SignalShape s;
    if (port != nullptr && (port->packed || decl == nullptr)) {
      s.width = port->width();
      s.is_array = port->is_array_port || (decl != nullptr && decl->is_array);
    } else {
      s.width = decl->width();
      s.is_array = decl->is_array || (port != nullptr && port->is_array_port);
    }
    return s;
  }

  void Fill(Assignment& a) const {
    if (!a.lhs_is_concatenation) {
      auto shape = Lookup(a.lhs);
      std::optional<std::int64_t> w = shape ? shape->width : std::optional<std::int64_t>(1);
      std::size_t i = 0;
      if (shape && shape->is_array && !a.lhs_selects.empty()) i = 1;  // element select
      if (i < a.lhs_selects.size()) w = a.lhs_selects[i];
      a.lhs_width = w;
    }
    if (!a.rhs.empty()) {
      auto est = EstimateWidth(a.rhs, params_, [this](const std::string& n) { return Lookup(n); });
      a.rhs_width_estimate = est.width;
      a.rhs_has_multiply = est.has_multiply;
    }
  }

  void ComputeWidths() {
    for (auto& b : m_.always_blocks) {
      for (auto& a : b.assigns) Fill(a);
    }
    for (auto& a : m_.assigns_continuous) Fill(a);
    for (auto& a : m_.other_assigns) Fill(a);
  }

 public:
  void set_first_sig(std::size_t i) { first_sig_ = i; }

 private:
  const std::vector<Token>& t_;
  const std::vector<std::size_t>& orig_;
  const std::vector<Token>& all_;
  std::size_t p_;
  std::size_t end_;
  std::size_t first_sig_ = 0;
  ModuleTree m_;
  ParamValues params_;
  std::vector<Assignment> scratch_;
};

bool IsModuleKeyword(const Token& t) {
  return t.kind == TokenKind::kKeyword && (t.text == "module" || t.text == "macromodule");
}

}  // namespace

std::vector<ModuleTree> ParseModules(const std::vector<Token>& tokens) {
  std::vector<Token> sig;
  std::vector<std::size_t> orig;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!tokens[i].is_trivia()) {
      sig.push_back(tokens[i]);
      orig.push_back(i);
    }
  }
  std::vector<ModuleTree> out;
  std::size_t i = 0;
  while (i < sig.size()) {
    if (!IsModuleKeyword(sig[i])) {
      ++i;
      continue;
    }
    // Region ends at the matching endmodule or just before the next module.
    std::size_t end = i + 1;
    while (end < sig.size() && !IsModuleKeyword(sig[end]) &&
           !(sig[end].kind == TokenKind::kKeyword && sig[end].text == "endmodule")) {
      ++end;
    }
    if (end < sig.size() && sig[end].text == "endmodule") {
      ++end;
      if (end + 1 < sig.size() && sig[end].kind == TokenKind::kPunct && sig[end].text == ":" &&
          sig[end + 1].kind == TokenKind::kIdentifier) {
        end += 2;
      }
    }
    ModuleParser parser(sig, orig, tokens, i, end);
    parser.set_first_sig(i);
    out.push_back(parser.Run());
    i = end;
  }
  return out;
}

ModuleTree ParseModule(const std::vector<Token>& tokens) {
  auto modules = ParseModules(tokens);
  if (modules.empty()) throw Error(ErrorCode::kNoModuleHeader, "no 'module' keyword found");
  return std::move(modules.front());
}

}  // namespace nls::hdl

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
#include <array>
#include <unordered_set>

#include "nls/hdl/token.hpp"

namespace nls::hdl {

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kNumber: return "number";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kPunct: return "punct";
    case TokenKind::kString: return "string";
    case TokenKind::kComment: return "comment";
    case TokenKind::kWhitespace: return "whitespace";
  }
  return "operator";
}

namespace {

const std::unordered_set<std::string_view>& Keywords() {
  static const std::unordered_set<std::string_view> kWords = {
      // Verilog-2005
      "always", "and", "assign", "automatic", "begin", "buf", "bufif0", "bufif1", "case",
      "casex", "casez", "cell", "cmos", "config", "deassign", "default", "defparam", "design",
      "disable", "edge", "else", "end", "endcase", "endconfig", "endfunction", "endgenerate",
      "endmodule", "endprimitive", "endspecify", "endtable", "endtask", "event", "for", "force",
      "forever", "fork", "function", "generate", "genvar", "highz0", "highz1", "if", "ifnone",
      "incdir", "include", "initial", "inout", "input", "instance", "integer", "join", "large",
      "liblist", "library", "localparam", "macromodule", "medium", "module", "nand", "negedge",
      "nmos", "nor", "noshowcancelled", "not", "notif0", "notif1", "or", "output", "parameter",
      "pmos", "posedge", "primitive", "pull0", "pull1", "pulldown", "pullup",
      "pulsestyle_onevent", "pulsestyle_ondetect", "rcmos", "real", "realtime", "reg",
      "release", "repeat", "rnmos", "rpmos", "rtran", "rtranif0", "rtranif1", "scalared",
      "showcancelled", "signed", "small", "specify", "specparam", "strong0", "strong1",
      "supply0", "supply1", "table", "task", "time", "tran", "tranif0", "tranif1", "tri",
      "tri0", "tri1", "triand", "trior", "trireg", "unsigned", "use", "uwire", "vectored",
      "wait", "wand", "weak0", "weak1", "while", "wire", "wor", "xnor", "xor",
      // SystemVerilog constructs the parser needs to recognize
      "always_comb", "always_ff", "always_latch", "logic", "bit", "byte", "int", "shortint",
      "longint", "typedef", "enum", "struct", "union", "packed", "interface", "endinterface",
      "modport", "package", "endpackage", "import", "unique", "priority", "join_any",
      "join_none",
  };
  return kWords;
}

constexpr std::array<std::string_view, 6> kSvOnly = {"typedef", "logic", "always_ff",
                                                     "always_comb", "enum", "interface"};

// Longest first within each length class.
constexpr std::array<std::string_view, 48> kOperators = {
    "<<<=", ">>>=", "===", "!==", "<<<", ">>>", "<<=", ">>=", "==?", "!=?", "<->", "|->",
    "|=>",  "==",   "!=",  "<=",  ">=",  "&&",  "||",  "<<",  ">>",  "**",  "~&",  "~|",
    "~^",   "^~",   "->",  "+:",  "-:",  "::",  "++",  "--",  "+=",  "-=",  "*=",  "/=",
    "%=",   "&=",   "|=",  "^=",  "##",  ".*",  "+",   "-",   "*",   "/",   "%",   "<",
};
constexpr std::string_view kSingleOperators = "+-*/%<>!~&|^=?'";
constexpr std::string_view kPunctuation = "()[]{};,.:#@";

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool IsIdentChar(char c) {
  return IsIdentStart(c) || (c >= '0' && c <= '9') || c == '$';
}
bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool IsBasedDigit(char c) {
  return IsDigit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F') || c == 'x' ||
         c == 'X' || c == 'z' || c == 'Z' || c == '?' || c == '_';
}
bool IsBaseLetter(char c) {
  return c == 'b' || c == 'B' || c == 'o' || c == 'O' || c == 'd' || c == 'D' || c == 'h' ||
         c == 'H';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      const std::size_t start = pos_;
      const TokenKind kind = Scan();
      Token t;
      t.kind = kind;
      t.text = std::string(src_.substr(start, pos_ - start));
      t.line = line_;
      t.col = col_;
      t.offset = start;
      Advance(t.text);
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  char At(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }

  // Moves pos_ past one token and returns its kind. Always consumes >= 1 byte.
  TokenKind Scan() {
    const char c = src_[pos_];
    if (IsSpace(c)) {
      while (pos_ < src_.size() && IsSpace(src_[pos_])) ++pos_;
      return TokenKind::kWhitespace;
    }
    if (c == '/' && At(pos_ + 1) == '/') {
      while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      return TokenKind::kComment;
    }
    if (c == '/' && At(pos_ + 1) == '*') {
      const auto end = src_.find("*/", pos_ + 2);
      pos_ = end == std::string_view::npos ? src_.size() : end + 2;
      return TokenKind::kComment;
    }
    if (c == '"') {
      ++pos_;
      while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] != '\n') ++pos_;
        ++pos_;
      }
      if (pos_ < src_.size() && src_[pos_] == '"') ++pos_;
      return TokenKind::kString;
    }
    if (IsIdentStart(c)) {
      while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
      const auto word = src_.substr(token_start_, pos_ - token_start_);
      return IsKeyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier;
    }
    if ((c == '$' || c == '`') && IsIdentStart(At(pos_ + 1))) {
      ++pos_;
      while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
      return TokenKind::kIdentifier;
    }
    if (c == '\\' && pos_ + 1 < src_.size() && !IsSpace(src_[pos_ + 1])) {
      while (pos_ < src_.size() && !IsSpace(src_[pos_])) ++pos_;
      return TokenKind::kIdentifier;
    }
    if (IsDigit(c)) {
      ScanDecimal();
      if (At(pos_) == '\'') ScanBasedSuffix();
      return TokenKind::kNumber;
    }
    if (c == '\'') {
      const std::size_t save = pos_;
      if (ScanBasedSuffix()) return TokenKind::kNumber;
      pos_ = save;
      const char n = At(pos_ + 1);
      if (n == '0' || n == '1' || n == 'x' || n == 'X' || n == 'z' || n == 'Z') {
        if (!IsIdentChar(At(pos_ + 2))) {
          pos_ += 2;
          return TokenKind::kNumber;
        }
      }
      ++pos_;
      return TokenKind::kOperator;
    }
    if (kPunctuation.find(c) != std::string_view::npos) {
      if (c == '.' && At(pos_ + 1) == '*') {
        pos_ += 2;
        return TokenKind::kOperator;
      }
      if (c == ':' && At(pos_ + 1) == ':') {
        pos_ += 2;
        return TokenKind::kOperator;
      }
      if (c == '#' && At(pos_ + 1) == '#') {
        pos_ += 2;
        return TokenKind::kOperator;
      }
      ++pos_;
      return TokenKind::kPunct;
    }
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return TokenKind::kOperator;
      }
    }
    if (kSingleOperators.find(c) != std::string_view::npos) {
      ++pos_;
      return TokenKind::kOperator;
    }
    // Unknown byte. Keep a UTF-8 sequence together.
    ++pos_;
    if (static_cast<unsigned char>(c) >= 0xC0) {
      while (pos_ < src_.size() && (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80) ++pos_;
    }
    return TokenKind::kOperator;
  }

  void ScanDecimal() {
    while (pos_ < src_.size() && (IsDigit(src_[pos_]) || src_[pos_] == '_')) ++pos_;
    if (At(pos_) == '.' && IsDigit(At(pos_ + 1))) {
      ++pos_;
      while (pos_ < src_.size() && (IsDigit(src_[pos_]) || src_[pos_] == '_')) ++pos_;
    }
    if ((At(pos_) == 'e' || At(pos_) == 'E') &&
        (IsDigit(At(pos_ + 1)) ||
         ((At(pos_ + 1) == '+' || At(pos_ + 1) == '-') && IsDigit(At(pos_ + 2))))) {
      pos_ += 2;
      while (pos_ < src_.size() && IsDigit(src_[pos_])) ++pos_;
    }
  }

  // At a quote: 's'? base digits. Returns false (pos unchanged) if no match.
  bool ScanBasedSuffix() {
    std::size_t p = pos_ + 1;
    if (At(p) == 's' || At(p) == 'S') ++p;
    if (!IsBaseLetter(At(p))) return false;
    ++p;
    if (!IsBasedDigit(At(p))) return false;
    while (p < src_.size() && IsBasedDigit(src_[p])) ++p;
    pos_ = p;
    return true;
  }

  void Advance(std::string_view text) {
    for (char ch : text) {
      if (ch == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
    token_start_ = pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

}  // namespace

std::vector<Token> Tokenize(std::string_view source) { return Lexer(source).Run(); }

bool IsKeyword(std::string_view word) { return Keywords().count(word) != 0; }

bool IsSvOnlyKeyword(std::string_view word) {
  return std::find(kSvOnly.begin(), kSvOnly.end(), word) != kSvOnly.end();
}

}  // namespace nls::hdl

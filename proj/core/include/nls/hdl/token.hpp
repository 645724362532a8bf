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

#ifndef NLS_HDL_TOKEN_HPP_
#define NLS_HDL_TOKEN_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nls::hdl {

enum class TokenKind {
  kKeyword,
  kIdentifier,  // also system names ($display) and directives (`define)
  kNumber,
  kOperator,    // also any byte the lexer does not recognize
  kPunct,
  kString,
  kComment,
  kWhitespace,
};

std::string_view TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kOperator;
  std::string text;
  std::uint32_t line = 1;  // 1-based
  std::uint32_t col = 1;   // 1-based, in bytes
  std::size_t offset = 0;  // byte offset into the source

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_trivia() const { return kind == TokenKind::kComment || kind == TokenKind::kWhitespace; }
};

// Lossless: concatenating every token's text reproduces `source` exactly.
// Never fails; unterminated comments and strings run to end of input (or end
// of line for strings).
std::vector<Token> Tokenize(std::string_view source);

// Verilog-2005 plus SystemVerilog keywords.
bool IsKeyword(std::string_view word);

// Keywords whose presence marks code as SystemVerilog for classification and
// for the SV-in-Verilog check.
bool IsSvOnlyKeyword(std::string_view word);

}  // namespace nls::hdl

#endif  // NLS_HDL_TOKEN_HPP_

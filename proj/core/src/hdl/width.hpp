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

// Constant folding and result-width estimation over token spans.

#ifndef NLS_HDL_WIDTH_HPP_
#define NLS_HDL_WIDTH_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "nls/hdl/token.hpp"

namespace nls::hdl {

using ParamValues = std::map<std::string, std::int64_t, std::less<>>;

struct NumberLiteral {
  std::optional<std::int64_t> width;  // nullopt when unsized
  std::optional<std::int64_t> value;  // nullopt with x/z digits or overflow
  bool is_real = false;
};

std::optional<NumberLiteral> ParseNumberLiteral(std::string_view text);

// Bits needed to hold a non-negative value; at least 1.
std::int64_t BitLength(std::int64_t value);

// Integer constant expression over numbers and parameters: + - * / % **
// << >> unary minus, parentheses and $clog2. Tokens must be significant
// (no trivia).
std::optional<std::int64_t> EvalConstant(std::span<const Token> tokens, const ParamValues& params);

// Width of the bracket contents of one select: `[i]` is 1, `[a:b]` is
// |a-b|+1 and `[b+:w]` / `[b-:w]` is w.
std::optional<std::int64_t> SelectWidth(std::span<const Token> inner, const ParamValues& params);

struct SignalShape {
  std::optional<std::int64_t> width;  // packed width
  bool is_array = false;
};

struct WidthEstimate {
  std::optional<std::int64_t> width;  // nullopt: expression not estimable
  bool has_multiply = false;
};

// Width rules: a*b -> wa+wb; a+b, a-b -> max(wa, wb); a<<n -> wa+n and
// a>>n -> wa-n for constant n; selects give their own width; $signed and
// $unsigned pass through. Any other operator makes the estimate nullopt.
// Unknown identifiers count as 1 bit.
WidthEstimate EstimateWidth(
    std::span<const Token> tokens, const ParamValues& params,
    const std::function<std::optional<SignalShape>(const std::string&)>& lookup);

}  // namespace nls::hdl

#endif  // NLS_HDL_WIDTH_HPP_

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

#include "hdl/width.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace nls::hdl {

namespace {

constexpr std::int64_t kMaxValue = std::numeric_limits<std::int64_t>::max() / 4;

int DigitValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::optional<std::int64_t> SafeMul(std::int64_t a, std::int64_t b) {
  if (a != 0 && (std::abs(b) > kMaxValue / std::max<std::int64_t>(1, std::abs(a)))) return std::nullopt;
  return a * b;
}

// Cursor over a span of significant tokens.
class Cursor {
 public:
  explicit Cursor(std::span<const Token> toks) : toks_(toks) {}

  bool done() const { return pos_ >= toks_.size(); }
  const Token* peek(std::size_t k = 0) const {
    return pos_ + k < toks_.size() ? &toks_[pos_ + k] : nullptr;
  }
  bool at(std::string_view text) const {
    const Token* t = peek();
    return t != nullptr && t->text == text &&
           (t->kind == TokenKind::kOperator || t->kind == TokenKind::kPunct);
  }
  void next() { ++pos_; }
  std::size_t pos() const { return pos_; }

  // Index just past the bracket group that starts at pos_ (which must be an
  // opening bracket), or npos when unbalanced.
  std::size_t MatchingClose() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const auto& t = toks_[i];
      if (t.kind != TokenKind::kPunct) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
      if (t.text == ")" || t.text == "]" || t.text == "}") {
        if (--depth == 0) return i + 1;
      }
    }
    return std::string_view::npos;
  }

  std::span<const Token> slice(std::size_t from, std::size_t to) const {
    return toks_.subspan(from, to - from);
  }

 private:
  std::span<const Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Constant folding

class ConstEval {
 public:
  ConstEval(std::span<const Token> toks, const ParamValues& params) : c_(toks), params_(params) {}

  std::optional<std::int64_t> Run() {
    auto v = Shift();
    if (!v || !c_.done()) return std::nullopt;
    return v;
  }

 private:
  std::optional<std::int64_t> Shift() {
    auto lhs = Add();
    while (lhs && (c_.at("<<") || c_.at(">>") || c_.at("<<<") || c_.at(">>>"))) {
      const bool left = c_.peek()->text[0] == '<';
      c_.next();
      auto rhs = Add();
      if (!rhs || *rhs < 0 || *rhs > 62) return std::nullopt;
      lhs = left ? SafeMul(*lhs, std::int64_t{1} << *rhs) : std::optional(*lhs >> *rhs);
    }
    return lhs;
  }

  std::optional<std::int64_t> Add() {
    auto lhs = Mul();
    while (lhs && (c_.at("+") || c_.at("-"))) {
      const bool plus = c_.peek()->text == "+";
      c_.next();
      auto rhs = Mul();
      if (!rhs) return std::nullopt;
      lhs = plus ? *lhs + *rhs : *lhs - *rhs;
    }
    return lhs;
  }

  std::optional<std::int64_t> Mul() {
    auto lhs = Pow();
    while (lhs && (c_.at("*") || c_.at("/") || c_.at("%"))) {
      const char op = c_.peek()->text[0];
      c_.next();
      auto rhs = Pow();
      if (!rhs) return std::nullopt;
      if (op == '*') {
        lhs = SafeMul(*lhs, *rhs);
      } else {
        if (*rhs == 0) return std::nullopt;
        lhs = op == '/' ? *lhs / *rhs : *lhs % *rhs;
      }
    }
    return lhs;
  }

  std::optional<std::int64_t> Pow() {
    auto base = Unary();
    if (base && c_.at("**")) {
      c_.next();
      auto exp = Pow();
      if (!exp || *exp < 0 || *exp > 62) return std::nullopt;
      std::optional<std::int64_t> r = 1;
      for (std::int64_t i = 0; i < *exp && r; ++i) r = SafeMul(*r, *base);
      return r;
    }
    return base;
  }

  std::optional<std::int64_t> Unary() {
    if (c_.at("-")) {
      c_.next();
      auto v = Unary();
      return v ? std::optional(-*v) : std::nullopt;
    }
    if (c_.at("+")) {
      c_.next();
      return Unary();
    }
    return Primary();
  }

  std::optional<std::int64_t> Primary() {
    const Token* t = c_.peek();
    if (t == nullptr) return std::nullopt;
    if (t->kind == TokenKind::kNumber) {
      c_.next();
      auto lit = ParseNumberLiteral(t->text);
      if (!lit || lit->is_real) return std::nullopt;
      return lit->value;
    }
    if (c_.at("(")) {
      c_.next();
      auto v = Shift();
      if (!c_.at(")")) return std::nullopt;
      c_.next();
      return v;
    }
    if (t->kind == TokenKind::kIdentifier) {
      if (t->text == "$clog2") {
        c_.next();
        if (!c_.at("(")) return std::nullopt;
        c_.next();
        auto v = Shift();
        if (!v || !c_.at(")")) return std::nullopt;
        c_.next();
        std::int64_t bits = 0;
        while ((std::int64_t{1} << bits) < *v) ++bits;
        return bits;
      }
      auto it = params_.find(t->text);
      if (it == params_.end()) return std::nullopt;
      c_.next();
      return it->second;
    }
    return std::nullopt;
  }

  Cursor c_;
  const ParamValues& params_;
};

// ---------------------------------------------------------------------------
// Width estimation

struct Est {
  std::optional<std::int64_t> width;
  std::optional<std::int64_t> constant;
  bool has_multiply = false;
  bool ok = true;  // false once an unsupported construct is seen
};

class WidthEval {
 public:
  WidthEval(std::span<const Token> toks, const ParamValues& params,
            const std::function<std::optional<SignalShape>(const std::string&)>& lookup)
      : c_(toks), params_(params), lookup_(lookup) {}

  WidthEstimate Run() {
    Est e = Shift();
    WidthEstimate out;
    out.has_multiply = e.has_multiply || saw_multiply_;
    if (e.ok && c_.done()) out.width = e.width;
    return out;
  }

 private:
  static Est Fail(bool has_mul = false) {
    Est e;
    e.ok = false;
    e.has_multiply = has_mul;
    return e;
  }

  Est Shift() {
    Est lhs = Add();
    while (lhs.ok && (c_.at("<<") || c_.at(">>") || c_.at("<<<") || c_.at(">>>"))) {
      const bool left = c_.peek()->text[0] == '<';
      c_.next();
      Est rhs = Add();
      Est out;
      out.has_multiply = lhs.has_multiply || rhs.has_multiply;
      if (!rhs.ok || !lhs.width) return Fail(out.has_multiply);
      if (rhs.constant) {
        out.width = left ? *lhs.width + *rhs.constant
                         : std::max<std::int64_t>(1, *lhs.width - *rhs.constant);
      } else if (!left) {
        out.width = lhs.width;
      } else {
        return Fail(out.has_multiply);
      }
      lhs = out;
    }
    return lhs;
  }

  Est Add() {
    Est lhs = Mul();
    while (lhs.ok && (c_.at("+") || c_.at("-"))) {
      c_.next();
      Est rhs = Mul();
      Est out;
      out.has_multiply = lhs.has_multiply || rhs.has_multiply;
      if (!rhs.ok || !lhs.width || !rhs.width) return Fail(out.has_multiply);
      out.width = std::max(*lhs.width, *rhs.width);
      lhs = out;
    }
    return lhs;
  }

  Est Mul() {
    Est lhs = Unary();
    while (lhs.ok && c_.at("*")) {
      c_.next();
      saw_multiply_ = true;
      Est rhs = Unary();
      Est out;
      out.has_multiply = true;
      if (!rhs.ok || !lhs.width || !rhs.width) return Fail(true);
      out.width = *lhs.width + *rhs.width;
      lhs = out;
    }
    if (lhs.ok && (c_.at("/") || c_.at("%") || c_.at("**"))) return Fail(lhs.has_multiply);
    return lhs;
  }

  Est Unary() {
    if (c_.at("-") || c_.at("+")) {
      c_.next();
      Est e = Unary();
      e.constant.reset();
      return e;
    }
    return Primary();
  }

  Est Primary() {
    const Token* t = c_.peek();
    if (t == nullptr) return Fail();
    if (t->kind == TokenKind::kNumber) {
      c_.next();
      auto lit = ParseNumberLiteral(t->text);
      if (!lit || lit->is_real) return Fail();
      Est e;
      e.constant = lit->value;
      if (lit->width) {
        e.width = lit->width;
      } else if (lit->value) {
        e.width = BitLength(*lit->value);
      } else {
        return Fail();
      }
      return e;
    }
    if (c_.at("(")) {
      c_.next();
      Est e = Shift();
      if (!c_.at(")")) return Fail(e.has_multiply);
      c_.next();
      return e;
    }
    if (t->kind != TokenKind::kIdentifier) return Fail();
    if (t->text == "$signed" || t->text == "$unsigned") {
      c_.next();
      if (!c_.at("(")) return Fail();
      c_.next();
      Est e = Shift();
      if (!c_.at(")")) return Fail(e.has_multiply);
      c_.next();
      return e;
    }
    if (t->text.front() == '$' || t->text.front() == '`') return Fail();
    const std::string name = t->text;
    c_.next();
    if (c_.at("(")) return Fail();  // function call

    Est e;
    if (auto it = params_.find(name); it != params_.end()) {
      e.constant = it->second;
      e.width = BitLength(it->second);
    }
    std::optional<SignalShape> shape = lookup_(name);
    if (!e.constant) e.width = shape && shape->width ? shape->width : std::optional<std::int64_t>(1);
    bool element_selected = !(shape && shape->is_array);
    while (c_.at("[")) {
      const std::size_t start = c_.pos();
      const std::size_t end = c_.MatchingClose();
      if (end == std::string_view::npos) return Fail();
      auto inner = c_.slice(start + 1, end - 1);
      while (c_.pos() < end) c_.next();
      e.constant.reset();
      if (!element_selected) {
        element_selected = true;  // array element: keeps the packed width
        continue;
      }
      e.width = SelectWidth(inner, params_);
      if (!e.width) return Fail();
    }
    return e;
  }

  Cursor c_;
  const ParamValues& params_;
  const std::function<std::optional<SignalShape>(const std::string&)>& lookup_;
  bool saw_multiply_ = false;
};

}  // namespace

std::optional<std::int64_t> SelectWidth(std::span<const Token> inner, const ParamValues& params) {
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const auto& t = inner[i];
    if (t.kind == TokenKind::kPunct && (t.text == "(" || t.text == "[" || t.text == "{")) ++depth;
    if (t.kind == TokenKind::kPunct && (t.text == ")" || t.text == "]" || t.text == "}")) --depth;
    if (depth != 0) continue;
    if (t.kind == TokenKind::kPunct && t.text == ":") {
      auto msb = EvalConstant(inner.subspan(0, i), params);
      auto lsb = EvalConstant(inner.subspan(i + 1), params);
      if (!msb || !lsb) return std::nullopt;
      return std::abs(*msb - *lsb) + 1;
    }
    if (t.kind == TokenKind::kOperator && (t.text == "+:" || t.text == "-:")) {
      return EvalConstant(inner.subspan(i + 1), params);
    }
  }
  return 1;
}

std::int64_t BitLength(std::int64_t value) {
  if (value < 0) value = -value;
  std::int64_t bits = 1;
  while (bits < 63 && (value >> bits) != 0) ++bits;
  return bits;
}

std::optional<NumberLiteral> ParseNumberLiteral(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != '_') s.push_back(c);
  }
  if (s.empty()) return std::nullopt;
  NumberLiteral lit;
  const auto quote = s.find('\'');
  if (quote == std::string::npos) {
    if (s.find_first_of(".eE") != std::string::npos) {
      lit.is_real = true;
      return lit;
    }
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      if (v > kMaxValue / 10) return lit;  // too large to fold
      v = v * 10 + (c - '0');
    }
    lit.value = v;
    return lit;
  }
  if (quote > 0) {
    std::int64_t size = 0;
    for (std::size_t i = 0; i < quote; ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      size = size * 10 + (s[i] - '0');
      if (size > 1 << 20) return std::nullopt;
    }
    lit.width = size;
  }
  std::size_t p = quote + 1;
  if (p < s.size() && (s[p] == 's' || s[p] == 'S')) ++p;
  if (p >= s.size()) return std::nullopt;
  int base = 0;
  switch (std::tolower(static_cast<unsigned char>(s[p]))) {
    case 'b': base = 2; break;
    case 'o': base = 8; break;
    case 'd': base = 10; break;
    case 'h': base = 16; break;
    case '0': lit.value = 0; return lit;
    case '1': case 'x': case 'z': return lit;  // fill literal; value depends on context
    default: return std::nullopt;
  }
  ++p;
  std::int64_t v = 0;
  bool known = true;
  for (; p < s.size(); ++p) {
    const int d = DigitValue(s[p]);
    if (d < 0 || d >= base) {
      known = false;  // x, z or ?
      continue;
    }
    if (v > kMaxValue / base) {
      known = false;
      continue;
    }
    v = v * base + d;
  }
  if (known) lit.value = v;
  return lit;
}

std::optional<std::int64_t> EvalConstant(std::span<const Token> tokens, const ParamValues& params) {
  if (tokens.empty()) return std::nullopt;
  return ConstEval(tokens, params).Run();
}

WidthEstimate EstimateWidth(
    std::span<const Token> tokens, const ParamValues& params,
    const std::function<std::optional<SignalShape>(const std::string&)>& lookup) {
  if (tokens.empty()) return {};
  return WidthEval(tokens, params, lookup).Run();
}

}  // namespace nls::hdl

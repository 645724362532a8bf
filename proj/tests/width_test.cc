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

#include <gtest/gtest.h>

#include "nls/hdl/token.hpp"

namespace nls::hdl {
namespace {

std::vector<Token> Sig(std::string_view src) {
  std::vector<Token> out;
  for (auto& t : Tokenize(src)) {
    if (!t.is_trivia()) out.push_back(std::move(t));
  }
  return out;
}

std::optional<std::int64_t> Eval(std::string_view src, const ParamValues& params = {}) {
  const auto toks = Sig(src);
  return EvalConstant(toks, params);
}

WidthEstimate Estimate(std::string_view src, const std::map<std::string, SignalShape>& shapes,
                       const ParamValues& params = {}) {
  const auto toks = Sig(src);
  return EstimateWidth(toks, params, [&](const std::string& n) -> std::optional<SignalShape> {
    auto it = shapes.find(n);
    if (it == shapes.end()) return std::nullopt;
    return it->second;
  });
}

TEST(NumberLiteralTest, SizedBasedAndUnsized) {
  auto n = ParseNumberLiteral("8'hFF");
  ASSERT_TRUE(n);
  EXPECT_EQ(n->width, 8);
  EXPECT_EQ(n->value, 255);
  n = ParseNumberLiteral("4'b1_0_1_0");
  EXPECT_EQ(n->value, 10);
  n = ParseNumberLiteral("'d12");
  EXPECT_FALSE(n->width.has_value());
  EXPECT_EQ(n->value, 12);
  n = ParseNumberLiteral("4'bx01z");
  EXPECT_EQ(n->width, 4);
  EXPECT_FALSE(n->value.has_value());
  n = ParseNumberLiteral("16'sd300");
  EXPECT_EQ(n->value, 300);
  EXPECT_TRUE(ParseNumberLiteral("2.5")->is_real);
  EXPECT_FALSE(ParseNumberLiteral("abc").has_value());
}

TEST(NumberLiteralTest, BitLength) {
  EXPECT_EQ(BitLength(0), 1);
  EXPECT_EQ(BitLength(1), 1);
  EXPECT_EQ(BitLength(2), 2);
  EXPECT_EQ(BitLength(255), 8);
  EXPECT_EQ(BitLength(256), 9);
}

TEST(EvalConstantTest, Arithmetic) {
  EXPECT_EQ(Eval("1 + 2 * 3"), 7);
  EXPECT_EQ(Eval("(1 + 2) * 3"), 9);
  EXPECT_EQ(Eval("2 ** 10 - 1"), 1023);
  EXPECT_EQ(Eval("-4 + 10 / 3 % 2"), -3);
  EXPECT_EQ(Eval("1 << 4 >> 1"), 8);
  EXPECT_EQ(Eval("$clog2(256)"), 8);
  EXPECT_EQ(Eval("$clog2(257)"), 9);
  EXPECT_EQ(Eval("W*2-1", {{"W", 8}}), 15);
  EXPECT_FALSE(Eval("UNKNOWN + 1").has_value());
  EXPECT_FALSE(Eval("1 / 0").has_value());
  EXPECT_FALSE(Eval("4'bx1").has_value());
}

TEST(SelectWidthTest, IndexRangeAndIndexedPart) {
  auto sw = [](std::string_view inner, const ParamValues& p = {}) {
    const auto toks = Sig(inner);
    return SelectWidth(toks, p);
  };
  EXPECT_EQ(sw("3"), 1);
  EXPECT_EQ(sw("i"), 1);
  EXPECT_EQ(sw("7:0"), 8);
  EXPECT_EQ(sw("0:7"), 8);
  EXPECT_EQ(sw("W-1:0", {{"W", 12}}), 12);
  EXPECT_EQ(sw("k*8 +: 8"), 8);
  EXPECT_EQ(sw("k -: 4"), 4);
  EXPECT_FALSE(sw("a:b").has_value());
}

TEST(EstimateWidthTest, ProductAddsWidths) {
  const std::map<std::string, SignalShape> s = {{"a", {16}}, {"b", {12}}, {"c", {4}}};
  auto e = Estimate("a * b", s);
  EXPECT_EQ(e.width, 28);
  EXPECT_TRUE(e.has_multiply);
  e = Estimate("a * b + c", s);
  EXPECT_EQ(e.width, 28);
  e = Estimate("a + c", s);
  EXPECT_EQ(e.width, 16);
  EXPECT_FALSE(e.has_multiply);
}

TEST(EstimateWidthTest, SelectsShiftsAndCasts) {
  const std::map<std::string, SignalShape> s = {{"a", {16}}, {"m", {8, true}}};
  EXPECT_EQ(Estimate("a[7:0] * a[3:0]", s).width, 12);
  EXPECT_EQ(Estimate("m[2] * m[1]", s).width, 16);
  EXPECT_EQ(Estimate("a << 2", s).width, 18);
  EXPECT_EQ(Estimate("a >> 4", s).width, 12);
  EXPECT_EQ(Estimate("$signed(a) * $signed(a)", s).width, 32);
  EXPECT_EQ(Estimate("(a)", s).width, 16);
}

TEST(EstimateWidthTest, UnknownsAndConstants) {
  const std::map<std::string, SignalShape> s = {{"a", {8}}};
  EXPECT_EQ(Estimate("a * undeclared", s).width, 9);
  EXPECT_EQ(Estimate("a * 8'd3", s).width, 16);
  EXPECT_EQ(Estimate("a * 3", s).width, 10);
  EXPECT_EQ(Estimate("a * P", s, {{"P", 255}}).width, 16);
}

TEST(EstimateWidthTest, UnsupportedOperatorsGiveNoEstimate) {
  const std::map<std::string, SignalShape> s = {{"a", {8}}, {"b", {8}}};
  for (const char* e : {"a / b", "a % b", "a ** 2", "f(a) * b", "a * b / 2"}) {
    EXPECT_FALSE(Estimate(e, s).width.has_value()) << e;
  }
}

}  // namespace
}  // namespace nls::hdl

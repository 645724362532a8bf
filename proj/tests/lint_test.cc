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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "nls/error.hpp"
#include "nls/text.hpp"
#include "test_util.hpp"

namespace nls::hdl {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> Rules(const std::vector<Diagnostic>& diags) {
  std::vector<std::string> out;
  for (const auto& d : diags) out.push_back(d.rule_id);
  return out;
}

std::vector<Diagnostic> LintV(std::string_view src) {
  return LintSource(src, HdlLanguage::kVerilog, "t.v");
}

TEST(RuleCatalogTest, SixRulesWithSeveritySplit) {
  const auto& cat = RuleCatalog();
  ASSERT_EQ(cat.size(), 6u);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(cat[i].id, "NLS00" + std::to_string(i + 1));
  }
  for (const char* id : {"NLS002", "NLS003", "NLS006"}) {
    EXPECT_EQ(FindRule(id)->severity, Severity::kError) << id;
    EXPECT_TRUE(FindRule(id)->verilog_only) << id;
  }
  for (const char* id : {"NLS001", "NLS004", "NLS005"}) {
    EXPECT_EQ(FindRule(id)->severity, Severity::kWarning) << id;
    EXPECT_FALSE(FindRule(id)->verilog_only) << id;
  }
  EXPECT_EQ(FindRule("NLS999"), nullptr);
}

class PositiveFixtureTest : public ::testing::TestWithParam<fs::path> {};

TEST_P(PositiveFixtureTest, FiresExactlyAtAnnotatedLines) {
  const std::string src = ReadFile(GetParam());
  const auto expected = testing::ParseExpectations(src);
  ASSERT_FALSE(expected.empty()) << "fixture has no expect annotations";
  std::vector<testing::Expectation> actual;
  for (const auto& d : LintFile(GetParam())) actual.push_back({d.line, d.rule_id});
  std::sort(actual.begin(), actual.end());
  EXPECT_EQ(actual, expected);
}

std::vector<fs::path> PositiveFixtures() {
  return testing::ListFiles(testing::FixtureDir() / "lint" / "positive", {".v", ".sv"});
}

INSTANTIATE_TEST_SUITE_P(Corpus, PositiveFixtureTest, ::testing::ValuesIn(PositiveFixtures()),
                         [](const auto& info) { return info.param.stem().string(); });

TEST(PositiveCorpusTest, AtLeastTwoFilesPerRule) {
  std::map<std::string, std::set<std::string>> files_per_rule;
  for (const auto& f : PositiveFixtures()) {
    for (const auto& e : testing::ParseExpectations(ReadFile(f))) {
      files_per_rule[e.rule_id].insert(f.filename().string());
    }
  }
  for (const auto& r : RuleCatalog()) {
    EXPECT_GE(files_per_rule[std::string(r.id)].size(), 2u) << r.id;
  }
}

class CleanFixtureTest : public ::testing::TestWithParam<fs::path> {};

TEST_P(CleanFixtureTest, NoDiagnostics) {
  const auto diags = LintFile(GetParam());
  EXPECT_TRUE(diags.empty()) << FormatText(diags);
}

std::vector<fs::path> CleanFixtures() {
  return testing::ListFiles(testing::FixtureDir() / "lint" / "clean", {".v", ".sv"});
}

INSTANTIATE_TEST_SUITE_P(Corpus, CleanFixtureTest, ::testing::ValuesIn(CleanFixtures()),
                         [](const auto& info) { return info.param.stem().string(); });

TEST(CleanCorpusTest, HasAtLeastTenFiles) { EXPECT_GE(CleanFixtures().size(), 10u); }

TEST(LintTest, KeywordsInCommentsAndStringsNeverTrigger) {
  const auto diags = LintV(R"(// use typedef here
module quiet(input wire a, output wire y);
  /* logic always_ff always_comb enum interface
     always @(a) begin reg [3:0] t; end */
  initial $display("typedef enum logic [1:0] {A, B} t;");
  assign y = a; // output [7:0] arr [0:3]
endmodule
)");
  EXPECT_TRUE(diags.empty()) << FormatText(diags);
}

TEST(LintTest, SystemVerilogFilesSkipVerilogOnlyRules) {
  const std::string src = R"(module m(input logic clk, input logic [7:0] a [0:1], output logic y);
  typedef enum logic {A, B} s_t;
  always_ff @(posedge clk) begin
    logic t;
    t = a[0][0];
    y <= t;
  end
endmodule
)";
  EXPECT_TRUE(LintSource(src, HdlLanguage::kSystemVerilog, "m.sv").empty());
  const auto as_verilog = Rules(LintSource(src, HdlLanguage::kVerilog, "m.v"));
  for (const char* id : {"NLS002", "NLS003", "NLS006"}) {
    EXPECT_NE(std::find(as_verilog.begin(), as_verilog.end(), id), as_verilog.end()) << id;
  }
}

TEST(LintTest, SvKeywordOutsideModuleCounts) {
  const auto diags = LintV("typedef reg [3:0] nib_t;\nmodule m; endmodule\n");
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].rule_id, "NLS003");
  EXPECT_EQ(diags[0].line, 1u);
}

TEST(LintTest, ArrayParameterIsSystemVerilog) {
  const auto diags = LintV("module m;\n  parameter [7:0] LUT [0:1] = '{8'd1, 8'd2};\nendmodule\n");
  ASSERT_FALSE(diags.empty());
  EXPECT_EQ(diags[0].rule_id, "NLS003");
  EXPECT_EQ(diags[0].line, 2u);
}

TEST(LintTest, StarSensitivityIsComplete) {
  EXPECT_TRUE(LintV(R"(module m(input a, input b, output reg y);
  always @(*) y = a & b;
endmodule
)").empty());
}

TEST(LintTest, CaseWithoutDefaultIsFineWhenClocked) {
  EXPECT_TRUE(LintV(R"(module m(input clk, input [1:0] s, output reg y);
  always @(posedge clk) begin
    case (s)
      2'd0: y <= 1'b0;
      2'd1: y <= 1'b1;
    endcase
  end
endmodule
)").empty());
}

TEST(LintTest, ProductIntoWideEnoughTargetIsFine) {
  EXPECT_TRUE(LintV(R"(module m(input [7:0] a, input [7:0] b, output [15:0] p, output [7:0] hi);
  wire [15:0] full = a * b;
  assign p = a * b;
  assign hi = full[15:8];
endmodule
)").empty());
}

TEST(LintTest, DivisionIsNotEstimated) {
  EXPECT_TRUE(LintV(R"(module m(input [15:0] a, input [15:0] b, output [7:0] q);
  assign q = a * b / 16'd256;
endmodule
)").empty());
}

TEST(LintTest, DeterministicOutput) {
  const std::string src = ReadFile(testing::FixtureDir() / "lint/positive/nls003_always_ff_enum.v");
  EXPECT_EQ(FormatJson(LintV(src)), FormatJson(LintV(src)));
}

TEST(LintReportTest, TextFormat) {
  const std::vector<Diagnostic> d = {{"NLS006", Severity::kError, "a.v", 3, 9, "port 'x' ..."}};
  EXPECT_EQ(FormatText(d), "a.v:3:9: [NLS006] error: port 'x' ...\n");
  EXPECT_EQ(FormatText({}), "");
}

TEST(LintReportTest, JsonHasExactlyTheDiagnosticFields) {
  const std::vector<Diagnostic> d = {{"NLS001", Severity::kWarning, "b.v", 2, 1, "m"}};
  const std::string text = FormatJson(d);
  ASSERT_EQ(text.back(), '\n');
  const auto j = nlohmann::json::parse(text);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  EXPECT_EQ(keys, (std::vector<std::string>{"col", "file", "line", "message", "rule_id", "severity"}));
  EXPECT_EQ(j[0]["severity"], "warning");
  EXPECT_EQ(j[0]["line"], 2);
  EXPECT_EQ(nlohmann::json::parse(FormatJson({})), nlohmann::json::array());
}

TEST(LintReportTest, SortsByFileThenLine) {
  std::vector<Diagnostic> d = {{"NLS004", Severity::kWarning, "b.v", 1, 1, ""},
                               {"NLS002", Severity::kError, "a.v", 9, 1, ""},
                               {"NLS001", Severity::kWarning, "a.v", 2, 5, ""},
                               {"NLS001", Severity::kWarning, "a.v", 2, 3, ""}};
  SortDiagnostics(d);
  EXPECT_EQ(d[0].col, 3u);
  EXPECT_EQ(d[1].col, 5u);
  EXPECT_EQ(d[2].line, 9u);
  EXPECT_EQ(d[3].file, "b.v");
}

TEST(LintReportTest, ExitStatus) {
  EXPECT_EQ(ExitStatus({}), 0);
  EXPECT_EQ(ExitStatus({{"NLS001", Severity::kWarning, "a", 1, 1, ""}}), 1);
  EXPECT_EQ(ExitStatus({{"NLS001", Severity::kWarning, "a", 1, 1, ""},
                        {"NLS006", Severity::kError, "a", 1, 1, ""}}),
            2);
}

TEST(LintFileTest, LanguageFromExtension) {
  EXPECT_EQ(LanguageForPath("x.sv"), HdlLanguage::kSystemVerilog);
  EXPECT_EQ(LanguageForPath("x.svh"), HdlLanguage::kSystemVerilog);
  EXPECT_EQ(LanguageForPath("x.v"), HdlLanguage::kVerilog);
  EXPECT_EQ(LanguageForPath("x.txt"), HdlLanguage::kVerilog);
}

TEST(LintFileTest, UnreadableFileIsIoError) {
  try {
    LintFile("/nonexistent/dir/x.v");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(LintFileTest, SourceWithoutModulesIsClean) {
  EXPECT_TRUE(LintV("`define W 8\n// nothing here\n").empty());
  EXPECT_TRUE(LintV("").empty());
}

}  // namespace
}  // namespace nls::hdl

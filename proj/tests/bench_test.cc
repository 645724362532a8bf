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


#include "nls/bench.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "nls/error.hpp"
#include "nls/text.hpp"
#include "test_util.hpp"

namespace nls {
namespace {

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

// Independent oracle: long double division, rounded half away from zero.
std::int64_t OracleHundredths(std::uint64_t cand, std::uint64_t base) {
  const long double pct = 100.0L * (static_cast<long double>(cand) - static_cast<long double>(base)) /
                          static_cast<long double>(base);
  return static_cast<std::int64_t>(std::llround(pct * 100.0L));
}

std::vector<ResourceReport> LoadCsv(const std::string& name) {
  return ParseResourceCsv(ReadFile(testing::FixtureDir() / "bench" / name));
}

std::int64_t Delta(const std::vector<ResourceReport>& reports, const std::string& cand,
                   const std::string& base, Resource r) {
  const auto& c = FindReport(reports, cand);
  const auto& b = FindReport(reports, base);
  return DeltaPct(c.counts.at(r), b.counts.at(r)).delta_hundredths;
}

// Printed percentages carry two decimals; the tolerance is one unit in the
// last printed place.
constexpr std::int64_t kTolHundredths = 1;

struct Printed {
  const char* candidate;
  const char* baseline;
  Resource resource;
  double pct;
};

TEST(PublishedDeltaTest, SurveyAgainstNlsBaseline) {
  const auto reports = LoadCsv("accelerator_survey.csv");
  const Printed rows[] = {
      {"prior_a", "NLS", Resource::kLuts, -90.96},     {"prior_b", "NLS", Resource::kLuts, 134.50},
      {"prior_c", "NLS", Resource::kLuts, 16.64},      {"prior_d", "NLS", Resource::kLuts, -76.64},
      {"prior_a", "NLS", Resource::kRegisters, -91.34}, {"prior_b", "NLS", Resource::kRegisters, -2.36},
      {"prior_c", "NLS", Resource::kRegisters, -25.09}, {"prior_d", "NLS", Resource::kRegisters, -93.02},
      {"prior_b", "NLS", Resource::kDsps, 730.00},     {"prior_c", "NLS", Resource::kDsps, 800.00},
      {"prior_d", "NLS", Resource::kDsps, 1900.00},
  };
  for (const auto& p : rows) {
    const std::int64_t got = Delta(reports, p.candidate, p.baseline, p.resource);
    const auto want = static_cast<std::int64_t>(std::llround(p.pct * 100));
    EXPECT_LE(std::llabs(got - want), kTolHundredths)
        << p.candidate << " " << ResourceName(p.resource) << " got " << FormatDelta(got);
  }
}

TEST(PublishedDeltaTest, SurveyRegisterRoundingIsExact) {
  // 100 * (4095 - 47254) / 47254 = -91.3341...; the printed -91.34 is one
  // hundredth away from the correctly rounded value.
  const auto reports = LoadCsv("accelerator_survey.csv");
  EXPECT_EQ(Delta(reports, "prior_a", "NLS", Resource::kRegisters), -9133);
  EXPECT_EQ(OracleHundredths(4095, 47254), -9133);
}

TEST(PublishedDeltaTest, SurveyDspDeltaIsExactQuotient) {
  // Printed as +1788.80; 188 against 10 is exactly +1780.00.
  const auto reports = LoadCsv("accelerator_survey.csv");
  EXPECT_EQ(Delta(reports, "prior_a", "NLS", Resource::kDsps), 178000);
}

TEST(PublishedDeltaTest, BreakdownAgainstHandCoding) {
  const auto reports = LoadCsv("component_breakdown.csv");
  const Printed rows[] = {
      {"NLS excl AC TF w TVP", "Hand excl AC TF w TVP", Resource::kLuts, 15.30},
      {"NLS excl AC TF w TVP", "Hand excl AC TF w TVP", Resource::kRegisters, -9.60},
      {"NLS excl AC TF w TVP", "Hand excl AC TF w TVP", Resource::kDsps, 9.09},
      {"NLS excl AC TF w TVP", "Hand excl AC TF w TVP", Resource::kBufgctrl, -50.00},
      {"NLS Multiplier", "Hand Multiplier", Resource::kLuts, 0.00},
      {"NLS Multiplier", "Hand Multiplier", Resource::kRegisters, 73.13},
      {"NLS Multiplier", "Hand Multiplier", Resource::kDsps, 0.00},
      {"NLS AXB", "Hand AXB", Resource::kLuts, 34.32},
      {"NLS AXB", "Hand AXB", Resource::kRegisters, 37.86},
      {"NLS AXB", "Hand AXB", Resource::kDsps, 12.50},
      {"NLS x_dot_update", "Hand x_dot_update", Resource::kLuts, -13.82},
      {"NLS x_dot_update", "Hand x_dot_update", Resource::kRegisters, 18.25},
      {"NLS x_dot_update", "Hand x_dot_update", Resource::kDsps, 9.09},
  };
  for (const auto& p : rows) {
    const std::int64_t got = Delta(reports, p.candidate, p.baseline, p.resource);
    const auto want = static_cast<std::int64_t>(std::llround(p.pct * 100));
    EXPECT_LE(std::llabs(got - want), kTolHundredths)
        << p.candidate << " " << ResourceName(p.resource) << " got " << FormatDelta(got);
  }
}

TEST(PublishedDeltaTest, DspReductionClaims) {
  const auto reports = LoadCsv("dsp_claims.csv");
  EXPECT_EQ(Delta(reports, "NLS", "prior_a", Resource::kDsps), -9468);
  EXPECT_EQ(Delta(reports, "NLS", "prior_d", Resource::kDsps), -9500);
}

TEST(DeltaTest, MatchesOracleOnRandomCounts) {
  std::mt19937_64 rng(1234);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t base = 1 + rng() % 1000000;
    const std::uint64_t cand = rng() % 3000000;
    const DeltaCell cell = DeltaPct(cand, base);
    ASSERT_EQ(cell.delta_hundredths, OracleHundredths(cand, base)) << cand << " vs " << base;
    const Direction want = cand > base ? Direction::kHigher
                           : cand < base ? Direction::kLower
                                         : Direction::kEqual;
    ASSERT_EQ(cell.direction, want);
  }
}

TEST(DeltaTest, HalfRoundsAwayFromZero) {
  // 1/8 of a percent is exactly 0.125.
  EXPECT_EQ(DeltaPct(8001, 8000).delta_hundredths, 1);   // 0.0125 -> 0.01
  EXPECT_EQ(DeltaPct(1, 800).delta_hundredths, -9988);   // -99.875 -> -99.88
  EXPECT_EQ(DeltaPct(801, 800).delta_hundredths, 13);    // 0.125 -> 0.13
  EXPECT_EQ(DeltaPct(799, 800).delta_hundredths, -13);   // -0.125 -> -0.13
}

TEST(DeltaTest, ZeroBaselineAndFormatting) {
  EXPECT_EQ(CodeOf([] { DeltaPct(5, 0); }), ErrorCode::kZeroBaseline);
  EXPECT_EQ(FormatDelta(13450), "+134.50");
  EXPECT_EQ(FormatDelta(-9096), "-90.96");
  EXPECT_EQ(FormatDelta(0), "0.00");
  EXPECT_EQ(FormatDelta(-5), "-0.05");
  EXPECT_EQ(FormatDelta(190000), "+1900.00");
  EXPECT_DOUBLE_EQ(DeltaPct(59, 59).delta_pct(), 0.0);
  EXPECT_EQ(DeltaPct(59, 59).direction, Direction::kEqual);
}

TEST(ResourceCsvTest, LlmComparisonCounts) {
  const auto reports = LoadCsv("llm_comparison.csv");
  ASSERT_EQ(reports.size(), 5u);
  const auto& hand = FindReport(reports, "Hand Coding");
  EXPECT_EQ(hand.counts.at(Resource::kLuts), 7247u);
  EXPECT_EQ(hand.counts.at(Resource::kRegisters), 9197u);
  EXPECT_EQ(hand.counts.at(Resource::kBram), 2u);
  EXPECT_EQ(hand.power_watts, 147.72);
  EXPECT_EQ(hand.power_kind, PowerKind::kDynamic);
  const auto& mini = FindReport(reports, "OpenAI-o1-mini");
  EXPECT_EQ(mini.counts.at(Resource::kF7Muxes), 1111u);
  EXPECT_EQ(mini.counts.at(Resource::kF8Muxes), 92u);
  EXPECT_EQ(FindReport(reports, "Claude-3.5-sonnet").power_watts, 21.43);
  EXPECT_EQ(CodeOf([&] { FindReport(reports, "nobody"); }), ErrorCode::kInvalidArgument);
}

TEST(ResourceCsvTest, NotApplicableCellsAreAbsent) {
  const auto reports = LoadCsv("accelerator_survey.csv");
  const auto& prior_b = FindReport(reports, "prior_b");
  EXPECT_FALSE(prior_b.counts.count(Resource::kF7Muxes));
  EXPECT_FALSE(prior_b.power_watts.has_value());
  EXPECT_FALSE(FindReport(reports, "prior_d").counts.count(Resource::kBram));
  EXPECT_EQ(FindReport(reports, "prior_a").power_watts, 0.374);
}

TEST(ResourceCsvTest, LongFormAnyColumnOrder) {
  const auto r = ParseResourceCsv("value,design,resource\n3,\"a, b\",luts\n4,\"a, b\",DSPs\n");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].design_name, "a, b");
  EXPECT_EQ(r[0].counts.at(Resource::kLuts), 3u);
  EXPECT_EQ(r[0].counts.at(Resource::kDsps), 4u);
}

TEST(ResourceCsvTest, ComponentBreakdownPairsParse) {
  const auto reports = LoadCsv("component_breakdown.csv");
  ASSERT_EQ(reports.size(), 10u);
  EXPECT_EQ(FindReport(reports, "Hand full").counts.at(Resource::kLuts), 19053u);
  EXPECT_EQ(FindReport(reports, "NLS full").counts.at(Resource::kDsps), 252u);
}

TEST(ResourceCsvTest, Errors) {
  EXPECT_EQ(CodeOf([] { ParseResourceCsv("design,LUTs,Slices\nx,1,2\n"); }),
            ErrorCode::kUnknownResourceColumn);
  try {
    ParseResourceCsv("design,LUTs\nx,1\ny,12k\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonNumericValue);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(CodeOf([] { ParseResourceCsv("design,LUTs\nx,1.5\n"); }), ErrorCode::kNonNumericValue);
  EXPECT_EQ(CodeOf([] { ParseResourceCsv("design,LUTs\n\"x,1\n"); }), ErrorCode::kMalformedCsv);
  EXPECT_EQ(CodeOf([] { ParseResourceCsv("LUTs,design\n1,x\n"); }), ErrorCode::kMalformedCsv);
  EXPECT_EQ(CodeOf([] { ParseResourceCsv("design,resource,value\nx,Gates,3\n"); }),
            ErrorCode::kUnknownResourceColumn);
}

TEST(VendorReportTest, ParsesUtilizationTables) {
  const ResourceReport r =
      ParseVendorUtilization(ReadFile(testing::FixtureDir() / "bench/chatgpt4o_utilization.rpt"));
  EXPECT_EQ(r.design_name, "systolic_top");
  EXPECT_EQ(r.counts.at(Resource::kLuts), 8989u);
  EXPECT_EQ(r.counts.at(Resource::kRegisters), 6395u);
  EXPECT_EQ(r.counts.at(Resource::kDsps), 14u);
  EXPECT_EQ(r.counts.at(Resource::kF7Muxes), 0u);
  EXPECT_EQ(r.counts.at(Resource::kBram), 0u);
  EXPECT_EQ(r.counts.at(Resource::kBufgctrl), 0u);
  EXPECT_EQ(r.counts.at(Resource::kLutrams), 0u);
}

TEST(VendorReportTest, SliceNamesAndFractionalBram) {
  const ResourceReport r = ParseVendorUtilization(
      "| Site Type | Used |\n| Slice LUTs | 120 |\n| Slice Registers | 64 |\n"
      "| Block RAM Tile | 1.5 |\n| BUFG | 2 |\n");
  EXPECT_EQ(r.counts.at(Resource::kLuts), 120u);
  EXPECT_EQ(r.counts.at(Resource::kRegisters), 64u);
  EXPECT_EQ(r.counts.at(Resource::kBram), 2u);
  EXPECT_EQ(r.counts.at(Resource::kBufg), 2u);
  EXPECT_EQ(CodeOf([] { ParseVendorUtilization("no table here"); }),
            ErrorCode::kNoUtilizationTable);
}

TEST(CompareTest, SharedResourcesInCanonicalOrder) {
  const auto reports = LoadCsv("small_kernel.csv");
  const Comparison c = CompareReports(FindReport(reports, "NLS"), FindReport(reports, "Hand Coding"));
  std::vector<Resource> order;
  for (const auto& row : c.rows) order.push_back(row.resource);
  EXPECT_EQ(order, (std::vector<Resource>{Resource::kLuts, Resource::kLutrams, Resource::kRegisters,
                                          Resource::kDsps, Resource::kBufg}));
  EXPECT_EQ(c.rows[0].cell->delta_hundredths, OracleHundredths(230, 91));
  EXPECT_EQ(c.candidate_power, 6.6);
}

TEST(CompareTest, ZeroBaselineRowHasNoCell) {
  ResourceReport a{"a", {{Resource::kLuts, 5}, {Resource::kBram, 3}}, {}, PowerKind::kUnspecified, {}};
  ResourceReport b{"b", {{Resource::kLuts, 4}, {Resource::kBram, 0}}, {}, PowerKind::kUnspecified, {}};
  const Comparison c = CompareReports(a, b);
  ASSERT_EQ(c.rows.size(), 2u);
  EXPECT_FALSE(c.rows[1].cell.has_value());
  EXPECT_NE(FormatComparisonText(c).find("N/A"), std::string::npos);
  EXPECT_EQ(FormatComparisonJson(c),
            "[{\"resource\":\"LUTs\",\"candidate\":5,\"baseline\":4,\"delta_pct\":25.0},"
            "{\"resource\":\"BRAM\",\"candidate\":3,\"baseline\":0,\"delta_pct\":null}]\n");
  ResourceReport z{"z", {{Resource::kBram, 0}}, {}, PowerKind::kUnspecified, {}};
  EXPECT_EQ(CodeOf([&] { CompareReports(a, z); }), ErrorCode::kNoComparableResources);
  ResourceReport disjoint{"d", {{Resource::kDsps, 1}}, {}, PowerKind::kUnspecified, {}};
  EXPECT_EQ(CodeOf([&] { CompareReports(a, disjoint); }), ErrorCode::kNoComparableResources);
}

TEST(CompareTest, TextTableContainsPrintedDelta) {
  const auto reports = LoadCsv("accelerator_survey.csv");
  const std::string text =
      FormatComparisonText(CompareReports(FindReport(reports, "prior_b"), FindReport(reports, "NLS")));
  EXPECT_NE(text.find("+134.50"), std::string::npos) << text;
  EXPECT_NE(text.find("-2.36"), std::string::npos) << text;
}

TEST(ResourceNameTest, RoundTripAndCaseInsensitive) {
  for (Resource r : kAllResources) EXPECT_EQ(ParseResourceName(ResourceName(r)), r);
  EXPECT_EQ(ParseResourceName("registers"), Resource::kRegisters);
  EXPECT_EQ(ParseResourceName("bufgctrl"), Resource::kBufgctrl);
  EXPECT_FALSE(ParseResourceName("slices").has_value());
}

TEST(RdeTest, CountsNonBlankLines) {
  EXPECT_EQ(CountNonBlankLines(""), 0u);
  EXPECT_EQ(CountNonBlankLines("a\n\n  \t\nb"), 2u);
  EXPECT_EQ(CountNonBlankLines("a\r\n\r\nb\r\n"), 2u);
}

SessionState SessionWith(std::size_t lop, std::size_t noa) {
  SessionState s = NewSession();
  s = SetApiKey(std::move(s), "k");
  s = SelectModel(std::move(s), ModelCatalog::Default(), "GPT-4o", "ChatGPT-4o");
  s = BeginGeneration(std::move(s), testing::TextOfLength(lop) + "\n");
  s = AppendResponse(std::move(s), "r");
  for (std::size_t i = 0; i < noa; ++i) {
    s = AddAdjustment(std::move(s), "fix " + std::to_string(i));
    s = AppendResponse(std::move(s), "r");
  }
  return s;
}

TEST(RdeTest, ReproducesReportedEffortFigures) {
  const std::pair<std::size_t, std::size_t> figures[] = {{151, 11}, {151, 13}, {151, 7},
                                                         {151, 14}, {2562, 22}, {5637, 15},
                                                         {1104, 93}};
  for (const auto& [lop, noa] : figures) {
    const RdeMetrics m = ComputeRde(SessionWith(lop, noa));
    EXPECT_EQ(m.lop, lop);
    EXPECT_EQ(m.noa, noa);
  }
}

TEST(RdeTest, AdjustmentLengthAndCodeLines) {
  SessionState s = SessionWith(10, 2);  // "fix 0", "fix 1"
  s.artifacts.push_back({"a", HdlLanguage::kVerilog, "module a;\n\nendmodule\n", 2});
  const RdeMetrics m = ComputeRde(s);
  EXPECT_EQ(m.loa, 10u);
  EXPECT_EQ(m.loc, 2u);
  EXPECT_EQ(RdeToJson(m), "{\"lop\":10,\"noa\":2,\"loa\":10,\"loc\":2}\n");
  EXPECT_EQ(RdeToCsvRow(m), "10,2,10,2\n");
  EXPECT_EQ(kRdeCsvHeader, "lop,noa,loa,loc");
}

TEST(RdeTest, MultibyteCharactersCountOnce) {
  SessionState s = NewSession();
  s = SetApiKey(std::move(s), "k");
  s = SelectModel(std::move(s), ModelCatalog::Default(), "GPT-4o", "ChatGPT-4o");
  s = BeginGeneration(std::move(s), "4\xC3\x97" "4 array");  // 4×4 array
  EXPECT_EQ(ComputeRde(s).lop, 9u);
  EXPECT_EQ(ComputeRde(s).noa, 0u);
  EXPECT_EQ(ComputeRde(s).loa, 0u);
}

TEST(RdeTest, RequiresInitialPrompt) {
  EXPECT_EQ(CodeOf([] { ComputeRde(NewSession()); }), ErrorCode::kNoInitialPrompt);
}

}  // namespace
}  // namespace nls

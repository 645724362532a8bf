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

// Design-effort metrics and FPGA resource comparison.

#ifndef NLS_BENCH_HPP_
#define NLS_BENCH_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nls/artifact.hpp"
#include "nls/session.hpp"

namespace nls {

// ---------------------------------------------------------------------------
// Effort

struct RdeMetrics {
  std::uint64_t lop = 0;  // scalar count of the initial prompt
  std::uint64_t noa = 0;  // number of adjustments
  std::uint64_t loa = 0;  // scalar count summed over adjustments
  std::uint64_t loc = 0;  // non-blank lines across the final artifacts

  bool operator==(const RdeMetrics&) const = default;
};

// Lines holding at least one non-whitespace character.
std::uint64_t CountNonBlankLines(std::string_view text);

// Prompt and adjustment lengths drop one trailing newline before counting.
// Throws Error(kNoInitialPrompt).
RdeMetrics ComputeRde(const SessionState& state, const std::vector<HdlArtifact>& artifacts);
inline RdeMetrics ComputeRde(const SessionState& state) {
  return ComputeRde(state, state.artifacts);
}

// {"lop":..,"noa":..,"loa":..,"loc":..} plus newline.
std::string RdeToJson(const RdeMetrics& m);
// "lop,noa,loa,loc" values as one row plus newline.
std::string RdeToCsvRow(const RdeMetrics& m);
inline constexpr std::string_view kRdeCsvHeader = "lop,noa,loa,loc";

// ---------------------------------------------------------------------------
// Resources

enum class Resource { kLuts, kLutrams, kRegisters, kDsps, kF7Muxes, kF8Muxes, kBram, kBufgctrl, kBufg };

inline constexpr std::array<Resource, 9> kAllResources = {
    Resource::kLuts,    Resource::kLutrams, Resource::kRegisters,
    Resource::kDsps,    Resource::kF7Muxes, Resource::kF8Muxes,
    Resource::kBram,    Resource::kBufgctrl, Resource::kBufg};

std::string_view ResourceName(Resource r);  // "LUTs", "LUTRAMs", ...
// Case-insensitive match on the canonical names.
std::optional<Resource> ParseResourceName(std::string_view name);

enum class PowerKind { kDynamic, kTotal, kUnspecified };
std::string_view PowerKindName(PowerKind k);
std::optional<PowerKind> ParsePowerKind(std::string_view name);

struct ResourceReport {
  std::string design_name;
  std::map<Resource, std::uint64_t> counts;  // absent key: not reported
  std::optional<double> power_watts;
  PowerKind power_kind = PowerKind::kUnspecified;
  std::optional<double> fmax_mhz;  // reserved

  bool operator==(const ResourceReport&) const = default;
};

// Long form (`design,resource,value` in any column order) or wide form (`design,<resource>...`),
// with optional power_watts, power_kind and fmax_mhz columns (wide) or
// resource names (long). Empty cells and N/A mean absent. One report per
// design, in first-appearance order. Throws Error(kUnknownResourceColumn),
// Error(kNonNumericValue) or Error(kMalformedCsv).
std::vector<ResourceReport> ParseResourceCsv(std::string_view text);

// Pipe-table utilization report. Throws Error(kNoUtilizationTable).
ResourceReport ParseVendorUtilization(std::string_view text);

// Finds a report by exact design name; Error(kInvalidArgument) if absent.
const ResourceReport& FindReport(const std::vector<ResourceReport>& reports,
                                 std::string_view design);

// ---------------------------------------------------------------------------
// Deltas

enum class Direction { kHigher, kLower, kEqual };
std::string_view DirectionName(Direction d);

struct DeltaCell {
  std::uint64_t candidate = 0;
  std::uint64_t baseline = 0;
  std::int64_t delta_hundredths = 0;  // percent x 100, half away from zero
  Direction direction = Direction::kEqual;

  double delta_pct() const { return static_cast<double>(delta_hundredths) / 100.0; }
  bool operator==(const DeltaCell&) const = default;
};

// 100 * (candidate - baseline) / baseline rounded to two decimals in exact
// integer arithmetic. Throws Error(kZeroBaseline).
DeltaCell DeltaPct(std::uint64_t candidate, std::uint64_t baseline);

// "+134.50", "-90.96", "0.00".
std::string FormatDelta(std::int64_t hundredths);

struct ComparisonRow {
  Resource resource;
  std::uint64_t candidate = 0;
  std::uint64_t baseline = 0;
  std::optional<DeltaCell> cell;  // nullopt when the baseline is zero
};

struct Comparison {
  std::string candidate_design;
  std::string baseline_design;
  std::vector<ComparisonRow> rows;  // shared resources in canonical order
  std::optional<double> candidate_power;
  std::optional<double> baseline_power;
  PowerKind candidate_power_kind = PowerKind::kUnspecified;
  PowerKind baseline_power_kind = PowerKind::kUnspecified;
};

// Throws Error(kNoComparableResources) unless some shared resource has a
// non-zero baseline.
Comparison CompareReports(const ResourceReport& candidate, const ResourceReport& baseline);

// Aligned table; zero baselines print N/A; power is shown raw.
std::string FormatComparisonText(const Comparison& c);
// [{resource, candidate, baseline, delta_pct}] plus newline; delta_pct is
// null for a zero baseline.
std::string FormatComparisonJson(const Comparison& c);

}  // namespace nls

#endif  // NLS_BENCH_HPP_

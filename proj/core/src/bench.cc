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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include <nlohmann/json.hpp>

#include "nls/error.hpp"
#include "nls/text.hpp"

namespace nls {

// ---------------------------------------------------------------------------
// Effort

std::uint64_t CountNonBlankLines(std::string_view text) {
  std::uint64_t n = 0;
  std::size_t at = 0;
  while (at < text.size()) {
    auto nl = text.find('\n', at);
    if (nl == std::string_view::npos) nl = text.size();
    if (!Trim(text.substr(at, nl - at)).empty()) ++n;
    at = nl + 1;
  }
  return n;
}

RdeMetrics ComputeRde(const SessionState& state, const std::vector<HdlArtifact>& artifacts) {
  const TranscriptEntry* initial = state.initial_prompt();
  if (initial == nullptr) {
    throw Error(ErrorCode::kNoInitialPrompt, "session has no initial prompt");
  }
  RdeMetrics m;
  m.lop = Utf8ScalarCount(TrimOneTrailingNewline(initial->content));
  for (const auto& e : state.transcript) {
    if (e.kind != EntryKind::kAdjustment) continue;
    ++m.noa;
    m.loa += Utf8ScalarCount(TrimOneTrailingNewline(e.content));
  }
  for (const auto& a : artifacts) m.loc += CountNonBlankLines(a.text);
  return m;
}

std::string RdeToJson(const RdeMetrics& m) {
  nlohmann::ordered_json j;
  j["lop"] = m.lop;
  j["noa"] = m.noa;
  j["loa"] = m.loa;
  j["loc"] = m.loc;
  return j.dump() + "\n";
}

std::string RdeToCsvRow(const RdeMetrics& m) {
  return std::to_string(m.lop) + "," + std::to_string(m.noa) + "," + std::to_string(m.loa) + "," +
         std::to_string(m.loc) + "\n";
}

// ---------------------------------------------------------------------------
// Names

std::string_view ResourceName(Resource r) {
  switch (r) {
    case Resource::kLuts: return "LUTs";
    case Resource::kLutrams: return "LUTRAMs";
    case Resource::kRegisters: return "Registers";
    case Resource::kDsps: return "DSPs";
    case Resource::kF7Muxes: return "F7Muxes";
    case Resource::kF8Muxes: return "F8Muxes";
    case Resource::kBram: return "BRAM";
    case Resource::kBufgctrl: return "BUFGCTRL";
    case Resource::kBufg: return "BUFG";
  }
  return "LUTs";
}

std::optional<Resource> ParseResourceName(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  for (Resource r : kAllResources) {
    if (ToLower(ResourceName(r)) == lower) return r;
  }
  return std::nullopt;
}

std::string_view PowerKindName(PowerKind k) {
  switch (k) {
    case PowerKind::kDynamic: return "dynamic";
    case PowerKind::kTotal: return "total";
    case PowerKind::kUnspecified: return "unspecified";
  }
  return "unspecified";
}

std::optional<PowerKind> ParsePowerKind(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "dynamic") return PowerKind::kDynamic;
  if (lower == "total") return PowerKind::kTotal;
  if (lower == "unspecified" || lower.empty()) return PowerKind::kUnspecified;
  return std::nullopt;
}

std::string_view DirectionName(Direction d) {
  switch (d) {
    case Direction::kHigher: return "higher";
    case Direction::kLower: return "lower";
    case Direction::kEqual: return "equal";
  }
  return "equal";
}

namespace {

// ---------------------------------------------------------------------------
// CSV

std::vector<std::vector<std::string>> ParseCsvRows(std::string_view text,
                                                   std::vector<std::size_t>& line_numbers) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t row_line = 1;
  auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    const bool blank = row.size() == 1 && Trim(row[0]).empty();
    if (!blank) {
      rows.push_back(std::move(row));
      line_numbers.push_back(row_line);
    }
    row.clear();
    field_started = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n') {
      end_row();
      ++line;
      row_line = line;
    } else if (c == '\r') {
      // dropped; CRLF input
    } else {
      field.push_back(c);
      if (c != ' ' && c != '\t') field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kMalformedCsv, "unterminated quoted field");
  if (!field.empty() || !row.empty()) end_row();
  return rows;
}

bool IsAbsent(std::string_view v) {
  const std::string lower = ToLower(Trim(v));
  return lower.empty() || lower == "n/a" || lower == "na";
}

[[noreturn]] void NonNumeric(std::size_t line, std::string_view column, std::string_view value) {
  throw Error(ErrorCode::kNonNumericValue, "row " + std::to_string(line) + ", column '" +
                                               std::string(column) + "': '" + std::string(value) +
                                               "' is not a non-negative integer");
}

std::uint64_t ParseCount(std::string_view v, std::size_t line, std::string_view column) {
  v = Trim(v);
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (v.empty() || ec != std::errc() || ptr != end) NonNumeric(line, column, v);
  return out;
}

double ParseReal(std::string_view v, std::size_t line, std::string_view column) {
  v = Trim(v);
  const std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d) || d < 0) {
    throw Error(ErrorCode::kNonNumericValue, "row " + std::to_string(line) + ", column '" +
                                                 std::string(column) + "': '" + s +
                                                 "' is not a non-negative number");
  }
  return d;
}

enum class Extra { kNone, kPowerWatts, kPowerKind, kFmax };

Extra ParseExtra(std::string_view name) {
  const std::string lower = ToLower(Trim(name));
  if (lower == "power_watts") return Extra::kPowerWatts;
  if (lower == "power_kind") return Extra::kPowerKind;
  if (lower == "fmax_mhz") return Extra::kFmax;
  return Extra::kNone;
}

void SetField(ResourceReport& r, std::string_view column, std::string_view value, std::size_t line,
              bool reject_duplicates) {
  if (IsAbsent(value)) return;
  if (auto res = ParseResourceName(column)) {
    if (reject_duplicates && r.counts.count(*res) != 0) {
      throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(line) + ": duplicate " +
                                                std::string(ResourceName(*res)) + " for design '" +
                                                r.design_name + "'");
    }
    r.counts[*res] = ParseCount(value, line, column);
    return;
  }
  switch (ParseExtra(column)) {
    case Extra::kPowerWatts:
      r.power_watts = ParseReal(value, line, column);
      return;
    case Extra::kPowerKind: {
      auto k = ParsePowerKind(value);
      if (!k) {
        throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(line) +
                                                  ": power_kind must be dynamic, total or "
                                                  "unspecified");
      }
      r.power_kind = *k;
      return;
    }
    case Extra::kFmax:
      r.fmax_mhz = ParseReal(value, line, column);
      return;
    case Extra::kNone:
      break;
  }
  throw Error(ErrorCode::kUnknownResourceColumn,
              "row " + std::to_string(line) + ": unknown resource '" + std::string(column) + "'");
}

bool IsKnownColumn(std::string_view name) {
  return ParseResourceName(name).has_value() || ParseExtra(name) != Extra::kNone;
}

ResourceReport& ReportFor(std::vector<ResourceReport>& out, const std::string& design) {
  for (auto& r : out) {
    if (r.design_name == design) return r;
  }
  out.push_back({});
  out.back().design_name = design;
  return out.back();
}

}  // namespace

std::vector<ResourceReport> ParseResourceCsv(std::string_view text) {
  std::vector<std::size_t> lines;
  auto rows = ParseCsvRows(text, lines);
  std::vector<ResourceReport> out;
  if (rows.empty()) return out;
  std::vector<std::string> header;
  for (const auto& h : rows[0]) header.push_back(ToLower(Trim(h)));
  const bool long_form = header.size() == 3 &&
                         std::set<std::string>(header.begin(), header.end()) ==
                             std::set<std::string>{"design", "resource", "value"};
  if (long_form) {
    const auto col = [&](std::string_view name) {
      return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    const std::size_t d = col("design"), r = col("resource"), v = col("value");
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != 3) {
        throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(lines[i]) + ": expected 3 fields, got " +
                                                  std::to_string(row.size()));
      }
      const std::string design(Trim(row[d]));
      if (design.empty()) {
        throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(lines[i]) + ": empty design name");
      }
      if (!IsKnownColumn(row[r])) {
        throw Error(ErrorCode::kUnknownResourceColumn, "row " + std::to_string(lines[i]) +
                                                           ": unknown resource '" +
                                                           std::string(Trim(row[r])) + "'");
      }
      SetField(ReportFor(out, design), Trim(row[r]), row[v], lines[i], true);
    }
    return out;
  }
  if (header.empty() || header[0] != "design") {
    throw Error(ErrorCode::kMalformedCsv, "first header column must be 'design'");
  }
  for (std::size_t c = 1; c < rows[0].size(); ++c) {
    if (!IsKnownColumn(rows[0][c])) {
      throw Error(ErrorCode::kUnknownResourceColumn,
                  "unknown resource column '" + std::string(Trim(rows[0][c])) + "'");
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != rows[0].size()) {
      throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(lines[i]) + ": expected " +
                                                std::to_string(rows[0].size()) + " fields, got " +
                                                std::to_string(row.size()));
    }
    const std::string design(Trim(row[0]));
    if (design.empty()) {
      throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(lines[i]) + ": empty design name");
    }
    if (!seen.insert(design).second) {
      throw Error(ErrorCode::kMalformedCsv, "row " + std::to_string(lines[i]) +
                                                ": duplicate design '" + design + "'");
    }
    ResourceReport& r = ReportFor(out, design);
    for (std::size_t c = 1; c < row.size(); ++c) SetField(r, Trim(rows[0][c]), row[c], lines[i], false);
  }
  return out;
}

ResourceReport ParseVendorUtilization(std::string_view text) {
  static const std::vector<std::pair<std::string_view, Resource>> kSites = {
      {"slice luts", Resource::kLuts},         {"clb luts", Resource::kLuts},
      {"lut as memory", Resource::kLutrams},   {"slice registers", Resource::kRegisters},
      {"clb registers", Resource::kRegisters}, {"dsps", Resource::kDsps},
      {"block ram tile", Resource::kBram},     {"f7 muxes", Resource::kF7Muxes},
      {"f8 muxes", Resource::kF8Muxes},        {"bufgctrl", Resource::kBufgctrl},
      {"bufg", Resource::kBufg},
  };
  ResourceReport report;
  bool saw_table = false;
  std::size_t line_no = 0;
  std::size_t at = 0;
  while (at < text.size()) {
    auto nl = text.find('\n', at);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = Trim(text.substr(at, nl - at));
    at = nl + 1;
    ++line_no;
    if (line.empty() || line.front() != '|') continue;
    std::vector<std::string_view> cells;
    std::size_t p = 1;
    while (p < line.size()) {
      auto bar = line.find('|', p);
      if (bar == std::string_view::npos) bar = line.size();
      cells.push_back(Trim(line.substr(p, bar - p)));
      p = bar + 1;
    }
    if (cells.empty()) continue;
    if (cells.size() == 1) {
      // `| Design : top` header lines.
      const auto colon = cells[0].find(':');
      if (colon != std::string_view::npos && ToLower(Trim(cells[0].substr(0, colon))) == "design") {
        report.design_name = std::string(Trim(cells[0].substr(colon + 1)));
      }
      continue;
    }
    std::string site = ToLower(cells[0]);
    while (!site.empty() && (site.back() == '*' || site.back() == ' ')) site.pop_back();
    if (site == "site type" && ToLower(cells[1]) == "used") {
      saw_table = true;
      continue;
    }
    if (!saw_table) continue;
    for (const auto& [name, res] : kSites) {
      if (site != name || report.counts.count(res) != 0) continue;
      const double used = ParseReal(cells[1], line_no, cells[0]);
      report.counts[res] = static_cast<std::uint64_t>(std::ceil(used));
    }
  }
  if (!saw_table) {
    throw Error(ErrorCode::kNoUtilizationTable, "no '| Site Type | Used |' table found");
  }
  return report;
}

const ResourceReport& FindReport(const std::vector<ResourceReport>& reports,
                                 std::string_view design) {
  for (const auto& r : reports) {
    if (r.design_name == design) return r;
  }
  std::string known;
  for (const auto& r : reports) known += (known.empty() ? "" : ", ") + r.design_name;
  throw Error(ErrorCode::kInvalidArgument,
              "no design named '" + std::string(design) + "' (have: " + known + ")");
}

// ---------------------------------------------------------------------------
// Deltas

DeltaCell DeltaPct(std::uint64_t candidate, std::uint64_t baseline) {
  if (baseline == 0) {
    throw Error(ErrorCode::kZeroBaseline, "baseline is zero; percentage change is undefined");
  }
  constexpr std::uint64_t kLimit = 1'000'000'000'000ULL;
  if (candidate > kLimit || baseline > kLimit) {
    throw Error(ErrorCode::kInvalidArgument, "resource count too large");
  }
  DeltaCell cell;
  cell.candidate = candidate;
  cell.baseline = baseline;
  const std::int64_t b = static_cast<std::int64_t>(baseline);
  const std::int64_t num = 10000 * (static_cast<std::int64_t>(candidate) - b);
  std::int64_t q = num / b;
  const std::int64_t r = num % b;
  if (2 * (r < 0 ? -r : r) >= b) q += num < 0 ? -1 : 1;
  cell.delta_hundredths = q;
  cell.direction = candidate > baseline   ? Direction::kHigher
                   : candidate < baseline ? Direction::kLower
                                          : Direction::kEqual;
  return cell;
}

std::string FormatDelta(std::int64_t hundredths) {
  const std::int64_t mag = hundredths < 0 ? -hundredths : hundredths;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", hundredths > 0 ? "+" : hundredths < 0 ? "-" : "",
                static_cast<long long>(mag / 100), static_cast<long long>(mag % 100));
  return buf;
}

Comparison CompareReports(const ResourceReport& candidate, const ResourceReport& baseline) {
  Comparison c;
  c.candidate_design = candidate.design_name;
  c.baseline_design = baseline.design_name;
  c.candidate_power = candidate.power_watts;
  c.baseline_power = baseline.power_watts;
  c.candidate_power_kind = candidate.power_kind;
  c.baseline_power_kind = baseline.power_kind;
  bool comparable = false;
  for (Resource r : kAllResources) {
    auto ci = candidate.counts.find(r);
    auto bi = baseline.counts.find(r);
    if (ci == candidate.counts.end() || bi == baseline.counts.end()) continue;
    ComparisonRow row;
    row.resource = r;
    row.candidate = ci->second;
    row.baseline = bi->second;
    if (bi->second > 0) {
      row.cell = DeltaPct(ci->second, bi->second);
      comparable = true;
    }
    c.rows.push_back(row);
  }
  if (!comparable) {
    throw Error(ErrorCode::kNoComparableResources,
                "'" + candidate.design_name + "' and '" + baseline.design_name +
                    "' share no resource with a non-zero baseline");
  }
  return c;
}

namespace {

std::string FormatWatts(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", w);
  return buf;
}

std::string PadLeft(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}
std::string PadRight(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

}  // namespace

std::string FormatComparisonText(const Comparison& c) {
  std::vector<std::array<std::string, 4>> table;
  table.push_back({"resource", "candidate", "baseline", "delta"});
  for (const auto& row : c.rows) {
    table.push_back({std::string(ResourceName(row.resource)), std::to_string(row.candidate),
                     std::to_string(row.baseline),
                     row.cell ? FormatDelta(row.cell->delta_hundredths) + "%" : "N/A"});
  }
  if (c.candidate_power || c.baseline_power) {
    auto cell = [](const std::optional<double>& w) { return w ? FormatWatts(*w) : "N/A"; };
    std::string kinds = std::string(PowerKindName(c.candidate_power_kind)) + " vs " +
                        std::string(PowerKindName(c.baseline_power_kind));
    table.push_back({"power (W)", cell(c.candidate_power), cell(c.baseline_power), kinds});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& r : table) {
    for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out = "candidate: " + c.candidate_design + "\nbaseline:  " + c.baseline_design + "\n";
  for (const auto& r : table) {
    std::string line = PadRight(r[0], width[0]) + "  " + PadLeft(r[1], width[1]) + "  " +
                       PadLeft(r[2], width[2]) + "  " + PadLeft(r[3], width[3]);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string FormatComparisonJson(const Comparison& c) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : c.rows) {
    nlohmann::ordered_json j;
    j["resource"] = ResourceName(row.resource);
    j["candidate"] = row.candidate;
    j["baseline"] = row.baseline;
    if (row.cell) {
      j["delta_pct"] = row.cell->delta_pct();
    } else {
      j["delta_pct"] = nullptr;
    }
    arr.push_back(std::move(j));
  }
  return arr.dump() + "\n";
}

}  // namespace nls

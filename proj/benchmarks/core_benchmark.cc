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


#include <benchmark/benchmark.h>

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "nls/bench.hpp"
#include "nls/extract.hpp"
#include "nls/hdl/lint.hpp"
#include "nls/hdl/token.hpp"
#include "nls/text.hpp"
#include "nls/zip.hpp"

namespace {

namespace fs = std::filesystem;

std::string Corpus() {
  std::string all;
  for (const char* sub : {"positive", "clean"}) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(NLS_FIXTURE_DIR) / "lint" / sub)) {
      files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) all += nls::ReadFile(f) + "\n";
  }
  return all;
}

const std::string& CorpusText() {
  static const std::string text = Corpus();
  return text;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string& src = CorpusText();
  for (auto _ : state) {
    auto toks = nls::hdl::Tokenize(src);
    benchmark::DoNotOptimize(toks.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_Tokenize);

void BM_LintSource(benchmark::State& state) {
  const std::string& src = CorpusText();
  for (auto _ : state) {
    auto diags = nls::hdl::LintSource(src, nls::HdlLanguage::kVerilog, "corpus.v");
    benchmark::DoNotOptimize(diags.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_LintSource);

void BM_LintScaled(benchmark::State& state) {
  std::string src;
  for (int i = 0; i < state.range(0); ++i) src += CorpusText();
  for (auto _ : state) {
    auto diags = nls::hdl::LintSource(src, nls::HdlLanguage::kVerilog, "scaled.v");
    benchmark::DoNotOptimize(diags.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size()));
}
BENCHMARK(BM_LintScaled)->RangeMultiplier(4)->Range(1, 64);

void BM_DeltaPct(benchmark::State& state) {
  std::uint64_t c = 3092;
  for (auto _ : state) {
    auto cell = nls::DeltaPct(c, 34190);
    benchmark::DoNotOptimize(cell);
    c = (c * 2654435761u) % 100000;
  }
}
BENCHMARK(BM_DeltaPct);

void BM_CompareTable(benchmark::State& state) {
  const auto reports = nls::ParseResourceCsv(
      nls::ReadFile(fs::path(NLS_FIXTURE_DIR) / "bench" / "accelerator_survey.csv"));
  for (auto _ : state) {
    for (std::size_t i = 1; i < reports.size(); ++i) {
      auto text = nls::FormatComparisonText(nls::CompareReports(reports[i], reports[0]));
      benchmark::DoNotOptimize(text.data());
    }
  }
}
BENCHMARK(BM_CompareTable);

void BM_ExtractArtifacts(benchmark::State& state) {
  std::string response = "Here you go.\n";
  for (int i = 0; i < 8; ++i) {
    response += "```verilog\nmodule m" + std::to_string(i) +
                "(input clk, input [7:0] a, output reg [7:0] q);\n"
                "  always @(posedge clk) q <= a;\nendmodule\n```\nNotes.\n";
  }
  for (auto _ : state) {
    auto r = nls::ExtractArtifacts(response, 2);
    benchmark::DoNotOptimize(r.artifacts.data());
  }
}
BENCHMARK(BM_ExtractArtifacts);

void BM_BuildZip(benchmark::State& state) {
  const std::string& src = CorpusText();
  std::vector<nls::ZipEntry> entries;
  for (int i = 0; i < 8; ++i) entries.push_back({"f" + std::to_string(i) + ".v", src});
  for (auto _ : state) {
    auto z = nls::BuildZip(entries);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * src.size() * 8));
}
BENCHMARK(BM_BuildZip);

}  // namespace

BENCHMARK_MAIN();

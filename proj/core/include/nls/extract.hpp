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

#ifndef NLS_EXTRACT_HPP_
#define NLS_EXTRACT_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nls/artifact.hpp"

namespace nls {

struct CodeBlock {
  std::string language_tag;  // first word of the info string, as written
  std::string body;          // lines between the fences, newlines included
  bool implicit = false;     // unfenced response that starts with `module`

  bool operator==(const CodeBlock&) const = default;
};

// Fenced blocks (``` or ~~~) in document order. An unfenced response whose
// first significant token is `module` becomes one implicit block. Throws
// Error(kUnterminatedFence).
std::vector<CodeBlock> ExtractCodeBlocks(std::string_view response);

// verilog, v, systemverilog, sv or empty (any case).
bool IsHdlTag(std::string_view tag);

// One artifact per top-level module. Each region runs from its first
// non-blank line (or, after a module ending mid-line, its first non-space
// character) through `endmodule [: label]` and the rest of that line when
// it holds nothing else. Throws Error(kNoModuleFound) or
// Error(kUnbalancedModuleEnd).
std::vector<HdlArtifact> SplitModules(std::string_view block, std::string_view language_tag = "",
                                      std::size_t response_index = 0);

struct ExtractResult {
  std::vector<HdlArtifact> artifacts;
  std::vector<std::string> notes;  // blocks that produced nothing, and why
};

// Every HDL block of a response, split into modules. Per-block failures
// (including an unterminated fence) become notes rather than exceptions.
ExtractResult ExtractArtifacts(std::string_view response, std::size_t response_index);

// `<module>.v` / `<module>.sv`, with `_2`, `_3`, ... on collisions, in
// artifact order.
std::vector<std::string> ArtifactFileNames(const std::vector<HdlArtifact>& artifacts);

// Throws Error(kIo).
std::vector<std::filesystem::path> WriteArtifacts(const std::vector<HdlArtifact>& artifacts,
                                                  const std::filesystem::path& out_dir);

// The .v/.sv files directly inside `dir`, as archive bytes. Throws
// Error(kIo) or Error(kNothingToPackage).
std::string PackageZipBytes(const std::filesystem::path& dir);
void PackageZip(const std::filesystem::path& dir, const std::filesystem::path& zip_path);

}  // namespace nls

#endif  // NLS_EXTRACT_HPP_

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

#ifndef NLS_ARTIFACT_HPP_
#define NLS_ARTIFACT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace nls {

enum class HdlLanguage { kVerilog, kSystemVerilog };

std::string_view HdlLanguageName(HdlLanguage lang);  // "verilog" / "systemverilog"
std::optional<HdlLanguage> ParseHdlLanguage(std::string_view name);

// One extracted source unit: exactly one top-level module...endmodule.
struct HdlArtifact {
  std::string module_name;
  HdlLanguage language = HdlLanguage::kVerilog;
  std::string text;
  std::size_t response_index = 0;  // transcript index of the producing response

  bool operator==(const HdlArtifact&) const = default;
};

}  // namespace nls

#endif  // NLS_ARTIFACT_HPP_

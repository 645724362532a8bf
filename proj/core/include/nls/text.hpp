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

// Small string, time and file helpers shared by the core modules.

#ifndef NLS_TEXT_HPP_
#define NLS_TEXT_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace nls {

// All persisted instants have one-second resolution so that a value survives
// a format/parse round trip unchanged.
using Timestamp = std::chrono::sys_seconds;

Timestamp Now();

// "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatRfc3339(Timestamp t);
// Accepts the form above plus fractional seconds and numeric offsets.
std::optional<Timestamp> ParseRfc3339(std::string_view text);

std::string_view Trim(std::string_view s);
// Trims and collapses internal whitespace runs to one space.
std::string NormalizeWhitespace(std::string_view s);
// Drops one trailing "\n" (or "\r\n") if present.
std::string_view TrimOneTrailingNewline(std::string_view s);

// Counts Unicode scalar values, i.e. bytes that are not UTF-8 continuation
// bytes. Malformed sequences still count once per lead byte.
std::size_t Utf8ScalarCount(std::string_view s);

std::string ToLower(std::string_view s);

// Throws Error(kIo) on failure.
std::string ReadFile(const std::filesystem::path& path);
// Writes via a temporary sibling and renames over the target.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace nls

#endif  // NLS_TEXT_HPP_

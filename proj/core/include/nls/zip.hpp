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

// Minimal reproducible zip container: deflate entries, fixed DOS timestamp
// (1980-01-01 00:00), lexicographic entry order, no extra fields.

#ifndef NLS_ZIP_HPP_
#define NLS_ZIP_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nls {

struct ZipEntry {
  std::string name;
  std::string data;

  bool operator==(const ZipEntry&) const = default;
};

// Sorts entries by name. Equal inputs give byte-identical archives.
std::string BuildZip(std::vector<ZipEntry> entries);

// Entries in central-directory order. Supports stored and deflated entries
// without zip64. Throws Error(kMalformedArchive) on anything else or on a
// CRC mismatch.
std::vector<ZipEntry> ReadZip(std::string_view archive);

std::uint32_t Crc32(std::string_view data);

}  // namespace nls

#endif  // NLS_ZIP_HPP_

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


#include "nls/text.hpp"

#include <gtest/gtest.h>

#include "nls/error.hpp"
#include "test_util.hpp"

namespace nls {
namespace {

using std::chrono::seconds;
using std::chrono::sys_seconds;

TEST(TextTest, FormatsKnownEpoch) {
  // 1700000000 is 2023-11-14 22:13:20 UTC.
  EXPECT_EQ(FormatRfc3339(sys_seconds(seconds(1700000000))), "2023-11-14T22:13:20Z");
  EXPECT_EQ(FormatRfc3339(sys_seconds(seconds(0))), "1970-01-01T00:00:00Z");
}

TEST(TextTest, ParsesOffsetsAndFractions) {
  const sys_seconds want(seconds(1700000000));
  EXPECT_EQ(ParseRfc3339("2023-11-14T22:13:20Z"), want);
  EXPECT_EQ(ParseRfc3339("2023-11-14T22:13:20.750Z"), want);
  EXPECT_EQ(ParseRfc3339("2023-11-15T00:13:20+02:00"), want);
  EXPECT_EQ(ParseRfc3339("2023-11-14T21:13:20-01:00"), want);
  EXPECT_FALSE(ParseRfc3339("2023-11-14 22:13:20").has_value());
  EXPECT_FALSE(ParseRfc3339("yesterday").has_value());
}

TEST(TextTest, RoundTripsNow) {
  const Timestamp t = Now();
  EXPECT_EQ(ParseRfc3339(FormatRfc3339(t)), t);
}

TEST(TextTest, TrimAndNormalize) {
  EXPECT_EQ(Trim("  a b \t\n"), "a b");
  EXPECT_EQ(Trim(" \n\t "), "");
  EXPECT_EQ(NormalizeWhitespace("  use   non-blocking\n\tassignments  "),
            "use non-blocking assignments");
}

TEST(TextTest, DropsOnlyOneTrailingNewline) {
  EXPECT_EQ(TrimOneTrailingNewline("abc\n"), "abc");
  EXPECT_EQ(TrimOneTrailingNewline("abc\r\n"), "abc");
  EXPECT_EQ(TrimOneTrailingNewline("abc\n\n"), "abc\n");
  EXPECT_EQ(TrimOneTrailingNewline("abc"), "abc");
}

TEST(TextTest, CountsScalarValuesNotBytes) {
  EXPECT_EQ(Utf8ScalarCount(""), 0u);
  EXPECT_EQ(Utf8ScalarCount("abc"), 3u);
  EXPECT_EQ(Utf8ScalarCount("h\xC3\xA9llo"), 5u);         // é is two bytes
  EXPECT_EQ(Utf8ScalarCount("\xE6\x97\xA5\xE6\x9C\xAC"), 2u);  // two CJK ideographs
  EXPECT_EQ(Utf8ScalarCount("\xF0\x9F\x98\x80"), 1u);      // one emoji, four bytes
}

TEST(TextTest, ReadMissingFileIsIoError) {
  testing::TempDir dir;
  try {
    ReadFile(dir / "absent.txt");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(TextTest, AtomicWriteReplacesContents) {
  testing::TempDir dir;
  const auto path = dir / "f.txt";
  WriteFileAtomic(path, "first");
  WriteFileAtomic(path, "second\n");
  EXPECT_EQ(ReadFile(path), "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir.path())) ++entries;
  EXPECT_EQ(entries, 1);
}

TEST(TextTest, ToLowerIsAsciiOnly) { EXPECT_EQ(ToLower("SysTemVerilog"), "systemverilog"); }

}  // namespace
}  // namespace nls

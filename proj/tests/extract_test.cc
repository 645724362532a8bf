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


#include "nls/extract.hpp"

#include <gtest/gtest.h>

#include "nls/error.hpp"
#include "nls/text.hpp"
#include "nls/zip.hpp"
#include "test_util.hpp"

namespace nls {
namespace {

namespace fs = std::filesystem;

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

TEST(CodeBlockTest, FencedBlocksInOrder) {
  const auto blocks = ExtractCodeBlocks(
      "Intro\n```verilog\nmodule a; endmodule\n```\ntext\n~~~ sv title=x\nmodule b; endmodule\n~~~\n"
      "```python\nprint(1)\n```\n");
  ASSERT_EQ(blocks.size(), 3u);
  EXPECT_EQ(blocks[0].language_tag, "verilog");
  EXPECT_EQ(blocks[0].body, "module a; endmodule\n");
  EXPECT_EQ(blocks[1].language_tag, "sv");
  EXPECT_EQ(blocks[2].language_tag, "python");
  EXPECT_FALSE(blocks[0].implicit);
}

TEST(CodeBlockTest, ImplicitBlockForBareModule) {
  const auto blocks = ExtractCodeBlocks("// header comment\nmodule a; endmodule\n");
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_TRUE(blocks[0].implicit);
  EXPECT_TRUE(ExtractCodeBlocks("Sorry, I cannot help with that module.").empty());
}

TEST(CodeBlockTest, UnterminatedFence) {
  EXPECT_EQ(CodeOf([] { ExtractCodeBlocks("```verilog\nmodule a;\n"); }),
            ErrorCode::kUnterminatedFence);
}

TEST(CodeBlockTest, HdlTags) {
  for (const char* t : {"verilog", "Verilog", "v", "sv", "SystemVerilog", ""}) {
    EXPECT_TRUE(IsHdlTag(t)) << t;
  }
  for (const char* t : {"vhdl", "python", "text"}) EXPECT_FALSE(IsHdlTag(t)) << t;
}

TEST(SplitModulesTest, OneArtifactPerModuleWithLeadingComments) {
  const std::string block =
      "// Processing element\nmodule pe(input a, output y);\n  assign y = a;\nendmodule\n"
      "\n\n// Row\nmodule row(input a, output y);\n  pe u(.a(a), .y(y));\nendmodule : row // done\n";
  const auto arts = SplitModules(block, "verilog", 4);
  ASSERT_EQ(arts.size(), 2u);
  EXPECT_EQ(arts[0].module_name, "pe");
  EXPECT_EQ(arts[0].text,
            "// Processing element\nmodule pe(input a, output y);\n  assign y = a;\nendmodule\n");
  EXPECT_EQ(arts[1].module_name, "row");
  EXPECT_EQ(arts[1].text.rfind("// Row\n", 0), 0u);
  EXPECT_NE(arts[1].text.find("endmodule : row // done\n"), std::string::npos);
  EXPECT_EQ(arts[1].response_index, 4u);
  EXPECT_EQ(arts[0].language, HdlLanguage::kVerilog);
}

TEST(SplitModulesTest, LanguageFromTagOrContent) {
  EXPECT_EQ(SplitModules("module a; endmodule\n", "sv")[0].language, HdlLanguage::kSystemVerilog);
  EXPECT_EQ(SplitModules("module a; logic x; endmodule\n", "verilog")[0].language,
            HdlLanguage::kSystemVerilog);
  EXPECT_EQ(SplitModules("module a; // logic\nendmodule\n")[0].language, HdlLanguage::kVerilog);
}

TEST(SplitModulesTest, Errors) {
  EXPECT_EQ(CodeOf([] { SplitModules("wire x;\n"); }), ErrorCode::kNoModuleFound);
  EXPECT_EQ(CodeOf([] { SplitModules("module a;\n"); }), ErrorCode::kUnbalancedModuleEnd);
  EXPECT_EQ(CodeOf([] { SplitModules("endmodule\nmodule a; endmodule\n"); }),
            ErrorCode::kUnbalancedModuleEnd);
}

TEST(ExtractArtifactsTest, SkipsNonHdlAndCollectsNotes) {
  const auto r = ExtractArtifacts(
      "```python\nprint()\n```\n```verilog\n// just a comment\n```\n```v\nmodule a; endmodule\n```\n",
      2);
  ASSERT_EQ(r.artifacts.size(), 1u);
  EXPECT_EQ(r.artifacts[0].module_name, "a");
  EXPECT_EQ(r.artifacts[0].response_index, 2u);
  EXPECT_EQ(r.notes.size(), 1u);
}

TEST(ExtractArtifactsTest, UnterminatedFenceBecomesNote) {
  const auto r = ExtractArtifacts("```verilog\nmodule a; endmodule\n", 1);
  EXPECT_TRUE(r.artifacts.empty());
  ASSERT_EQ(r.notes.size(), 1u);
}

TEST(ExtractArtifactsTest, ProseBetweenBlocksIsDropped) {
  const auto r = ExtractArtifacts(
      "Prose.\n```verilog\nmodule mac_pe; endmodule\n```\nMore prose.\n```verilog\nmodule pe_row; "
      "endmodule\n```\nBye.\n",
      0);
  ASSERT_EQ(r.artifacts.size(), 2u);
  EXPECT_EQ(r.artifacts[0].module_name, "mac_pe");
  EXPECT_EQ(r.artifacts[1].module_name, "pe_row");
}

TEST(FileNameTest, SuffixesOnCollision) {
  const std::vector<HdlArtifact> arts = {{"top", HdlLanguage::kVerilog, "", 0},
                                         {"top", HdlLanguage::kVerilog, "", 0},
                                         {"pkg", HdlLanguage::kSystemVerilog, "", 0},
                                         {"top", HdlLanguage::kVerilog, "", 0}};
  EXPECT_EQ(ArtifactFileNames(arts),
            (std::vector<std::string>{"top.v", "top_2.v", "pkg.sv", "top_3.v"}));
}

TEST(PackageTest, WritesAndZipsOnlyHdlFiles) {
  testing::TempDir dir;
  const std::vector<HdlArtifact> arts = {{"b", HdlLanguage::kVerilog, "module b; endmodule\n", 0},
                                         {"a", HdlLanguage::kSystemVerilog, "module a; endmodule\n", 0}};
  const auto written = WriteArtifacts(arts, dir / "out");
  ASSERT_EQ(written.size(), 2u);
  EXPECT_EQ(written[0].filename(), "b.v");
  EXPECT_EQ(ReadFile(written[1]), "module a; endmodule\n");
  WriteFileAtomic(dir / "out" / "notes.txt", "ignored");
  const std::string zip1 = PackageZipBytes(dir / "out");
  const std::string zip2 = PackageZipBytes(dir / "out");
  EXPECT_EQ(zip1, zip2);
  const auto entries = ReadZip(zip1);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].name, "a.sv");
  EXPECT_EQ(entries[1].name, "b.v");
  PackageZip(dir / "out", dir / "x.zip");
  EXPECT_EQ(ReadFile(dir / "x.zip"), zip1);
}

TEST(PackageTest, NothingToPackage) {
  testing::TempDir dir;
  EXPECT_EQ(CodeOf([&] { PackageZipBytes(dir.path()); }), ErrorCode::kNothingToPackage);
  EXPECT_EQ(CodeOf([&] { PackageZipBytes(dir / "missing"); }), ErrorCode::kIo);
}

}  // namespace
}  // namespace nls

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

#include <set>
#include <system_error>

#include "nls/error.hpp"
#include "nls/hdl/token.hpp"
#include "nls/text.hpp"
#include "nls/zip.hpp"

namespace nls {

std::string_view HdlLanguageName(HdlLanguage lang) {
  return lang == HdlLanguage::kSystemVerilog ? "systemverilog" : "verilog";
}

std::optional<HdlLanguage> ParseHdlLanguage(std::string_view name) {
  if (name == "verilog") return HdlLanguage::kVerilog;
  if (name == "systemverilog") return HdlLanguage::kSystemVerilog;
  return std::nullopt;
}

namespace {

struct Line {
  std::string_view text;  // without the newline
  std::size_t begin = 0;
  std::size_t end = 0;  // past the newline, if any
};

std::vector<Line> SplitLines(std::string_view s) {
  std::vector<Line> out;
  std::size_t at = 0;
  while (at < s.size()) {
    const auto nl = s.find('\n', at);
    const std::size_t stop = nl == std::string_view::npos ? s.size() : nl;
    std::string_view text = s.substr(at, stop - at);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    out.push_back({text, at, nl == std::string_view::npos ? s.size() : nl + 1});
    at = out.back().end;
  }
  return out;
}

// Returns the fence run (``` or ~~~, 3+) opening `line` after up to three
// spaces, or an empty view.
std::string_view FenceRun(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && i < 3 && line[i] == ' ') ++i;
  if (i >= line.size() || (line[i] != '`' && line[i] != '~')) return {};
  const char c = line[i];
  std::size_t j = i;
  while (j < line.size() && line[j] == c) ++j;
  if (j - i < 3) return {};
  return line.substr(i, j - i);
}

bool IsBlank(std::string_view s) { return Trim(s).empty(); }

bool StartsWithModule(std::string_view response) {
  for (const auto& t : hdl::Tokenize(response)) {
    if (t.is_trivia()) continue;
    return t.kind == hdl::TokenKind::kKeyword && (t.text == "module" || t.text == "macromodule");
  }
  return false;
}

bool IsModuleKw(const hdl::Token& t) {
  return t.kind == hdl::TokenKind::kKeyword && (t.text == "module" || t.text == "macromodule");
}

}  // namespace

std::vector<CodeBlock> ExtractCodeBlocks(std::string_view response) {
  std::vector<CodeBlock> out;
  const auto lines = SplitLines(response);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view run = FenceRun(lines[i].text);
    if (run.empty()) continue;
    const std::string_view info = Trim(lines[i].text.substr(lines[i].text.find(run) + run.size()));
    if (run[0] == '`' && info.find('`') != std::string_view::npos) continue;  // inline code
    CodeBlock block;
    block.language_tag = std::string(info.substr(0, info.find_first_of(" \t{")));
    std::size_t j = i + 1;
    bool closed = false;
    for (; j < lines.size(); ++j) {
      const std::string_view close = FenceRun(lines[j].text);
      if (!close.empty() && close[0] == run[0] && close.size() >= run.size() &&
          IsBlank(lines[j].text.substr(lines[j].text.find(close) + close.size()))) {
        closed = true;
        break;
      }
      block.body.append(response.substr(lines[j].begin, lines[j].end - lines[j].begin));
    }
    if (!closed) {
      throw Error(ErrorCode::kUnterminatedFence,
                  "code fence opened on line " + std::to_string(i + 1) + " is never closed");
    }
    out.push_back(std::move(block));
    i = j;
  }
  if (out.empty() && StartsWithModule(response)) {
    CodeBlock block;
    block.body = std::string(response);
    block.implicit = true;
    out.push_back(std::move(block));
  }
  return out;
}

bool IsHdlTag(std::string_view tag) {
  const std::string t = ToLower(tag);
  return t.empty() || t == "verilog" || t == "v" || t == "systemverilog" || t == "sv";
}

std::vector<HdlArtifact> SplitModules(std::string_view block, std::string_view language_tag,
                                      std::size_t response_index) {
  const auto tokens = hdl::Tokenize(block);
  const std::string tag = ToLower(language_tag);
  HdlLanguage lang =
      tag == "sv" || tag == "systemverilog" ? HdlLanguage::kSystemVerilog : HdlLanguage::kVerilog;
  for (const auto& t : tokens) {
    if (t.kind == hdl::TokenKind::kKeyword && hdl::IsSvOnlyKeyword(t.text)) {
      lang = HdlLanguage::kSystemVerilog;
      break;
    }
  }

  std::vector<HdlArtifact> out;
  std::size_t region_floor = 0;  // end of the previous region
  std::size_t i = 0;
  while (i < tokens.size()) {
    const auto& t = tokens[i];
    if (t.kind == hdl::TokenKind::kKeyword && t.text == "endmodule") {
      throw Error(ErrorCode::kUnbalancedModuleEnd,
                  "endmodule on line " + std::to_string(t.line) + " has no matching module");
    }
    if (!IsModuleKw(t)) {
      ++i;
      continue;
    }
    const hdl::Token& header = t;
    std::string name;
    std::size_t j = i + 1;
    for (; j < tokens.size(); ++j) {
      const auto& u = tokens[j];
      if (u.is_trivia()) continue;
      if (u.kind == hdl::TokenKind::kKeyword && (u.text == "automatic" || u.text == "static")) continue;
      if (u.kind == hdl::TokenKind::kIdentifier) name = u.text;
      break;
    }
    if (name.empty()) {
      throw Error(ErrorCode::kNoModuleFound,
                  "module keyword on line " + std::to_string(header.line) + " has no name");
    }
    // Find endmodule before any other module keyword.
    std::size_t k = j;
    for (; k < tokens.size(); ++k) {
      if (IsModuleKw(tokens[k])) break;
      if (tokens[k].kind == hdl::TokenKind::kKeyword && tokens[k].text == "endmodule") break;
    }
    if (k >= tokens.size() || tokens[k].text != "endmodule") {
      throw Error(ErrorCode::kUnbalancedModuleEnd,
                  "module '" + name + "' on line " + std::to_string(header.line) +
                      " has no endmodule");
    }
    std::size_t end = tokens[k].offset + tokens[k].text.size();
    std::size_t next = k + 1;
    // Optional `: label`.
    {
      std::size_t a = next;
      while (a < tokens.size() && tokens[a].kind == hdl::TokenKind::kWhitespace &&
             tokens[a].text.find('\n') == std::string::npos) {
        ++a;
      }
      if (a < tokens.size() && tokens[a].is(hdl::TokenKind::kPunct, ":")) {
        std::size_t b = a + 1;
        while (b < tokens.size() && tokens[b].kind == hdl::TokenKind::kWhitespace) ++b;
        if (b < tokens.size() && tokens[b].kind == hdl::TokenKind::kIdentifier) {
          end = tokens[b].offset + tokens[b].text.size();
          next = b + 1;
        }
      }
    }
    // Rest of the line, when it holds only whitespace or a line comment.
    const auto nl = block.find('\n', end);
    const std::size_t line_end = nl == std::string_view::npos ? block.size() : nl + 1;
    const std::string_view rest = block.substr(end, line_end - end);
    const std::string_view rest_trim = Trim(rest);
    if (rest_trim.empty() || rest_trim.substr(0, 2) == "//") end = line_end;

    // Region start: skip blank lines (or spaces after a mid-line end).
    std::size_t start = region_floor;
    while (start < header.offset) {
      const auto lnl = block.find('\n', start);
      if (lnl == std::string_view::npos || lnl >= header.offset) break;
      if (!IsBlank(block.substr(start, lnl - start))) break;
      start = lnl + 1;
    }
    if (start > 0 && block[start - 1] != '\n') {
      while (start < header.offset && (block[start] == ' ' || block[start] == '\t')) ++start;
    }

    HdlArtifact a;
    a.module_name = name;
    a.language = lang;
    a.text = std::string(block.substr(start, end - start));
    a.response_index = response_index;
    out.push_back(std::move(a));

    region_floor = end;
    i = next;
    while (i < tokens.size() && tokens[i].offset < end) ++i;
  }
  if (out.empty()) throw Error(ErrorCode::kNoModuleFound, "no module declaration found");
  return out;
}

ExtractResult ExtractArtifacts(std::string_view response, std::size_t response_index) {
  ExtractResult result;
  std::vector<CodeBlock> blocks;
  try {
    blocks = ExtractCodeBlocks(response);
  } catch (const Error& e) {
    result.notes.push_back(e.what());
    return result;
  }
  std::size_t n = 0;
  for (const auto& b : blocks) {
    ++n;
    if (!IsHdlTag(b.language_tag)) continue;
    try {
      auto arts = SplitModules(b.body, b.language_tag, response_index);
      result.artifacts.insert(result.artifacts.end(), arts.begin(), arts.end());
    } catch (const Error& e) {
      result.notes.push_back("code block " + std::to_string(n) + ": " + e.what());
    }
  }
  if (blocks.empty()) result.notes.push_back("response contains no code block");
  return result;
}

std::vector<std::string> ArtifactFileNames(const std::vector<HdlArtifact>& artifacts) {
  std::vector<std::string> out;
  std::set<std::string> used;
  for (const auto& a : artifacts) {
    const std::string ext = a.language == HdlLanguage::kSystemVerilog ? ".sv" : ".v";
    std::string name = a.module_name + ext;
    for (int k = 2; used.count(name) != 0; ++k) {
      name = a.module_name + "_" + std::to_string(k) + ext;
    }
    used.insert(name);
    out.push_back(std::move(name));
  }
  return out;
}

std::vector<std::filesystem::path> WriteArtifacts(const std::vector<HdlArtifact>& artifacts,
                                                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  const auto names = ArtifactFileNames(artifacts);
  std::vector<std::filesystem::path> out;
  for (std::size_t i = 0; i < artifacts.size(); ++i) {
    const auto path = out_dir / names[i];
    WriteFileAtomic(path, artifacts[i].text);
    out.push_back(path);
  }
  return out;
}

std::string PackageZipBytes(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<ZipEntry> entries;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = ToLower(entry.path().extension().string());
    if (ext != ".v" && ext != ".sv") continue;
    entries.push_back({entry.path().filename().string(), ReadFile(entry.path())});
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string() + ": " + ec.message());
  if (entries.empty()) {
    throw Error(ErrorCode::kNothingToPackage, "no .v or .sv files in " + dir.string());
  }
  return BuildZip(std::move(entries));
}

void PackageZip(const std::filesystem::path& dir, const std::filesystem::path& zip_path) {
  const std::string bytes = PackageZipBytes(dir);
  if (zip_path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(zip_path.parent_path(), ec);
  }
  WriteFileAtomic(zip_path, bytes);
}

}  // namespace nls

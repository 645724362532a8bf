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

#include "nls/zip.hpp"

#include <zlib.h>

#include <algorithm>
#include <limits>

#include "nls/error.hpp"

namespace nls {
namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::uint16_t kVersion = 20;
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01
constexpr std::uint16_t kDeflate = 8;
constexpr std::uint16_t kStored = 0;

void Put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>(v >> 8));
}

void Put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

[[noreturn]] void Malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedArchive, "malformed zip archive: " + why);
}

std::uint16_t Get16(std::string_view in, std::size_t at) {
  if (at + 2 > in.size()) Malformed("truncated");
  return static_cast<std::uint16_t>(static_cast<unsigned char>(in[at]) |
                                    (static_cast<unsigned char>(in[at + 1]) << 8));
}

std::uint32_t Get32(std::string_view in, std::size_t at) {
  if (at + 4 > in.size()) Malformed("truncated");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(in[at + i]);
  return v;
}

std::string Deflate(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::kIo, "deflateInit2 failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  out.resize(zs.total_out);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::kIo, "deflate failed");
  return out;
}

std::string Inflate(std::string_view data, std::size_t expected) {
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) Malformed("inflateInit2 failed");
  std::string out(expected, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) Malformed("bad deflate stream");
  return out;
}

}  // namespace

std::uint32_t Crc32(std::string_view data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string BuildZip(std::vector<ZipEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const ZipEntry& a, const ZipEntry& b) { return a.name < b.name; });
  std::string out;
  std::string central;
  for (const auto& e : entries) {
    if (e.name.size() > std::numeric_limits<std::uint16_t>::max() ||
        e.data.size() > std::numeric_limits<std::uint32_t>::max() / 2) {
      throw Error(ErrorCode::kInvalidArgument, "zip entry too large: " + e.name);
    }
    const std::string packed = Deflate(e.data);
    const std::uint32_t crc = Crc32(e.data);
    const auto offset = static_cast<std::uint32_t>(out.size());
    const auto name_len = static_cast<std::uint16_t>(e.name.size());

    Put32(out, kLocalSig);
    Put16(out, kVersion);
    Put16(out, 0);  // flags
    Put16(out, kDeflate);
    Put16(out, kDosTime);
    Put16(out, kDosDate);
    Put32(out, crc);
    Put32(out, static_cast<std::uint32_t>(packed.size()));
    Put32(out, static_cast<std::uint32_t>(e.data.size()));
    Put16(out, name_len);
    Put16(out, 0);  // extra
    out += e.name;
    out += packed;

    Put32(central, kCentralSig);
    Put16(central, kVersion);  // made by
    Put16(central, kVersion);  // needed
    Put16(central, 0);
    Put16(central, kDeflate);
    Put16(central, kDosTime);
    Put16(central, kDosDate);
    Put32(central, crc);
    Put32(central, static_cast<std::uint32_t>(packed.size()));
    Put32(central, static_cast<std::uint32_t>(e.data.size()));
    Put16(central, name_len);
    Put16(central, 0);  // extra
    Put16(central, 0);  // comment
    Put16(central, 0);  // disk
    Put16(central, 0);  // internal attributes
    Put32(central, 0);  // external attributes
    Put32(central, offset);
    central += e.name;
  }
  const auto cd_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  Put32(out, kEndSig);
  Put16(out, 0);
  Put16(out, 0);
  Put16(out, static_cast<std::uint16_t>(entries.size()));
  Put16(out, static_cast<std::uint16_t>(entries.size()));
  Put32(out, static_cast<std::uint32_t>(central.size()));
  Put32(out, cd_offset);
  Put16(out, 0);  // comment
  return out;
}

std::vector<ZipEntry> ReadZip(std::string_view archive) {
  if (archive.size() < 22) Malformed("too short");
  std::size_t eocd = std::string_view::npos;
  const std::size_t lowest = archive.size() > 22 + 0xffff ? archive.size() - 22 - 0xffff : 0;
  for (std::size_t i = archive.size() - 22 + 1; i-- > lowest;) {
    if (Get32(archive, i) == kEndSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) Malformed("no end of central directory");
  const std::uint16_t count = Get16(archive, eocd + 10);
  const std::uint32_t cd_offset = Get32(archive, eocd + 16);
  std::vector<ZipEntry> out;
  std::size_t at = cd_offset;
  for (std::uint16_t n = 0; n < count; ++n) {
    if (Get32(archive, at) != kCentralSig) Malformed("bad central directory entry");
    const std::uint16_t method = Get16(archive, at + 10);
    const std::uint32_t crc = Get32(archive, at + 16);
    const std::uint32_t csize = Get32(archive, at + 20);
    const std::uint32_t usize = Get32(archive, at + 24);
    const std::uint16_t name_len = Get16(archive, at + 28);
    const std::uint16_t extra_len = Get16(archive, at + 30);
    const std::uint16_t comment_len = Get16(archive, at + 32);
    const std::uint32_t local = Get32(archive, at + 42);
    if (at + 46 + name_len > archive.size()) Malformed("truncated name");
    ZipEntry e;
    e.name = std::string(archive.substr(at + 46, name_len));
    at += 46 + name_len + extra_len + comment_len;

    if (Get32(archive, local) != kLocalSig) Malformed("bad local header for " + e.name);
    const std::size_t data_at = local + 30 + Get16(archive, local + 26) + Get16(archive, local + 28);
    if (data_at + csize > archive.size()) Malformed("truncated data for " + e.name);
    const std::string_view payload = archive.substr(data_at, csize);
    if (method == kDeflate) {
      e.data = Inflate(payload, usize);
    } else if (method == kStored) {
      if (csize != usize) Malformed("size mismatch for " + e.name);
      e.data = std::string(payload);
    } else {
      Malformed("unsupported compression method " + std::to_string(method));
    }
    if (Crc32(e.data) != crc) Malformed("CRC mismatch for " + e.name);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace nls

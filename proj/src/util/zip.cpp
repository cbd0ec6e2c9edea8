// Copyright 2026 The PQS Authors
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

#include "pqs/util/zip.hpp"

#include <algorithm>
#include <array>

#include "pqs/errors.hpp"
#include "pqs/util/fs.hpp"

namespace fs = std::filesystem;

namespace pqs::util {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralSig = 0x06054b50;
// Fixed DOS timestamp (1980-01-01 00:00:00) keeps archives reproducible.
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = 0x0021;

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::string& out, std::uint32_t v) {
  put16(out, static_cast<std::uint16_t>(v & 0xffff));
  put16(out, static_cast<std::uint16_t>((v >> 16) & 0xffff));
}

std::uint16_t get16(std::string_view data, std::size_t off) {
  if (off + 2 > data.size()) throw Error("zip: truncated archive");
  return static_cast<std::uint16_t>(
      static_cast<std::uint8_t>(data[off]) |
      (static_cast<std::uint8_t>(data[off + 1]) << 8));
}

std::uint32_t get32(std::string_view data, std::size_t off) {
  if (off + 4 > data.size()) throw Error("zip: truncated archive");
  return static_cast<std::uint32_t>(get16(data, off)) |
         (static_cast<std::uint32_t>(get16(data, off + 2)) << 16);
}

const std::array<std::uint32_t, 256>& crc_table() {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) {
        c = (c & 1) ? (0xedb88320u ^ (c >> 1)) : (c >> 1);
      }
      t[i] = c;
    }
    return t;
  }();
  return table;
}

bool safe_entry_name(std::string_view name) {
  if (name.empty() || name.front() == '/') return false;
  if (name.find('\\') != std::string_view::npos) return false;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t pos = name.find('/', start);
    if (pos == std::string_view::npos) pos = name.size();
    std::string_view part = name.substr(start, pos - start);
    if (part == ".." || part.empty()) return false;
    start = pos + 1;
  }
  return true;
}

}  // namespace

std::uint32_t crc32(std::string_view data) {
  const auto& table = crc_table();
  std::uint32_t crc = 0xffffffffu;
  for (char ch : data) {
    crc = table[(crc ^ static_cast<std::uint8_t>(ch)) & 0xff] ^ (crc >> 8);
  }
  return crc ^ 0xffffffffu;
}

std::string zip_pack(const std::vector<ZipEntry>& entries) {
  std::string out;
  std::string central;
  for (const auto& entry : entries) {
    if (!safe_entry_name(entry.name)) {
      throw Error("zip: invalid entry name: " + entry.name);
    }
    std::uint32_t offset = static_cast<std::uint32_t>(out.size());
    std::uint32_t crc = crc32(entry.content);
    std::uint32_t size = static_cast<std::uint32_t>(entry.content.size());

    put32(out, kLocalHeaderSig);
    put16(out, 20);        // version needed
    put16(out, 0);         // flags
    put16(out, 0);         // method: store
    put16(out, kDosTime);
    put16(out, kDosDate);
    put32(out, crc);
    put32(out, size);      // compressed
    put32(out, size);      // uncompressed
    put16(out, static_cast<std::uint16_t>(entry.name.size()));
    put16(out, 0);         // extra len
    out += entry.name;
    out += entry.content;

    put32(central, kCentralHeaderSig);
    put16(central, 20);    // version made by
    put16(central, 20);    // version needed
    put16(central, 0);
    put16(central, 0);
    put16(central, kDosTime);
    put16(central, kDosDate);
    put32(central, crc);
    put32(central, size);
    put32(central, size);
    put16(central, static_cast<std::uint16_t>(entry.name.size()));
    put16(central, 0);     // extra
    put16(central, 0);     // comment
    put16(central, 0);     // disk
    put16(central, 0);     // internal attrs
    put32(central, 0);     // external attrs
    put32(central, offset);
    central += entry.name;
  }

  std::uint32_t central_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  put32(out, kEndOfCentralSig);
  put16(out, 0);  // disk
  put16(out, 0);  // central dir disk
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put16(out, static_cast<std::uint16_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(central.size()));
  put32(out, central_offset);
  put16(out, 0);  // comment len
  return out;
}

std::vector<ZipEntry> zip_unpack(std::string_view archive) {
  // Locate the end-of-central-directory record (no archive comments written
  // by us, but tolerate a short one).
  if (archive.size() < 22) throw Error("zip: archive too small");
  std::size_t eocd = std::string_view::npos;
  std::size_t scan_start = archive.size() >= 22 + 512 ? archive.size() - 22 - 512 : 0;
  for (std::size_t i = archive.size() - 22 + 1; i-- > scan_start;) {
    if (get32(archive, i) == kEndOfCentralSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) {
    throw Error("zip: end of central directory not found");
  }
  std::uint16_t count = get16(archive, eocd + 10);
  std::uint32_t central_offset = get32(archive, eocd + 16);

  std::vector<ZipEntry> entries;
  std::size_t pos = central_offset;
  for (std::uint16_t i = 0; i < count; ++i) {
    if (get32(archive, pos) != kCentralHeaderSig) {
      throw Error("zip: bad central directory entry");
    }
    std::uint16_t method = get16(archive, pos + 10);
    std::uint32_t size = get32(archive, pos + 24);
    std::uint16_t name_len = get16(archive, pos + 28);
    std::uint16_t extra_len = get16(archive, pos + 30);
    std::uint16_t comment_len = get16(archive, pos + 32);
    std::uint32_t local_offset = get32(archive, pos + 42);
    if (pos + 46 + name_len > archive.size()) throw Error("zip: truncated name");
    std::string name(archive.substr(pos + 46, name_len));
    if (method != 0) {
      throw Error("zip: unsupported compression method " +
                  std::to_string(method) + " for entry " + name);
    }

    if (get32(archive, local_offset) != kLocalHeaderSig) {
      throw Error("zip: bad local header for entry " + name);
    }
    std::uint16_t lf_name_len = get16(archive, local_offset + 26);
    std::uint16_t lf_extra_len = get16(archive, local_offset + 28);
    std::size_t data_start = local_offset + 30 + lf_name_len + lf_extra_len;
    if (data_start + size > archive.size()) throw Error("zip: truncated entry data");
    std::string content(archive.substr(data_start, size));
    if (crc32(content) != get32(archive, pos + 16)) {
      throw Error("zip: crc mismatch for entry " + name);
    }
    entries.push_back(ZipEntry{std::move(name), std::move(content)});
    pos += 46u + name_len + extra_len + comment_len;
  }
  return entries;
}

void zip_extract_to(std::string_view archive, const fs::path& dir) {
  auto entries = zip_unpack(archive);
  for (const auto& entry : entries) {
    if (!safe_entry_name(entry.name)) {
      throw Error("zip: refusing unsafe entry name: " + entry.name);
    }
    fs::path target = dir / fs::path(entry.name);
    write_file_atomic(target, entry.content);
  }
}

std::string zip_pack_dir(const fs::path& root) {
  std::vector<ZipEntry> entries;
  for (const auto& item : fs::recursive_directory_iterator(root)) {
    if (!item.is_regular_file()) continue;
    fs::path rel = fs::relative(item.path(), root);
    entries.push_back(ZipEntry{rel.generic_string(), read_file(item.path())});
  }
  std::sort(entries.begin(), entries.end(),
            [](const ZipEntry& a, const ZipEntry& b) { return a.name < b.name; });
  return zip_pack(entries);
}

}  // namespace pqs::util

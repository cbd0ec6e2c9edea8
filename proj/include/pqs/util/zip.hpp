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

#ifndef PQS_UTIL_ZIP_HPP
#define PQS_UTIL_ZIP_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pqs::util {

// Minimal zip support for the fixture-store archives: store method only, no
// compression, fixed timestamps so identical inputs produce identical bytes.

struct ZipEntry {
  std::string name;     // '/'-separated relative path
  std::string content;  // raw bytes
};

std::string zip_pack(const std::vector<ZipEntry>& entries);

// Throws Error on anything but well-formed store-method archives.
std::vector<ZipEntry> zip_unpack(std::string_view archive);

// Unpacks into dir; rejects absolute or parent-escaping entry names.
void zip_extract_to(std::string_view archive, const std::filesystem::path& dir);

// Packs every regular file under root (relative '/' paths, sorted).
std::string zip_pack_dir(const std::filesystem::path& root);

std::uint32_t crc32(std::string_view data);

}  // namespace pqs::util

#endif  // PQS_UTIL_ZIP_HPP

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

#ifndef PQS_UTIL_FS_HPP
#define PQS_UTIL_FS_HPP

#include <filesystem>
#include <string>

namespace pqs::util {

// Reads a whole file as binary. Throws FileMissing if it does not exist and
// Error on read failure.
std::string read_file(const std::filesystem::path& path);

// Writes via a temp file in the same directory followed by a rename, so
// readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

void ensure_dir(const std::filesystem::path& dir);

}  // namespace pqs::util

#endif  // PQS_UTIL_FS_HPP

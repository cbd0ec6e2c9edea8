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

#include "pqs/util/fs.hpp"

#include <fstream>
#include <sstream>

#include "pqs/errors.hpp"

namespace fs = std::filesystem;

namespace pqs::util {

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec) || ec) {
    throw FileMissing(path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error("read failure: " + path.string());
  }
  return std::move(buf).str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  ensure_dir(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open file for writing: " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error("write failure: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw Error("rename failure: " + tmp.string() + " -> " + path.string() +
                " (" + ec.message() + ")");
  }
}

void ensure_dir(const fs::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create directory: " + dir.string() + " (" +
                ec.message() + ")");
  }
}

}  // namespace pqs::util

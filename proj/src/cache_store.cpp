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

#include "pqs/cache_store.hpp"

#include <json.hpp>

#include "pqs/errors.hpp"
#include "pqs/util/fs.hpp"

namespace fs = std::filesystem;

namespace pqs {

CacheStore::CacheStore(fs::path dir) : dir_(std::move(dir)) {
  try {
    util::ensure_dir(dir_);
  } catch (const Error& e) {
    throw StorageUnavailable(e.what());
  }
}

fs::path CacheStore::record_path(const CacheKey& key,
                                 std::string_view fingerprint) const {
  // Package names are reverse-domain (validated upstream), so they are safe
  // as file name components.
  std::string name = key.packagename + "__" + std::to_string(key.packageversion) +
                     "__" + std::string(fingerprint.substr(0, 16)) + ".json";
  return dir_ / name;
}

void CacheStore::persist(const CacheRecord& record) {
  nlohmann::json body{
      {"packagename", record.key.packagename},
      {"packageversion", record.key.packageversion},
      {"dataset_fingerprint", record.dataset_fingerprint},
      {"stored_at", record.stored_at},
      {"report_json", record.report_json},
  };
  try {
    util::write_file_atomic(record_path(record.key, record.dataset_fingerprint),
                            body.dump() + "\n");
  } catch (const Error& e) {
    throw StorageUnavailable(e.what());
  }
}

std::optional<CacheRecord> CacheStore::lookup(
    const CacheKey& key, std::string_view dataset_fingerprint) const {
  fs::path path = record_path(key, dataset_fingerprint);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  try {
    nlohmann::json body = nlohmann::json::parse(util::read_file(path));
    if (body.value("dataset_fingerprint", "") != dataset_fingerprint) {
      return std::nullopt;  // fingerprint prefix collision, treat as miss
    }
    CacheRecord record;
    record.key.packagename = body.at("packagename").get<std::string>();
    record.key.packageversion = body.at("packageversion").get<std::uint64_t>();
    record.dataset_fingerprint = body.at("dataset_fingerprint").get<std::string>();
    record.stored_at = body.value("stored_at", "");
    record.report_json = body.at("report_json").get<std::string>();
    return record;
  } catch (...) {
    return std::nullopt;  // unreadable record counts as a miss
  }
}

}  // namespace pqs

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

#ifndef PQS_CACHE_STORE_HPP
#define PQS_CACHE_STORE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace pqs {

struct CacheKey {
  std::string packagename;
  std::uint64_t packageversion = 0;
};

// One analyzed report, keyed by (packagename, packageversion) under a dataset
// fingerprint. The report is kept as its exact canonical bytes so replays are
// byte-identical.
struct CacheRecord {
  CacheKey key;
  std::string dataset_fingerprint;
  std::string report_json;
  std::string stored_at;  // ISO-8601 UTC
};

// Embedded on-disk record store: one JSON file per (key, fingerprint), written
// atomically. Records survive process restarts; a dataset change simply
// misses and the stale file becomes unreachable.
class CacheStore {
 public:
  explicit CacheStore(std::filesystem::path dir);

  // Write-then-read returns the identical record. Throws StorageUnavailable.
  void persist(const CacheRecord& record);

  // Miss returns nullopt, never an error.
  std::optional<CacheRecord> lookup(const CacheKey& key,
                                    std::string_view dataset_fingerprint) const;

 private:
  std::filesystem::path record_path(const CacheKey& key,
                                    std::string_view fingerprint) const;

  std::filesystem::path dir_;
};

}  // namespace pqs

#endif  // PQS_CACHE_STORE_HPP

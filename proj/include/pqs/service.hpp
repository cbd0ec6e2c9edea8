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

#ifndef PQS_SERVICE_HPP
#define PQS_SERVICE_HPP

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "pqs/cache_store.hpp"
#include "pqs/dataset.hpp"
#include "pqs/store.hpp"

namespace pqs {

struct AnalysisRequest {
  std::string packagename;             // reverse-domain
  std::uint64_t packageversion = 0;
};

struct ServiceConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path data_dir;
  std::shared_ptr<StoreBackend> store;
  Credentials store_credentials;
  unsigned workers = 2;  // concurrent acquisition+analysis jobs
};

// Outcome of one /analyze request: HTTP status, canonical JSON body, and
// whether the body came from the cache.
struct AnalyzeOutcome {
  int status = 500;
  std::string body;
  bool cached = false;
};

// The caching analysis service. A cache hit (same key, same dataset
// fingerprint) replays the stored bytes without touching the store; a miss
// acquires the app, analyzes it and persists the result. Concurrent identical
// requests share one underlying job (single-flight).
class AnalysisService {
 public:
  explicit AnalysisService(ServiceConfig config);

  // Parses and validates the request body, then runs handle_analyze.
  AnalyzeOutcome handle_analyze_json(const std::string& request_body);

  AnalyzeOutcome handle_analyze(const AnalysisRequest& request);

  const std::string& dataset_fingerprint() const {
    return dataset_.fingerprint;
  }
  const MappingDataset& dataset() const { return dataset_; }

  // Observability for tests and /healthz-style probes.
  std::uint64_t acquisitions() const { return acquisitions_.load(); }
  std::uint64_t analyses() const { return analyses_.load(); }
  std::uint64_t cache_hits() const { return cache_hits_.load(); }

 private:
  AnalyzeOutcome analyze_uncached(const AnalysisRequest& request);
  AnalyzeOutcome run_single_flight(const std::string& key,
                                   const AnalysisRequest& request);

  ServiceConfig config_;
  MappingDataset dataset_;
  CacheStore cache_;

  // In-flight table: the only shared mutable state across requests.
  std::mutex inflight_mutex_;
  std::map<std::string, std::shared_future<AnalyzeOutcome>> inflight_;

  // Bounded number of concurrently executing analysis jobs.
  std::mutex worker_mutex_;
  std::condition_variable worker_cv_;
  unsigned active_workers_ = 0;

  std::atomic<std::uint64_t> acquisitions_{0};
  std::atomic<std::uint64_t> analyses_{0};
  std::atomic<std::uint64_t> cache_hits_{0};
};

}  // namespace pqs

#endif  // PQS_SERVICE_HPP

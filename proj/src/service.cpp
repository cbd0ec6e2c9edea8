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

#include "pqs/service.hpp"

#include <chrono>
#include <ctime>

#include <json.hpp>

#include "pqs/bundle.hpp"
#include "pqs/errors.hpp"
#include "pqs/pipeline.hpp"
#include "pqs/util/fs.hpp"
#include "pqs/util/zip.hpp"

namespace fs = std::filesystem;

namespace pqs {

namespace {

using nlohmann::json;

std::string error_json(const std::string& code, const std::string& message,
                       const std::string& phase) {
  return json{{"error",
               {{"code", code}, {"message", message}, {"phase", phase}}}}
             .dump() +
         "\n";
}

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct PhaseTagged {
  int status;
  std::string code;
  std::string phase;
};

PhaseTagged classify(const StoreError& e) {
  switch (e.fault()) {
    case StoreFault::AppNotFound:
      return {404, store_fault_code(e.fault()), "details"};
    case StoreFault::NotFree:
      return {422, store_fault_code(e.fault()), "free_check"};
    case StoreFault::AuthFailed:
      return {502, store_fault_code(e.fault()), "auth"};
    case StoreFault::PurchaseFailed:
      return {502, store_fault_code(e.fault()), "purchase"};
    case StoreFault::DeliveryFailed:
      return {502, store_fault_code(e.fault()), "delivery"};
    case StoreFault::DownloadFailed:
      return {502, store_fault_code(e.fault()), "download"};
    case StoreFault::TransportError:
      return {502, store_fault_code(e.fault()), "transport"};
  }
  return {502, "store_error", "store"};
}

// Scoped workspace for one unpacked archive.
class Workspace {
 public:
  explicit Workspace(fs::path dir) : dir_(std::move(dir)) {
    util::ensure_dir(dir_);
  }
  ~Workspace() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

}  // namespace

AnalysisService::AnalysisService(ServiceConfig config)
    : config_(std::move(config)),
      dataset_(load_dataset(config_.dataset_dir)),
      cache_(config_.data_dir / "cache") {
  ValidationReport validation = validate_dataset(dataset_);
  if (!validation.ok()) {
    throw Error("dataset invalid: " + validation.errors.front());
  }
  if (config_.workers == 0) config_.workers = 1;
}

AnalyzeOutcome AnalysisService::handle_analyze_json(const std::string& request_body) {
  AnalysisRequest request;
  try {
    json body = json::parse(request_body);
    if (!body.is_object() || !body.contains("packagename") ||
        !body.contains("packageversion")) {
      throw Error("body must carry packagename and packageversion");
    }
    if (!body["packagename"].is_string() ||
        !body["packageversion"].is_number_integer() ||
        body["packageversion"].get<std::int64_t>() < 0) {
      throw Error("packagename must be a string, packageversion a non-negative integer");
    }
    request.packagename = body["packagename"].get<std::string>();
    request.packageversion = body["packageversion"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    return {400, error_json("bad_request", e.what(), "request"), false};
  } catch (const Error& e) {
    return {400, error_json("bad_request", e.what(), "request"), false};
  }
  return handle_analyze(request);
}

AnalyzeOutcome AnalysisService::handle_analyze(const AnalysisRequest& request) {
  if (!is_reverse_domain(request.packagename)) {
    return {400,
            error_json("bad_request",
                       "packagename is not reverse-domain: " + request.packagename,
                       "request"),
            false};
  }

  CacheKey key{request.packagename, request.packageversion};
  try {
    if (auto record = cache_.lookup(key, dataset_.fingerprint)) {
      ++cache_hits_;
      return {200, record->report_json, true};
    }
  } catch (const StorageUnavailable& e) {
    return {500, error_json("storage_unavailable", e.what(), "cache"), false};
  }

  std::string flight_key =
      request.packagename + ":" + std::to_string(request.packageversion);
  return run_single_flight(flight_key, request);
}

AnalyzeOutcome AnalysisService::run_single_flight(const std::string& key,
                                                  const AnalysisRequest& request) {
  std::shared_future<AnalyzeOutcome> future;
  bool leader = false;
  std::promise<AnalyzeOutcome> promise;

  {
    std::lock_guard<std::mutex> lock(inflight_mutex_);
    auto found = inflight_.find(key);
    if (found != inflight_.end()) {
      future = found->second;
    } else {
      future = promise.get_future().share();
      inflight_.emplace(key, future);
      leader = true;
    }
  }

  if (!leader) {
    return future.get();  // ride on the in-flight job
  }

  {
    std::unique_lock<std::mutex> lock(worker_mutex_);
    worker_cv_.wait(lock, [this]() { return active_workers_ < config_.workers; });
    ++active_workers_;
  }
  AnalyzeOutcome outcome;
  try {
    outcome = analyze_uncached(request);
  } catch (const std::exception& e) {
    outcome = {500, error_json("internal_error", e.what(), "analysis"), false};
  } catch (...) {
    outcome = {500, error_json("internal_error", "unknown failure", "analysis"), false};
  }
  {
    std::lock_guard<std::mutex> lock(worker_mutex_);
    --active_workers_;
  }
  worker_cv_.notify_one();

  promise.set_value(outcome);
  {
    std::lock_guard<std::mutex> lock(inflight_mutex_);
    inflight_.erase(key);
  }
  return outcome;
}

AnalyzeOutcome AnalysisService::analyze_uncached(const AnalysisRequest& request) {
  if (config_.store == nullptr) {
    return {502, error_json("transport_error", "no store configured", "auth"), false};
  }

  // Phases 1-6: authenticate and acquire the archive. Analysis starts only
  // after the acquisition component signals "Success" on its status channel.
  AcquisitionOutcome acquisition;
  std::string acquisition_signal;
  try {
    StoreSession session =
        authenticate(*config_.store, config_.store_credentials);
    ++acquisitions_;
    acquisition = fetch_app(
        *config_.store, session, request.packagename, request.packageversion,
        [&acquisition_signal](const std::string& s) { acquisition_signal = s; });
  } catch (const StoreError& e) {
    PhaseTagged tag = classify(e);
    return {tag.status, error_json(tag.code, e.detail(), tag.phase), false};
  }
  if (acquisition_signal != kAcquisitionSuccessSignal) {
    return {502,
            error_json("download_failed", "acquisition did not signal Success",
                       "download"),
            false};
  }

  // Unpack and analyze.
  std::string report_json;
  try {
    Workspace workspace(config_.data_dir / "work" /
                        (request.packagename + "-" +
                         std::to_string(request.packageversion) + "-" +
                         std::to_string(
                             std::chrono::steady_clock::now().time_since_epoch().count())));
    util::zip_extract_to(acquisition.bundle_archive, workspace.dir());

    AppBundle::Overrides overrides;
    overrides.package_name = request.packagename;
    overrides.version_code = request.packageversion;
    AppBundle bundle = AppBundle::open(workspace.dir(), overrides);

    ++analyses_;
    PrivacyReport report = analyze_bundle(bundle, dataset_);
    report_json = serialize_report(report, ReportFormat::Json);
  } catch (const AnalysisFailure& e) {
    return {500, error_json("analysis_failure", e.what(), e.stage()), false};
  } catch (const MalformedXml& e) {
    return {500, error_json("analysis_failure", e.what(), "manifest"), false};
  } catch (const MissingNameAttribute& e) {
    return {500, error_json("analysis_failure", e.what(), "manifest"), false};
  } catch (const EmptySourceTree& e) {
    return {500, error_json("analysis_failure", e.what(), "scan"), false};
  } catch (const Error& e) {
    return {500, error_json("analysis_failure", e.what(), "unpack"), false};
  }

  try {
    CacheRecord record;
    record.key = {request.packagename, request.packageversion};
    record.dataset_fingerprint = dataset_.fingerprint;
    record.report_json = report_json;
    record.stored_at = now_iso8601();
    cache_.persist(record);
  } catch (const StorageUnavailable& e) {
    return {500, error_json("storage_unavailable", e.what(), "persist"), false};
  }

  return {200, report_json, false};
}

}  // namespace pqs

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

#ifndef PQS_STORE_HPP
#define PQS_STORE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pqs {

struct Credentials {
  std::string user;
  std::string secret;
};

// Tokens are opaque; download-phase operations require at least one.
struct StoreSession {
  Credentials credentials;
  std::vector<std::string> tokens;

  bool authenticated() const { return !tokens.empty(); }
};

enum class Offer { Free, Paid };

struct AppListing {
  std::string package_name;
  std::uint64_t version_code = 0;
  Offer offer = Offer::Free;
  std::int64_t price_cents = 0;
  nlohmann::json metadata;  // description, rating, related links...
};

// Locators handed out by the delivery phase; expansion locators point at
// .obb assets that carry no source code and are never downloaded.
struct DeliveryInfo {
  std::string app_locator;
  std::vector<std::string> expansion_locators;
};

struct AcquisitionOutcome {
  std::string bundle_archive;  // raw archive bytes
  int skipped_expansions = 0;
};

// Transport-level store interface; one method per acquisition phase. Backends
// throw StoreError for phase failures and must tolerate concurrent
// independent sessions.
class StoreBackend {
 public:
  virtual ~StoreBackend() = default;

  virtual std::vector<std::string> auth(const Credentials& credentials) = 0;
  virtual std::optional<AppListing> details(const std::string& package_name,
                                            std::uint64_t version_code) = 0;
  virtual std::string purchase(const std::string& package_name,
                               std::uint64_t version_code,
                               const StoreSession& session) = 0;
  virtual DeliveryInfo delivery(const std::string& package_name,
                                std::uint64_t version_code,
                                const std::string& download_token,
                                const StoreSession& session) = 0;
  virtual std::string download(const std::string& locator,
                               const StoreSession& session) = 0;
};

using StatusFn = std::function<void(const std::string&)>;

// Phase 1: exchange credentials for session tokens.
StoreSession authenticate(StoreBackend& backend, const Credentials& credentials);

// Phases 2-6 in strict order: details lookup, existence check, free check,
// purchase (download token), delivery (locator), data download. Emits the
// literal "Success" on the status channel when the archive is complete.
// Throws StoreError; no phase runs after a failed one.
AcquisitionOutcome fetch_app(StoreBackend& backend, const StoreSession& session,
                             const std::string& package_name,
                             std::uint64_t version_code,
                             const StatusFn& status = {});

inline constexpr const char* kAcquisitionSuccessSignal = "Success";

}  // namespace pqs

#endif  // PQS_STORE_HPP

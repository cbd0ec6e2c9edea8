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

#include "pqs/store.hpp"

#include "pqs/errors.hpp"

namespace pqs {

StoreSession authenticate(StoreBackend& backend, const Credentials& credentials) {
  StoreSession session;
  session.credentials = credentials;
  session.tokens = backend.auth(credentials);
  if (session.tokens.empty()) {
    throw StoreError(StoreFault::AuthFailed, "backend returned no tokens");
  }
  return session;
}

AcquisitionOutcome fetch_app(StoreBackend& backend, const StoreSession& session,
                             const std::string& package_name,
                             std::uint64_t version_code, const StatusFn& status) {
  if (!session.authenticated()) {
    throw StoreError(StoreFault::AuthFailed, "session has no tokens");
  }
  auto report = [&status](const std::string& message) {
    if (status) status(message);
  };

  // Phase 2: details + existence.
  std::optional<AppListing> listing =
      backend.details(package_name, version_code);
  if (!listing) {
    throw StoreError(StoreFault::AppNotFound,
                     package_name + " version " + std::to_string(version_code) +
                         " is not in the store");
  }

  // Phase 3: free check; paid apps are not available for analysis.
  if (listing->offer != Offer::Free) {
    throw StoreError(StoreFault::NotFree,
                     package_name + " is not free and not available for analysis");
  }

  // Phase 4: purchase yields the download token.
  std::string download_token = backend.purchase(package_name, version_code, session);
  if (download_token.empty()) {
    throw StoreError(StoreFault::PurchaseFailed, "no download token returned");
  }

  // Phase 5: delivery yields the download locators.
  DeliveryInfo delivery =
      backend.delivery(package_name, version_code, download_token, session);
  if (delivery.app_locator.empty()) {
    throw StoreError(StoreFault::DeliveryFailed, "no download locator returned");
  }

  // Phase 6: download the application data only; expansion files are skipped.
  AcquisitionOutcome outcome;
  outcome.bundle_archive = backend.download(delivery.app_locator, session);
  if (outcome.bundle_archive.empty()) {
    throw StoreError(StoreFault::DownloadFailed, "empty archive");
  }
  outcome.skipped_expansions =
      static_cast<int>(delivery.expansion_locators.size());

  report(kAcquisitionSuccessSignal);
  return outcome;
}

}  // namespace pqs

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

#include "pqs/fixture_store.hpp"

#include "pqs/errors.hpp"
#include "pqs/util/fs.hpp"

namespace fs = std::filesystem;

namespace pqs {

namespace {

std::string listing_key(const std::string& package_name, std::uint64_t version) {
  return package_name + ":" + std::to_string(version);
}

}  // namespace

FixtureStore::FixtureStore(fs::path dir) : dir_(std::move(dir)) {
  nlohmann::json catalog;
  try {
    catalog = nlohmann::json::parse(util::read_file(dir_ / "catalog.json"));
  } catch (const FileMissing&) {
    throw StoreError(StoreFault::TransportError,
                     "fixture store has no catalog.json: " + dir_.string());
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(StoreFault::TransportError,
                     std::string("catalog.json unreadable: ") + e.what());
  }

  for (const auto& account : catalog.value("accounts", nlohmann::json::array())) {
    accounts_.push_back(Credentials{account.at("user").get<std::string>(),
                                    account.at("secret").get<std::string>()});
  }
  for (const auto& entry : catalog.value("apps", nlohmann::json::array())) {
    Listing listing;
    listing.app.package_name = entry.at("package_name").get<std::string>();
    listing.app.version_code = entry.at("version_code").get<std::uint64_t>();
    std::string offer = entry.value("offer", "free");
    listing.app.offer = offer == "free" ? Offer::Free : Offer::Paid;
    listing.app.price_cents = entry.value("price_cents", std::int64_t{0});
    listing.app.metadata = entry.value("metadata", nlohmann::json::object());
    listing.blob = entry.at("blob").get<std::string>();
    for (const auto& expansion :
         entry.value("expansions", nlohmann::json::array())) {
      listing.expansions.push_back(expansion.get<std::string>());
    }
    listings_.push_back(std::move(listing));
  }
}

std::vector<std::string> FixtureStore::auth(const Credentials& credentials) {
  log("auth:" + credentials.user);
  for (const auto& account : accounts_) {
    if (account.user == credentials.user && account.secret == credentials.secret) {
      return {"fixture-token-" + credentials.user};
    }
  }
  throw StoreError(StoreFault::AuthFailed,
                   "unknown account or wrong secret: " + credentials.user);
}

std::optional<AppListing> FixtureStore::details(const std::string& package_name,
                                                std::uint64_t version_code) {
  log("details:" + listing_key(package_name, version_code));
  const Listing* listing = find_listing(package_name, version_code);
  if (listing == nullptr) return std::nullopt;
  return listing->app;
}

std::string FixtureStore::purchase(const std::string& package_name,
                                   std::uint64_t version_code,
                                   const StoreSession& session) {
  log("purchase:" + listing_key(package_name, version_code));
  require_token(session);
  const Listing* listing = find_listing(package_name, version_code);
  if (listing == nullptr) {
    throw StoreError(StoreFault::PurchaseFailed, "no such listing");
  }
  return "dl-" + listing_key(package_name, version_code);
}

DeliveryInfo FixtureStore::delivery(const std::string& package_name,
                                    std::uint64_t version_code,
                                    const std::string& download_token,
                                    const StoreSession& session) {
  log("delivery:" + listing_key(package_name, version_code));
  require_token(session);
  if (download_token != "dl-" + listing_key(package_name, version_code)) {
    throw StoreError(StoreFault::DeliveryFailed, "invalid download token");
  }
  const Listing* listing = find_listing(package_name, version_code);
  if (listing == nullptr) {
    throw StoreError(StoreFault::DeliveryFailed, "no such listing");
  }
  DeliveryInfo info;
  info.app_locator = listing->blob;
  info.expansion_locators = listing->expansions;
  return info;
}

std::string FixtureStore::download(const std::string& locator,
                                   const StoreSession& session) {
  log("download:" + locator);
  require_token(session);
  if (locator.find("..") != std::string::npos || locator.empty() ||
      locator.front() == '/') {
    throw StoreError(StoreFault::DownloadFailed, "invalid locator: " + locator);
  }
  std::string bytes;
  try {
    bytes = util::read_file(dir_ / fs::path(locator));
  } catch (const Error& e) {
    throw StoreError(StoreFault::DownloadFailed, e.what());
  }
  {
    std::lock_guard<std::mutex> lock(mutex_);
    ++download_count_;
  }
  return bytes;
}

std::vector<std::string> FixtureStore::call_log() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return call_log_;
}

std::size_t FixtureStore::download_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return download_count_;
}

void FixtureStore::clear_call_log() {
  std::lock_guard<std::mutex> lock(mutex_);
  call_log_.clear();
  download_count_ = 0;
}

const FixtureStore::Listing* FixtureStore::find_listing(
    const std::string& package_name, std::uint64_t version_code) const {
  for (const auto& listing : listings_) {
    if (listing.app.package_name == package_name &&
        listing.app.version_code == version_code) {
      return &listing;
    }
  }
  return nullptr;
}

void FixtureStore::log(std::string entry) {
  std::lock_guard<std::mutex> lock(mutex_);
  call_log_.push_back(std::move(entry));
}

void FixtureStore::require_token(const StoreSession& session) const {
  if (!session.authenticated()) {
    throw StoreError(StoreFault::AuthFailed, "request without session token");
  }
}

}  // namespace pqs

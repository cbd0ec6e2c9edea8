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

#ifndef PQS_FIXTURE_STORE_HPP
#define PQS_FIXTURE_STORE_HPP

#include <filesystem>
#include <mutex>

#include "pqs/store.hpp"

namespace pqs {

// Local on-disk store backend: <dir>/catalog.json describing accounts and
// listings, <dir>/blobs/<package>-<version>.zip holding the archives. Every
// backend call is appended to a log so tests can assert phase ordering.
class FixtureStore : public StoreBackend {
 public:
  explicit FixtureStore(std::filesystem::path dir);

  std::vector<std::string> auth(const Credentials& credentials) override;
  std::optional<AppListing> details(const std::string& package_name,
                                    std::uint64_t version_code) override;
  std::string purchase(const std::string& package_name,
                       std::uint64_t version_code,
                       const StoreSession& session) override;
  DeliveryInfo delivery(const std::string& package_name,
                        std::uint64_t version_code,
                        const std::string& download_token,
                        const StoreSession& session) override;
  std::string download(const std::string& locator,
                       const StoreSession& session) override;

  std::vector<std::string> call_log() const;
  std::size_t download_count() const;
  void clear_call_log();

 private:
  struct Listing {
    AppListing app;
    std::string blob;  // store-relative path
    std::vector<std::string> expansions;
  };

  const Listing* find_listing(const std::string& package_name,
                              std::uint64_t version_code) const;
  void log(std::string entry);
  void require_token(const StoreSession& session) const;

  std::filesystem::path dir_;
  std::vector<Credentials> accounts_;
  std::vector<Listing> listings_;
  mutable std::mutex mutex_;
  std::vector<std::string> call_log_;
  std::size_t download_count_ = 0;
};

}  // namespace pqs

#endif  // PQS_FIXTURE_STORE_HPP

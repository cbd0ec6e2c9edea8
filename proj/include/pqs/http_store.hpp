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

#ifndef PQS_HTTP_STORE_HPP
#define PQS_HTTP_STORE_HPP

#include <memory>
#include <string>

#include "pqs/store.hpp"

namespace pqs {

// Store backend speaking the loopback JSON protocol:
//   POST /auth           {"user","secret"}            -> {"tokens":[...]}
//   GET  /details?doc=&vc=                            -> listing json | 404
//   POST /purchase       {"doc","vc"} + X-Auth-Token  -> {"download_token"}
//   GET  /delivery?doc=&vc=&dtok=     + X-Auth-Token  -> {"app_locator","expansions"}
//   GET  /blob?locator=               + X-Auth-Token  -> archive bytes
// Connection failures surface as StoreFault::TransportError, distinct from
// any phase failure the server reports.
class HttpStoreClient : public StoreBackend {
 public:
  explicit HttpStoreClient(std::string base_url);
  ~HttpStoreClient() override;

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

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Serves any StoreBackend over the protocol above, for integration tests and
// local experiments.
class StoreHttpServer {
 public:
  explicit StoreHttpServer(StoreBackend& backend);
  ~StoreHttpServer();

  // Binds to 127.0.0.1 on the given port (0 picks a free one) and serves on
  // a background thread. Returns the bound port, or 0 on bind failure.
  int start(int port = 0);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pqs

#endif  // PQS_HTTP_STORE_HPP

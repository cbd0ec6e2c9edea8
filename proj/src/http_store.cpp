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

#include "pqs/http_store.hpp"

#include <thread>

#include <httplib.h>

#include "pqs/errors.hpp"

namespace pqs {

namespace {

using nlohmann::json;

json error_body(StoreFault fault, const std::string& message) {
  return json{{"error", {{"code", store_fault_code(fault)}, {"message", message}}}};
}

StoreFault fault_from_code(const std::string& code) {
  for (StoreFault fault :
       {StoreFault::TransportError, StoreFault::AuthFailed, StoreFault::AppNotFound,
        StoreFault::NotFree, StoreFault::PurchaseFailed, StoreFault::DeliveryFailed,
        StoreFault::DownloadFailed}) {
    if (code == store_fault_code(fault)) return fault;
  }
  return StoreFault::TransportError;
}

[[noreturn]] void throw_from_response(const httplib::Result& res,
                                      StoreFault fallback) {
  if (!res) {
    throw StoreError(StoreFault::TransportError,
                     "store unreachable: " + httplib::to_string(res.error()));
  }
  try {
    json body = json::parse(res->body);
    const auto& error = body.at("error");
    throw StoreError(fault_from_code(error.at("code").get<std::string>()),
                     error.value("message", "store error"));
  } catch (const StoreError&) {
    throw;
  } catch (...) {
    throw StoreError(fallback, "store returned status " + std::to_string(res->status));
  }
}

std::string session_token(const StoreSession& session) {
  return session.tokens.empty() ? std::string() : session.tokens.front();
}

json listing_to_json(const AppListing& listing) {
  return json{{"package_name", listing.package_name},
              {"version_code", listing.version_code},
              {"offer", listing.offer == Offer::Free ? "free" : "paid"},
              {"price_cents", listing.price_cents},
              {"metadata", listing.metadata}};
}

AppListing listing_from_json(const json& body) {
  AppListing listing;
  listing.package_name = body.at("package_name").get<std::string>();
  listing.version_code = body.at("version_code").get<std::uint64_t>();
  listing.offer = body.value("offer", "free") == "free" ? Offer::Free : Offer::Paid;
  listing.price_cents = body.value("price_cents", std::int64_t{0});
  listing.metadata = body.value("metadata", json::object());
  return listing;
}

}  // namespace

// ---- client -------------------------------------------------------------------

struct HttpStoreClient::Impl {
  std::string base_url;

  httplib::Client make_client() const {
    httplib::Client client(base_url);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
    return client;
  }
};

HttpStoreClient::HttpStoreClient(std::string base_url)
    : impl_(std::make_unique<Impl>()) {
  impl_->base_url = std::move(base_url);
}

HttpStoreClient::~HttpStoreClient() = default;

std::vector<std::string> HttpStoreClient::auth(const Credentials& credentials) {
  auto client = impl_->make_client();
  json body{{"user", credentials.user}, {"secret", credentials.secret}};
  auto res = client.Post("/auth", body.dump(), "application/json");
  if (!res || res->status != 200) throw_from_response(res, StoreFault::AuthFailed);
  try {
    return json::parse(res->body).at("tokens").get<std::vector<std::string>>();
  } catch (...) {
    throw StoreError(StoreFault::AuthFailed, "malformed auth response");
  }
}

std::optional<AppListing> HttpStoreClient::details(const std::string& package_name,
                                                   std::uint64_t version_code) {
  auto client = impl_->make_client();
  httplib::Params params{{"doc", package_name},
                         {"vc", std::to_string(version_code)}};
  auto res = client.Get("/details", params, httplib::Headers{});
  if (res && res->status == 404) return std::nullopt;
  if (!res || res->status != 200) {
    throw_from_response(res, StoreFault::TransportError);
  }
  try {
    return listing_from_json(json::parse(res->body));
  } catch (...) {
    throw StoreError(StoreFault::TransportError, "malformed details response");
  }
}

std::string HttpStoreClient::purchase(const std::string& package_name,
                                      std::uint64_t version_code,
                                      const StoreSession& session) {
  auto client = impl_->make_client();
  json body{{"doc", package_name}, {"vc", version_code}};
  httplib::Headers headers{{"X-Auth-Token", session_token(session)}};
  auto res = client.Post("/purchase", headers, body.dump(), "application/json");
  if (!res || res->status != 200) {
    throw_from_response(res, StoreFault::PurchaseFailed);
  }
  try {
    return json::parse(res->body).at("download_token").get<std::string>();
  } catch (...) {
    throw StoreError(StoreFault::PurchaseFailed, "malformed purchase response");
  }
}

DeliveryInfo HttpStoreClient::delivery(const std::string& package_name,
                                       std::uint64_t version_code,
                                       const std::string& download_token,
                                       const StoreSession& session) {
  auto client = impl_->make_client();
  httplib::Params params{{"doc", package_name},
                         {"vc", std::to_string(version_code)},
                         {"dtok", download_token}};
  httplib::Headers headers{{"X-Auth-Token", session_token(session)}};
  auto res = client.Get("/delivery", params, headers);
  if (!res || res->status != 200) {
    throw_from_response(res, StoreFault::DeliveryFailed);
  }
  try {
    json body = json::parse(res->body);
    DeliveryInfo info;
    info.app_locator = body.at("app_locator").get<std::string>();
    info.expansion_locators =
        body.value("expansions", std::vector<std::string>{});
    return info;
  } catch (...) {
    throw StoreError(StoreFault::DeliveryFailed, "malformed delivery response");
  }
}

std::string HttpStoreClient::download(const std::string& locator,
                                      const StoreSession& session) {
  auto client = impl_->make_client();
  httplib::Params params{{"locator", locator}};
  httplib::Headers headers{{"X-Auth-Token", session_token(session)}};
  auto res = client.Get("/blob", params, headers);
  if (!res || res->status != 200) {
    throw_from_response(res, StoreFault::DownloadFailed);
  }
  return res->body;
}

// ---- server -------------------------------------------------------------------

struct StoreHttpServer::Impl {
  StoreBackend& backend;
  httplib::Server server;
  std::thread worker;

  explicit Impl(StoreBackend& b) : backend(b) {}

  static StoreSession session_from(const httplib::Request& req) {
    StoreSession session;
    std::string token = req.get_header_value("X-Auth-Token");
    if (!token.empty()) session.tokens.push_back(token);
    return session;
  }

  static void respond_error(httplib::Response& res, const StoreError& e) {
    int status = 500;
    switch (e.fault()) {
      case StoreFault::AuthFailed: status = 401; break;
      case StoreFault::AppNotFound: status = 404; break;
      case StoreFault::NotFree: status = 422; break;
      case StoreFault::PurchaseFailed:
      case StoreFault::DeliveryFailed:
      case StoreFault::DownloadFailed: status = 409; break;
      case StoreFault::TransportError: status = 502; break;
    }
    res.status = status;
    res.set_content(error_body(e.fault(), e.detail()).dump(), "application/json");
  }

  void install_routes() {
    server.Post("/auth", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        json body = json::parse(req.body);
        Credentials credentials{body.at("user").get<std::string>(),
                                body.at("secret").get<std::string>()};
        json reply{{"tokens", backend.auth(credentials)}};
        res.set_content(reply.dump(), "application/json");
      } catch (const StoreError& e) {
        respond_error(res, e);
      } catch (...) {
        respond_error(res, StoreError(StoreFault::AuthFailed, "bad auth request"));
      }
    });

    server.Get("/details", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        auto listing = backend.details(req.get_param_value("doc"),
                                       std::stoull(req.get_param_value("vc")));
        if (!listing) {
          respond_error(res, StoreError(StoreFault::AppNotFound, "no such app"));
          return;
        }
        res.set_content(listing_to_json(*listing).dump(), "application/json");
      } catch (const StoreError& e) {
        respond_error(res, e);
      } catch (...) {
        respond_error(res, StoreError(StoreFault::TransportError, "bad details request"));
      }
    });

    server.Post("/purchase", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        json body = json::parse(req.body);
        std::string token = backend.purchase(body.at("doc").get<std::string>(),
                                             body.at("vc").get<std::uint64_t>(),
                                             session_from(req));
        res.set_content(json{{"download_token", token}}.dump(), "application/json");
      } catch (const StoreError& e) {
        respond_error(res, e);
      } catch (...) {
        respond_error(res,
                      StoreError(StoreFault::PurchaseFailed, "bad purchase request"));
      }
    });

    server.Get("/delivery", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        DeliveryInfo info = backend.delivery(
            req.get_param_value("doc"), std::stoull(req.get_param_value("vc")),
            req.get_param_value("dtok"), session_from(req));
        json reply{{"app_locator", info.app_locator},
                   {"expansions", info.expansion_locators}};
        res.set_content(reply.dump(), "application/json");
      } catch (const StoreError& e) {
        respond_error(res, e);
      } catch (...) {
        respond_error(res,
                      StoreError(StoreFault::DeliveryFailed, "bad delivery request"));
      }
    });

    server.Get("/blob", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        std::string bytes =
            backend.download(req.get_param_value("locator"), session_from(req));
        res.set_content(bytes, "application/octet-stream");
      } catch (const StoreError& e) {
        respond_error(res, e);
      } catch (...) {
        respond_error(res,
                      StoreError(StoreFault::DownloadFailed, "bad blob request"));
      }
    });
  }
};

StoreHttpServer::StoreHttpServer(StoreBackend& backend)
    : impl_(std::make_unique<Impl>(backend)) {
  impl_->install_routes();
}

StoreHttpServer::~StoreHttpServer() { stop(); }

int StoreHttpServer::start(int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port("127.0.0.1");
    if (bound <= 0) return 0;
  } else if (!impl_->server.bind_to_port("127.0.0.1", port)) {
    return 0;
  }
  impl_->worker = std::thread([this]() { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void StoreHttpServer::stop() {
  if (impl_->worker.joinable()) {
    impl_->server.stop();
    impl_->worker.join();
  }
}

}  // namespace pqs

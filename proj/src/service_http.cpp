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

#include "pqs/service_http.hpp"

#include <thread>

#include <httplib.h>

namespace pqs {

struct ServiceHttpServer::Impl {
  AnalysisService& service;
  httplib::Server server;
  std::thread worker;

  explicit Impl(AnalysisService& s) : service(s) {
    // SO_REUSEADDR only: a second instance on an occupied port must fail to
    // bind instead of silently sharing it via SO_REUSEPORT.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR,
                 reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
  }

  void install_routes() {
    server.Post("/analyze", [this](const httplib::Request& req,
                                   httplib::Response& res) {
      AnalyzeOutcome outcome = service.handle_analyze_json(req.body);
      res.status = outcome.status;
      res.set_header("X-Cache", outcome.cached ? "hit" : "miss");
      res.set_content(outcome.body, "application/json");
    });
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain");
    });
  }
};

ServiceHttpServer::ServiceHttpServer(AnalysisService& service)
    : impl_(std::make_unique<Impl>(service)) {
  impl_->install_routes();
}

ServiceHttpServer::~ServiceHttpServer() { stop(); }

int ServiceHttpServer::start(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
    if (bound <= 0) return 0;
  } else if (!impl_->server.bind_to_port(host, port)) {
    return 0;
  }
  impl_->worker = std::thread([this]() { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

bool ServiceHttpServer::serve_blocking(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    return false;
  }
  return impl_->server.listen_after_bind();
}

void ServiceHttpServer::stop() {
  impl_->server.stop();
  if (impl_->worker.joinable()) {
    impl_->worker.join();
  }
}

}  // namespace pqs

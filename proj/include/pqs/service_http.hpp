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

#ifndef PQS_SERVICE_HTTP_HPP
#define PQS_SERVICE_HTTP_HPP

#include <memory>
#include <string>

#include "pqs/service.hpp"

namespace pqs {

// HTTP front for AnalysisService:
//   POST /analyze  {"packagename": str, "packageversion": int}
//                  -> canonical report json (X-Cache: hit|miss)
//                  -> error json {"error":{code,message,phase}} on failure
//   GET  /healthz  -> 200 "ok"
class ServiceHttpServer {
 public:
  explicit ServiceHttpServer(AnalysisService& service);
  ~ServiceHttpServer();

  // Binds and serves on a background thread (port 0 picks a free one).
  // Returns the bound port, or 0 on bind failure.
  int start(const std::string& host, int port);

  // Blocking variant for the CLI: serves until stop() is called from a signal
  // handler or another thread. Returns false on bind failure.
  bool serve_blocking(const std::string& host, int port);

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pqs

#endif  // PQS_SERVICE_HTTP_HPP

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

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "pqs/dataset.hpp"
#include "pqs/errors.hpp"
#include "pqs/fixture_store.hpp"
#include "pqs/http_store.hpp"
#include "pqs/pipeline.hpp"
#include "pqs/service.hpp"
#include "pqs/service_http.hpp"
#include "pqs/util/fs.hpp"

namespace fs = std::filesystem;

namespace {

// Exit codes shared by the subcommands.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBundleInvalid = 3;
constexpr int kExitDatasetInvalid = 4;
constexpr int kExitAnalysisFailure = 5;
constexpr int kExitTransport = 6;
// request mirrors the HTTP class of the response.
constexpr int kExitHttpClientError = 4;
constexpr int kExitHttpServerError = 5;

void print_error(const std::string& code, const std::string& message) {
  std::cerr << nlohmann::json{{"error", {{"code", code}, {"message", message}}}}
                   .dump()
            << "\n";
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value != nullptr && *value != '\0' ? value : fallback;
}

// Secrets come from the environment or a credentials file, never from argv.
pqs::Credentials resolve_credentials(const std::string& credentials_file) {
  if (!credentials_file.empty()) {
    auto body = nlohmann::json::parse(pqs::util::read_file(credentials_file));
    return {body.at("user").get<std::string>(),
            body.at("secret").get<std::string>()};
  }
  return {env_or("PQS_STORE_USER", "analyst"),
          env_or("PQS_STORE_SECRET", "fixture-secret")};
}

std::shared_ptr<pqs::StoreBackend> make_backend(const std::string& store) {
  if (store.rfind("http://", 0) == 0 || store.rfind("https://", 0) == 0) {
    return std::make_shared<pqs::HttpStoreClient>(store);
  }
  return std::make_shared<pqs::FixtureStore>(store);
}

int classify_bundle_error(const pqs::Error& e) {
  if (dynamic_cast<const pqs::BundleError*>(&e) != nullptr ||
      dynamic_cast<const pqs::BundleIncomplete*>(&e) != nullptr ||
      dynamic_cast<const pqs::MalformedXml*>(&e) != nullptr ||
      dynamic_cast<const pqs::MissingNameAttribute*>(&e) != nullptr ||
      dynamic_cast<const pqs::EmptySourceTree*>(&e) != nullptr) {
    return kExitBundleInvalid;
  }
  return kExitAnalysisFailure;
}

int cmd_analyze(const std::string& path, const std::string& dataset_dir,
                const std::string& format, const std::string& decompiler,
                const std::string& workdir, const std::string& package_override,
                std::uint64_t version_override, bool has_version_override) {
  pqs::MappingDataset dataset;
  try {
    dataset = pqs::load_dataset(dataset_dir);
  } catch (const pqs::Error& e) {
    print_error("dataset_invalid", e.what());
    return kExitDatasetInvalid;
  }

  pqs::AppBundle::Overrides overrides;
  if (!package_override.empty()) overrides.package_name = package_override;
  if (has_version_override) overrides.version_code = version_override;

  if (!fs::exists(path)) {
    print_error("bundle_invalid", "no such bundle or apk: " + path);
    return kExitBundleInvalid;
  }

  try {
    pqs::AppBundle bundle;
    if (fs::is_directory(path)) {
      bundle = pqs::AppBundle::open(path, overrides);
    } else {
      pqs::DecompilerCommand command;
      if (!decompiler.empty()) command.executable = decompiler;
      fs::path out = workdir.empty()
                         ? fs::temp_directory_path() /
                               ("pqs-decompile-" + std::to_string(::getpid()))
                         : fs::path(workdir);
      bundle = pqs::decompile_apk(path, out, command, overrides);
    }
    pqs::PrivacyReport report = pqs::analyze_bundle(bundle, dataset);
    std::cout << pqs::serialize_report(report, format == "text"
                                                   ? pqs::ReportFormat::Text
                                                   : pqs::ReportFormat::Json);
    return kExitOk;
  } catch (const pqs::AnalysisFailure& e) {
    print_error("analysis_failure", e.what());
    return kExitAnalysisFailure;
  } catch (const pqs::Error& e) {
    int exit_code = classify_bundle_error(e);
    print_error(exit_code == kExitBundleInvalid ? "bundle_invalid"
                                                : "analysis_failure",
                e.what());
    return exit_code;
  }
}

int cmd_dataset_validate(const std::string& dataset_dir) {
  pqs::MappingDataset dataset;
  try {
    dataset = pqs::load_dataset(dataset_dir);
  } catch (const pqs::Error& e) {
    print_error("dataset_invalid", e.what());
    return kExitDatasetInvalid;
  }
  pqs::ValidationReport report = pqs::validate_dataset(dataset);
  for (const auto& warning : report.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  for (const auto& error : report.errors) {
    std::cerr << "error: " << error << "\n";
  }
  std::cout << "dataset " << dataset_dir << ": " << dataset.methods.size()
            << " methods (total weight " << dataset.method_weight_total << "), "
            << dataset.permissions.size() << " permissions (total weight "
            << dataset.permission_weight_total << "), fingerprint "
            << dataset.fingerprint.substr(0, 16) << "\n";
  if (!report.ok()) {
    return kExitDatasetInvalid;
  }
  return kExitOk;
}

pqs::ServiceHttpServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& dataset_dir,
              const std::string& store, const std::string& data_dir,
              unsigned workers, const std::string& credentials_file) {
  pqs::ServiceConfig config;
  config.dataset_dir = dataset_dir;
  config.data_dir = data_dir;
  config.workers = workers;
  try {
    config.store = make_backend(store);
    config.store_credentials = resolve_credentials(credentials_file);
  } catch (const std::exception& e) {
    print_error("store_unavailable", e.what());
    return 1;
  }

  try {
    pqs::AnalysisService service(std::move(config));
    pqs::ServiceHttpServer server(service);
    g_server = &server;
    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    std::cerr << "pqs service on " << host << ":" << port << " (dataset "
              << service.dataset_fingerprint().substr(0, 16) << ")\n";
    if (!server.serve_blocking(host, port)) {
      print_error("bind_failed",
                  "cannot bind " + host + ":" + std::to_string(port));
      g_server = nullptr;
      return 1;
    }
    g_server = nullptr;
    return kExitOk;
  } catch (const pqs::Error& e) {
    print_error("service_failed", e.what());
    return 1;
  }
}

int cmd_request(const std::string& server_url, const std::string& packagename,
                std::uint64_t packageversion) {
  httplib::Client client(server_url);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(120, 0);
  nlohmann::json body{{"packagename", packagename},
                      {"packageversion", packageversion}};
  auto res = client.Post("/analyze", body.dump(), "application/json");
  if (!res) {
    print_error("transport_error",
                "server unreachable: " + httplib::to_string(res.error()));
    return kExitTransport;
  }
  std::cout << res->body;
  if (res->body.empty() || res->body.back() != '\n') std::cout << "\n";
  std::cerr << "cache: " << res->get_header_value("X-Cache") << "\n";
  if (res->status >= 200 && res->status < 300) return kExitOk;
  if (res->status >= 400 && res->status < 500) return kExitHttpClientError;
  return kExitHttpServerError;
}

int cmd_fetch(const std::string& packagename, std::uint64_t packageversion,
              const std::string& store, const std::string& out_path,
              const std::string& credentials_file) {
  try {
    auto backend = make_backend(store);
    pqs::StoreSession session =
        pqs::authenticate(*backend, resolve_credentials(credentials_file));
    pqs::AcquisitionOutcome outcome = pqs::fetch_app(
        *backend, session, packagename, packageversion,
        [](const std::string& status) { std::cerr << status << "\n"; });
    std::string target = out_path.empty()
                             ? packagename + "-" + std::to_string(packageversion) +
                                   ".zip"
                             : out_path;
    pqs::util::write_file_atomic(target, outcome.bundle_archive);
    std::cout << nlohmann::json{{"packagename", packagename},
                                {"packageversion", packageversion},
                                {"archive", target},
                                {"skipped_expansions", outcome.skipped_expansions}}
                     .dump()
              << "\n";
    return kExitOk;
  } catch (const pqs::StoreError& e) {
    print_error(pqs::store_fault_code(e.fault()), e.detail());
    return e.fault() == pqs::StoreFault::TransportError ? kExitTransport
                                                        : kExitAnalysisFailure;
  } catch (const std::exception& e) {
    print_error("fetch_failed", e.what());
    return kExitAnalysisFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pqs - privacy quantification scanner for Android bundles"};
  app.require_subcommand(1);

  std::string default_dataset = env_or("PQS_DATASET_DIR", "data/seed");
  std::string default_store = env_or("PQS_STORE", "fixtures/store");
  std::string default_data_dir = env_or("PQS_DATA_DIR", "pqs-data");

  // analyze
  std::string analyze_path, analyze_dataset = default_dataset;
  std::string analyze_format = "json", analyze_decompiler, analyze_workdir;
  std::string analyze_package;
  std::uint64_t analyze_version = 0;
  auto* analyze = app.add_subcommand(
      "analyze", "Analyze a decompiled bundle directory or an APK file");
  analyze->add_option("path", analyze_path, "Bundle directory or .apk file")
      ->required();
  analyze->add_option("--dataset", analyze_dataset, "Dataset directory");
  analyze->add_option("--format", analyze_format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("--decompiler", analyze_decompiler,
                      "Decompiler executable for APK input (default jadx)");
  analyze->add_option("--workdir", analyze_workdir,
                      "Decompilation output directory");
  analyze->add_option("--package", analyze_package, "Override package name");
  auto* version_opt = analyze->add_option("--version-code", analyze_version,
                                          "Override version code");

  // dataset validate
  auto* dataset_cmd = app.add_subcommand("dataset", "Dataset curation helpers");
  dataset_cmd->require_subcommand(1);
  std::string validate_dir = default_dataset;
  auto* validate =
      dataset_cmd->add_subcommand("validate", "Validate a dataset directory");
  validate->add_option("dir", validate_dir, "Dataset directory")->required();

  // serve
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080;
  std::string serve_dataset = default_dataset, serve_store = default_store;
  std::string serve_data_dir = default_data_dir, serve_credentials;
  unsigned serve_workers = 2;
  auto* serve = app.add_subcommand("serve", "Run the caching analysis service");
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Bind port");
  serve->add_option("--dataset-dir", serve_dataset, "Dataset directory");
  serve->add_option("--store", serve_store,
                    "Fixture store directory or loopback store URL");
  serve->add_option("--data-dir", serve_data_dir, "Persistence directory");
  serve->add_option("--workers", serve_workers, "Concurrent analysis jobs");
  serve->add_option("--credentials", serve_credentials,
                    "JSON file with store user/secret");

  // request
  std::string request_url, request_package;
  std::uint64_t request_version = 0;
  auto* request =
      app.add_subcommand("request", "Ask a running service for a report");
  request->add_option("server_url", request_url, "e.g. http://127.0.0.1:8080")
      ->required();
  request->add_option("packagename", request_package, "Package name")->required();
  request->add_option("packageversion", request_version, "Version code")
      ->required();

  // fetch
  std::string fetch_package, fetch_store = default_store, fetch_out,
              fetch_credentials;
  std::uint64_t fetch_version = 0;
  auto* fetch = app.add_subcommand("fetch", "Acquire an app archive from a store");
  fetch->add_option("packagename", fetch_package, "Package name")->required();
  fetch->add_option("packageversion", fetch_version, "Version code")->required();
  fetch->add_option("--store", fetch_store,
                    "Fixture store directory or loopback store URL");
  fetch->add_option("--out", fetch_out, "Archive output path");
  fetch->add_option("--credentials", fetch_credentials,
                    "JSON file with store user/secret");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitUsage;
  }

  if (analyze->parsed()) {
    return cmd_analyze(analyze_path, analyze_dataset, analyze_format,
                       analyze_decompiler, analyze_workdir, analyze_package,
                       analyze_version, version_opt->count() > 0);
  }
  if (validate->parsed()) {
    return cmd_dataset_validate(validate_dir);
  }
  if (serve->parsed()) {
    return cmd_serve(serve_host, serve_port, serve_dataset, serve_store,
                     serve_data_dir, serve_workers, serve_credentials);
  }
  if (request->parsed()) {
    return cmd_request(request_url, request_package, request_version);
  }
  if (fetch->parsed()) {
    return cmd_fetch(fetch_package, fetch_version, fetch_store, fetch_out,
                     fetch_credentials);
  }
  return kExitUsage;
}

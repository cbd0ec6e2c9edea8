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

#include "pqs/pipeline.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>

#include "pqs/errors.hpp"
#include "pqs/manifest.hpp"
#include "pqs/util/fs.hpp"

namespace fs = std::filesystem;

namespace pqs {

namespace {

[[noreturn]] void rethrow_as_failure(const char* stage) {
  try {
    throw;
  } catch (const AnalysisFailure&) {
    throw;
  } catch (const MalformedXml&) {
    throw;  // corrupt decompilation, reported as-is
  } catch (const MissingNameAttribute&) {
    throw;
  } catch (const EmptySourceTree&) {
    throw;
  } catch (const Error& e) {
    throw AnalysisFailure(stage, e.what());
  }
}

bool executable_exists(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    return ::access(name.c_str(), X_OK) == 0;
  }
  const char* path_env = std::getenv("PATH");
  if (path_env == nullptr) return false;
  std::string path(path_env);
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t colon = path.find(':', start);
    if (colon == std::string::npos) colon = path.size();
    std::string dir = path.substr(start, colon - start);
    if (!dir.empty() && ::access((dir + "/" + name).c_str(), X_OK) == 0) {
      return true;
    }
    start = colon + 1;
  }
  return false;
}

int run_command(const std::string& executable,
                const std::vector<std::string>& args) {
  std::vector<char*> argv;
  argv.push_back(const_cast<char*>(executable.c_str()));
  for (const auto& arg : args) argv.push_back(const_cast<char*>(arg.c_str()));
  argv.push_back(nullptr);

  pid_t pid = ::fork();
  if (pid < 0) {
    throw Error("fork failed");
  }
  if (pid == 0) {
    ::execvp(executable.c_str(), argv.data());
    ::_exit(127);
  }
  int status = 0;
  if (::waitpid(pid, &status, 0) < 0) {
    throw Error("waitpid failed");
  }
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return WEXITSTATUS(status);
}

std::string substitute(const std::string& arg, const std::string& apk,
                       const std::string& out) {
  std::string result = arg;
  auto replace_all = [&result](const std::string& token, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = result.find(token, pos)) != std::string::npos) {
      result.replace(pos, token.size(), value);
      pos += value.size();
    }
  };
  replace_all("{apk}", apk);
  replace_all("{out}", out);
  return result;
}

}  // namespace

PrivacyReport analyze_bundle(const AppBundle& bundle,
                             const MappingDataset& dataset,
                             const ScanOptions& options) {
  PrivacyReport report;
  report.package_name = bundle.package_name;
  report.version_code = bundle.version_code;
  report.dataset_fingerprint = dataset.fingerprint;

  ManifestPermissions manifest;
  try {
    manifest = load_manifest(bundle.manifest_path);
  } catch (...) {
    rethrow_as_failure("manifest");
  }
  for (const auto& declared : manifest.permissions) {
    if (dataset.find_permission(declared) == nullptr) {
      report.warnings.push_back("permission not in dataset: " + declared);
    }
  }

  ScanResult scan;
  try {
    scan = scan_sources(bundle, dataset, options);
  } catch (...) {
    rethrow_as_failure("scan");
  }
  report.warnings.insert(report.warnings.end(), scan.warnings.begin(),
                         scan.warnings.end());

  try {
    resolve_effective_weights(scan.hits, manifest);
    report.method_hits = std::move(scan.hits);
    report.permission_hits =
        build_permission_hits(manifest, report.method_hits, dataset);
    report.breakdown =
        compute_breakdown(report.method_hits, report.permission_hits, dataset);
  } catch (...) {
    rethrow_as_failure("scoring");
  }
  return report;
}

AppBundle decompile_apk(const fs::path& apk_path, const fs::path& workdir,
                        const DecompilerCommand& decompiler,
                        const AppBundle::Overrides& overrides) {
  if (!fs::is_regular_file(apk_path)) {
    throw FileMissing(apk_path.string());
  }
  if (!executable_exists(decompiler.executable)) {
    throw DecompilerMissing("decompiler not found: " + decompiler.executable);
  }
  util::ensure_dir(workdir);

  std::vector<std::string> args;
  args.reserve(decompiler.args.size());
  for (const auto& arg : decompiler.args) {
    args.push_back(substitute(arg, apk_path.string(), workdir.string()));
  }
  int exit_code = run_command(decompiler.executable, args);
  if (exit_code != 0) {
    throw DecompilerFailed(exit_code, decompiler.executable);
  }

  if (!fs::is_regular_file(workdir / "resources" / "AndroidManifest.xml")) {
    throw BundleIncomplete("resources/AndroidManifest.xml");
  }
  if (!fs::is_directory(workdir / "sources")) {
    throw BundleIncomplete("sources/");
  }
  return AppBundle::open(workdir, overrides);
}

}  // namespace pqs

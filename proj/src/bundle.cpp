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

#include "pqs/bundle.hpp"

#include "pqs/errors.hpp"
#include "pqs/manifest.hpp"
#include "pqs/util/fs.hpp"

namespace fs = std::filesystem;

namespace pqs {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto is_start = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto is_part = [&is_start](char c) { return is_start(c) || (c >= '0' && c <= '9'); };
  if (!is_start(s.front())) return false;
  for (char c : s.substr(1)) {
    if (!is_part(c)) return false;
  }
  return true;
}

}  // namespace

bool is_reverse_domain(std::string_view name) {
  std::size_t segments = 0;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t dot = name.find('.', start);
    if (dot == std::string_view::npos) dot = name.size();
    if (!is_identifier(name.substr(start, dot - start))) return false;
    ++segments;
    if (dot == name.size()) break;
    start = dot + 1;
  }
  return segments >= 2;
}

AppBundle AppBundle::open(const fs::path& root, const Overrides& overrides) {
  AppBundle bundle;
  bundle.root = root;
  bundle.sources_dir = root / "sources";
  bundle.manifest_path = root / "resources" / "AndroidManifest.xml";

  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw BundleError("bundle root is not a directory: " + root.string());
  }
  if (!fs::is_directory(bundle.sources_dir, ec)) {
    throw BundleError("missing sources directory: " + bundle.sources_dir.string());
  }
  if (!fs::is_regular_file(bundle.manifest_path, ec)) {
    throw BundleError("missing manifest: " + bundle.manifest_path.string());
  }

  ManifestIdentity identity =
      manifest_identity(util::read_file(bundle.manifest_path));
  if (overrides.package_name) {
    bundle.package_name = *overrides.package_name;
  } else if (identity.package_name) {
    bundle.package_name = *identity.package_name;
  } else {
    throw BundleError("manifest has no package attribute and none was supplied");
  }
  if (overrides.version_code) {
    bundle.version_code = *overrides.version_code;
  } else if (identity.version_code) {
    bundle.version_code = *identity.version_code;
  }

  if (!is_reverse_domain(bundle.package_name)) {
    throw BundleError("package name is not reverse-domain: " + bundle.package_name);
  }
  return bundle;
}

}  // namespace pqs

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

#ifndef PQS_MANIFEST_HPP
#define PQS_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pqs {

inline constexpr std::string_view kAndroidNsUri =
    "http://schemas.android.com/apk/res/android";

// Permission names declared by a manifest, deduplicated, first-occurrence
// order preserved.
struct ManifestPermissions {
  std::vector<std::string> permissions;
  std::filesystem::path source_path;

  bool contains(std::string_view name) const;
};

// Extracts the android:name of every uses-permission (and
// uses-permission-sdk-23) element from a decompiled textual manifest.
// Everything else in the document is ignored. Pure and deterministic.
//
// Throws MalformedXml and MissingNameAttribute.
ManifestPermissions parse_manifest(std::string_view document);

ManifestPermissions load_manifest(const std::filesystem::path& manifest_path);

// Identity attributes off the root element, when present.
struct ManifestIdentity {
  std::optional<std::string> package_name;
  std::optional<std::uint64_t> version_code;
};

ManifestIdentity manifest_identity(std::string_view document);

}  // namespace pqs

#endif  // PQS_MANIFEST_HPP

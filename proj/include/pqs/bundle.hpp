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

#ifndef PQS_BUNDLE_HPP
#define PQS_BUNDLE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pqs {

// A decompiled application on disk: <root>/resources/AndroidManifest.xml plus
// <root>/sources/ with the recovered Java tree.
struct AppBundle {
  std::filesystem::path root;
  std::filesystem::path sources_dir;
  std::filesystem::path manifest_path;
  std::string package_name;
  std::uint64_t version_code = 0;

  struct Overrides {
    std::optional<std::string> package_name;
    std::optional<std::uint64_t> version_code;
  };

  // Validates the layout and resolves identity from the manifest root
  // attributes; overrides win when provided. Throws BundleError.
  static AppBundle open(const std::filesystem::path& root,
                        const Overrides& overrides = {});
};

// Dot-separated, at least two segments, each a Java-style identifier.
bool is_reverse_domain(std::string_view name);

}  // namespace pqs

#endif  // PQS_BUNDLE_HPP

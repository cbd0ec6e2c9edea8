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

#include "pqs/manifest.hpp"

#include <unordered_set>

#include "pqs/errors.hpp"
#include "pqs/util/fs.hpp"
#include "pqs/util/strings.hpp"
#include "pqs/xml.hpp"

namespace pqs {

namespace {

bool is_permission_element(const xml::Element& element) {
  return element.local == "uses-permission" ||
         element.local == "uses-permission-sdk-23";
}

void collect_permissions(const xml::Element& element,
                         std::vector<std::string>& out,
                         std::unordered_set<std::string>& seen,
                         std::size_t& element_index) {
  if (is_permission_element(element)) {
    ++element_index;
    const xml::Attribute* name =
        element.find_attribute(kAndroidNsUri, "name", "android");
    if (name == nullptr) {
      throw MissingNameAttribute(element_index);
    }
    std::string value{util::trim(name->value)};
    if (value.empty() || util::contains_whitespace(value)) {
      throw MissingNameAttribute(element_index);
    }
    if (seen.insert(value).second) {
      out.push_back(std::move(value));
    }
  }
  for (const auto& child : element.children) {
    collect_permissions(child, out, seen, element_index);
  }
}

}  // namespace

bool ManifestPermissions::contains(std::string_view name) const {
  for (const auto& p : permissions) {
    if (p == name) return true;
  }
  return false;
}

ManifestPermissions parse_manifest(std::string_view document) {
  xml::Element root = xml::parse(document);
  if (root.local != "manifest") {
    throw MalformedXml(root.position,
                       "root element is <" + root.local + ">, expected <manifest>");
  }
  ManifestPermissions result;
  std::unordered_set<std::string> seen;
  std::size_t element_index = 0;
  collect_permissions(root, result.permissions, seen, element_index);
  return result;
}

ManifestPermissions load_manifest(const std::filesystem::path& manifest_path) {
  ManifestPermissions result = parse_manifest(util::read_file(manifest_path));
  result.source_path = manifest_path;
  return result;
}

ManifestIdentity manifest_identity(std::string_view document) {
  xml::Element root = xml::parse(document);
  ManifestIdentity identity;
  if (root.local != "manifest") return identity;
  for (const auto& attr : root.attributes) {
    if (attr.prefix.empty() && attr.local == "package" && !attr.value.empty()) {
      identity.package_name = attr.value;
    }
  }
  const xml::Attribute* vc =
      root.find_attribute(kAndroidNsUri, "versionCode", "android");
  if (vc != nullptr) {
    try {
      identity.version_code = std::stoull(vc->value);
    } catch (...) {
      // Non-numeric version codes are left unset; identity can be overridden.
    }
  }
  return identity;
}

}  // namespace pqs

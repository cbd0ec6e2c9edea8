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

#include "support/gen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pqs/util/fs.hpp"
#include "pqs/util/zip.hpp"

namespace fs = std::filesystem;

namespace pqs_gen {

namespace {

pqs::PrivacyLevel random_level(Rng& rng) {
  return pqs::kAllLevels[rng.below(pqs::kAllLevels.size())];
}

struct ClassGroup {
  std::string fqn;
  std::string package;
  std::vector<std::size_t> method_indices;
};

std::vector<ClassGroup> group_classes(const pqs::MappingDataset& dataset) {
  std::vector<ClassGroup> groups;
  for (std::size_t i = 0; i < dataset.methods.size(); ++i) {
    const auto& m = dataset.methods[i];
    auto it = std::find_if(groups.begin(), groups.end(), [&m](const ClassGroup& g) {
      return g.fqn == m.class_fqn;
    });
    if (it == groups.end()) {
      groups.push_back(ClassGroup{m.class_fqn, std::string(m.package()), {}});
      it = groups.end() - 1;
    }
    it->method_indices.push_back(i);
  }
  return groups;
}

// Mirror of the engine's import-grant rule, reimplemented on plan data so the
// trial ground truth does not go through the engine.
bool plan_import_grants(const std::vector<std::string>& imports,
                        const std::string& fqn, const std::string& package) {
  for (const auto& target : imports) {
    if (target == fqn) return true;
    if (target == package + ".*") return true;
  }
  return false;
}

}  // namespace

pqs::MappingDataset random_dataset(Rng& rng) {
  pqs::MappingDataset dataset;

  std::size_t n_permissions = 1 + rng.below(4);
  for (std::size_t j = 0; j < n_permissions; ++j) {
    pqs::PermissionSpec p;
    p.permission_name = "gen.permission.PERM_" + std::to_string(j);
    p.piis = {"pii_perm_" + std::to_string(j)};
    p.level = random_level(rng);
    dataset.permissions.push_back(std::move(p));
  }

  std::size_t n_methods = 1 + rng.below(6);
  std::size_t n_classes = 1 + rng.below(std::min<std::size_t>(n_methods, 4));
  std::vector<std::string> packages;
  std::vector<std::string> class_names;
  for (std::size_t c = 0; c < n_classes; ++c) {
    // Occasionally share a package so wildcard imports can gate two classes.
    if (c > 0 && rng.chance(0.2)) {
      packages.push_back(packages[rng.below(packages.size())]);
    } else {
      packages.push_back("com.gen.pkg" + std::to_string(c));
    }
    class_names.push_back(packages.back() + ".Gen" +
                          std::string(1, static_cast<char>('A' + c)));
  }

  std::vector<std::string> used_names;
  for (std::size_t i = 0; i < n_methods; ++i) {
    pqs::MethodSpec m;
    m.class_fqn = class_names[rng.below(n_classes)];
    // Occasionally reuse a method name on a different class; the key stays
    // unique because the class differs.
    if (!used_names.empty() && rng.chance(0.1)) {
      m.method_name = used_names[rng.below(used_names.size())];
    } else {
      m.method_name = "collectItem" + std::to_string(i);
    }
    if (dataset.find_method(m.class_fqn, m.method_name) != nullptr) {
      m.method_name = "collectItem" + std::to_string(i) + "x";
    }
    used_names.push_back(m.method_name);
    m.piis = {"pii_m_" + std::to_string(rng.below(5))};
    if (rng.chance(0.3)) m.piis.push_back("pii_shared");
    m.level = random_level(rng);
    std::size_t n_required = rng.below(3);  // 0..2
    std::set<std::string> required;
    for (std::size_t r = 0; r < n_required; ++r) {
      if (rng.chance(0.15)) {
        required.insert("gen.permission.GHOST_" + std::to_string(rng.below(2)));
      } else {
        required.insert(
            dataset.permissions[rng.below(dataset.permissions.size())]
                .permission_name);
      }
    }
    m.required_permissions.assign(required.begin(), required.end());
    dataset.methods.push_back(std::move(m));
  }

  pqs::finalize_dataset(dataset);
  return dataset;
}

BundlePlan random_plan(Rng& rng, const pqs::MappingDataset& dataset) {
  BundlePlan plan;
  std::set<std::string> declared;
  for (const auto& p : dataset.permissions) {
    if (rng.chance(0.5)) declared.insert(p.permission_name);
  }
  for (const auto& m : dataset.methods) {
    for (const auto& required : m.required_permissions) {
      // Sometimes declare a required permission the dataset does not score.
      if (dataset.find_permission(required) == nullptr && rng.chance(0.4)) {
        declared.insert(required);
      }
    }
  }
  if (rng.chance(0.25)) declared.insert("gen.permission.UNRELATED");
  plan.manifest_permissions.assign(declared.begin(), declared.end());

  for (std::size_t i = 0; i < dataset.methods.size(); ++i) {
    std::size_t roll = rng.below(100);
    Plant plant = Plant::Absent;
    if (roll < 25) {
      plant = Plant::Absent;
    } else if (roll < 50) {
      plant = Plant::ImportAndCall;
    } else if (roll < 60) {
      plant = Plant::WildcardAndCall;
    } else if (roll < 70) {
      plant = Plant::FqnInBody;
    } else if (roll < 85) {
      plant = Plant::CallNoImport;
    } else {
      plant = Plant::ImportNoCall;
    }
    plan.plants.push_back(plant);
  }
  return plan;
}

std::string manifest_xml(const std::string& package_name,
                         std::uint64_t version_code,
                         const std::vector<std::string>& permissions) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n";
  out << "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\"\n"
      << "    package=\"" << package_name << "\"\n"
      << "    android:versionCode=\"" << version_code << "\"\n"
      << "    android:versionName=\"1.0\">\n";
  for (const auto& permission : permissions) {
    out << "    <uses-permission android:name=\"" << permission << "\"/>\n";
  }
  out << "    <application android:label=\"gen\"/>\n";
  out << "</manifest>\n";
  return out.str();
}

void materialize_bundle(const fs::path& root, const pqs::MappingDataset& dataset,
                        const BundlePlan& plan, const std::string& package_name,
                        std::uint64_t version_code) {
  pqs::util::write_file_atomic(
      root / "resources" / "AndroidManifest.xml",
      manifest_xml(package_name, version_code, plan.manifest_permissions));

  pqs::util::write_file_atomic(root / "sources" / "gen" / "Filler.java",
                               "package gen;\n\n"
                               "public class Filler {\n"
                               "    private int counter;\n\n"
                               "    void tick() {\n"
                               "        counter += 1;\n"
                               "    }\n"
                               "}\n");

  for (std::size_t i = 0; i < plan.plants.size(); ++i) {
    if (plan.plants[i] == Plant::Absent) continue;
    const pqs::MethodSpec& m = dataset.methods[i];
    std::ostringstream out;
    out << "package gen;\n\n";
    switch (plan.plants[i]) {
      case Plant::ImportAndCall:
      case Plant::ImportNoCall:
        out << "import " << m.class_fqn << ";\n\n";
        break;
      case Plant::WildcardAndCall:
        out << "import " << m.package() << ".*;\n\n";
        break;
      default:
        break;
    }
    out << "public class Case" << i << " {\n";
    out << "    void run(Object probe) {\n";
    if (plan.plants[i] == Plant::FqnInBody) {
      out << "        " << m.class_fqn << " handle = null;\n";
    }
    if (plan.plants[i] != Plant::ImportNoCall) {
      out << "        probe." << m.method_name << "(0);\n";
    }
    out << "    }\n";
    out << "}\n";
    pqs::util::write_file_atomic(
        root / "sources" / "gen" / ("Case" + std::to_string(i) + ".java"),
        out.str());
  }
}

std::vector<std::pair<std::string, std::string>> expected_found(
    const pqs::MappingDataset& dataset, const BundlePlan& plan) {
  auto groups = group_classes(dataset);
  std::set<std::pair<std::string, std::string>> found;

  for (std::size_t i = 0; i < plan.plants.size(); ++i) {
    if (plan.plants[i] == Plant::Absent) continue;
    const pqs::MethodSpec& planted = dataset.methods[i];

    // Reconstruct what Case<i>.java contains.
    std::vector<std::string> imports;
    std::set<std::string> body_fqns;
    std::set<std::string> calls;
    switch (plan.plants[i]) {
      case Plant::ImportAndCall:
        imports.push_back(planted.class_fqn);
        calls.insert(planted.method_name);
        break;
      case Plant::WildcardAndCall:
        imports.push_back(std::string(planted.package()) + ".*");
        calls.insert(planted.method_name);
        break;
      case Plant::FqnInBody:
        body_fqns.insert(planted.class_fqn);
        calls.insert(planted.method_name);
        break;
      case Plant::CallNoImport:
        calls.insert(planted.method_name);
        break;
      case Plant::ImportNoCall:
        imports.push_back(planted.class_fqn);
        break;
      case Plant::Absent:
        break;
    }

    // The gate applies per file: any class granted by this file's imports or
    // spelled out in its body exposes all of its dataset methods to the
    // file's call tokens (a shared package wildcard can gate two classes).
    for (const auto& group : groups) {
      bool gated = plan_import_grants(imports, group.fqn, group.package) ||
                   body_fqns.count(group.fqn) > 0;
      if (!gated) continue;
      for (std::size_t mi : group.method_indices) {
        if (calls.count(dataset.methods[mi].method_name) > 0) {
          found.insert({dataset.methods[mi].class_fqn,
                        dataset.methods[mi].method_name});
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

void obfuscate_sources(const fs::path& sources_dir,
                       const pqs::MappingDataset& dataset) {
  static const std::set<std::string> kKeywords = {
      "abstract",   "assert",  "boolean",    "break",    "byte",
      "case",       "catch",   "char",       "class",    "const",
      "continue",   "default", "do",         "double",   "else",
      "enum",       "extends", "final",      "finally",  "float",
      "for",        "goto",    "if",         "implements", "import",
      "instanceof", "int",     "interface",  "long",     "native",
      "new",        "package", "private",    "protected", "public",
      "return",     "short",   "static",     "strictfp", "super",
      "switch",     "synchronized", "this",  "throw",    "throws",
      "transient",  "try",     "void",       "volatile", "while",
      "record",     "sealed",  "permits",    "yield",    "var",
      "true",       "false",   "null",
  };

  std::set<std::string> preserve = kKeywords;
  for (const auto& m : dataset.methods) {
    preserve.insert(m.method_name);
    preserve.insert(std::string(m.simple_name()));
    std::string_view package = m.package();
    std::size_t start = 0;
    while (start <= package.size()) {
      std::size_t dot = package.find('.', start);
      if (dot == std::string_view::npos) dot = package.size();
      preserve.insert(std::string(package.substr(start, dot - start)));
      if (dot == package.size()) break;
      start = dot + 1;
    }
  }

  std::map<std::string, std::string> renames;
  auto rename_of = [&renames](const std::string& name) {
    auto [it, inserted] =
        renames.try_emplace(name, "ob" + std::to_string(renames.size()));
    (void)inserted;
    return it->second;
  };
  auto is_ident_start = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
  };
  auto is_ident = [&is_ident_start](char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
  };

  std::vector<fs::path> files;
  for (const auto& item : fs::recursive_directory_iterator(sources_dir)) {
    if (item.is_regular_file() && item.path().extension() == ".java") {
      files.push_back(item.path());
    }
  }
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    std::string text = pqs::util::read_file(path);
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string_view::npos) eol = text.size();
      std::string_view line(text.data() + pos, eol - pos);
      std::string_view trimmed = line;
      while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) {
        trimmed.remove_prefix(1);
      }
      bool verbatim = trimmed.substr(0, 7) == "import " ||
                      trimmed.substr(0, 8) == "package " ||
                      trimmed == "import" || trimmed == "package";
      if (verbatim) {
        out.append(line);
      } else {
        std::size_t i = 0;
        while (i < line.size()) {
          if (is_ident_start(line[i])) {
            std::size_t start = i;
            while (i < line.size() && is_ident(line[i])) ++i;
            std::string token(line.substr(start, i - start));
            out += preserve.count(token) > 0 ? token : rename_of(token);
          } else {
            out.push_back(line[i]);
            ++i;
          }
        }
      }
      if (eol < text.size()) out.push_back('\n');
      pos = eol + 1;
    }
    pqs::util::write_file_atomic(path, out);
  }
}

void build_synthetic_tree(const fs::path& sources_dir, int file_count,
                          const pqs::MappingDataset& dataset,
                          std::uint64_t seed) {
  auto groups = group_classes(dataset);
  for (int i = 0; i < file_count; ++i) {
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(i));
    std::ostringstream out;
    out << "package tree.a" << (i % 7) << ".b" << ((i / 7) % 5) << ";\n\n";
    bool references_api = !groups.empty() && (i % 5 == 0);
    const ClassGroup* group = nullptr;
    if (references_api) {
      group = &groups[static_cast<std::size_t>(i / 5) % groups.size()];
      out << "import " << group->fqn << ";\n\n";
    }
    out << "public class Gen" << i << " {\n";
    out << "    private long stamp = " << rng.next() % 100000 << "L;\n\n";
    out << "    void spin" << (i % 3) << "(int rounds) {\n";
    out << "        int acc = " << rng.below(997) << ";\n";
    out << "        for (int k = 0; k < rounds; k++) { acc += k; }\n";
    if (references_api) {
      std::size_t mi =
          group->method_indices[static_cast<std::size_t>(i / 5) %
                                group->method_indices.size()];
      out << "        helper." << dataset.methods[mi].method_name << "(acc);\n";
    }
    out << "    }\n";
    out << "}\n";
    fs::path dir = sources_dir / ("a" + std::to_string(i % 7)) /
                   ("b" + std::to_string((i / 7) % 5));
    pqs::util::write_file_atomic(dir / ("Gen" + std::to_string(i) + ".java"),
                                 out.str());
  }
}

void build_fixture_store(const fs::path& store_dir, const fs::path& bundle_dir,
                         const std::string& package_name,
                         std::uint64_t version_code, bool paid, int expansions) {
  nlohmann::json catalog{
      {"accounts",
       nlohmann::json::array(
           {{{"user", "analyst"}, {"secret", "fixture-secret"}}})},
      {"apps", nlohmann::json::array()}};
  fs::path catalog_path = store_dir / "catalog.json";
  if (fs::exists(catalog_path)) {
    catalog = nlohmann::json::parse(pqs::util::read_file(catalog_path));
  }

  std::string blob_name =
      "blobs/" + package_name + "-" + std::to_string(version_code) + ".zip";
  pqs::util::write_file_atomic(store_dir / blob_name,
                               pqs::util::zip_pack_dir(bundle_dir));

  nlohmann::json entry{{"package_name", package_name},
                       {"version_code", version_code},
                       {"offer", paid ? "paid" : "free"},
                       {"blob", blob_name},
                       {"expansions", nlohmann::json::array()},
                       {"metadata",
                        {{"description", "generated fixture"},
                         {"rating", 4.0},
                         {"related", nlohmann::json::array()}}}};
  for (int e = 0; e < expansions; ++e) {
    std::string obb = "blobs/main." + std::to_string(version_code) + "." +
                      package_name + "." + std::to_string(e) + ".obb";
    pqs::util::write_file_atomic(store_dir / obb, "expansion payload\n");
    entry["expansions"].push_back(obb);
  }

  auto& apps = catalog["apps"];
  for (auto it = apps.begin(); it != apps.end();) {
    if ((*it)["package_name"] == package_name &&
        (*it)["version_code"] == version_code) {
      it = apps.erase(it);
    } else {
      ++it;
    }
  }
  apps.push_back(entry);
  pqs::util::write_file_atomic(catalog_path, catalog.dump(2) + "\n");
}

}  // namespace pqs_gen

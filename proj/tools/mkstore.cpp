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

// Builds or extends a local fixture store from a decompiled bundle directory:
//   mkstore <store_dir> <bundle_dir> <package> <version> [--paid] [--expansions N]

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqs/util/fs.hpp"
#include "pqs/util/zip.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"mkstore - pack a bundle directory into a pqs fixture store"};
  std::string store_dir, bundle_dir, package_name;
  std::uint64_t version_code = 0;
  bool paid = false;
  int expansions = 0;
  app.add_option("store_dir", store_dir, "Fixture store directory")->required();
  app.add_option("bundle_dir", bundle_dir, "Decompiled bundle directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  app.add_option("package", package_name, "Package name")->required();
  app.add_option("version", version_code, "Version code")->required();
  app.add_flag("--paid", paid, "Mark the listing as paid");
  app.add_option("--expansions", expansions, "Number of dummy .obb expansions");
  CLI11_PARSE(app, argc, argv);

  json catalog{{"accounts", json::array({{{"user", "analyst"},
                                          {"secret", "fixture-secret"}}})},
               {"apps", json::array()}};
  fs::path catalog_path = fs::path(store_dir) / "catalog.json";
  if (fs::exists(catalog_path)) {
    catalog = json::parse(pqs::util::read_file(catalog_path));
  }

  std::string blob_name =
      "blobs/" + package_name + "-" + std::to_string(version_code) + ".zip";
  pqs::util::write_file_atomic(fs::path(store_dir) / blob_name,
                               pqs::util::zip_pack_dir(bundle_dir));

  json app_entry{{"package_name", package_name},
                 {"version_code", version_code},
                 {"offer", paid ? "paid" : "free"},
                 {"blob", blob_name},
                 {"expansions", json::array()},
                 {"metadata", {{"description", "fixture app"}, {"rating", 4.0}}}};
  for (int i = 0; i < expansions; ++i) {
    std::string obb = "blobs/main." + std::to_string(version_code) + "." +
                      package_name + "." + std::to_string(i) + ".obb";
    pqs::util::write_file_atomic(fs::path(store_dir) / obb, "expansion data\n");
    app_entry["expansions"].push_back(obb);
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
  apps.push_back(app_entry);
  pqs::util::write_file_atomic(catalog_path, catalog.dump(2) + "\n");
  std::cout << "store " << store_dir << ": added " << package_name << " v"
            << version_code << " (" << blob_name << ")\n";
  return 0;
}

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

#ifndef PQS_DATASET_HPP
#define PQS_DATASET_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pqs/levels.hpp"

namespace pqs {

// One privacy-relevant public API method. required_permissions carries ANY-OF
// semantics: one declared permission is enough to grant the method access.
struct MethodSpec {
  std::string class_fqn;
  std::string method_name;
  std::vector<std::string> piis;  // non-empty, lowercase labels
  PrivacyLevel level = PrivacyLevel::NonPersonal;
  std::vector<std::string> required_permissions;  // may be empty

  std::string_view package() const;      // class_fqn up to the last '.'
  std::string_view simple_name() const;  // class_fqn after the last '.'
  std::string key() const { return class_fqn + "#" + method_name; }
};

// One privacy-relevant manifest permission.
struct PermissionSpec {
  std::string permission_name;
  std::vector<std::string> piis;
  PrivacyLevel level = PrivacyLevel::NonPersonal;
};

// The two lookup tables plus the normalization denominators. Immutable after
// load; safe to share across concurrent analyses.
struct MappingDataset {
  std::vector<MethodSpec> methods;
  std::vector<PermissionSpec> permissions;
  // Cached sums of level weights over the respective table. The maximum
  // exposure an app can accumulate, used as the score denominators.
  int method_weight_total = 0;
  int permission_weight_total = 0;
  // Content hash of the dataset source (file bytes when loaded from disk,
  // canonical CSV form when built in memory).
  std::string fingerprint;

  const PermissionSpec* find_permission(std::string_view name) const;
  const MethodSpec* find_method(std::string_view class_fqn,
                                std::string_view method_name) const;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Loads methods.csv + permissions.csv from a dataset directory, recomputes
// the weight totals and rejects invalid rows.
//
// Throws FileMissing, ParseError, DuplicateEntry, UnknownLevel.
MappingDataset load_dataset(const std::filesystem::path& dataset_dir);

// Pure invariant check; reports, never throws. A required permission missing
// from the permissions table is a warning, everything else an error.
ValidationReport validate_dataset(const MappingDataset& dataset);

// Recomputes totals and fingerprint for a dataset assembled in memory.
void finalize_dataset(MappingDataset& dataset);

// Canonical CSV forms (stable round-trip: load_dataset of these bytes yields
// an identical dataset).
std::string serialize_methods_csv(const MappingDataset& dataset);
std::string serialize_permissions_csv(const MappingDataset& dataset);

// Hash over the raw dataset file bytes; identical bytes give an identical
// fingerprint, any edit changes it.
std::string dataset_fingerprint_of_files(const std::filesystem::path& dataset_dir);

inline constexpr std::string_view kMethodsCsvName = "methods.csv";
inline constexpr std::string_view kPermissionsCsvName = "permissions.csv";
inline constexpr std::string_view kMethodsCsvHeader =
    "class_fqn,method_name,piis,level,required_permissions";
inline constexpr std::string_view kPermissionsCsvHeader =
    "permission_name,piis,level";

}  // namespace pqs

#endif  // PQS_DATASET_HPP

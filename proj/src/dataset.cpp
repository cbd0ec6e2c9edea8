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

#include "pqs/dataset.hpp"

#include <set>
#include <unordered_set>

#include "pqs/errors.hpp"
#include "pqs/util/csv.hpp"
#include "pqs/util/fs.hpp"
#include "pqs/util/sha256.hpp"
#include "pqs/util/strings.hpp"

namespace fs = std::filesystem;

namespace pqs {

namespace {

PrivacyLevel parse_level_or_throw(const std::string& name) {
  auto level = parse_level(name);
  if (!level) throw UnknownLevel(name);
  return *level;
}

std::vector<std::string> parse_pii_list(const std::string& field,
                                        std::size_t line_no) {
  auto piis = util::split_list(field, ';');
  if (piis.empty()) {
    throw ParseError(line_no, "piis must not be empty");
  }
  for (auto& pii : piis) pii = util::to_lower(pii);
  return piis;
}

void check_identifier(const std::string& value, std::size_t line_no,
                      const char* what) {
  if (value.empty()) {
    throw ParseError(line_no, std::string(what) + " must not be empty");
  }
  if (util::contains_whitespace(value)) {
    throw ParseError(line_no, std::string(what) + " must not contain whitespace");
  }
}

std::vector<MethodSpec> parse_methods(std::string_view text) {
  auto rows = util::parse_csv(text);
  if (rows.empty() || util::join(rows.front().fields, ",") != kMethodsCsvHeader) {
    throw ParseError(rows.empty() ? 1 : rows.front().line_no,
                     std::string("expected header: ") + std::string(kMethodsCsvHeader));
  }
  std::vector<MethodSpec> methods;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 5) {
      throw ParseError(row.line_no, "expected 5 columns, got " +
                                        std::to_string(row.fields.size()));
    }
    MethodSpec spec;
    spec.class_fqn = std::string(util::trim(row.fields[0]));
    spec.method_name = std::string(util::trim(row.fields[1]));
    check_identifier(spec.class_fqn, row.line_no, "class_fqn");
    check_identifier(spec.method_name, row.line_no, "method_name");
    if (spec.class_fqn.find('.') == std::string::npos) {
      throw ParseError(row.line_no,
                       "class_fqn must be fully qualified: " + spec.class_fqn);
    }
    spec.piis = parse_pii_list(row.fields[2], row.line_no);
    spec.level = parse_level_or_throw(row.fields[3]);
    spec.required_permissions = util::split_list(row.fields[4], ';');
    if (!seen.insert(spec.key()).second) {
      throw DuplicateEntry(spec.key());
    }
    methods.push_back(std::move(spec));
  }
  return methods;
}

std::vector<PermissionSpec> parse_permissions(std::string_view text) {
  auto rows = util::parse_csv(text);
  if (rows.empty() ||
      util::join(rows.front().fields, ",") != kPermissionsCsvHeader) {
    throw ParseError(rows.empty() ? 1 : rows.front().line_no,
                     std::string("expected header: ") +
                         std::string(kPermissionsCsvHeader));
  }
  std::vector<PermissionSpec> permissions;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 3) {
      throw ParseError(row.line_no, "expected 3 columns, got " +
                                        std::to_string(row.fields.size()));
    }
    PermissionSpec spec;
    spec.permission_name = std::string(util::trim(row.fields[0]));
    check_identifier(spec.permission_name, row.line_no, "permission_name");
    spec.piis = parse_pii_list(row.fields[1], row.line_no);
    spec.level = parse_level_or_throw(row.fields[2]);
    if (!seen.insert(spec.permission_name).second) {
      throw DuplicateEntry(spec.permission_name);
    }
    permissions.push_back(std::move(spec));
  }
  return permissions;
}

int sum_weights_methods(const std::vector<MethodSpec>& methods) {
  int total = 0;
  for (const auto& m : methods) total += level_weight(m.level);
  return total;
}

int sum_weights_permissions(const std::vector<PermissionSpec>& permissions) {
  int total = 0;
  for (const auto& p : permissions) total += level_weight(p.level);
  return total;
}

std::string fingerprint_of_parts(std::string_view methods_bytes,
                                 std::string_view permissions_bytes) {
  util::Sha256 hasher;
  auto feed = [&hasher](std::string_view name, std::string_view bytes) {
    hasher.update(name);
    hasher.update("\n");
    hasher.update(std::to_string(bytes.size()));
    hasher.update("\n");
    hasher.update(bytes);
  };
  feed(kMethodsCsvName, methods_bytes);
  feed(kPermissionsCsvName, permissions_bytes);
  auto digest = hasher.digest();
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (auto byte : digest) {
    out.push_back(hex[byte >> 4]);
    out.push_back(hex[byte & 0xf]);
  }
  return out;
}

}  // namespace

std::string_view MethodSpec::package() const {
  auto pos = class_fqn.rfind('.');
  return std::string_view(class_fqn).substr(0, pos == std::string::npos ? 0 : pos);
}

std::string_view MethodSpec::simple_name() const {
  auto pos = class_fqn.rfind('.');
  return std::string_view(class_fqn).substr(pos == std::string::npos ? 0 : pos + 1);
}

const PermissionSpec* MappingDataset::find_permission(std::string_view name) const {
  for (const auto& p : permissions) {
    if (p.permission_name == name) return &p;
  }
  return nullptr;
}

const MethodSpec* MappingDataset::find_method(std::string_view class_fqn,
                                              std::string_view method_name) const {
  for (const auto& m : methods) {
    if (m.class_fqn == class_fqn && m.method_name == method_name) return &m;
  }
  return nullptr;
}

MappingDataset load_dataset(const fs::path& dataset_dir) {
  fs::path methods_path = dataset_dir / kMethodsCsvName;
  fs::path permissions_path = dataset_dir / kPermissionsCsvName;
  std::string methods_bytes = util::read_file(methods_path);
  std::string permissions_bytes = util::read_file(permissions_path);

  MappingDataset dataset;
  dataset.methods = parse_methods(methods_bytes);
  dataset.permissions = parse_permissions(permissions_bytes);
  dataset.method_weight_total = sum_weights_methods(dataset.methods);
  dataset.permission_weight_total = sum_weights_permissions(dataset.permissions);
  dataset.fingerprint = fingerprint_of_parts(methods_bytes, permissions_bytes);

  if (dataset.method_weight_total <= 0 || dataset.permission_weight_total <= 0) {
    throw ParseError(0, "dataset defines no scored entries (totals must be > 0)");
  }
  return dataset;
}

ValidationReport validate_dataset(const MappingDataset& dataset) {
  ValidationReport report;
  auto error = [&report](std::string msg) { report.errors.push_back(std::move(msg)); };
  auto warn = [&report](std::string msg) { report.warnings.push_back(std::move(msg)); };

  if (dataset.method_weight_total != sum_weights_methods(dataset.methods)) {
    error("method_weight_total drifted from recomputed sum");
  }
  if (dataset.permission_weight_total !=
      sum_weights_permissions(dataset.permissions)) {
    error("permission_weight_total drifted from recomputed sum");
  }
  if (dataset.method_weight_total <= 0) error("method_weight_total must be > 0");
  if (dataset.permission_weight_total <= 0) {
    error("permission_weight_total must be > 0");
  }

  std::set<std::string> method_keys;
  for (const auto& m : dataset.methods) {
    if (!method_keys.insert(m.key()).second) {
      error("duplicate method entry: " + m.key());
    }
    if (m.class_fqn.find('.') == std::string::npos) {
      error("class_fqn not fully qualified: " + m.class_fqn);
    }
    if (m.piis.empty()) error("method without piis: " + m.key());
    for (const auto& required : m.required_permissions) {
      if (dataset.find_permission(required) == nullptr) {
        warn("required permission not in permissions table: " + required +
             " (referenced by " + m.key() + ")");
      }
    }
  }

  std::set<std::string> permission_names;
  for (const auto& p : dataset.permissions) {
    if (!permission_names.insert(p.permission_name).second) {
      error("duplicate permission entry: " + p.permission_name);
    }
    if (p.piis.empty()) error("permission without piis: " + p.permission_name);
    if (p.permission_name.empty() ||
        util::contains_whitespace(p.permission_name)) {
      error("invalid permission name: '" + p.permission_name + "'");
    }
  }
  return report;
}

void finalize_dataset(MappingDataset& dataset) {
  dataset.method_weight_total = sum_weights_methods(dataset.methods);
  dataset.permission_weight_total = sum_weights_permissions(dataset.permissions);
  dataset.fingerprint = fingerprint_of_parts(serialize_methods_csv(dataset),
                                             serialize_permissions_csv(dataset));
}

std::string serialize_methods_csv(const MappingDataset& dataset) {
  std::string out{kMethodsCsvHeader};
  out.push_back('\n');
  for (const auto& m : dataset.methods) {
    out += util::csv_escape(m.class_fqn);
    out.push_back(',');
    out += util::csv_escape(m.method_name);
    out.push_back(',');
    out += util::csv_escape(util::join(m.piis, ";"));
    out.push_back(',');
    out += level_name(m.level);
    out.push_back(',');
    out += util::csv_escape(util::join(m.required_permissions, ";"));
    out.push_back('\n');
  }
  return out;
}

std::string serialize_permissions_csv(const MappingDataset& dataset) {
  std::string out{kPermissionsCsvHeader};
  out.push_back('\n');
  for (const auto& p : dataset.permissions) {
    out += util::csv_escape(p.permission_name);
    out.push_back(',');
    out += util::csv_escape(util::join(p.piis, ";"));
    out.push_back(',');
    out += level_name(p.level);
    out.push_back('\n');
  }
  return out;
}

std::string dataset_fingerprint_of_files(const fs::path& dataset_dir) {
  return fingerprint_of_parts(
      util::read_file(dataset_dir / kMethodsCsvName),
      util::read_file(dataset_dir / kPermissionsCsvName));
}

}  // namespace pqs

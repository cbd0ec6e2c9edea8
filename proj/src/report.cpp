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

#include "pqs/report.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

namespace pqs {

namespace {

using nlohmann::json;  // std::map-backed: object keys serialize sorted

json hit_to_json(const MethodHit& hit) {
  return json{
      {"class_fqn", hit.spec.class_fqn},
      {"method_name", hit.spec.method_name},
      {"piis", hit.spec.piis},
      {"level", std::string(level_name(hit.spec.level))},
      {"raw_weight", hit.raw_weight},
      {"effective_weight", hit.effective_weight},
      {"permission_satisfied", hit.permission_satisfied},
      {"first_file", hit.first_file},
  };
}

json permission_to_json(const PermissionHit& hit) {
  return json{
      {"permission_name", hit.spec.permission_name},
      {"piis", hit.spec.piis},
      {"level", std::string(level_name(hit.spec.level))},
      {"consumed_by_method", hit.consumed_by_method},
  };
}

std::string render_text(const PrivacyReport& report) {
  std::ostringstream out;
  out << "Privacy report for " << report.package_name << " (version "
      << report.version_code << ")\n";
  out << "  final score      : " << report.breakdown.final_score
      << " / 100 (higher = more private)\n";
  out << "  permission score : " << report.breakdown.permission_score << " / 100\n";
  out << "  method score     : " << report.breakdown.method_score << " / 100\n";
  out << "  combined exposure: " << report.breakdown.combined << " / 200\n";
  out << "\nPrivacy levels: Sensitive=40 Personal=30 Confidential=15 Public=10 "
         "NonPersonal=5\n";

  out << "\nMethod hits (" << report.method_hits.size() << "):\n";
  if (report.method_hits.empty()) out << "  (none)\n";
  for (const auto& hit : report.method_hits) {
    out << "  " << hit.spec.class_fqn << "." << hit.spec.method_name << "  ["
        << level_name(hit.spec.level) << " " << hit.raw_weight << " -> "
        << hit.effective_weight
        << (hit.permission_satisfied ? ", granted" : ", no permission")
        << "]  first seen in " << hit.first_file << "\n";
  }

  out << "\nPermissions scored (" << report.permission_hits.size() << "):\n";
  if (report.permission_hits.empty()) out << "  (none)\n";
  for (const auto& hit : report.permission_hits) {
    out << "  " << hit.spec.permission_name << "  ["
        << level_name(hit.spec.level) << " " << level_weight(hit.spec.level)
        << (hit.consumed_by_method ? ", consumed by method" : ", residual")
        << "]\n";
  }

  out << "\nPIIs exposed:";
  if (report.breakdown.pii_summary.empty()) out << " (none)";
  for (const auto& pii : report.breakdown.pii_summary) out << " " << pii;
  out << "\n";
  if (!report.breakdown.declared_but_ungranted.empty()) {
    out << "Declared but ungranted:";
    for (const auto& pii : report.breakdown.declared_but_ungranted) out << " " << pii;
    out << "\n";
  }
  if (!report.warnings.empty()) {
    out << "\nWarnings:\n";
    for (const auto& warning : report.warnings) out << "  " << warning << "\n";
  }
  return std::move(out).str();
}

}  // namespace

std::string serialize_report(const PrivacyReport& report, ReportFormat format) {
  if (format == ReportFormat::Text) {
    return render_text(report);
  }
  json body{
      {"package_name", report.package_name},
      {"version_code", report.version_code},
      {"permission_score", report.breakdown.permission_score},
      {"method_score", report.breakdown.method_score},
      {"combined", report.breakdown.combined},
      {"final_score", report.breakdown.final_score},
      {"pii_summary", report.breakdown.pii_summary},
      {"declared_but_ungranted", report.breakdown.declared_but_ungranted},
      {"method_hits", json::array()},
      {"permission_hits", json::array()},
      {"warnings", report.warnings},
      {"dataset_fingerprint", report.dataset_fingerprint},
  };
  for (const auto& hit : report.method_hits) {
    body["method_hits"].push_back(hit_to_json(hit));
  }
  for (const auto& hit : report.permission_hits) {
    body["permission_hits"].push_back(permission_to_json(hit));
  }
  return body.dump() + "\n";
}

std::vector<std::string> verify_report(const PrivacyReport& report,
                                       const MappingDataset& dataset) {
  std::vector<std::string> problems;
  auto complain = [&problems](std::string msg) { problems.push_back(std::move(msg)); };

  for (const auto& hit : report.method_hits) {
    if (hit.raw_weight != level_weight(hit.spec.level)) {
      complain("raw weight of " + hit.spec.key() + " does not match its level");
    }
    if (hit.effective_weight != 0 && hit.effective_weight != hit.raw_weight) {
      complain("effective weight of " + hit.spec.key() + " is neither 0 nor raw");
    }
    if (hit.permission_satisfied != (hit.effective_weight == hit.raw_weight)) {
      complain("permission_satisfied inconsistent for " + hit.spec.key());
    }
  }

  // No double counting: a consumed permission must back some granted hit, and
  // it contributes nothing to the permission score by construction.
  for (const auto& permission : report.permission_hits) {
    if (!permission.consumed_by_method) continue;
    bool backing = false;
    for (const auto& hit : report.method_hits) {
      if (hit.effective_weight <= 0) continue;
      const MethodSpec* spec =
          dataset.find_method(hit.spec.class_fqn, hit.spec.method_name);
      if (spec == nullptr) continue;
      for (const auto& required : spec->required_permissions) {
        if (required == permission.spec.permission_name) {
          backing = true;
          break;
        }
      }
      if (backing) break;
    }
    if (!backing) {
      complain("permission " + permission.spec.permission_name +
               " marked consumed without a granted consuming method");
    }
  }

  ScoreBreakdown recomputed =
      compute_breakdown(report.method_hits, report.permission_hits, dataset);
  auto check_int = [&complain](const char* name, int stored, int fresh) {
    if (stored != fresh) {
      complain(std::string(name) + " mismatch: stored " + std::to_string(stored) +
               ", recomputed " + std::to_string(fresh));
    }
  };
  check_int("permission_score", report.breakdown.permission_score,
            recomputed.permission_score);
  check_int("method_score", report.breakdown.method_score, recomputed.method_score);
  check_int("combined", report.breakdown.combined, recomputed.combined);
  check_int("final_score", report.breakdown.final_score, recomputed.final_score);
  if (report.breakdown.pii_summary != recomputed.pii_summary) {
    complain("pii_summary mismatch");
  }
  if (report.breakdown.declared_but_ungranted != recomputed.declared_but_ungranted) {
    complain("declared_but_ungranted mismatch");
  }
  return problems;
}

}  // namespace pqs

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

#include "pqs/scoring.hpp"

#include <algorithm>
#include <set>

#include "pqs/errors.hpp"

namespace pqs {

int round_percent(long long numerator, long long denominator) {
  if (denominator <= 0) {
    throw ZeroDenominator("score denominator must be > 0");
  }
  // floor(100*n/d + 1/2) without leaving integer arithmetic; inputs are
  // non-negative so half-away-from-zero equals half-up here.
  return static_cast<int>((200 * numerator + denominator) / (2 * denominator));
}

void resolve_effective_weights(std::vector<MethodHit>& hits,
                               const ManifestPermissions& manifest) {
  for (MethodHit& hit : hits) {
    if (hit.spec.required_permissions.empty()) {
      hit.permission_satisfied = true;
      hit.effective_weight = hit.raw_weight;
      continue;
    }
    bool granted = std::any_of(
        hit.spec.required_permissions.begin(), hit.spec.required_permissions.end(),
        [&manifest](const std::string& p) { return manifest.contains(p); });
    hit.permission_satisfied = granted;
    hit.effective_weight = granted ? hit.raw_weight : 0;
  }
}

std::vector<PermissionHit> build_permission_hits(
    const ManifestPermissions& manifest, const std::vector<MethodHit>& effective,
    const MappingDataset& dataset) {
  std::set<std::string> consumed;
  for (const MethodHit& hit : effective) {
    if (hit.effective_weight <= 0) continue;
    for (const auto& required : hit.spec.required_permissions) {
      consumed.insert(required);
    }
  }

  std::vector<PermissionHit> out;
  for (const auto& declared : manifest.permissions) {
    const PermissionSpec* spec = dataset.find_permission(declared);
    if (spec == nullptr) continue;  // not privacy-relevant per the dataset
    PermissionHit hit;
    hit.spec = *spec;
    hit.consumed_by_method = consumed.count(declared) > 0;
    out.push_back(std::move(hit));
  }
  return out;
}

int score_permissions(const std::vector<PermissionHit>& permission_hits,
                      const MappingDataset& dataset) {
  long long residual = 0;
  for (const PermissionHit& hit : permission_hits) {
    if (!hit.consumed_by_method) residual += level_weight(hit.spec.level);
  }
  return round_percent(residual, dataset.permission_weight_total);
}

int score_methods(const std::vector<MethodHit>& effective,
                  const MappingDataset& dataset) {
  long long total = 0;
  for (const MethodHit& hit : effective) total += hit.effective_weight;
  return round_percent(total, dataset.method_weight_total);
}

int final_score(int permission_score, int method_score) {
  int combined = permission_score + method_score;
  return 100 - round_percent(combined, 200);
}

ScoreBreakdown compute_breakdown(const std::vector<MethodHit>& effective,
                                 const std::vector<PermissionHit>& permission_hits,
                                 const MappingDataset& dataset) {
  ScoreBreakdown breakdown;
  breakdown.permission_score = score_permissions(permission_hits, dataset);
  breakdown.method_score = score_methods(effective, dataset);
  breakdown.combined = breakdown.permission_score + breakdown.method_score;
  breakdown.final_score =
      final_score(breakdown.permission_score, breakdown.method_score);

  std::set<std::string> summary;
  std::set<std::string> ungranted;
  for (const MethodHit& hit : effective) {
    auto& target = hit.effective_weight > 0 ? summary : ungranted;
    target.insert(hit.spec.piis.begin(), hit.spec.piis.end());
  }
  for (const PermissionHit& hit : permission_hits) {
    if (!hit.consumed_by_method) {
      summary.insert(hit.spec.piis.begin(), hit.spec.piis.end());
    }
  }
  breakdown.pii_summary.assign(summary.begin(), summary.end());
  breakdown.declared_but_ungranted.assign(ungranted.begin(), ungranted.end());
  return breakdown;
}

}  // namespace pqs

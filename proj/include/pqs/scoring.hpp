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

#ifndef PQS_SCORING_HPP
#define PQS_SCORING_HPP

#include <string>
#include <vector>

#include "pqs/dataset.hpp"
#include "pqs/manifest.hpp"
#include "pqs/scanner.hpp"

namespace pqs {

// A manifest permission that the dataset scores. Once a granted method hit
// accounts for the permission, it is consumed and contributes nothing to the
// permission score, so no privilege is ever counted twice.
struct PermissionHit {
  PermissionSpec spec;
  bool consumed_by_method = false;
};

struct ScoreBreakdown {
  int permission_score = 0;  // 0..100
  int method_score = 0;      // 0..100
  int combined = 0;          // permission_score + method_score, 0..200
  int final_score = 100;     // 100 - round(combined / 200 * 100); higher = more private
  std::vector<std::string> pii_summary;  // sorted unique, from effective
                                         // method hits + residual permissions
  std::vector<std::string> declared_but_ungranted;  // piis of zero-weight hits
};

// Every rounding point uses the same mode: half away from zero. Computed in
// exact integer arithmetic, so there is no floating-point drift.
enum class Rounding { HalfAwayFromZero };
inline constexpr Rounding kScoreRounding = Rounding::HalfAwayFromZero;

// round(numerator / denominator * 100) under kScoreRounding; both inputs
// non-negative, denominator > 0.
int round_percent(long long numerator, long long denominator);

// Assigns effective_weight and permission_satisfied on each hit: a hit with
// no required permissions keeps its full weight; otherwise any one declared
// permission from the required set grants it, and an ungranted hit weighs 0.
void resolve_effective_weights(std::vector<MethodHit>& hits,
                               const ManifestPermissions& manifest);

// One hit per manifest permission present in the dataset. consumed_by_method
// is set when the permission belongs to the required set of some hit with a
// non-zero effective weight.
std::vector<PermissionHit> build_permission_hits(
    const ManifestPermissions& manifest, const std::vector<MethodHit>& effective,
    const MappingDataset& dataset);

// round(residual weight sum / permission_weight_total * 100).
int score_permissions(const std::vector<PermissionHit>& permission_hits,
                      const MappingDataset& dataset);

// round(effective weight sum / method_weight_total * 100).
int score_methods(const std::vector<MethodHit>& effective,
                  const MappingDataset& dataset);

// 100 - round((permission_score + method_score) / 200 * 100).
int final_score(int permission_score, int method_score);

ScoreBreakdown compute_breakdown(const std::vector<MethodHit>& effective,
                                 const std::vector<PermissionHit>& permission_hits,
                                 const MappingDataset& dataset);

}  // namespace pqs

#endif  // PQS_SCORING_HPP

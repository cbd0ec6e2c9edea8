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

#ifndef PQS_REPORT_HPP
#define PQS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pqs/dataset.hpp"
#include "pqs/scanner.hpp"
#include "pqs/scoring.hpp"

namespace pqs {

// Complete analysis output for one bundle. Everything needed to audit the
// score is inside: hit lists with weights, the breakdown, and the fingerprint
// of the dataset that produced it.
struct PrivacyReport {
  std::string package_name;
  std::uint64_t version_code = 0;
  ScoreBreakdown breakdown;
  std::vector<MethodHit> method_hits;          // sorted by (class, method)
  std::vector<PermissionHit> permission_hits;  // manifest declaration order
  std::vector<std::string> warnings;
  std::string dataset_fingerprint;
};

enum class ReportFormat { Json, Text };

// Json form is canonical: keys sorted, arrays in fixed order, newline
// terminated; identical reports serialize to identical bytes. Text form is a
// human-readable audit table.
std::string serialize_report(const PrivacyReport& report, ReportFormat format);

// Recomputes the breakdown from the report's own hit lists plus the dataset
// and compares it against the stored one; also checks that no privilege is
// counted in both scores. Returns human-readable discrepancies, empty when
// the report is self-consistent.
std::vector<std::string> verify_report(const PrivacyReport& report,
                                       const MappingDataset& dataset);

}  // namespace pqs

#endif  // PQS_REPORT_HPP

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

#ifndef PQS_LEVELS_HPP
#define PQS_LEVELS_HPP

#include <array>
#include <optional>
#include <string_view>

namespace pqs {

// Five-level data sensitivity scale. Ordering by weight is strict and total:
// Sensitive > Personal > Confidential > Public > NonPersonal.
enum class PrivacyLevel {
  Sensitive,
  Personal,
  Confidential,
  Public,
  NonPersonal,
};

inline constexpr std::array<PrivacyLevel, 5> kAllLevels = {
    PrivacyLevel::Sensitive,    PrivacyLevel::Personal,
    PrivacyLevel::Confidential, PrivacyLevel::Public,
    PrivacyLevel::NonPersonal,
};

// Score points contributed by one entry of the given level.
constexpr int level_weight(PrivacyLevel level) {
  switch (level) {
    case PrivacyLevel::Sensitive: return 40;
    case PrivacyLevel::Personal: return 30;
    case PrivacyLevel::Confidential: return 15;
    case PrivacyLevel::Public: return 10;
    case PrivacyLevel::NonPersonal: return 5;
  }
  return 0;
}

constexpr std::string_view level_name(PrivacyLevel level) {
  switch (level) {
    case PrivacyLevel::Sensitive: return "Sensitive";
    case PrivacyLevel::Personal: return "Personal";
    case PrivacyLevel::Confidential: return "Confidential";
    case PrivacyLevel::Public: return "Public";
    case PrivacyLevel::NonPersonal: return "NonPersonal";
  }
  return "?";
}

// Case-insensitive match against the five canonical names.
std::optional<PrivacyLevel> parse_level(std::string_view name);

}  // namespace pqs

#endif  // PQS_LEVELS_HPP

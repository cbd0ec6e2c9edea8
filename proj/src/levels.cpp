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

#include "pqs/levels.hpp"

#include "pqs/util/strings.hpp"

namespace pqs {

std::optional<PrivacyLevel> parse_level(std::string_view name) {
  std::string lowered = util::to_lower(util::trim(name));
  for (PrivacyLevel level : kAllLevels) {
    if (lowered == util::to_lower(level_name(level))) return level;
  }
  return std::nullopt;
}

}  // namespace pqs

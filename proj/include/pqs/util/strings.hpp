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

#ifndef PQS_UTIL_STRINGS_HPP
#define PQS_UTIL_STRINGS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace pqs::util {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Splits on a single-character separator; empty tokens are dropped and every
// token is trimmed.
std::vector<std::string> split_list(std::string_view s, char sep);

std::string join(const std::vector<std::string>& items, std::string_view sep);

bool contains_whitespace(std::string_view s);

}  // namespace pqs::util

#endif  // PQS_UTIL_STRINGS_HPP

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

#ifndef PQS_UTIL_CSV_HPP
#define PQS_UTIL_CSV_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pqs::util {

struct CsvRow {
  std::size_t line_no = 0;  // 1-based
  std::vector<std::string> fields;
};

// Parses comma-separated rows with double-quote quoting ("" escapes a quote).
// Blank lines are skipped; quoted fields must not span lines. Throws
// ParseError on an unterminated quote or trailing garbage after a quote.
std::vector<CsvRow> parse_csv(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace pqs::util

#endif  // PQS_UTIL_CSV_HPP

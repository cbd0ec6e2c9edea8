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

#ifndef PQS_SCANNER_HPP
#define PQS_SCANNER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "pqs/bundle.hpp"
#include "pqs/dataset.hpp"

namespace pqs {

// One dataset method detected in the source tree. A (class, method) pair
// appears at most once per analysis; first_file is the lexicographically
// first path that matched it. effective_weight and permission_satisfied are
// assigned by the scoring stage.
struct MethodHit {
  MethodSpec spec;
  std::string first_file;  // '/'-separated path relative to sources/
  int raw_weight = 0;
  int effective_weight = 0;
  bool permission_satisfied = false;
};

struct ScanOptions {
  std::vector<std::string> extensions{".java"};
  unsigned workers = 0;  // 0 = hardware concurrency, capped
};

struct ScanResult {
  std::vector<MethodHit> hits;  // sorted by (class_fqn, method_name)
  std::vector<std::string> warnings;
};

// All files below sources/ with a matching extension, as relative paths in
// deterministic lexicographic order.
std::vector<std::string> list_source_files(const AppBundle& bundle,
                                           const ScanOptions& options = {});

// Recursive scan of the decompiled tree. A dataset class is in scope for a
// file when the file's import section names it (exactly, via a package
// wildcard, or via a static member import), or when the body spells out the
// fully-qualified class name; each in-scope class contributes a hit per
// dataset method whose call token appears in the body.
//
// Throws EmptySourceTree when no source file exists.
ScanResult scan_sources(const AppBundle& bundle, const MappingDataset& dataset,
                        const ScanOptions& options = {});

// Same scan over an explicit file list in any order; the result is identical
// to scan_sources whenever the list holds the same files.
ScanResult scan_files(const AppBundle& bundle, const MappingDataset& dataset,
                      const std::vector<std::string>& files,
                      const ScanOptions& options = {});

// --- building blocks, exposed for direct testing ----------------------------

// Import section of one source file: every line whose first token is
// `import`, before the first type declaration. Targets are recorded without
// the `static` keyword or trailing ';'.
struct SourceImports {
  std::vector<std::string> targets;
  std::size_t body_offset = 0;  // byte offset where the body starts
};

SourceImports split_source(std::string_view text);

// True when `name` occurs at a word boundary immediately followed by '('.
bool contains_call_token(std::string_view body, std::string_view name);

// True when the fully-qualified class name occurs as a standalone dotted
// token (not embedded in a longer qualified name).
bool contains_qualified_token(std::string_view body, std::string_view fqn);

// Import-gate decision for one class given a file's import targets.
bool import_grants_class(const std::vector<std::string>& import_targets,
                         std::string_view class_fqn);

}  // namespace pqs

#endif  // PQS_SCANNER_HPP

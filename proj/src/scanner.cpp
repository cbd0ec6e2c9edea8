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

#include "pqs/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "pqs/errors.hpp"
#include "pqs/util/strings.hpp"

namespace fs = std::filesystem;

namespace pqs {

namespace {

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '$';
}

bool starts_with_keyword(std::string_view line, std::string_view keyword) {
  if (line.substr(0, keyword.size()) != keyword) return false;
  return line.size() == keyword.size() || !ident_char(line[keyword.size()]);
}

// Methods grouped by declaring class so the import gate is checked once per
// class per file.
struct ClassEntry {
  std::string_view fqn;
  std::string wildcard;  // "<package>.*"
  std::vector<std::size_t> method_indices;
};

std::vector<ClassEntry> index_classes(const MappingDataset& dataset) {
  std::vector<ClassEntry> classes;
  std::map<std::string_view, std::size_t> by_fqn;
  for (std::size_t i = 0; i < dataset.methods.size(); ++i) {
    const MethodSpec& spec = dataset.methods[i];
    auto found = by_fqn.find(spec.class_fqn);
    if (found == by_fqn.end()) {
      ClassEntry entry;
      entry.fqn = spec.class_fqn;
      entry.wildcard = std::string(spec.package()) + ".*";
      by_fqn.emplace(entry.fqn, classes.size());
      classes.push_back(std::move(entry));
      found = by_fqn.find(spec.class_fqn);
    }
    classes[found->second].method_indices.push_back(i);
  }
  return classes;
}

// Per-file scan state: which classes are gated and which call tokens appear
// in the body. Body lines are matched as-is; comments and string literals are
// not stripped, matching the plain-text procedure the engine implements.
class FileScan {
 public:
  FileScan(const MappingDataset& dataset, const std::vector<ClassEntry>& classes)
      : dataset_(dataset),
        classes_(classes),
        class_gated_(classes.size(), false),
        method_token_seen_(dataset.methods.size(), false) {}

  void feed_line(std::string_view line) {
    if (!in_body_) {
      if (consume_header_line(line)) return;
      in_body_ = true;  // this line starts the first type declaration
    }
    scan_body_line(line);
  }

  std::vector<std::size_t> matched_methods() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      bool gated = class_gated_[c] || import_grants_class(imports_, classes_[c].fqn);
      if (!gated) continue;
      for (std::size_t m : classes_[c].method_indices) {
        if (method_token_seen_[m]) out.push_back(m);
      }
    }
    return out;
  }

  const std::vector<std::string>& imports() const { return imports_; }
  bool in_body() const { return in_body_; }

 private:
  // Returns true while the line belongs to the header (package declaration,
  // imports, comments, blank lines).
  bool consume_header_line(std::string_view raw) {
    std::string_view line = util::trim(raw);
    if (in_block_comment_) {
      std::size_t end = line.find("*/");
      if (end != std::string_view::npos) {
        in_block_comment_ = false;
        std::string_view rest = util::trim(line.substr(end + 2));
        if (!rest.empty()) return false;
      }
      return true;
    }
    if (line.empty()) return true;
    if (line.substr(0, 2) == "//") return true;
    if (line.substr(0, 2) == "/*") {
      std::size_t end = line.rfind("*/");
      if (end == std::string_view::npos || end < 2) {
        in_block_comment_ = true;
        return true;
      }
      return util::trim(line.substr(end + 2)).empty();
    }
    if (line.front() == '*') return true;
    if (starts_with_keyword(line, "package")) return true;
    if (starts_with_keyword(line, "import")) {
      record_import(line.substr(6));
      return true;
    }
    return false;
  }

  void record_import(std::string_view rest) {
    rest = util::trim(rest);
    if (starts_with_keyword(rest, "static")) {
      rest = util::trim(rest.substr(6));
    }
    std::string target;
    for (char c : rest) {
      if (c == ';') break;
      if (c != ' ' && c != '\t') target.push_back(c);
    }
    if (!target.empty()) imports_.push_back(std::move(target));
  }

  void scan_body_line(std::string_view line) {
    for (std::size_t m = 0; m < dataset_.methods.size(); ++m) {
      if (!method_token_seen_[m] &&
          contains_call_token(line, dataset_.methods[m].method_name)) {
        method_token_seen_[m] = true;
      }
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      if (!class_gated_[c] && contains_qualified_token(line, classes_[c].fqn)) {
        class_gated_[c] = true;
      }
    }
  }

  const MappingDataset& dataset_;
  const std::vector<ClassEntry>& classes_;
  std::vector<std::string> imports_;
  std::vector<bool> class_gated_;        // via qualified token in body
  std::vector<bool> method_token_seen_;  // call token in body
  bool in_body_ = false;
  bool in_block_comment_ = false;
};

}  // namespace

bool contains_call_token(std::string_view body, std::string_view name) {
  if (name.empty()) return false;
  std::size_t pos = 0;
  while ((pos = body.find(name, pos)) != std::string_view::npos) {
    bool left_ok = pos == 0 || !ident_char(body[pos - 1]);
    std::size_t end = pos + name.size();
    bool right_ok = end < body.size() && body[end] == '(';
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

bool contains_qualified_token(std::string_view body, std::string_view fqn) {
  if (fqn.empty()) return false;
  std::size_t pos = 0;
  while ((pos = body.find(fqn, pos)) != std::string_view::npos) {
    bool left_ok = pos == 0 || (!ident_char(body[pos - 1]) && body[pos - 1] != '.');
    std::size_t end = pos + fqn.size();
    bool right_ok = end == body.size() || !ident_char(body[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

bool import_grants_class(const std::vector<std::string>& import_targets,
                         std::string_view class_fqn) {
  auto dot = class_fqn.rfind('.');
  std::string package_wildcard =
      std::string(class_fqn.substr(0, dot == std::string_view::npos ? 0 : dot)) +
      ".*";
  std::string member_prefix = std::string(class_fqn) + ".";
  for (const auto& target : import_targets) {
    if (target == class_fqn) return true;
    if (target == package_wildcard) return true;
    if (target.size() > member_prefix.size() &&
        target.compare(0, member_prefix.size(), member_prefix) == 0) {
      return true;  // static member or static wildcard import
    }
    if (target == member_prefix + "*") return true;
  }
  return false;
}

SourceImports split_source(std::string_view text) {
  SourceImports result;
  MappingDataset empty;
  std::vector<ClassEntry> no_classes;
  FileScan scan(empty, no_classes);
  std::size_t pos = 0;
  result.body_offset = text.size();
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    bool was_body = scan.in_body();
    scan.feed_line(text.substr(pos, eol - pos));
    if (!was_body && scan.in_body()) {
      result.body_offset = pos;
    }
    pos = eol + 1;
  }
  result.targets = scan.imports();
  return result;
}

std::vector<std::string> list_source_files(const AppBundle& bundle,
                                           const ScanOptions& options) {
  std::vector<std::string> files;
  std::error_code ec;
  fs::recursive_directory_iterator it(bundle.sources_dir, ec);
  if (ec) return files;
  for (const auto& item : it) {
    if (!item.is_regular_file()) continue;
    std::string ext = item.path().extension().string();
    bool wanted = false;
    for (const auto& allowed : options.extensions) {
      if (ext == allowed) {
        wanted = true;
        break;
      }
    }
    if (!wanted) continue;
    files.push_back(fs::relative(item.path(), bundle.sources_dir).generic_string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

ScanResult scan_files(const AppBundle& bundle, const MappingDataset& dataset,
                      const std::vector<std::string>& files,
                      const ScanOptions& options) {
  if (files.empty()) {
    throw EmptySourceTree(bundle.sources_dir.string());
  }
  const std::vector<ClassEntry> classes = index_classes(dataset);

  // Files are processed by a small worker pool; the merge below is
  // order-insensitive, so the outcome does not depend on scheduling.
  unsigned workers = options.workers != 0
                         ? options.workers
                         : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  workers = std::min<unsigned>(workers, static_cast<unsigned>(files.size()));

  std::mutex merge_mutex;
  std::map<std::size_t, std::string> first_file_by_method;
  std::vector<std::string> warnings;
  std::atomic<std::size_t> next{0};

  auto work = [&]() {
    std::vector<std::pair<std::size_t, const std::string*>> local_hits;
    std::vector<std::string> local_warnings;
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= files.size()) break;
      const std::string& rel = files[i];
      std::ifstream in(bundle.sources_dir / fs::path(rel), std::ios::binary);
      if (!in) {
        local_warnings.push_back("unreadable file skipped: " + rel);
        continue;
      }
      // Streaming line-by-line keeps memory flat regardless of file size.
      FileScan scan(dataset, classes);
      std::string line;
      while (std::getline(in, line)) {
        scan.feed_line(line);
      }
      if (in.bad()) {
        local_warnings.push_back("unreadable file skipped: " + rel);
        continue;
      }
      for (std::size_t method_index : scan.matched_methods()) {
        local_hits.emplace_back(method_index, &rel);
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (const auto& [method_index, rel] : local_hits) {
      auto [it, inserted] = first_file_by_method.try_emplace(method_index, *rel);
      if (!inserted && *rel < it->second) it->second = *rel;
    }
    warnings.insert(warnings.end(), local_warnings.begin(), local_warnings.end());
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  ScanResult result;
  for (const auto& [method_index, first_file] : first_file_by_method) {
    MethodHit hit;
    hit.spec = dataset.methods[method_index];
    hit.first_file = first_file;
    hit.raw_weight = level_weight(hit.spec.level);
    result.hits.push_back(std::move(hit));
  }
  std::sort(result.hits.begin(), result.hits.end(),
            [](const MethodHit& a, const MethodHit& b) {
              if (a.spec.class_fqn != b.spec.class_fqn) {
                return a.spec.class_fqn < b.spec.class_fqn;
              }
              return a.spec.method_name < b.spec.method_name;
            });
  std::sort(warnings.begin(), warnings.end());
  result.warnings = std::move(warnings);
  return result;
}

ScanResult scan_sources(const AppBundle& bundle, const MappingDataset& dataset,
                        const ScanOptions& options) {
  return scan_files(bundle, dataset, list_source_files(bundle, options), options);
}

}  // namespace pqs

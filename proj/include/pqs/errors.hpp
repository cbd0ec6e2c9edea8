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

#ifndef PQS_ERRORS_HPP
#define PQS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pqs {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// ---- dataset ---------------------------------------------------------------

class FileMissing : public Error {
 public:
  explicit FileMissing(const std::string& path)
      : Error("file missing: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}
  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

class DuplicateEntry : public Error {
 public:
  explicit DuplicateEntry(const std::string& key)
      : Error("duplicate entry: " + key), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class UnknownLevel : public Error {
 public:
  explicit UnknownLevel(const std::string& name)
      : Error("unknown privacy level: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// ---- manifest --------------------------------------------------------------

class MalformedXml : public Error {
 public:
  MalformedXml(std::size_t position, const std::string& reason)
      : Error("malformed xml at byte " + std::to_string(position) + ": " +
              reason),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A uses-permission element without a usable android:name attribute signals a
// corrupt decompilation rather than an app without that permission.
class MissingNameAttribute : public Error {
 public:
  explicit MissingNameAttribute(std::size_t element_index)
      : Error("uses-permission element #" + std::to_string(element_index) +
              " has no usable android:name attribute"),
        element_index_(element_index) {}
  std::size_t element_index() const { return element_index_; }

 private:
  std::size_t element_index_;
};

// ---- bundle / scanner ------------------------------------------------------

class BundleError : public Error {
 public:
  using Error::Error;
};

class EmptySourceTree : public Error {
 public:
  explicit EmptySourceTree(const std::string& dir)
      : Error("no source files under " + dir) {}
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

// ---- pipeline ---------------------------------------------------------------

class AnalysisFailure : public Error {
 public:
  AnalysisFailure(const std::string& stage, const std::string& cause)
      : Error("analysis failed during " + stage + ": " + cause),
        stage_(stage),
        cause_(cause) {}
  const std::string& stage() const { return stage_; }
  const std::string& cause() const { return cause_; }

 private:
  std::string stage_;
  std::string cause_;
};

class DecompilerMissing : public Error {
 public:
  using Error::Error;
};

class DecompilerFailed : public Error {
 public:
  DecompilerFailed(int exit_code, const std::string& detail)
      : Error("decompiler exited with status " + std::to_string(exit_code) +
              (detail.empty() ? "" : ": " + detail)),
        exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

class BundleIncomplete : public Error {
 public:
  explicit BundleIncomplete(const std::string& missing_part)
      : Error("decompiled bundle incomplete: missing " + missing_part),
        missing_(missing_part) {}
  const std::string& missing_part() const { return missing_; }

 private:
  std::string missing_;
};

// ---- store -------------------------------------------------------------------

// One variant per acquisition failure; the service maps these to HTTP codes.
enum class StoreFault {
  TransportError,
  AuthFailed,
  AppNotFound,
  NotFree,
  PurchaseFailed,
  DeliveryFailed,
  DownloadFailed,
};

constexpr const char* store_fault_code(StoreFault fault) {
  switch (fault) {
    case StoreFault::TransportError: return "transport_error";
    case StoreFault::AuthFailed: return "auth_failed";
    case StoreFault::AppNotFound: return "app_not_found";
    case StoreFault::NotFree: return "not_free";
    case StoreFault::PurchaseFailed: return "purchase_failed";
    case StoreFault::DeliveryFailed: return "delivery_failed";
    case StoreFault::DownloadFailed: return "download_failed";
  }
  return "store_error";
}

class StoreError : public Error {
 public:
  StoreError(StoreFault fault, const std::string& detail)
      : Error(std::string(store_fault_code(fault)) + ": " + detail),
        fault_(fault),
        detail_(detail) {}
  StoreFault fault() const { return fault_; }
  const std::string& detail() const { return detail_; }

 private:
  StoreFault fault_;
  std::string detail_;
};

// ---- service ------------------------------------------------------------------

class StorageUnavailable : public Error {
 public:
  using Error::Error;
};

}  // namespace pqs

#endif  // PQS_ERRORS_HPP

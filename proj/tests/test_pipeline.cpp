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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pqs/errors.hpp"
#include "pqs/pipeline.hpp"
#include "pqs/util/fs.hpp"
#include "support/oracle.hpp"
#include "support/temp_dir.hpp"

using namespace pqs;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = fs::path(PQS_SOURCE_DIR);
const fs::path kSeedDir = kSource / "data" / "seed";

MappingDataset seed() { return load_dataset(kSeedDir); }

}  // namespace

TEST_CASE("dangerous fixture scores exactly 50/100/0") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "dangerous");
  PrivacyReport report = analyze_bundle(bundle, seed());
  CHECK(report.breakdown.final_score == 50);
  CHECK(report.breakdown.permission_score == 100);
  CHECK(report.breakdown.method_score == 0);
  CHECK(report.method_hits.empty());
  CHECK(report.warnings.empty());
  CHECK(report.package_name == "com.example.dangerous");
}

TEST_CASE("empty fixture is maximally private") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "empty");
  PrivacyReport report = analyze_bundle(bundle, seed());
  CHECK(report.breakdown.final_score == 100);
  CHECK(report.breakdown.combined == 0);
  CHECK(report.method_hits.empty());
  CHECK(report.permission_hits.empty());
}

TEST_CASE("sample fixture report matches the checked-in golden file") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "sample");
  PrivacyReport report = analyze_bundle(bundle, seed());
  std::string json = serialize_report(report, ReportFormat::Json);
  std::string golden =
      util::read_file(kSource / "tests" / "golden" / "sample_report.json");
  CHECK(json == golden);
}

TEST_CASE("sample fixture scores agree with the brute-force oracle") {
  MappingDataset dataset = seed();
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "sample");
  PrivacyReport report = analyze_bundle(bundle, dataset);

  pqs_oracle::OracleDataset oracle_dataset;
  for (const auto& m : dataset.methods) {
    oracle_dataset.methods.push_back({m.class_fqn, m.method_name, m.piis,
                                      std::string(level_name(m.level)),
                                      m.required_permissions});
  }
  for (const auto& p : dataset.permissions) {
    oracle_dataset.permissions.push_back(
        {p.permission_name, p.piis, std::string(level_name(p.level))});
  }
  // Ground truth for the fixture: what its three source files visibly use and
  // what its manifest declares.
  std::vector<std::pair<std::string, std::string>> found{
      {"android.hardware.Camera", "open"},
      {"android.location.LocationManager", "getLastKnownLocation"},
      {"android.telephony.TelephonyManager", "getDeviceId"},
  };
  std::vector<std::string> declared{
      "android.permission.ACCESS_FINE_LOCATION",
      "android.permission.CAMERA",
      "android.permission.READ_CONTACTS",
  };
  auto oracle = pqs_oracle::oracle_score(oracle_dataset, found, declared);

  CHECK(report.breakdown.permission_score == oracle.permission_score);
  CHECK(report.breakdown.method_score == oracle.method_score);
  CHECK(report.breakdown.combined == oracle.combined);
  CHECK(report.breakdown.final_score == oracle.final_score);
  CHECK(report.breakdown.pii_summary == oracle.pii_summary);
  CHECK(report.breakdown.declared_but_ungranted == oracle.declared_but_ungranted);
  CHECK(oracle.final_score == 91);
}

TEST_CASE("dangerous report matches the checked-in golden file") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "dangerous");
  PrivacyReport report = analyze_bundle(bundle, seed());
  std::string json = serialize_report(report, ReportFormat::Json);
  std::string golden =
      util::read_file(kSource / "tests" / "golden" / "dangerous_report.json");
  CHECK(json == golden);
}

TEST_CASE("serialization is deterministic and newline-terminated") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "sample");
  MappingDataset dataset = seed();
  PrivacyReport a = analyze_bundle(bundle, dataset);
  PrivacyReport b = analyze_bundle(bundle, dataset);
  std::string ja = serialize_report(a, ReportFormat::Json);
  std::string jb = serialize_report(b, ReportFormat::Json);
  CHECK(ja == jb);
  REQUIRE_FALSE(ja.empty());
  CHECK(ja.back() == '\n');

  std::string text = serialize_report(a, ReportFormat::Text);
  CHECK(text.find("final score") != std::string::npos);
  CHECK(text.find("Sensitive=40") != std::string::npos);
}

TEST_CASE("verify_report accepts engine output and flags tampering") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "sample");
  MappingDataset dataset = seed();
  PrivacyReport report = analyze_bundle(bundle, dataset);
  CHECK(verify_report(report, dataset).empty());

  SUBCASE("inflated final score") {
    report.breakdown.final_score += 1;
    CHECK_FALSE(verify_report(report, dataset).empty());
  }
  SUBCASE("weight flipped on a zero-weight hit") {
    for (auto& hit : report.method_hits) {
      if (hit.effective_weight == 0) {
        hit.effective_weight = hit.raw_weight;
        hit.permission_satisfied = true;
      }
    }
    CHECK_FALSE(verify_report(report, dataset).empty());
  }
  SUBCASE("consumed permission without a consuming method") {
    for (auto& permission : report.permission_hits) {
      permission.consumed_by_method = true;
    }
    CHECK_FALSE(verify_report(report, dataset).empty());
  }
}

TEST_CASE("reports carry the dataset fingerprint") {
  AppBundle bundle = AppBundle::open(kSource / "fixtures" / "empty");
  MappingDataset dataset = seed();
  PrivacyReport report = analyze_bundle(bundle, dataset);
  CHECK(report.dataset_fingerprint == dataset.fingerprint);
  CHECK(report.dataset_fingerprint == dataset_fingerprint_of_files(kSeedDir));
}

TEST_CASE("AppBundle::open validates the layout") {
  pqs_test::TempDir tmp;
  CHECK_THROWS_AS(AppBundle::open(tmp.path() / "nowhere"), BundleError);

  util::ensure_dir(tmp.path() / "only-sources" / "sources");
  CHECK_THROWS_AS(AppBundle::open(tmp.path() / "only-sources"), BundleError);

  util::write_file_atomic(
      tmp.path() / "full" / "resources" / "AndroidManifest.xml",
      "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\" "
      "package=\"com.ok.app\" android:versionCode=\"3\"/>");
  util::ensure_dir(tmp.path() / "full" / "sources");
  AppBundle bundle = AppBundle::open(tmp.path() / "full");
  CHECK(bundle.package_name == "com.ok.app");
  CHECK(bundle.version_code == 3);

  AppBundle::Overrides overrides;
  overrides.package_name = "com.other.app";
  overrides.version_code = 9;
  AppBundle overridden = AppBundle::open(tmp.path() / "full", overrides);
  CHECK(overridden.package_name == "com.other.app");
  CHECK(overridden.version_code == 9);

  util::write_file_atomic(
      tmp.path() / "badpkg" / "resources" / "AndroidManifest.xml",
      "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\" "
      "package=\"single\"/>");
  util::ensure_dir(tmp.path() / "badpkg" / "sources");
  CHECK_THROWS_AS(AppBundle::open(tmp.path() / "badpkg"), BundleError);
}

TEST_CASE("is_reverse_domain") {
  CHECK(is_reverse_domain("com.example.app"));
  CHECK(is_reverse_domain("a.b"));
  CHECK_FALSE(is_reverse_domain("single"));
  CHECK_FALSE(is_reverse_domain("a..b"));
  CHECK_FALSE(is_reverse_domain(".a.b"));
  CHECK_FALSE(is_reverse_domain("a.b."));
  CHECK_FALSE(is_reverse_domain("a.1b"));
  CHECK_FALSE(is_reverse_domain(""));
}

TEST_CASE("decompile_apk drives the external hook") {
  pqs_test::TempDir tmp;
  fs::path apk = tmp.path() / "app.apk";
  util::write_file_atomic(apk, "not really an apk");

  SUBCASE("missing decompiler binary") {
    DecompilerCommand command;
    command.executable = "definitely-not-installed-decompiler";
    CHECK_THROWS_AS(decompile_apk(apk, tmp.path() / "out", command),
                    DecompilerMissing);
  }
  SUBCASE("missing apk") {
    DecompilerCommand command;
    CHECK_THROWS_AS(
        decompile_apk(tmp.path() / "nope.apk", tmp.path() / "out", command),
        FileMissing);
  }
  SUBCASE("decompiler exits nonzero") {
    fs::path script = tmp.path() / "failing.sh";
    util::write_file_atomic(script, "#!/bin/sh\nexit 3\n");
    fs::permissions(script, fs::perms::owner_all);
    DecompilerCommand command{script.string(), {"{apk}", "{out}"}};
    try {
      decompile_apk(apk, tmp.path() / "out", command);
      FAIL("expected DecompilerFailed");
    } catch (const DecompilerFailed& e) {
      CHECK(e.exit_code() == 3);
    }
  }
  SUBCASE("archive that yields no sources directory") {
    fs::path script = tmp.path() / "partial.sh";
    util::write_file_atomic(script,
                            "#!/bin/sh\n"
                            "mkdir -p \"$2/resources\"\n"
                            "printf '<manifest/>' > \"$2/resources/AndroidManifest.xml\"\n");
    fs::permissions(script, fs::perms::owner_all);
    DecompilerCommand command{script.string(), {"{apk}", "{out}"}};
    try {
      decompile_apk(apk, tmp.path() / "out", command);
      FAIL("expected BundleIncomplete");
    } catch (const BundleIncomplete& e) {
      CHECK(e.missing_part() == "sources/");
    }
  }
  SUBCASE("working decompiler yields an openable bundle") {
    fs::path script = tmp.path() / "ok.sh";
    util::write_file_atomic(
        script,
        "#!/bin/sh\n"
        "mkdir -p \"$2/resources\" \"$2/sources/com/x\"\n"
        "cat > \"$2/resources/AndroidManifest.xml\" <<'XML'\n"
        "<manifest xmlns:android=\"http://schemas.android.com/apk/res/android\" "
        "package=\"com.x.y\" android:versionCode=\"2\"/>\n"
        "XML\n"
        "printf 'class A {}' > \"$2/sources/com/x/A.java\"\n");
    fs::permissions(script, fs::perms::owner_all);
    DecompilerCommand command{script.string(), {"{apk}", "{out}"}};
    AppBundle bundle = decompile_apk(apk, tmp.path() / "out", command);
    CHECK(bundle.package_name == "com.x.y");
    CHECK(bundle.version_code == 2);
  }
}

TEST_CASE("manifest failures surface with their own types") {
  pqs_test::TempDir tmp;
  util::write_file_atomic(tmp.path() / "resources" / "AndroidManifest.xml",
                          "<manifest package=\"com.bad.xml\"><unclosed>");
  util::write_file_atomic(tmp.path() / "sources" / "A.java", "class A {}");
  AppBundle::Overrides overrides;
  overrides.package_name = "com.bad.xml";
  CHECK_THROWS_AS(AppBundle::open(tmp.path(), overrides), MalformedXml);
}

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

#ifndef PQS_PIPELINE_HPP
#define PQS_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "pqs/bundle.hpp"
#include "pqs/report.hpp"

namespace pqs {

// One-shot analysis of a decompiled bundle: manifest extraction, source scan,
// permission cross-check, scoring. Deterministic for identical inputs.
// Throws AnalysisFailure wrapping the failing stage.
PrivacyReport analyze_bundle(const AppBundle& bundle,
                             const MappingDataset& dataset,
                             const ScanOptions& options = {});

// External decompiler hook. "{apk}" and "{out}" in args are replaced by the
// archive path and the output directory.
struct DecompilerCommand {
  std::string executable = "jadx";
  std::vector<std::string> args = {"-d", "{out}", "{apk}"};
};

// Runs the decompiler and validates the resulting layout.
// Throws DecompilerMissing, DecompilerFailed, BundleIncomplete.
AppBundle decompile_apk(const std::filesystem::path& apk_path,
                        const std::filesystem::path& workdir,
                        const DecompilerCommand& decompiler,
                        const AppBundle::Overrides& overrides = {});

}  // namespace pqs

#endif  // PQS_PIPELINE_HPP

// Copyright 2026 The cvgrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace cvgrav::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitGuard = 3;

const char* toolkit_version();

/// Provenance written next to every command's outputs.
struct RunManifest {
  struct Output {
    std::string path;    // relative to the output directory
    std::string parser;  // "wigner_csv", "table_csv" or "json"
    std::string digest;  // FNV-1a of the file bytes
  };

  std::string command;
  std::string config_digest;
  std::string version = toolkit_version();
  std::vector<Output> outputs;
  double wall_clock_seconds = 0.0;

  nlohmann::json to_json() const;
};

/// Re-reads every listed output with its declared parser; throws Error if a
/// file is missing or does not parse.
void verify_outputs(const RunManifest& manifest, const std::filesystem::path& out_dir);

Schema wigner_schema();
Schema overlap_scan_schema();
Schema entanglement_schema();

// Each command takes a schema-complete config (defaults applied) and returns
// its manifest. Errors surface as exceptions; run() maps them to exit codes.
RunManifest cmd_wigner(const Config& config, std::ostream& log);
RunManifest cmd_overlap_scan(const Config& config, std::ostream& log);
RunManifest cmd_entanglement(const Config& config, std::ostream& log);

/// Full command-line entry point: wigner, overlap-scan, entanglement and
/// selfcheck. Exit codes: 0 success, 1 failed checks or internal error,
/// 2 config or input errors, 3 guard violations.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cvgrav::cli

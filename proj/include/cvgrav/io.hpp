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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvgrav/phase_space.hpp"

// Flat-file formats. Numbers are written in the shortest decimal form that
// parses back to the same double, so identical inputs give identical bytes.
//
// CSV files start with zero or more metadata lines "# key: value", then a
// comma-separated header, then data rows.
//
// Wigner CSV: header "x_min,x_max,p_min,p_max,nx,np", one row with those
// values, a line "values", then nx rows of np values (row i is X = x(i)).
namespace cvgrav::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double value);
/// Throws InvalidInput unless the whole string is one number.
double parse_double(std::string_view text);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a64(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
/// Truncates and writes; throws Error on failure.
void write_text(const std::filesystem::path& path, std::string_view text);

struct Table {
  Metadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws InvalidInput if absent.
  std::size_t column(std::string_view name) const;
};

std::string table_to_csv(const Table& table);
Table table_from_csv(std::string_view text);
void write_table_csv(const std::filesystem::path& path, const Table& table);
Table read_table_csv(const std::filesystem::path& path);

std::string wigner_to_csv(const phase_space::WignerGrid& grid, const Metadata& metadata = {});
phase_space::WignerGrid wigner_from_csv(std::string_view text, Metadata* metadata = nullptr);
void write_wigner_csv(const std::filesystem::path& path, const phase_space::WignerGrid& grid,
                      const Metadata& metadata = {});
phase_space::WignerGrid read_wigner_csv(const std::filesystem::path& path,
                                        Metadata* metadata = nullptr);

nlohmann::json grid_spec_to_json(const phase_space::GridSpec& spec);
phase_space::GridSpec grid_spec_from_json(const nlohmann::json& j);
nlohmann::json wigner_to_json(const phase_space::WignerGrid& grid);
phase_space::WignerGrid wigner_from_json(const nlohmann::json& j);

/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace cvgrav::io

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

#include <complex>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cvgrav/error.hpp"

// Scenario files use a small TOML-like grammar:
//
//   file     := { line }
//   line     := [ section | pair ] [ comment ] newline
//   section  := "[" name "]"
//   pair     := name "=" value
//   value    := number | string | "true" | "false" | list
//   list     := "[" [ number { "," number } [ "," ] ] "]"
//   string   := '"' { char | '\"' | '\\' } '"'
//   comment  := "#" { any }
//   name     := letter-or-underscore { letter | digit | "_" }
//
// Pairs before the first section header are an error. Every key must be
// declared by the command's schema; errors carry line:column positions.
namespace cvgrav::cli {

class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

enum class ValueType { Number, Integer, String, Bool, NumberList };

const char* type_name(ValueType type);

struct Value {
  std::variant<double, std::string, bool, std::vector<double>> data;
  int line = 0;  // 0 for values that did not come from a file
  int column = 0;

  std::string position() const;
};

struct KeySpec {
  std::string key;
  ValueType type;
  Value default_value;
  std::string help;
};

struct SectionSchema {
  std::string name;
  std::vector<KeySpec> keys;
};

using Schema = std::vector<SectionSchema>;

class Config {
 public:
  static Config parse(std::string_view text, std::string source = "config");
  /// Throws ConfigError if the file cannot be read.
  static Config load(const std::filesystem::path& path);

  const Value* find(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, Value value);
  /// Records where a section header appeared, so empty unknown sections are
  /// reported too.
  void declare_section(const std::string& section, int line, int column);

  /// Checks sections, keys and value types against the schema, then fills
  /// in defaults for absent keys.
  void apply_schema(const Schema& schema);

  double number(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key) const;
  const std::string& string(const std::string& section, const std::string& key) const;
  bool boolean(const std::string& section, const std::string& key) const;
  const std::vector<double>& list(const std::string& section, const std::string& key) const;

  /// Sorted "[section]\nkey = value" text with shortest round-trip numbers;
  /// independent of layout, comments and key order.
  std::string canonical() const;
  /// FNV-1a digest of canonical().
  std::string digest() const;

  const std::string& source() const { return source_; }

 private:
  const Value& require(const std::string& section, const std::string& key) const;

  std::string source_ = "config";
  std::map<std::string, std::map<std::string, Value>> sections_;
  std::map<std::string, std::pair<int, int>> headers_;
};

/// Parses command-line text for a key of the given type. Strings are taken
/// verbatim; lists accept "1,2,3" with or without brackets.
Value parse_flag_value(std::string_view text, ValueType type, const std::string& flag);

/// "a+bi", "a-bi", "bi", "a" (whitespace ignored).
std::optional<std::complex<double>> parse_complex(std::string_view text);

}  // namespace cvgrav::cli

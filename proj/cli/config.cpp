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
#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "cvgrav/io.hpp"

namespace cvgrav::cli {
namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  Config run(Config config) {
    std::string section;
    while (pos_ < text_.size()) {
      skip_blank();
      if (at_end_of_line()) {
        finish_line();
        continue;
      }
      if (peek() == '[') {
        const int header_col = column();
        section = parse_section();
        config.declare_section(section, line_, header_col);
      } else if (is_name_start(peek())) {
        const int key_line = line_;
        const int key_col = column();
        const std::string key = parse_name();
        if (section.empty()) fail(key_line, key_col, "key '" + key + "' appears before any [section]");
        skip_blank();
        if (peek() != '=') fail("expected '=' after key '" + key + "'");
        advance();
        skip_blank();
        Value value = parse_value();
        if (config.find(section, key)) {
          fail(key_line, key_col, "duplicate key '" + key + "' in [" + section + "]");
        }
        config.set(section, key, std::move(value));
      } else {
        fail(std::string("unexpected character '") + peek() + "'");
      }
      skip_blank();
      if (!at_end_of_line()) fail("unexpected trailing text");
      finish_line();
    }
    return config;
  }

 private:
  static bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\n'; }
  void advance() { ++pos_; }
  int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

  [[noreturn]] void fail(const std::string& message) const { fail(line_, column(), message); }
  [[noreturn]] void fail(int line, int col, const std::string& message) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                      message);
  }

  void skip_blank() {
    while (peek() == ' ' || peek() == '\t' || peek() == '\r') advance();
  }

  bool at_end_of_line() const { return peek() == '\n' || peek() == '#'; }

  void finish_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    if (pos_ < text_.size()) advance();
    ++line_;
    line_start_ = pos_;
  }

  std::string parse_name() {
    const std::size_t start = pos_;
    while (is_name_char(peek())) advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string parse_section() {
    advance();  // '['
    skip_blank();
    if (!is_name_start(peek())) fail("expected a section name");
    std::string name = parse_name();
    skip_blank();
    if (peek() != ']') fail("expected ']' to close the section header");
    advance();
    return name;
  }

  Value located(int line, int col) const {
    Value v;
    v.line = line;
    v.column = col;
    return v;
  }

  double parse_number() {
    const int col = column();
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == '-' ||
           peek() == '+') {
      advance();
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    try {
      return io::parse_double(token);
    } catch (const InvalidInput&) {
      fail(line_, col, "invalid number '" + std::string(token) + "'");
    }
  }

  Value parse_value() {
    Value v = located(line_, column());
    const char c = peek();
    if (c == '"') {
      advance();
      std::string s;
      while (peek() != '"') {
        if (peek() == '\n') fail(v.line, v.column, "unterminated string");
        if (peek() == '\\') {
          advance();
          if (peek() != '"' && peek() != '\\') fail("unsupported escape sequence");
        }
        s += peek();
        advance();
      }
      advance();
      v.data = std::move(s);
    } else if (c == '[') {
      advance();
      std::vector<double> items;
      skip_blank();
      while (peek() != ']') {
        if (peek() == '\n') fail(v.line, v.column, "unterminated list");
        items.push_back(parse_number());
        skip_blank();
        if (peek() == ',') {
          advance();
          skip_blank();
        } else if (peek() != ']') {
          fail("expected ',' or ']' in list");
        }
      }
      advance();
      v.data = std::move(items);
    } else if (is_name_start(c)) {
      const std::string word = parse_name();
      if (word == "true") {
        v.data = true;
      } else if (word == "false") {
        v.data = false;
      } else if (word == "inf" || word == "nan") {
        fail(v.line, v.column, "non-finite numbers are not allowed");
      } else {
        fail(v.line, v.column, "unquoted text '" + word + "'; strings need double quotes");
      }
    } else {
      const double x = parse_number();
      if (!std::isfinite(x)) fail(v.line, v.column, "non-finite numbers are not allowed");
      v.data = x;
    }
    return v;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

bool matches(const Value& v, ValueType type) {
  switch (type) {
    case ValueType::Number:
      return std::holds_alternative<double>(v.data);
    case ValueType::Integer:
      return std::holds_alternative<double>(v.data) &&
             std::get<double>(v.data) == std::floor(std::get<double>(v.data)) &&
             std::abs(std::get<double>(v.data)) < 1e9;
    case ValueType::String:
      return std::holds_alternative<std::string>(v.data);
    case ValueType::Bool:
      return std::holds_alternative<bool>(v.data);
    case ValueType::NumberList:
      return std::holds_alternative<std::vector<double>>(v.data);
  }
  return false;
}

std::string render(const Value& v) {
  if (const auto* x = std::get_if<double>(&v.data)) return io::format_double(*x);
  if (const auto* b = std::get_if<bool>(&v.data)) return *b ? "true" : "false";
  if (const auto* s = std::get_if<std::string>(&v.data)) {
    std::string out = "\"";
    for (char c : *s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + '"';
  }
  const auto& items = std::get<std::vector<double>>(v.data);
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += io::format_double(items[i]);
  }
  return out + "]";
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

const char* type_name(ValueType type) {
  switch (type) {
    case ValueType::Number:
      return "number";
    case ValueType::Integer:
      return "integer";
    case ValueType::String:
      return "string";
    case ValueType::Bool:
      return "boolean";
    case ValueType::NumberList:
      return "list of numbers";
  }
  return "value";
}

std::string Value::position() const {
  return line > 0 ? std::to_string(line) + ":" + std::to_string(column) : "command line";
}

Config Config::parse(std::string_view text, std::string source) {
  Config config;
  config.source_ = source;
  return Parser(text, std::move(source)).run(std::move(config));
}

Config Config::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse(text, path.string());
}

const Value* Config::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

void Config::set(const std::string& section, const std::string& key, Value value) {
  sections_[section][key] = std::move(value);
}

void Config::declare_section(const std::string& section, int line, int column) {
  headers_.emplace(section, std::make_pair(line, column));
}

void Config::apply_schema(const Schema& schema) {
  for (const auto& [section, pos] : headers_) {
    if (std::none_of(schema.begin(), schema.end(),
                     [&](const SectionSchema& x) { return x.name == section; })) {
      throw ConfigError(source_ + ":" + std::to_string(pos.first) + ":" +
                        std::to_string(pos.second) + ": unknown section [" + section + "]");
    }
  }
  for (const auto& [section, pairs] : sections_) {
    const auto s = std::find_if(schema.begin(), schema.end(),
                                [&](const SectionSchema& x) { return x.name == section; });
    for (const auto& [key, value] : pairs) {
      const std::string where = source_ + ":" + value.position();
      if (s == schema.end()) {
        throw ConfigError(where + ": unknown section [" + section + "]");
      }
      const auto k = std::find_if(s->keys.begin(), s->keys.end(),
                                  [&](const KeySpec& x) { return x.key == key; });
      if (k == s->keys.end()) {
        throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
      }
      if (!matches(value, k->type)) {
        throw ConfigError(where + ": key '" + key + "' expects a " + type_name(k->type));
      }
    }
  }
  for (const auto& s : schema) {
    for (const auto& k : s.keys) {
      if (!find(s.name, k.key)) set(s.name, k.key, k.default_value);
    }
  }
}

const Value& Config::require(const std::string& section, const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) throw ConfigError(source_ + ": missing key '" + key + "' in [" + section + "]");
  return *v;
}

double Config::number(const std::string& section, const std::string& key) const {
  return std::get<double>(require(section, key).data);
}

int Config::integer(const std::string& section, const std::string& key) const {
  return static_cast<int>(std::get<double>(require(section, key).data));
}

const std::string& Config::string(const std::string& section, const std::string& key) const {
  return std::get<std::string>(require(section, key).data);
}

bool Config::boolean(const std::string& section, const std::string& key) const {
  return std::get<bool>(require(section, key).data);
}

const std::vector<double>& Config::list(const std::string& section, const std::string& key) const {
  return std::get<std::vector<double>>(require(section, key).data);
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [section, pairs] : sections_) {
    out += "[" + section + "]\n";
    for (const auto& [key, value] : pairs) out += key + " = " + render(value) + "\n";
  }
  return out;
}

std::string Config::digest() const { return io::fnv1a64(canonical()); }

Value parse_flag_value(std::string_view text, ValueType type, const std::string& flag) {
  Value v;
  const std::string_view body = strip(text);
  try {
    switch (type) {
      case ValueType::String:
        v.data = std::string(text);
        return v;
      case ValueType::Bool:
        if (body == "true" || body == "1") {
          v.data = true;
        } else if (body == "false" || body == "0") {
          v.data = false;
        } else {
          throw InvalidInput("expected true or false");
        }
        return v;
      case ValueType::Number:
      case ValueType::Integer: {
        const double x = io::parse_double(body);
        if (!std::isfinite(x)) throw InvalidInput("non-finite number");
        v.data = x;
        break;
      }
      case ValueType::NumberList: {
        std::string_view inner = body;
        if (!inner.empty() && inner.front() == '[' && inner.back() == ']') {
          inner = strip(inner.substr(1, inner.size() - 2));
        }
        std::vector<double> items;
        while (!inner.empty()) {
          const auto comma = inner.find(',');
          const std::string_view item = strip(inner.substr(0, comma));
          if (!item.empty()) items.push_back(io::parse_double(item));
          if (comma == std::string_view::npos) break;
          inner.remove_prefix(comma + 1);
        }
        v.data = std::move(items);
        return v;
      }
    }
  } catch (const InvalidInput& e) {
    throw ConfigError("--" + flag + ": " + e.what());
  }
  if (!matches(v, type)) throw ConfigError("--" + flag + ": expects a " + std::string(type_name(type)));
  return v;
}

std::optional<std::complex<double>> parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) return std::nullopt;
  try {
    if (s.back() != 'i' && s.back() != 'j') return std::complex<double>(io::parse_double(s), 0.0);
    s.pop_back();
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
      if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    const auto imag_of = [](std::string part) {
      if (part.empty() || part == "+") return 1.0;
      if (part == "-") return -1.0;
      return io::parse_double(part);
    };
    if (split == std::string::npos) return std::complex<double>(0.0, imag_of(s));
    return std::complex<double>(io::parse_double(s.substr(0, split)), imag_of(s.substr(split)));
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

}  // namespace cvgrav::cli

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
#include "cvgrav/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "cvgrav/error.hpp"

namespace cvgrav::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Consumes leading "# key: value" lines; returns the index of the first other line.
std::size_t read_metadata(const std::vector<std::string_view>& lines, Metadata* metadata) {
  std::size_t i = 0;
  for (; i < lines.size() && !lines[i].empty() && lines[i][0] == '#'; ++i) {
    if (!metadata) continue;
    const std::string_view body = trim(lines[i].substr(1));
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) {
      metadata->emplace_back(std::string(body), "");
    } else {
      metadata->emplace_back(std::string(trim(body.substr(0, colon))),
                             std::string(trim(body.substr(colon + 1))));
    }
  }
  return i;
}

void write_metadata(std::string& out, const Metadata& metadata) {
  for (const auto& [key, value] : metadata) {
    out += "# ";
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  }
}

std::vector<double> parse_row(std::string_view line, std::size_t line_no, std::size_t width) {
  std::vector<double> row;
  for (std::string_view field : split(line, ',')) {
    try {
      row.push_back(parse_double(field));
    } catch (const InvalidInput& e) {
      throw InvalidInput("csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (width != 0 && row.size() != width) {
    throw InvalidInput("csv line " + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " fields, found " + std::to_string(row.size()));
  }
  return row;
}

int as_count(double v, const char* what) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e9) {
    throw InvalidInput(std::string("wigner csv: ") + what + " must be a nonnegative integer");
  }
  return static_cast<int>(v);
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[hash & 0xF];
    hash >>= 4;
  }
  return out;
}

std::string file_digest(const std::filesystem::path& path) { return fnv1a64(read_text(path)); }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for " + path.string());
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InvalidInput("table has no column '" + std::string(name) + "'");
}

std::string table_to_csv(const Table& table) {
  std::string out;
  write_metadata(out, table.metadata);
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw InvalidInput("table row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table table_from_csv(std::string_view text) {
  const auto lines = lines_of(text);
  Table table;
  std::size_t i = read_metadata(lines, &table.metadata);
  if (i >= lines.size()) throw InvalidInput("csv: missing header line");
  for (std::string_view name : split(lines[i], ',')) table.columns.emplace_back(name);
  for (++i; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    table.rows.push_back(parse_row(lines[i], i + 1, table.columns.size()));
  }
  return table;
}

void write_table_csv(const std::filesystem::path& path, const Table& table) {
  write_text(path, table_to_csv(table));
}

Table read_table_csv(const std::filesystem::path& path) { return table_from_csv(read_text(path)); }

std::string wigner_to_csv(const phase_space::WignerGrid& grid, const Metadata& metadata) {
  const auto& s = grid.spec;
  std::string out;
  write_metadata(out, metadata);
  out += "x_min,x_max,p_min,p_max,nx,np\n";
  out += format_double(s.x_min) + ',' + format_double(s.x_max) + ',' + format_double(s.p_min) +
         ',' + format_double(s.p_max) + ',' + std::to_string(s.nx) + ',' + std::to_string(s.np) +
         '\n';
  out += "values\n";
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      if (j) out += ',';
      out += format_double(grid.values(i, j));
    }
    out += '\n';
  }
  return out;
}

phase_space::WignerGrid wigner_from_csv(std::string_view text, Metadata* metadata) {
  const auto lines = lines_of(text);
  std::size_t i = read_metadata(lines, metadata);
  if (i + 2 >= lines.size() || trim(lines[i]) != "x_min,x_max,p_min,p_max,nx,np") {
    throw InvalidInput("wigner csv: missing grid header");
  }
  const auto head = parse_row(lines[i + 1], i + 2, 6);
  phase_space::GridSpec spec;
  spec.x_min = head[0];
  spec.x_max = head[1];
  spec.p_min = head[2];
  spec.p_max = head[3];
  spec.nx = as_count(head[4], "nx");
  spec.np = as_count(head[5], "np");
  spec.validate();
  if (trim(lines[i + 2]) != "values") throw InvalidInput("wigner csv: missing 'values' marker");
  phase_space::WignerGrid grid{spec, Eigen::MatrixXd(spec.nx, spec.np)};
  std::size_t line = i + 3;
  for (int row = 0; row < spec.nx; ++row, ++line) {
    if (line >= lines.size()) throw InvalidInput("wigner csv: too few value rows");
    const auto values = parse_row(lines[line], line + 1, static_cast<std::size_t>(spec.np));
    for (int j = 0; j < spec.np; ++j) grid.values(row, j) = values[j];
  }
  for (; line < lines.size(); ++line) {
    if (!trim(lines[line]).empty()) throw InvalidInput("wigner csv: trailing data");
  }
  return grid;
}

void write_wigner_csv(const std::filesystem::path& path, const phase_space::WignerGrid& grid,
                      const Metadata& metadata) {
  write_text(path, wigner_to_csv(grid, metadata));
}

phase_space::WignerGrid read_wigner_csv(const std::filesystem::path& path, Metadata* metadata) {
  return wigner_from_csv(read_text(path), metadata);
}

nlohmann::json grid_spec_to_json(const phase_space::GridSpec& spec) {
  return {{"x_min", spec.x_min}, {"x_max", spec.x_max}, {"p_min", spec.p_min},
          {"p_max", spec.p_max}, {"nx", spec.nx},       {"np", spec.np}};
}

phase_space::GridSpec grid_spec_from_json(const nlohmann::json& j) {
  try {
    phase_space::GridSpec spec;
    spec.x_min = j.at("x_min").get<double>();
    spec.x_max = j.at("x_max").get<double>();
    spec.p_min = j.at("p_min").get<double>();
    spec.p_max = j.at("p_max").get<double>();
    spec.nx = j.at("nx").get<int>();
    spec.np = j.at("np").get<int>();
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("grid json: ") + e.what());
  }
}

nlohmann::json wigner_to_json(const phase_space::WignerGrid& grid) {
  nlohmann::json values = nlohmann::json::array();
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) row.push_back(grid.values(i, j));
    values.push_back(std::move(row));
  }
  nlohmann::json j = grid_spec_to_json(grid.spec);
  j["values"] = std::move(values);
  return j;
}

phase_space::WignerGrid wigner_from_json(const nlohmann::json& j) {
  const phase_space::GridSpec spec = grid_spec_from_json(j);
  phase_space::WignerGrid grid{spec, Eigen::MatrixXd(spec.nx, spec.np)};
  try {
    const auto& values = j.at("values");
    if (values.size() != static_cast<std::size_t>(spec.nx)) {
      throw InvalidInput("wigner json: row count does not match nx");
    }
    for (int i = 0; i < spec.nx; ++i) {
      if (values[i].size() != static_cast<std::size_t>(spec.np)) {
        throw InvalidInput("wigner json: column count does not match np");
      }
      for (int k = 0; k < spec.np; ++k) grid.values(i, k) = values[i][k].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("wigner json: ") + e.what());
  }
  return grid;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

}  // namespace cvgrav::io

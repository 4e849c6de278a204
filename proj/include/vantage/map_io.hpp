// Copyright 2026 The Vantage Authors
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

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vantage/error.hpp"
#include "vantage/grid.hpp"

namespace vantage
{

/// Shortest decimal that parses back to exactly `value`.
inline std::string format_double(double value)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) {
    throw Error(ErrorCode::InvalidArgument, "cannot format number");
  }
  return std::string(buf, end);
}

namespace detail
{

inline std::vector<std::string_view> split_lines(std::string_view text)
{
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

template<typename T>
bool parse_number(std::string_view token, T & out)
{
  if (token.empty()) {
    return false;
  }
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace detail

/// Parses the text map format:
///   line 1      "width height resolution"
///   lines 2..   `height` rows of `width` characters, '0' free, '1' occupied,
///               row 0 first, LF line endings.
inline GridMap load_map(std::string_view text)
{
  const auto lines = detail::split_lines(text);
  if (lines.empty()) {
    throw Error(ErrorCode::MalformedHeader, "empty map file");
  }

  std::vector<std::string_view> tokens;
  {
    std::string_view header = lines.front();
    std::size_t pos = 0;
    while (pos <= header.size()) {
      const std::size_t sp = header.find(' ', pos);
      const std::size_t end = sp == std::string_view::npos ? header.size() : sp;
      tokens.push_back(header.substr(pos, end - pos));
      if (sp == std::string_view::npos) {
        break;
      }
      pos = sp + 1;
    }
  }
  int width = 0;
  int height = 0;
  double resolution = 0.0;
  if (tokens.size() != 3 || !detail::parse_number(tokens[0], width) ||
    !detail::parse_number(tokens[1], height) || !detail::parse_number(tokens[2], resolution) ||
    width < 1 || height < 1 || !(resolution > 0.0) || !std::isfinite(resolution))
  {
    throw Error(ErrorCode::MalformedHeader, "expected 'width height resolution'");
  }

  const std::size_t rows = lines.size() - 1;
  if (rows != static_cast<std::size_t>(height)) {
    throw Error(
      ErrorCode::DimensionMismatch,
      "header declares " + std::to_string(height) + " rows, file has " + std::to_string(rows));
  }

  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string_view row = lines[r];
    if (row.size() != static_cast<std::size_t>(width)) {
      throw Error(
        ErrorCode::DimensionMismatch,
        "row " + std::to_string(r - 1) + " has " + std::to_string(row.size()) +
        " cells, expected " + std::to_string(width));
    }
    for (char ch : row) {
      if (ch == '0') {
        cells.push_back(Cell::Free);
      } else if (ch == '1') {
        cells.push_back(Cell::Occupied);
      } else {
        throw Error(
          ErrorCode::InvalidCellSymbol,
          "row " + std::to_string(r - 1) + " contains invalid symbol");
      }
    }
  }
  return GridMap(width, height, resolution, std::move(cells));
}

/// Canonical serialization: save_map(load_map(b)) == b for every b produced here.
inline std::string save_map(const GridMap & map)
{
  std::string out = std::to_string(map.width()) + " " + std::to_string(map.height()) + " " +
    format_double(map.resolution()) + "\n";
  out.reserve(out.size() + map.size() + static_cast<std::size_t>(map.height()));
  for (int row = 0; row < map.height(); ++row) {
    for (int col = 0; col < map.width(); ++col) {
      out.push_back(map.free({col, row}) ? '0' : '1');
    }
    out.push_back('\n');
  }
  return out;
}

inline std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path & path, std::string_view content)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed for " + path.string());
  }
}

inline GridMap load_map_file(const std::filesystem::path & path)
{
  return load_map(read_file(path));
}

}  // namespace vantage

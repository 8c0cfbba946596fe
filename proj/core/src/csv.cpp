/*
 * Copyright 2026 The polygate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "polygate/csv.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "polygate/errors.hpp"

namespace polygate {

namespace {

// Pulls one record off the stream; returns false when the input is
// exhausted before any character of a new record is seen.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int first = in.peek();
  if (first == std::char_traits<char>::eof()) return false;

  std::string field;
  bool quoted = false;
  bool any = false;
  for (int ci = in.get(); ; ci = in.get()) {
    if (ci == std::char_traits<char>::eof()) {
      if (!any && field.empty() && fields.empty()) return false;
      fields.push_back(std::move(field));
      return true;
    }
    char c = static_cast<char>(ci);
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty()) {
          quoted = true;
        } else {
          field.push_back(c);  // stray quote mid-field, keep it verbatim
        }
        break;
      case ',':
        fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        if (in.peek() == '\n') in.get();
        [[fallthrough]];
      case '\n':
        fields.push_back(std::move(field));
        return true;
      default:
        field.push_back(c);
    }
  }
}

}  // namespace

CsvTable read_csv(std::istream& in, bool has_header) {
  CsvTable table;
  std::vector<std::string> record;
  if (has_header) {
    if (!read_record(in, record)) return table;
    table.header = std::move(record);
  }
  while (read_record(in, record)) {
    table.rows.push_back(std::move(record));
  }
  return table;
}

CsvTable read_csv_file(const std::string& path, bool has_header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open CSV file: " + path);
  return read_csv(in, has_header);
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace polygate

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

#include "polygate/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "polygate/csv.hpp"
#include "polygate/errors.hpp"
#include "bundled_data.hpp"

namespace polygate::ingest {

namespace {

std::string fold_text(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char raw : s) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

}  // namespace

const SchemaProfile& ProfileSet::at(const std::string& name) const {
  auto it = profiles.find(name);
  if (it == profiles.end()) throw InputError("unknown schema profile: " + name);
  return it->second;
}

ProfileSet ProfileSet::parse(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("profile file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("profile file must map profile names to objects");

  ProfileSet out;
  for (const auto& [name, body] : j.items()) {
    SchemaProfile p;
    p.name = name;
    const auto order = body.value("date_order", "ymd");
    if (order == "ymd") {
      p.date_order = DateOrder::Ymd;
    } else if (order == "dmy") {
      p.date_order = DateOrder::Dmy;
    } else {
      throw InputError("profile '" + name + "': date_order must be ymd or dmy");
    }
    if (!body.contains("columns") || !body["columns"].is_object()) {
      throw InputError("profile '" + name + "' has no columns object");
    }
    for (const auto& [field, candidates] : body["columns"].items()) {
      std::vector<std::string> names;
      for (const auto& c : candidates) names.push_back(c.get<std::string>());
      p.columns[field] = std::move(names);
    }
    if (!p.columns.count("id") || !p.columns.count("date_confirmed")) {
      throw InputError("profile '" + name + "' must map at least id and date_confirmed");
    }
    out.profiles[name] = std::move(p);
  }
  if (out.profiles.empty()) throw InputError("profile file defines no profiles");
  return out;
}

ProfileSet ProfileSet::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open profile file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ProfileSet& ProfileSet::bundled() {
  static const ProfileSet kBundled = parse(data::bundled_profiles_text());
  return kBundled;
}

Status OutcomeMap::normalize(std::string_view outcome_text) const {
  const std::string key = fold_text(outcome_text);
  if (key.empty()) return Status::Active;
  auto it = entries.find(key);
  return it == entries.end() ? Status::Active : it->second;
}

OutcomeMap OutcomeMap::parse(std::string_view text) {
  OutcomeMap out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw InputError("outcome map line " + std::to_string(line_no) + ": expected two "
                       "tab-separated fields");
    }
    std::string key = fold_text(line.substr(0, tab));
    auto status = status_from_name(fold_text(line.substr(tab + 1)));
    if (key.empty() || !status) {
      throw InputError("outcome map line " + std::to_string(line_no) + ": bad entry");
    }
    out.entries[key] = *status;
  }
  if (out.entries.empty()) throw InputError("outcome map defines no entries");
  return out;
}

OutcomeMap OutcomeMap::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open outcome map: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const OutcomeMap& OutcomeMap::bundled() {
  static const OutcomeMap kBundled = parse(data::bundled_outcome_map_text());
  return kBundled;
}

namespace {

// Index of the first candidate column present in the header, or npos.
std::size_t find_column(const std::vector<std::string>& header,
                        const std::vector<std::string>& candidates) {
  for (const std::string& want : candidates) {
    const std::string folded = fold_text(want);
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (fold_text(header[i]) == folded) return i;
    }
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

ParseReport parse_line_list(std::istream& in, const SchemaProfile& profile,
                            const OutcomeMap& outcomes) {
  const CsvTable csv = read_csv(in);
  if (csv.header.empty()) throw InputError("line list has no header row");

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  auto column_for = [&](const char* field) {
    auto it = profile.columns.find(field);
    if (it == profile.columns.end()) return kNone;
    return find_column(csv.header, it->second);
  };
  const std::size_t id_col = column_for("id");
  const std::size_t date_col = column_for("date_confirmed");
  if (id_col == kNone || date_col == kNone) {
    throw InputError("line list header lacks the mandatory id/date_confirmed columns for "
                     "profile '" + profile.name + "'");
  }
  const std::size_t age_col = column_for("age");
  const std::size_t sex_col = column_for("sex");
  const std::size_t country_col = column_for("country");
  const std::size_t province_col = column_for("province");
  const std::size_t outcome_col = column_for("outcome");
  const std::size_t linked_col = column_for("linked_id");

  ParseReport report;
  report.rows_seen = csv.rows.size();
  auto cell = [](const std::vector<std::string>& row, std::size_t col) -> std::string_view {
    return col == kNone || col >= row.size() ? std::string_view{} : std::string_view(row[col]);
  };

  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const auto& row = csv.rows[i];
    const std::size_t row_no = i + 1;
    CaseRecord r;

    r.id = cell(row, id_col);
    if (r.id.empty()) {
      report.rejections.push_back({row_no, "missing id"});
      continue;
    }
    auto date = parse_date(cell(row, date_col), profile.date_order);
    if (!date) {
      report.rejections.push_back({row_no, "missing or unparseable confirmation date"});
      continue;
    }
    r.date_confirmed = *date;

    const std::string_view age_text = cell(row, age_col);
    if (!age_text.empty()) {
      auto age = parse_age(age_text);
      if (!age) {
        report.rejections.push_back({row_no, "unparseable age"});
        continue;
      }
      if (*age < 0 || *age > 130) {
        report.rejections.push_back({row_no, "age out of range"});
        continue;
      }
      r.age = age;
    }

    auto sex = sex_from_text(cell(row, sex_col));
    r.sex = sex.value_or(Sex::Unknown);
    r.country = cell(row, country_col);
    const std::string_view province = cell(row, province_col);
    if (!province.empty()) r.province = std::string(province);
    r.status = outcomes.normalize(cell(row, outcome_col));
    const std::string_view linked = cell(row, linked_col);
    if (!linked.empty()) r.linked_id = std::string(linked);

    report.records.push_back(std::move(r));
  }
  return report;
}

ParseReport parse_line_list(const std::string& path, const SchemaProfile& profile,
                            const OutcomeMap& outcomes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open line list: " + path);
  return parse_line_list(in, profile, outcomes);
}

std::vector<Block> split_into_blocks(const std::vector<CaseRecord>& records,
                                     std::size_t block_size, int node_count, int replication,
                                     const RecordSizeFn& size_fn) {
  if (block_size == 0) throw InputError("block size must be positive");
  if (node_count <= 0) throw InputError("node count must be positive");
  if (replication <= 0) throw InputError("replication must be positive");
  if (replication > node_count) {
    throw InputError("replication " + std::to_string(replication) + " exceeds node count " +
                     std::to_string(node_count));
  }

  std::vector<Block> blocks;
  auto open_block = [&]() -> Block& {
    Block b;
    b.index = blocks.size();
    b.node = static_cast<int>(b.index % node_count);
    for (int r = 1; r < replication; ++r) {
      b.replica_nodes.push_back((b.node + r) % node_count);
    }
    blocks.push_back(std::move(b));
    return blocks.back();
  };

  for (const CaseRecord& r : records) {
    const std::size_t bytes = size_fn(r);
    // An empty block accepts anything, so a record larger than block_size
    // simply occupies a block of its own.
    if (blocks.empty() ||
        (!blocks.back().records.empty() && blocks.back().byte_size + bytes > block_size)) {
      open_block();
    }
    Block& b = blocks.back();
    b.records.push_back(r);
    b.byte_size += bytes;
  }
  return blocks;
}

}  // namespace polygate::ingest

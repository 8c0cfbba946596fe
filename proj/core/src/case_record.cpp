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

#include "polygate/case_record.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "polygate/csv.hpp"
#include "polygate/value.hpp"

namespace polygate::ingest {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_plain_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double d = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(d)) return std::nullopt;
  return d;
}

}  // namespace

std::string_view sex_name(Sex s) {
  switch (s) {
    case Sex::Male: return "male";
    case Sex::Female: return "female";
    case Sex::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Active: return "active";
    case Status::Recovered: return "recovered";
    case Status::Dead: return "dead";
  }
  return "active";
}

std::optional<Sex> sex_from_text(std::string_view text) {
  std::string lower;
  for (char c : trim(text)) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "m" || lower == "male") return Sex::Male;
  if (lower == "f" || lower == "female") return Sex::Female;
  if (lower.empty() || lower == "unknown" || lower == "u" || lower == "n/a") return Sex::Unknown;
  return std::nullopt;
}

std::optional<Status> status_from_name(std::string_view name) {
  if (name == "active") return Status::Active;
  if (name == "recovered") return Status::Recovered;
  if (name == "dead") return Status::Dead;
  return std::nullopt;
}

std::string record_csv_line(const CaseRecord& r) {
  std::string out;
  auto field = [&](std::string_view text, bool last = false) {
    out += csv_escape(text);
    if (!last) out.push_back(',');
  };
  field(r.id);
  field(r.age ? value_to_string(*r.age) : "");
  field(sex_name(r.sex));
  field(r.country);
  field(r.province.value_or(""));
  field(date_iso(r.date_confirmed));
  field(status_name(r.status));
  field(r.linked_id.value_or(""), /*last=*/true);
  return out;
}

std::size_t record_byte_size(const CaseRecord& r) { return record_csv_line(r).size(); }

std::int32_t days_from_ymd(int year, int month, int day) {
  using namespace std::chrono;
  const sys_days d = year_month_day{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                                    std::chrono::day{unsigned(day)}};
  return static_cast<std::int32_t>(d.time_since_epoch().count());
}

std::string date_iso(std::int32_t days_since_epoch) {
  using namespace std::chrono;
  const year_month_day ymd{sys_days{days{days_since_epoch}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

std::optional<std::int32_t> parse_date(std::string_view text, DateOrder order) {
  text = trim(text);
  char sep = order == DateOrder::Ymd ? '-' : '.';
  int parts[3] = {0, 0, 0};
  int idx = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == sep) {
      if (idx >= 3) return std::nullopt;
      auto piece = text.substr(start, i - start);
      if (piece.empty()) return std::nullopt;
      auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), parts[idx]);
      if (ec != std::errc() || p != piece.data() + piece.size()) return std::nullopt;
      ++idx;
      start = i + 1;
    }
  }
  if (idx != 3) return std::nullopt;
  int year = order == DateOrder::Ymd ? parts[0] : parts[2];
  int month = parts[1];
  int day = order == DateOrder::Ymd ? parts[2] : parts[0];
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                           std::chrono::day{unsigned(day)}};
  if (!ymd.ok()) return std::nullopt;
  return days_from_ymd(year, month, day);
}

std::optional<double> parse_age(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (auto plain = parse_plain_number(text)) return plain;
  // span form "a-b": midpoint
  auto dash = text.find('-');
  if (dash == std::string_view::npos || dash == 0 || dash + 1 >= text.size()) return std::nullopt;
  auto lo = parse_plain_number(trim(text.substr(0, dash)));
  auto hi = parse_plain_number(trim(text.substr(dash + 1)));
  if (!lo || !hi || *hi < *lo) return std::nullopt;
  return (*lo + *hi) / 2.0;
}

}  // namespace polygate::ingest

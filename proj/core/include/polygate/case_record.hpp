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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace polygate::ingest {

enum class Sex { Male, Female, Unknown };
enum class Status { Active, Recovered, Dead };

std::string_view sex_name(Sex s);
std::string_view status_name(Status s);
std::optional<Sex> sex_from_text(std::string_view text);
std::optional<Status> status_from_name(std::string_view name);

// One row of an epidemiological line list after normalization. Dates are
// days since 1970-01-01; a record always carries id and a confirmed date,
// everything else may be absent.
struct CaseRecord {
  std::string id;
  std::optional<double> age;
  Sex sex = Sex::Unknown;
  std::string country;
  std::optional<std::string> province;
  std::int32_t date_confirmed = 0;
  Status status = Status::Active;
  std::optional<std::string> linked_id;

  bool operator==(const CaseRecord&) const = default;
};

// Canonical single-line serialization (CSV field order: id, age, sex,
// country, province, date, status, linked_id). Block packing charges each
// record the length of this line.
std::string record_csv_line(const CaseRecord& r);
std::size_t record_byte_size(const CaseRecord& r);

// Calendar helpers. parse_date accepts "2020-01-30" (ymd) or "30.01.2020"
// (dmy) depending on the order argument and rejects impossible dates.
enum class DateOrder { Ymd, Dmy };
std::int32_t days_from_ymd(int year, int month, int day);
std::string date_iso(std::int32_t days_since_epoch);
std::optional<std::int32_t> parse_date(std::string_view text, DateOrder order);

// Ages in public line lists appear as numbers ("34", "0.5") or spans
// ("50-59"); spans resolve to their midpoint. Returns nullopt for anything
// else.
std::optional<double> parse_age(std::string_view text);

}  // namespace polygate::ingest

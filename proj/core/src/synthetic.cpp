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

#include "polygate/synthetic.hpp"

#include <array>
#include <cstdio>
#include <random>

#include "polygate/errors.hpp"

namespace polygate::bench {

std::vector<ingest::CaseRecord> generate_records(std::size_t count, std::uint64_t seed,
                                                 const StatusMix& mix) {
  using ingest::CaseRecord;
  using ingest::Sex;
  using ingest::Status;
  if (mix.active < 0 || mix.recovered < 0 || mix.dead < 0 ||
      mix.active + mix.recovered + mix.dead <= 0) {
    throw InputError("status mix weights must be non-negative and not all zero");
  }

  static constexpr std::array<const char*, 6> kCountries = {
      "China", "Italy", "Spain", "Egypt", "Brazil", "Japan"};
  static constexpr std::array<const char*, 4> kProvinces = {"North", "South", "East", "West"};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> age_dist(0, 99);
  std::uniform_int_distribution<int> day_dist(0, 359);
  const std::int32_t base_day = ingest::days_from_ymd(2020, 1, 1);
  const double weight_sum = mix.active + mix.recovered + mix.dead;

  std::vector<CaseRecord> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CaseRecord r;
    char id[24];
    std::snprintf(id, sizeof id, "case-%08zu", i);
    r.id = id;

    if (unit(rng) >= 0.10) r.age = static_cast<double>(age_dist(rng));
    const double sex_draw = unit(rng);
    r.sex = sex_draw < 0.48 ? Sex::Female : (sex_draw < 0.96 ? Sex::Male : Sex::Unknown);
    r.country = kCountries[rng() % kCountries.size()];
    if (unit(rng) < 0.7) r.province = kProvinces[rng() % kProvinces.size()];
    r.date_confirmed = base_day + day_dist(rng);

    const double status_draw = unit(rng) * weight_sum;
    r.status = status_draw < mix.active
                   ? Status::Active
                   : (status_draw < mix.active + mix.recovered ? Status::Recovered
                                                               : Status::Dead);
    if (i > 0 && unit(rng) < 0.25) {
      char link[24];
      std::snprintf(link, sizeof link, "case-%08zu",
                    static_cast<std::size_t>(rng() % i));
      r.linked_id = link;
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

Value opt_text(const std::optional<std::string>& v) {
  if (!v) return Null{};
  return *v;
}

}  // namespace

ResultSet records_to_table(const std::vector<ingest::CaseRecord>& records) {
  ResultSet rs;
  rs.columns = {"id",   "age",            "sex",    "country",
                "province", "date_confirmed", "status", "linked_id"};
  rs.rows.reserve(records.size());
  for (const ingest::CaseRecord& r : records) {
    std::vector<Value> row;
    row.reserve(8);
    row.emplace_back(r.id);
    row.emplace_back(r.age ? Value{*r.age} : Value{Null{}});
    row.emplace_back(std::string(ingest::sex_name(r.sex)));
    row.emplace_back(r.country);
    row.emplace_back(opt_text(r.province));
    row.emplace_back(static_cast<std::int64_t>(r.date_confirmed));
    row.emplace_back(std::string(ingest::status_name(r.status)));
    row.emplace_back(opt_text(r.linked_id));
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

std::map<std::string, Value> record_to_cells(const ingest::CaseRecord& record) {
  std::map<std::string, Value> cells;
  cells["id"] = record.id;
  if (record.age) cells["age"] = *record.age;
  cells["sex"] = std::string(ingest::sex_name(record.sex));
  cells["country"] = record.country;
  if (record.province) cells["province"] = *record.province;
  cells["date_confirmed"] = static_cast<std::int64_t>(record.date_confirmed);
  cells["status"] = std::string(ingest::status_name(record.status));
  if (record.linked_id) cells["linked_id"] = *record.linked_id;
  return cells;
}

engine::Document record_to_document(const ingest::CaseRecord& record) {
  engine::Document doc;
  doc.key = record.id;
  doc.body = record_to_cells(record);
  return doc;
}

}  // namespace polygate::bench

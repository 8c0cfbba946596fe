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

#include "polygate/stats.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace polygate::query {

StatsSummary compute_stats(const std::vector<ingest::CaseRecord>& records) {
  using ingest::Sex;
  using ingest::Status;
  StatsSummary s;
  s.deaths_by_sex = {{"female", 0}, {"male", 0}, {"unknown", 0}};
  double death_age_sum = 0;
  std::int64_t death_age_count = 0;

  for (const ingest::CaseRecord& r : records) {
    ++s.total;
    switch (r.status) {
      case Status::Active: ++s.active; break;
      case Status::Recovered: ++s.recovered; break;
      case Status::Dead: ++s.deaths; break;
    }
    if (r.status == Status::Dead) {
      ++s.deaths_by_sex[std::string(ingest::sex_name(r.sex))];
      if (r.age) {
        death_age_sum += *r.age;
        ++death_age_count;
      }
    }
    if (r.age) {
      const int band = std::min(static_cast<int>(*r.age / 10.0), 12) * 10;
      ++s.cases_by_age_band[band];
    }
  }
  if (death_age_count > 0) s.avg_age_of_deaths = death_age_sum / death_age_count;
  return s;
}

std::string stats_json(const StatsSummary& summary) {
  nlohmann::json j;
  j["total"] = summary.total;
  j["active"] = summary.active;
  j["recovered"] = summary.recovered;
  j["deaths"] = summary.deaths;
  if (summary.avg_age_of_deaths) {
    j["avg_age_of_deaths"] = *summary.avg_age_of_deaths;
  } else {
    j["avg_age_of_deaths"] = nullptr;
  }
  nlohmann::json by_sex = nlohmann::json::object();
  for (const auto& [sex, count] : summary.deaths_by_sex) by_sex[sex] = count;
  j["deaths_by_sex"] = std::move(by_sex);
  nlohmann::json bands = nlohmann::json::array();
  for (const auto& [band, count] : summary.cases_by_age_band) {
    nlohmann::json b;
    b["band"] = band;
    b["count"] = count;
    bands.push_back(std::move(b));
  }
  j["cases_by_age_band"] = std::move(bands);
  return j.dump();
}

}  // namespace polygate::query

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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polygate/case_record.hpp"

namespace polygate::query {

// Case-load breakdown over a record set. total always equals
// active + recovered + deaths; deaths always equals the sum over
// deaths_by_sex (all three sexes present, zeros included). Age bands are
// decades keyed by their lower bound: [0,10) ... [110,120) plus a final
// [120,130] band; records without an age appear in no band.
struct StatsSummary {
  std::int64_t total = 0;
  std::int64_t active = 0;
  std::int64_t recovered = 0;
  std::int64_t deaths = 0;
  std::optional<double> avg_age_of_deaths;  // over death records having an age
  std::map<std::string, std::int64_t> deaths_by_sex;
  std::map<int, std::int64_t> cases_by_age_band;
};

StatsSummary compute_stats(const std::vector<ingest::CaseRecord>& records);

// Stable JSON rendering; age bands as an array sorted by band start.
std::string stats_json(const StatsSummary& summary);

}  // namespace polygate::query

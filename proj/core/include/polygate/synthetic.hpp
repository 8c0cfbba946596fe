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
#include <vector>

#include "polygate/case_record.hpp"
#include "polygate/document_engine.hpp"
#include "polygate/value.hpp"

namespace polygate::bench {

// Relative weights of the generated statuses; they need not sum to one.
struct StatusMix {
  double active = 0.55;
  double recovered = 0.35;
  double dead = 0.10;
};

// Line-list-shaped records, fully determined by (count, seed, mix): ids are
// sequential, ~10% of ages are missing, confirmation dates fall within 2020,
// and about a quarter of records link to an earlier record's id.
std::vector<ingest::CaseRecord> generate_records(std::size_t count, std::uint64_t seed,
                                                 const StatusMix& mix = {});

// Engine-shaped views of a record set. Column order is the canonical record
// field order; absent optionals become nulls.
ResultSet records_to_table(const std::vector<ingest::CaseRecord>& records);
engine::Document record_to_document(const ingest::CaseRecord& record);
std::map<std::string, Value> record_to_cells(const ingest::CaseRecord& record);

}  // namespace polygate::bench

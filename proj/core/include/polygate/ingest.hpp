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

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polygate/case_record.hpp"

namespace polygate::ingest {

// Column-name mapping from a concrete line-list layout onto CaseRecord
// fields. Several public datasets ship near-identical layouts that differ
// only in header capitalization and date convention, hence candidate lists.
struct SchemaProfile {
  std::string name;
  DateOrder date_order = DateOrder::Ymd;
  std::map<std::string, std::vector<std::string>> columns;  // field -> header candidates
};

struct ProfileSet {
  std::map<std::string, SchemaProfile> profiles;

  const SchemaProfile& at(const std::string& name) const;
  static ProfileSet parse(std::string_view json_text);
  static ProfileSet load(const std::string& path);
  static const ProfileSet& bundled();
};

// Free-text outcome -> Status. Lookup lowercases, trims and collapses
// internal whitespace; unmapped or empty text counts as an active case.
struct OutcomeMap {
  std::map<std::string, Status> entries;

  Status normalize(std::string_view outcome_text) const;
  static OutcomeMap parse(std::string_view text);
  static OutcomeMap load(const std::string& path);
  static const OutcomeMap& bundled();
};

struct Rejection {
  std::size_t row;  // 1-based data row number (header not counted)
  std::string reason;
};

struct ParseReport {
  std::vector<CaseRecord> records;
  std::vector<Rejection> rejections;
  std::size_t rows_seen = 0;
};

// Parses a line-list CSV. Total: malformed rows land in `rejections` with a
// reason, never abort the parse. A header missing the mandatory id and
// confirmed-date columns is an input error, as is an unreadable file.
ParseReport parse_line_list(std::istream& in, const SchemaProfile& profile,
                            const OutcomeMap& outcomes);
ParseReport parse_line_list(const std::string& path, const SchemaProfile& profile,
                            const OutcomeMap& outcomes);

// A contiguous run of records placed on one node. Replicas are bookkeeping
// (node indices), not copies of the data.
struct Block {
  std::size_t index = 0;
  int node = 0;
  std::size_t byte_size = 0;
  std::vector<CaseRecord> records;
  std::vector<int> replica_nodes;
};

using RecordSizeFn = std::function<std::size_t(const CaseRecord&)>;

// Packs records in input order into blocks of at most block_size bytes (a
// single record larger than the block size gets a block of its own), assigns
// block i to node i % node_count, and notes replication-1 further nodes
// clockwise. replication must not exceed node_count.
std::vector<Block> split_into_blocks(const std::vector<CaseRecord>& records,
                                     std::size_t block_size, int node_count, int replication,
                                     const RecordSizeFn& size_fn = record_byte_size);

}  // namespace polygate::ingest

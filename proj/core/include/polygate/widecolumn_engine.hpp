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
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "polygate/executor.hpp"
#include "polygate/token_ring.hpp"
#include "polygate/value.hpp"

namespace polygate::engine {

// Wide-column tables over a token ring: each row belongs to the node owning
// the token of its partition-key value, rows are kept in token order, and
// writes are upserts keyed by (partition key, clustering key). One writer or
// many readers at a time.
class WideColumnStore {
 public:
  explicit WideColumnStore(TokenRing ring, std::uint64_t hash_seed = 0);
  // Moving transfers ring and tables; the moved-to object gets its own lock.
  WideColumnStore(WideColumnStore&& other) noexcept
      : ring_(std::move(other.ring_)), seed_(other.seed_), tables_(std::move(other.tables_)) {}

  const TokenRing& ring() const { return ring_; }
  std::uint64_t hash_seed() const { return seed_; }

  // clustering_key empty = table keyed by the partition key alone. The
  // partition key must be one of the columns.
  void create_table(const std::string& name, std::vector<std::string> columns,
                    const std::string& partition_key, const std::string& clustering_key = "");
  bool has_table(const std::string& name) const;
  std::vector<std::string> table_names() const;
  std::vector<std::string> table_columns(const std::string& name) const;
  std::string partition_key_column(const std::string& name) const;

  // Insert-or-merge: cells must include the full primary key; provided
  // non-key cells overwrite, absent ones are kept. if_absent_only refuses to
  // touch an existing row ("IF NOT EXISTS"). Returns true when a new row
  // appeared.
  bool upsert_row(const std::string& name, const std::map<std::string, Value>& cells,
                  bool if_absent_only = false);

  std::size_t row_count(const std::string& name) const;
  ResultSet scan(const std::string& name) const;  // token order
  ResultSet select_rows(const std::string& name, const ConditionList& filter) const;

  // Overwrites filtered rows' cells; when require_existing is false and the
  // filter is an equality on the primary key matching nothing, the row is
  // created from the key plus the assignments (upsert semantics).
  std::size_t update_rows(const std::string& name, const ConditionList& filter,
                          const std::map<std::string, Value>& sets, bool require_existing);
  std::size_t delete_rows(const std::string& name, const ConditionList& filter);
  // Cell deletion: sets the named non-key columns to null in filtered rows.
  std::size_t clear_cells(const std::string& name, const std::vector<std::string>& columns,
                          const ConditionList& filter);

  std::string node_of(const Value& partition_key) const;
  std::map<std::string, std::size_t> rows_per_node(const std::string& name) const;

  // Newline-delimited JSON: an engine preamble (nodes, replication, seed),
  // then per table a header line and one JSON object per row, in token
  // order. Byte-exact round-trip with load().
  void dump(std::ostream& out) const;
  static WideColumnStore load(std::istream& in);

 private:
  struct RowKey {
    std::uint64_t token = 0;
    std::string pk;  // typed encodings, so keys of different types never collide
    std::string ck;
    auto operator<=>(const RowKey&) const = default;
  };
  struct Table {
    std::vector<std::string> columns;
    std::string partition_key;
    std::string clustering_key;  // empty = none
    std::map<RowKey, std::map<std::string, Value>> rows;
  };

  const Table& table_ref(const std::string& name) const;
  Table& table_ref(const std::string& name);
  RowKey key_for(const Table& t, const std::map<std::string, Value>& cells,
                 const std::string& table_name) const;

  friend class WideColumnExecutor;

  TokenRing ring_;
  std::uint64_t seed_;
  std::map<std::string, Table> tables_;
  mutable std::shared_mutex mutex_;
};

// CQL-flavored subset: SELECT <*|columns> FROM t [WHERE col op literal],
// INSERT INTO t (columns) VALUES (...) [IF NOT EXISTS], UPDATE t [USING ...]
// SET col=v,... WHERE ... [IF EXISTS], DELETE [columns] FROM t WHERE ....
// Table names may be keyspace-qualified (the last path segment counts); an
// INSERT's column list creates the table on first use, partition key = first
// listed column. Writes report an "affected" count row.
class WideColumnExecutor : public StatementExecutor {
 public:
  explicit WideColumnExecutor(std::shared_ptr<WideColumnStore> store)
      : store_(std::move(store)) {}
  QueryResult execute(const dialect::QueryStatement& statement) override;

 private:
  std::shared_ptr<WideColumnStore> store_;
};

}  // namespace polygate::engine

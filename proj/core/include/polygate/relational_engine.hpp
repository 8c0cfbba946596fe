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

#include <iosfwd>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "polygate/executor.hpp"
#include "polygate/value.hpp"

namespace polygate::engine {

// Row-oriented table store: named tables with a fixed column list and rows
// in insertion order. One writer or many readers at a time.
class RelationalStore {
 public:
  RelationalStore() = default;
  // Moving transfers the stored tables; the moved-to object gets its own lock.
  RelationalStore(RelationalStore&& other) noexcept : tables_(std::move(other.tables_)) {}

  void create_table(const std::string& name, std::vector<std::string> columns);
  bool has_table(const std::string& name) const;
  std::vector<std::string> table_names() const;
  std::vector<std::string> table_columns(const std::string& name) const;
  std::size_t row_count(const std::string& name) const;

  void insert_row(const std::string& name, std::vector<Value> row);
  ResultSet scan(const std::string& name) const;

  // Newline-delimited JSON: an engine preamble, then per table a header
  // line and one JSON array per row. Byte-exact round-trip with load().
  void dump(std::ostream& out) const;
  static RelationalStore load(std::istream& in);

 private:
  struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows;
  };

  const Table& table_ref(const std::string& name) const;
  Table& table_ref(const std::string& name);

  friend class RelationalExecutor;

  std::map<std::string, Table> tables_;
  mutable std::shared_mutex mutex_;
};

// SQL subset: SELECT <*|columns> FROM t [WHERE col op literal],
// INSERT INTO t [(columns)] VALUES (...), UPDATE t SET col=v,... [WHERE],
// DELETE [*] FROM t [WHERE]. An INSERT with an explicit column list creates
// the table on first use; writes report an "affected" count row.
class RelationalExecutor : public StatementExecutor {
 public:
  explicit RelationalExecutor(std::shared_ptr<RelationalStore> store)
      : store_(std::move(store)) {}
  QueryResult execute(const dialect::QueryStatement& statement) override;

 private:
  std::shared_ptr<RelationalStore> store_;
};

}  // namespace polygate::engine

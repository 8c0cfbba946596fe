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

#include "polygate/widecolumn_engine.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "polygate/errors.hpp"
#include "sql_cursor.hpp"
#include "polygate/value_json.hpp"

namespace polygate::engine {

WideColumnStore::WideColumnStore(TokenRing ring, std::uint64_t hash_seed)
    : ring_(std::move(ring)), seed_(hash_seed) {}

void WideColumnStore::create_table(const std::string& name, std::vector<std::string> columns,
                                   const std::string& partition_key,
                                   const std::string& clustering_key) {
  std::unique_lock lock(mutex_);
  if (name.empty()) throw InputError("table name must be non-empty");
  if (tables_.count(name)) throw EngineError("table already exists: " + name);
  std::set<std::string> seen;
  for (const std::string& c : columns) {
    if (c.empty() || !seen.insert(c).second) {
      throw InputError("column names must be non-empty and distinct");
    }
  }
  if (!seen.count(partition_key)) {
    throw InputError("partition key must be one of the columns");
  }
  if (!clustering_key.empty() && !seen.count(clustering_key)) {
    throw InputError("clustering key must be one of the columns");
  }
  Table t;
  t.columns = std::move(columns);
  t.partition_key = partition_key;
  t.clustering_key = clustering_key;
  tables_[name] = std::move(t);
}

bool WideColumnStore::has_table(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return tables_.count(name) != 0;
}

std::vector<std::string> WideColumnStore::table_names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, t] : tables_) out.push_back(name);
  return out;
}

const WideColumnStore::Table& WideColumnStore::table_ref(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw EngineError("unknown table: " + name);
  return it->second;
}

WideColumnStore::Table& WideColumnStore::table_ref(const std::string& name) {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw EngineError("unknown table: " + name);
  return it->second;
}

std::vector<std::string> WideColumnStore::table_columns(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return table_ref(name).columns;
}

std::string WideColumnStore::partition_key_column(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return table_ref(name).partition_key;
}

WideColumnStore::RowKey WideColumnStore::key_for(const Table& t,
                                                 const std::map<std::string, Value>& cells,
                                                 const std::string& table_name) const {
  auto pk = cells.find(t.partition_key);
  if (pk == cells.end() || std::holds_alternative<Null>(pk->second)) {
    throw EngineError("missing partition key for table " + table_name);
  }
  RowKey key;
  key.pk = value_hash_key(pk->second);
  key.token = token_for(key.pk, seed_);
  if (!t.clustering_key.empty()) {
    auto ck = cells.find(t.clustering_key);
    if (ck == cells.end() || std::holds_alternative<Null>(ck->second)) {
      throw EngineError("missing clustering key for table " + table_name);
    }
    key.ck = value_hash_key(ck->second);
  }
  return key;
}

namespace {

bool row_matches(const std::map<std::string, Value>& cells, const ConditionList& filter) {
  for (const FieldCondition& cond : filter) {
    auto it = cells.find(cond.field);
    if (it == cells.end()) return false;
    if (!value_satisfies(it->second, cond.op, cond.value)) return false;
  }
  return true;
}

}  // namespace

bool WideColumnStore::upsert_row(const std::string& name,
                                 const std::map<std::string, Value>& cells,
                                 bool if_absent_only) {
  std::unique_lock lock(mutex_);
  Table& t = table_ref(name);
  for (const auto& [column, value] : cells) {
    if (std::find(t.columns.begin(), t.columns.end(), column) == t.columns.end()) {
      throw EngineError("unknown column: " + column);
    }
  }
  const RowKey key = key_for(t, cells, name);
  auto it = t.rows.find(key);
  if (it == t.rows.end()) {
    t.rows.emplace(key, cells);
    return true;
  }
  if (if_absent_only) return false;
  for (const auto& [column, value] : cells) it->second[column] = value;
  return false;
}

std::size_t WideColumnStore::row_count(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return table_ref(name).rows.size();
}

namespace {

ResultSet rows_to_result(const std::vector<std::string>& columns,
                         const std::vector<const std::map<std::string, Value>*>& rows) {
  ResultSet rs;
  rs.columns = columns;
  rs.rows.reserve(rows.size());
  for (const auto* cells : rows) {
    std::vector<Value> row;
    row.reserve(columns.size());
    for (const std::string& c : columns) {
      auto it = cells->find(c);
      row.push_back(it == cells->end() ? Value{Null{}} : it->second);
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

}  // namespace

ResultSet WideColumnStore::scan(const std::string& name) const {
  return select_rows(name, {});
}

ResultSet WideColumnStore::select_rows(const std::string& name,
                                       const ConditionList& filter) const {
  std::shared_lock lock(mutex_);
  const Table& t = table_ref(name);
  std::vector<const std::map<std::string, Value>*> matched;
  for (const auto& [key, cells] : t.rows) {
    if (row_matches(cells, filter)) matched.push_back(&cells);
  }
  return rows_to_result(t.columns, matched);
}

std::size_t WideColumnStore::update_rows(const std::string& name, const ConditionList& filter,
                                         const std::map<std::string, Value>& sets,
                                         bool require_existing) {
  std::unique_lock lock(mutex_);
  Table& t = table_ref(name);
  for (const auto& [column, value] : sets) {
    if (std::find(t.columns.begin(), t.columns.end(), column) == t.columns.end()) {
      throw EngineError("unknown column: " + column);
    }
    if (column == t.partition_key || column == t.clustering_key) {
      throw EngineError("primary-key columns cannot be assigned");
    }
  }
  std::size_t affected = 0;
  for (auto& [key, cells] : t.rows) {
    if (!row_matches(cells, filter)) continue;
    for (const auto& [column, value] : sets) cells[column] = value;
    ++affected;
  }
  if (affected == 0 && !require_existing) {
    // upsert path: a full-primary-key equality filter names a fresh row
    std::map<std::string, Value> cells;
    bool key_equality = !filter.empty();
    for (const FieldCondition& cond : filter) {
      const bool is_key = cond.field == t.partition_key ||
                          (!t.clustering_key.empty() && cond.field == t.clustering_key);
      if (!is_key || cond.op != CompareOp::Eq) {
        key_equality = false;
        break;
      }
      cells[cond.field] = cond.value;
    }
    if (key_equality && cells.count(t.partition_key) &&
        (t.clustering_key.empty() || cells.count(t.clustering_key))) {
      for (const auto& [column, value] : sets) cells[column] = value;
      t.rows.emplace(key_for(t, cells, name), std::move(cells));
      return 1;
    }
  }
  return affected;
}

std::size_t WideColumnStore::delete_rows(const std::string& name, const ConditionList& filter) {
  std::unique_lock lock(mutex_);
  Table& t = table_ref(name);
  std::size_t removed = 0;
  for (auto it = t.rows.begin(); it != t.rows.end();) {
    if (row_matches(it->second, filter)) {
      it = t.rows.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t WideColumnStore::clear_cells(const std::string& name,
                                         const std::vector<std::string>& columns,
                                         const ConditionList& filter) {
  std::unique_lock lock(mutex_);
  Table& t = table_ref(name);
  for (const std::string& column : columns) {
    if (std::find(t.columns.begin(), t.columns.end(), column) == t.columns.end()) {
      throw EngineError("unknown column: " + column);
    }
    if (column == t.partition_key || column == t.clustering_key) {
      throw EngineError("primary-key columns cannot be deleted");
    }
  }
  std::size_t affected = 0;
  for (auto& [key, cells] : t.rows) {
    if (!row_matches(cells, filter)) continue;
    for (const std::string& column : columns) cells[column] = Null{};
    ++affected;
  }
  return affected;
}

std::string WideColumnStore::node_of(const Value& partition_key) const {
  return ring_.node_names()[ring_.owner_index(token_for(value_hash_key(partition_key), seed_))];
}

std::map<std::string, std::size_t> WideColumnStore::rows_per_node(const std::string& name) const {
  std::shared_lock lock(mutex_);
  const Table& t = table_ref(name);
  std::map<std::string, std::size_t> out;
  for (const std::string& node : ring_.node_names()) out[node] = 0;
  for (const auto& [key, cells] : t.rows) {
    out[ring_.node_names()[ring_.owner_index(key.token)]] += 1;
  }
  return out;
}

void WideColumnStore::dump(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  nlohmann::json preamble;
  preamble["engine"] = "widecolumn";
  preamble["nodes"] = ring_.node_names();
  preamble["replication"] = ring_.replication_factor();
  preamble["seed"] = seed_;
  out << preamble.dump() << '\n';
  for (const auto& [name, t] : tables_) {
    nlohmann::json header;
    header["clustering_key"] = t.clustering_key;
    header["columns"] = t.columns;
    header["partition_key"] = t.partition_key;
    header["rows"] = t.rows.size();
    header["table"] = name;
    out << header.dump() << '\n';
    for (const auto& [key, cells] : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (const auto& [column, value] : cells) obj[column] = value_to_json(value);
      nlohmann::json line;
      line["cells"] = std::move(obj);
      out << line.dump() << '\n';
    }
  }
}

WideColumnStore WideColumnStore::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty engine dump");
  nlohmann::json preamble = nlohmann::json::parse(line, nullptr, false);
  if (preamble.is_discarded() || preamble.value("engine", "") != "widecolumn") {
    throw InputError("dump preamble is not a wide-column-engine header");
  }
  WideColumnStore store(TokenRing(preamble.at("nodes").get<std::vector<std::string>>(),
                                  preamble.at("replication").get<int>()),
                        preamble.at("seed").get<std::uint64_t>());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json header = nlohmann::json::parse(line);
    const std::string name = header.at("table").get<std::string>();
    store.create_table(name, header.at("columns").get<std::vector<std::string>>(),
                       header.at("partition_key").get<std::string>(),
                       header.at("clustering_key").get<std::string>());
    Table& t = store.table_ref(name);
    const std::size_t rows = header.at("rows").get<std::size_t>();
    for (std::size_t i = 0; i < rows; ++i) {
      if (!std::getline(in, line)) throw InputError("dump truncated inside table " + name);
      nlohmann::json obj = nlohmann::json::parse(line);
      std::map<std::string, Value> cells;
      for (const auto& [column, value] : obj.at("cells").items()) {
        cells[column] = value_from_json(value);
      }
      t.rows.emplace(store.key_for(t, cells, name), std::move(cells));
    }
  }
  return store;
}

// ---------------------------------------------------------------------------
// CQL-flavored statement execution

namespace {

// table names may be keyspace-qualified: take the last dot-separated segment
std::string parse_table_name(sqlcur::Cursor& cur) {
  std::string name = cur.expect_name("table name");
  while (cur.accept_punct('.')) name = cur.expect_name("table name");
  return name;
}

// USING TTL 60 / USING TIMESTAMP ... — recognized and skipped
void skip_using_clause(sqlcur::Cursor& cur) {
  if (!cur.accept_kw("USING")) return;
  while (!cur.done() && !cur.at_kw("SET") && !cur.at_kw("WHERE") && !cur.at_kw("IF")) {
    cur.advance();
  }
}

ResultSet affected_result(std::size_t n) {
  ResultSet rs;
  rs.columns = {"affected"};
  rs.rows = {{static_cast<std::int64_t>(n)}};
  return rs;
}

}  // namespace

QueryResult WideColumnExecutor::execute(const dialect::QueryStatement& statement) {
  const auto start = std::chrono::steady_clock::now();
  sqlcur::Cursor cur(statement.tokens);
  QueryResult result;
  result.cost.conn = 1;

  auto charge_scan = [&](const std::string& table, std::size_t conditions) {
    const std::size_t n = store_->has_table(table) ? store_->row_count(table) : 0;
    result.cost.io += static_cast<double>(n);
    result.cost.cpu += static_cast<double>(n * std::max<std::size_t>(conditions, 1));
  };

  if (cur.accept_kw("SELECT")) {
    std::vector<std::string> wanted;
    if (!cur.accept_punct('*')) {
      do {
        wanted.push_back(cur.expect_name("column name"));
      } while (cur.accept_punct(','));
    }
    cur.expect_kw("FROM");
    const std::string table = parse_table_name(cur);
    ConditionList filter;
    if (cur.accept_kw("WHERE")) {
      do {
        auto p = sqlcur::parse_predicate(cur, /*allow_bareword=*/true);
        filter.push_back({p.column, p.op, p.value});
      } while (cur.accept_kw("AND"));
    }
    if (!cur.done()) throw EngineError("unsupported trailing syntax in SELECT");

    charge_scan(table, filter.size());
    ResultSet all = store_->select_rows(table, filter);
    if (wanted.empty()) {
      result.rows = std::move(all);
    } else {
      std::vector<std::size_t> proj;
      for (const std::string& c : wanted) {
        auto it = std::find(all.columns.begin(), all.columns.end(), c);
        if (it == all.columns.end()) throw EngineError("unknown column: " + c);
        proj.push_back(static_cast<std::size_t>(it - all.columns.begin()));
      }
      result.rows.columns = wanted;
      for (auto& row : all.rows) {
        std::vector<Value> out;
        out.reserve(proj.size());
        for (std::size_t idx : proj) out.push_back(row[idx]);
        result.rows.rows.push_back(std::move(out));
      }
    }
  } else if (cur.accept_kw("INSERT")) {
    cur.expect_kw("INTO");
    const std::string table = parse_table_name(cur);
    cur.expect_punct('(');
    std::vector<std::string> columns;
    do {
      columns.push_back(cur.expect_name("column name"));
    } while (cur.accept_punct(','));
    cur.expect_punct(')');
    cur.expect_kw("VALUES");
    cur.expect_punct('(');
    std::vector<Value> values;
    do {
      values.push_back(cur.expect_literal(/*allow_bareword=*/true));
    } while (cur.accept_punct(','));
    cur.expect_punct(')');
    bool if_absent_only = false;
    if (cur.accept_kw("IF")) {
      cur.expect_kw("NOT");
      cur.expect_kw("EXISTS");
      if_absent_only = true;
    }
    skip_using_clause(cur);
    if (!cur.done()) throw EngineError("unsupported trailing syntax in INSERT");
    if (values.size() != columns.size()) {
      throw EngineError("VALUES arity does not match the column list");
    }

    if (!store_->has_table(table)) {
      store_->create_table(table, columns, columns.front());
    }
    std::map<std::string, Value> cells;
    for (std::size_t i = 0; i < columns.size(); ++i) cells[columns[i]] = std::move(values[i]);
    store_->upsert_row(table, cells, if_absent_only);
    result.cost.io = 1;
    result.rows = affected_result(1);
  } else if (cur.accept_kw("UPDATE")) {
    const std::string table = parse_table_name(cur);
    skip_using_clause(cur);
    cur.expect_kw("SET");
    std::map<std::string, Value> sets;
    do {
      std::string column = cur.expect_name("column name");
      auto op = cur.accept_compare_op();
      if (!op || *op != CompareOp::Eq) throw EngineError("expected '=' in SET");
      sets[std::move(column)] = cur.expect_literal(/*allow_bareword=*/true);
    } while (cur.accept_punct(','));
    cur.expect_kw("WHERE");
    ConditionList filter;
    do {
      auto p = sqlcur::parse_predicate(cur, /*allow_bareword=*/true);
      filter.push_back({p.column, p.op, p.value});
    } while (cur.accept_kw("AND"));
    bool require_existing = false;
    if (cur.accept_kw("IF")) {
      cur.expect_kw("EXISTS");
      require_existing = true;
    }
    if (!cur.done()) throw EngineError("unsupported trailing syntax in UPDATE");

    charge_scan(table, filter.size());
    result.rows = affected_result(store_->update_rows(table, filter, sets, require_existing));
  } else if (cur.accept_kw("DELETE")) {
    std::vector<std::string> columns;  // empty = whole rows
    if (!cur.at_kw("FROM")) {
      cur.accept_punct('*');
      while (!cur.at_kw("FROM")) {
        columns.push_back(cur.expect_name("column name"));
        if (!cur.accept_punct(',')) break;
      }
    }
    cur.expect_kw("FROM");
    const std::string table = parse_table_name(cur);
    ConditionList filter;
    if (cur.accept_kw("WHERE")) {
      do {
        auto p = sqlcur::parse_predicate(cur, /*allow_bareword=*/true);
        filter.push_back({p.column, p.op, p.value});
      } while (cur.accept_kw("AND"));
    }
    if (cur.accept_kw("IF")) cur.expect_kw("EXISTS");
    if (!cur.done()) throw EngineError("unsupported trailing syntax in DELETE");

    charge_scan(table, filter.size());
    const std::size_t affected = columns.empty()
                                     ? store_->delete_rows(table, filter)
                                     : store_->clear_cells(table, columns, filter);
    result.rows = affected_result(affected);
  } else {
    throw EngineError("not a supported CQL statement");
  }

  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace polygate::engine

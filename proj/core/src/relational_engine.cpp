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

#include "polygate/relational_engine.hpp"

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

void RelationalStore::create_table(const std::string& name, std::vector<std::string> columns) {
  std::unique_lock lock(mutex_);
  if (name.empty()) throw InputError("table name must be non-empty");
  if (columns.empty()) throw InputError("a table needs at least one column");
  if (tables_.count(name)) throw EngineError("table already exists: " + name);
  std::set<std::string> seen;
  for (const std::string& c : columns) {
    if (c.empty() || !seen.insert(c).second) {
      throw InputError("column names must be non-empty and distinct");
    }
  }
  tables_[name].columns = std::move(columns);
}

bool RelationalStore::has_table(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return tables_.count(name) != 0;
}

std::vector<std::string> RelationalStore::table_names() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  out.reserve(tables_.size());
  for (const auto& [name, table] : tables_) out.push_back(name);
  return out;
}

const RelationalStore::Table& RelationalStore::table_ref(const std::string& name) const {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw EngineError("unknown table: " + name);
  return it->second;
}

RelationalStore::Table& RelationalStore::table_ref(const std::string& name) {
  auto it = tables_.find(name);
  if (it == tables_.end()) throw EngineError("unknown table: " + name);
  return it->second;
}

std::vector<std::string> RelationalStore::table_columns(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return table_ref(name).columns;
}

std::size_t RelationalStore::row_count(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return table_ref(name).rows.size();
}

void RelationalStore::insert_row(const std::string& name, std::vector<Value> row) {
  std::unique_lock lock(mutex_);
  Table& t = table_ref(name);
  if (row.size() != t.columns.size()) {
    throw EngineError("row arity does not match table " + name);
  }
  t.rows.push_back(std::move(row));
}

ResultSet RelationalStore::scan(const std::string& name) const {
  std::shared_lock lock(mutex_);
  const Table& t = table_ref(name);
  return {t.columns, t.rows};
}

void RelationalStore::dump(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  nlohmann::json preamble;
  preamble["engine"] = "relational";
  out << preamble.dump() << '\n';
  for (const auto& [name, t] : tables_) {
    nlohmann::json header;
    header["columns"] = t.columns;
    header["rows"] = t.rows.size();
    header["table"] = name;
    out << header.dump() << '\n';
    for (const auto& row : t.rows) {
      nlohmann::json line = nlohmann::json::array();
      for (const Value& v : row) line.push_back(value_to_json(v));
      out << line.dump() << '\n';
    }
  }
}

RelationalStore RelationalStore::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty engine dump");
  nlohmann::json preamble = nlohmann::json::parse(line, nullptr, false);
  if (preamble.is_discarded() || preamble.value("engine", "") != "relational") {
    throw InputError("dump preamble is not a relational-engine header");
  }
  RelationalStore store;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json header = nlohmann::json::parse(line);
    const std::string name = header.at("table").get<std::string>();
    Table t;
    t.columns = header.at("columns").get<std::vector<std::string>>();
    const std::size_t rows = header.at("rows").get<std::size_t>();
    t.rows.reserve(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!std::getline(in, line)) throw InputError("dump truncated inside table " + name);
      nlohmann::json arr = nlohmann::json::parse(line);
      std::vector<Value> row;
      row.reserve(arr.size());
      for (const auto& v : arr) row.push_back(value_from_json(v));
      if (row.size() != t.columns.size()) {
        throw InputError("dump row arity mismatch in table " + name);
      }
      t.rows.push_back(std::move(row));
    }
    store.tables_[name] = std::move(t);
  }
  return store;
}

namespace {

std::size_t column_index(const std::vector<std::string>& columns, const std::string& name) {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw EngineError("unknown column: " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

ResultSet affected_result(std::size_t n) {
  ResultSet rs;
  rs.columns = {"affected"};
  rs.rows = {{static_cast<std::int64_t>(n)}};
  return rs;
}

}  // namespace

QueryResult RelationalExecutor::execute(const dialect::QueryStatement& statement) {
  const auto start = std::chrono::steady_clock::now();
  sqlcur::Cursor cur(statement.tokens);
  QueryResult result;
  result.cost.conn = 1;

  std::unique_lock lock(store_->mutex_);

  if (cur.accept_kw("SELECT")) {
    std::vector<std::string> wanted;  // empty = *
    if (!cur.accept_punct('*')) {
      do {
        wanted.push_back(cur.expect_name("column name"));
      } while (cur.accept_punct(','));
    }
    cur.expect_kw("FROM");
    const std::string table = cur.expect_name("table name");
    std::optional<sqlcur::Predicate> pred;
    if (cur.accept_kw("WHERE")) pred = sqlcur::parse_predicate(cur, /*allow_bareword=*/false);
    if (!cur.done()) throw EngineError("unsupported trailing syntax in SELECT");

    const RelationalStore::Table& t = store_->table_ref(table);
    std::vector<std::size_t> proj;
    if (wanted.empty()) {
      result.rows.columns = t.columns;
      proj.resize(t.columns.size());
      for (std::size_t i = 0; i < proj.size(); ++i) proj[i] = i;
    } else {
      result.rows.columns = wanted;
      for (const std::string& c : wanted) proj.push_back(column_index(t.columns, c));
    }
    std::size_t pred_col = pred ? column_index(t.columns, pred->column) : 0;
    for (const auto& row : t.rows) {
      ++result.cost.io;
      if (pred) {
        ++result.cost.cpu;
        if (!value_satisfies(row[pred_col], pred->op, pred->value)) continue;
      }
      std::vector<Value> out;
      out.reserve(proj.size());
      for (std::size_t idx : proj) out.push_back(row[idx]);
      result.rows.rows.push_back(std::move(out));
    }
  } else if (cur.accept_kw("INSERT")) {
    cur.expect_kw("INTO");
    const std::string table = cur.expect_name("table name");
    std::vector<std::string> columns;
    if (cur.accept_punct('(')) {
      do {
        columns.push_back(cur.expect_name("column name"));
      } while (cur.accept_punct(','));
      cur.expect_punct(')');
    }
    cur.expect_kw("VALUES");
    std::size_t inserted = 0;
    do {
      cur.expect_punct('(');
      std::vector<Value> row;
      do {
        row.push_back(cur.expect_literal(/*allow_bareword=*/false));
      } while (cur.accept_punct(','));
      cur.expect_punct(')');

      if (!store_->tables_.count(table)) {
        if (columns.empty()) {
          throw EngineError("cannot create table " + table + " without a column list");
        }
        RelationalStore::Table t;
        t.columns = columns;
        store_->tables_[table] = std::move(t);
      }
      RelationalStore::Table& t = store_->table_ref(table);
      if (columns.empty()) {
        if (row.size() != t.columns.size()) {
          throw EngineError("row arity does not match table " + table);
        }
        t.rows.push_back(std::move(row));
      } else {
        if (row.size() != columns.size()) {
          throw EngineError("VALUES arity does not match the column list");
        }
        std::vector<Value> full(t.columns.size(), Value{Null{}});
        for (std::size_t i = 0; i < columns.size(); ++i) {
          full[column_index(t.columns, columns[i])] = std::move(row[i]);
        }
        t.rows.push_back(std::move(full));
      }
      ++inserted;
      ++result.cost.io;
    } while (cur.accept_punct(','));
    if (!cur.done()) throw EngineError("unsupported trailing syntax in INSERT");
    result.rows = affected_result(inserted);
  } else if (cur.accept_kw("UPDATE")) {
    const std::string table = cur.expect_name("table name");
    cur.expect_kw("SET");
    std::vector<std::pair<std::string, Value>> sets;
    do {
      std::string column = cur.expect_name("column name");
      auto op = cur.accept_compare_op();
      if (!op || *op != CompareOp::Eq) throw EngineError("expected '=' in SET");
      sets.emplace_back(std::move(column), cur.expect_literal(false));
    } while (cur.accept_punct(','));
    std::optional<sqlcur::Predicate> pred;
    if (cur.accept_kw("WHERE")) pred = sqlcur::parse_predicate(cur, false);
    if (!cur.done()) throw EngineError("unsupported trailing syntax in UPDATE");

    RelationalStore::Table& t = store_->table_ref(table);
    std::vector<std::pair<std::size_t, Value>> set_idx;
    for (auto& [column, value] : sets) {
      set_idx.emplace_back(column_index(t.columns, column), std::move(value));
    }
    std::size_t pred_col = pred ? column_index(t.columns, pred->column) : 0;
    std::size_t affected = 0;
    for (auto& row : t.rows) {
      ++result.cost.io;
      if (pred) {
        ++result.cost.cpu;
        if (!value_satisfies(row[pred_col], pred->op, pred->value)) continue;
      }
      for (const auto& [idx, value] : set_idx) row[idx] = value;
      ++affected;
    }
    result.rows = affected_result(affected);
  } else if (cur.accept_kw("DELETE")) {
    cur.accept_punct('*');
    cur.expect_kw("FROM");
    const std::string table = cur.expect_name("table name");
    std::optional<sqlcur::Predicate> pred;
    if (cur.accept_kw("WHERE")) pred = sqlcur::parse_predicate(cur, false);
    if (!cur.done()) throw EngineError("unsupported trailing syntax in DELETE");

    RelationalStore::Table& t = store_->table_ref(table);
    std::size_t pred_col = pred ? column_index(t.columns, pred->column) : 0;
    std::size_t affected = 0;
    std::erase_if(t.rows, [&](const std::vector<Value>& row) {
      ++result.cost.io;
      if (pred) {
        ++result.cost.cpu;
        if (!value_satisfies(row[pred_col], pred->op, pred->value)) return false;
      }
      ++affected;
      return true;
    });
    result.rows = affected_result(affected);
  } else {
    throw EngineError("not a supported SQL statement");
  }

  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace polygate::engine

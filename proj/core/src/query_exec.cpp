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

#include "polygate/query_exec.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "polygate/errors.hpp"

namespace polygate::query {

void EngineRegistry::add(dialect::EngineKind kind,
                         std::shared_ptr<engine::StatementExecutor> executor) {
  if (kind == dialect::EngineKind::NoEngine) {
    throw InputError("NoEngine is not a routing target");
  }
  if (!executor) throw InputError("executor must not be null");
  executors_[kind] = std::move(executor);
}

bool EngineRegistry::has(dialect::EngineKind kind) const { return executors_.count(kind) != 0; }

engine::StatementExecutor* EngineRegistry::find(dialect::EngineKind kind) const {
  auto it = executors_.find(kind);
  return it == executors_.end() ? nullptr : it->second.get();
}

std::string_view route_status_name(RouteStatus status) {
  switch (status) {
    case RouteStatus::Executed: return "executed";
    case RouteStatus::NoEngine: return "no-engine";
    case RouteStatus::NotRegistered: return "not-registered";
  }
  return "no-engine";
}

RouteOutcome route_and_execute(std::string_view raw, const dialect::SignatureCorpus& corpus,
                               const EngineRegistry& engines) {
  RouteOutcome outcome;
  const dialect::QueryStatement statement = dialect::tokenize(raw);
  outcome.engine = dialect::detect_engine(statement, corpus);
  if (outcome.engine == dialect::EngineKind::NoEngine) {
    outcome.status = RouteStatus::NoEngine;
    outcome.message = "no dialect signature matched the statement";
    return outcome;
  }
  engine::StatementExecutor* executor = engines.find(outcome.engine);
  if (!executor) {
    outcome.status = RouteStatus::NotRegistered;
    outcome.message = std::string("no engine registered for ") +
                      std::string(dialect::engine_kind_name(outcome.engine));
    return outcome;
  }
  try {
    outcome.result = executor->execute(statement);
  } catch (const EngineError& e) {
    throw EngineError(std::string(dialect::engine_kind_name(outcome.engine)) + ": " + e.what());
  }
  outcome.status = RouteStatus::Executed;
  return outcome;
}

std::string_view join_shape_name(JoinShape shape) {
  return shape == JoinShape::Linear ? "linear" : "star";
}

void JoinPlan::validate() const {
  if (tables.size() < 2) throw PlanError("a join plan needs at least two tables");
  if (predicates.size() + 1 != tables.size()) {
    throw PlanError("a plan over N tables needs exactly N-1 predicates");
  }
  std::set<std::string> seen;
  for (const std::string& t : tables) {
    if (t.empty()) throw PlanError("table names must be non-empty");
    if (!seen.insert(t).second) throw PlanError("table appears twice in the plan: " + t);
  }
  for (const JoinPredicate& p : predicates) {
    if (p.left_column.empty() || p.right_column.empty()) {
      throw PlanError("join columns must be non-empty");
    }
  }
}

namespace {

const ResultSet& input_table(const TableSet& tables, const std::string& name) {
  auto it = tables.find(name);
  if (it == tables.end()) throw PlanError("unknown table: " + name);
  return it->second;
}

std::vector<std::string> qualified_columns(const std::string& table, const ResultSet& rs) {
  std::vector<std::string> out;
  out.reserve(rs.columns.size());
  for (const std::string& c : rs.columns) out.push_back(table + "." + c);
  return out;
}

std::size_t schema_index(const std::vector<std::string>& columns, const std::string& name) {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw PlanError("missing join column: " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

}  // namespace

std::vector<std::string> JoinPlan::result_schema(const TableSet& inputs) const {
  validate();
  std::vector<std::string> schema;
  for (const std::string& t : tables) {
    for (std::string& c : qualified_columns(t, input_table(inputs, t))) {
      schema.push_back(std::move(c));
    }
  }
  // the schema must also be well-formed: every predicate column resolvable
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    const std::string& left_table = shape == JoinShape::Linear ? tables[i] : tables[0];
    schema_index(schema, left_table + "." + predicates[i].left_column);
    schema_index(schema, tables[i + 1] + "." + predicates[i].right_column);
  }
  return schema;
}

JoinPlan JoinPlan::parse(std::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw PlanError("join plan is not a JSON object");
  JoinPlan plan;
  const std::string shape_name = j.value("shape", "linear");
  if (shape_name == "linear") {
    plan.shape = JoinShape::Linear;
  } else if (shape_name == "star") {
    plan.shape = JoinShape::Star;
  } else {
    throw PlanError("unknown join shape: " + shape_name);
  }
  if (!j.contains("tables") || !j["tables"].is_array()) {
    throw PlanError("join plan needs a tables array");
  }
  for (const auto& t : j["tables"]) {
    if (!t.is_string()) throw PlanError("table names must be strings");
    plan.tables.push_back(t.get<std::string>());
  }
  if (!j.contains("predicates") || !j["predicates"].is_array()) {
    throw PlanError("join plan needs a predicates array");
  }
  for (const auto& p : j["predicates"]) {
    if (!p.is_object() || !p.contains("left") || !p.contains("right")) {
      throw PlanError("each predicate needs left and right columns");
    }
    plan.predicates.push_back(
        {p.at("left").get<std::string>(), p.at("right").get<std::string>()});
  }
  plan.validate();
  return plan;
}

std::string JoinPlan::to_json() const {
  nlohmann::json j;
  j["shape"] = std::string(join_shape_name(shape));
  j["tables"] = tables;
  nlohmann::json preds = nlohmann::json::array();
  for (const JoinPredicate& p : predicates) {
    nlohmann::json pj;
    pj["left"] = p.left_column;
    pj["right"] = p.right_column;
    preds.push_back(std::move(pj));
  }
  j["predicates"] = std::move(preds);
  return j.dump();
}

namespace {

// One hash-join step: acc ⨝ right on acc[left_key] = right[right_key].
// Build over the smaller side; typed key equality via the canonical hash
// key; null keys never participate.
ResultSet hash_join_step(const ResultSet& acc, const ResultSet& right,
                         const std::string& left_key, const std::string& right_key,
                         cost::CostVector& cost) {
  const std::size_t li = schema_index(acc.columns, left_key);
  const std::size_t ri = schema_index(right.columns, right_key);

  ResultSet out;
  out.columns = acc.columns;
  out.columns.insert(out.columns.end(), right.columns.begin(), right.columns.end());

  const bool build_left = acc.rows.size() <= right.rows.size();
  const auto& build = build_left ? acc.rows : right.rows;
  const std::size_t build_key = build_left ? li : ri;
  const auto& probe = build_left ? right.rows : acc.rows;
  const std::size_t probe_key = build_left ? ri : li;

  std::unordered_map<std::string, std::vector<std::size_t>> table;
  table.reserve(build.size());
  for (std::size_t i = 0; i < build.size(); ++i) {
    cost.cpu += 1;  // hash-build insertion
    if (std::holds_alternative<Null>(build[i][build_key])) continue;
    table[value_hash_key(build[i][build_key])].push_back(i);
  }
  for (const auto& probe_row : probe) {
    cost.cpu += 1;  // probe
    if (std::holds_alternative<Null>(probe_row[probe_key])) continue;
    auto it = table.find(value_hash_key(probe_row[probe_key]));
    if (it == table.end()) continue;
    for (std::size_t bi : it->second) {
      cost.cpu += 1;  // emitted match
      const auto& acc_row = build_left ? build[bi] : probe_row;
      const auto& right_row = build_left ? probe_row : build[bi];
      std::vector<Value> combined;
      combined.reserve(acc_row.size() + right_row.size());
      combined.insert(combined.end(), acc_row.begin(), acc_row.end());
      combined.insert(combined.end(), right_row.begin(), right_row.end());
      out.rows.push_back(std::move(combined));
    }
  }
  return out;
}

ResultSet qualify(const std::string& table, const ResultSet& rs) {
  ResultSet out;
  out.columns = qualified_columns(table, rs);
  out.rows = rs.rows;
  return out;
}

}  // namespace

engine::QueryResult execute_join(const JoinPlan& plan, const TableSet& tables) {
  plan.validate();
  const auto start = std::chrono::steady_clock::now();
  engine::QueryResult result;

  ResultSet acc = qualify(plan.tables[0], input_table(tables, plan.tables[0]));
  result.cost.io += static_cast<double>(acc.rows.size());
  result.cost.conn += 1;

  for (std::size_t i = 1; i < plan.tables.size(); ++i) {
    const ResultSet right = qualify(plan.tables[i], input_table(tables, plan.tables[i]));
    result.cost.io += static_cast<double>(right.rows.size());
    result.cost.conn += 1;

    const JoinPredicate& p = plan.predicates[i - 1];
    const std::string& left_table =
        plan.shape == JoinShape::Linear ? plan.tables[i - 1] : plan.tables[0];
    acc = hash_join_step(acc, right, left_table + "." + p.left_column,
                         plan.tables[i] + "." + p.right_column, result.cost);
  }

  result.rows = std::move(acc);
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<RankedPlan> compare_plans(const std::vector<JoinPlan>& plans,
                                      const cost::CostCoefficients& coefficients,
                                      const TableSet& tables) {
  if (plans.size() < 2) throw PlanError("plan comparison needs at least two plans");
  coefficients.validate();

  const std::vector<std::string> schema = plans.front().result_schema(tables);
  for (std::size_t i = 1; i < plans.size(); ++i) {
    if (plans[i].result_schema(tables) != schema) {
      throw PlanError("plans are not logically equivalent: result schemas differ");
    }
  }

  std::vector<RankedPlan> ranked;
  ranked.reserve(plans.size());
  for (std::size_t i = 0; i < plans.size(); ++i) {
    RankedPlan r;
    r.plan_index = i;
    r.cost = execute_join(plans[i], tables).cost;
    r.plan_cost = cost::plan_cost(coefficients, r.cost);
    ranked.push_back(r);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedPlan& a, const RankedPlan& b) {
                     return a.plan_cost < b.plan_cost;  // comparator-only contract
                   });
  return ranked;
}

}  // namespace polygate::query

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

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "polygate/cost.hpp"
#include "polygate/dialect.hpp"
#include "polygate/executor.hpp"
#include "polygate/value.hpp"

namespace polygate::query {

class EngineRegistry {
 public:
  void add(dialect::EngineKind kind, std::shared_ptr<engine::StatementExecutor> executor);
  bool has(dialect::EngineKind kind) const;
  // Null when nothing is registered for the kind.
  engine::StatementExecutor* find(dialect::EngineKind kind) const;

 private:
  std::map<dialect::EngineKind, std::shared_ptr<engine::StatementExecutor>> executors_;
};

enum class RouteStatus { Executed, NoEngine, NotRegistered };
std::string_view route_status_name(RouteStatus status);

// A routing failure is an outcome, not an exception: the caller gets the
// cost vector either way, and a non-Executed outcome is guaranteed to have
// dispatched nothing (cost.conn stays 0). Errors raised by the engine itself
// propagate as EngineError, prefixed with the engine name.
struct RouteOutcome {
  RouteStatus status = RouteStatus::NoEngine;
  dialect::EngineKind engine = dialect::EngineKind::NoEngine;
  engine::QueryResult result;
  std::string message;  // set on non-Executed outcomes
};

RouteOutcome route_and_execute(std::string_view raw, const dialect::SignatureCorpus& corpus,
                               const EngineRegistry& engines);

// Join plans are structural: an ordered table list plus one equi-join
// predicate per added table. Linear chains each predicate between
// neighbours (tables[i].left = tables[i+1].right); star joins every
// satellite back to tables[0]. Over predicates that name the same key
// everywhere the two shapes are logically equivalent and differ only in
// measured cost.
enum class JoinShape { Linear, Star };
std::string_view join_shape_name(JoinShape shape);

struct JoinPredicate {
  std::string left_column;   // column of the chain/hub table
  std::string right_column;  // column of the table being joined in
};

// Named input relations for join execution.
using TableSet = std::map<std::string, ResultSet>;

struct JoinPlan {
  JoinShape shape = JoinShape::Linear;
  std::vector<std::string> tables;
  std::vector<JoinPredicate> predicates;  // size = tables.size() - 1

  std::size_t join_count() const { return predicates.size(); }
  // Structural check: >= 2 distinct tables, exactly one predicate per
  // joined-in table, non-empty names. Column existence surfaces at
  // execution, where the inputs are known.
  void validate() const;
  // Output columns (table-qualified "t.col", tables in plan order); also
  // verifies the plan against the given inputs.
  std::vector<std::string> result_schema(const TableSet& tables) const;

  // {"shape": "linear"|"star", "tables": [...],
  //  "predicates": [{"left": col, "right": col}, ...]}
  static JoinPlan parse(std::string_view json_text);
  std::string to_json() const;
};

// Pairwise hash joins in plan order, build side = smaller input. Join keys
// match on typed equality (integer 1 and text "1" differ); null keys never
// match. Cost: t_io = input-table rows (each read once), t_conn = one scan
// per input table, t_cpu = hash-build insertions + probes + emitted matches.
engine::QueryResult execute_join(const JoinPlan& plan, const TableSet& tables);

struct RankedPlan {
  std::size_t plan_index = 0;  // position in the input plan list
  cost::CostVector cost;
  double plan_cost = 0;
};

// Executes every plan, ranks by plan_cost ascending; ties keep input order.
// All plans must produce the same result schema, otherwise they are not
// alternatives for one logical join and the comparison is refused. The
// ranking depends only on the ordering of plan_cost values: scaling all
// coefficients by one positive factor never changes it.
std::vector<RankedPlan> compare_plans(const std::vector<JoinPlan>& plans,
                                      const cost::CostCoefficients& coefficients,
                                      const TableSet& tables);

}  // namespace polygate::query

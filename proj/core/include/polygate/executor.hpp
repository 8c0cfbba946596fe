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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polygate/cost.hpp"
#include "polygate/dialect.hpp"
#include "polygate/value.hpp"

namespace polygate::engine {

// Comparison semantics shared by every engine's predicate evaluation:
// integers and reals compare numerically with each other, any other type
// mixture never satisfies the predicate (not even Ne), same-type values use
// the natural order.
enum class CompareOp { Eq, Ne, Lt, Lte, Gt, Gte };
bool value_satisfies(const Value& have, CompareOp op, const Value& want);
std::optional<CompareOp> compare_op_from_text(std::string_view text);
std::string_view compare_op_text(CompareOp op);

// Per-field comparison conditions, AND-ed together; an empty list matches
// everything. A condition on a field the row/document lacks never matches.
struct FieldCondition {
  std::string field;
  CompareOp op = CompareOp::Eq;
  Value value;
};
using ConditionList = std::vector<FieldCondition>;

// What a statement execution hands back: result rows (for writes, the rows
// affected) and the abstract resource charges the gateway accounts for.
// Cost convention shared by all engines: t_io counts documents/rows touched,
// t_cpu counts predicate evaluations, t_conn counts engine dispatches.
struct QueryResult {
  ResultSet rows;
  cost::CostVector cost;
  double elapsed_ms = 0;
};

class StatementExecutor {
 public:
  virtual ~StatementExecutor() = default;
  // Throws EngineError for statements outside the engine's dialect subset.
  virtual QueryResult execute(const dialect::QueryStatement& statement) = 0;
};

}  // namespace polygate::engine

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

#include "polygate/executor.hpp"

namespace polygate::engine {

bool value_satisfies(const Value& have, CompareOp op, const Value& want) {
  const bool have_num =
      std::holds_alternative<std::int64_t>(have) || std::holds_alternative<double>(have);
  const bool want_num =
      std::holds_alternative<std::int64_t>(want) || std::holds_alternative<double>(want);
  int cmp;
  if (have_num && want_num) {
    const double a = std::holds_alternative<double>(have)
                         ? std::get<double>(have)
                         : static_cast<double>(std::get<std::int64_t>(have));
    const double b = std::holds_alternative<double>(want)
                         ? std::get<double>(want)
                         : static_cast<double>(std::get<std::int64_t>(want));
    cmp = a < b ? -1 : (a > b ? 1 : 0);
  } else if (have.index() != want.index()) {
    return false;
  } else {
    cmp = have < want ? -1 : (want < have ? 1 : 0);
  }
  switch (op) {
    case CompareOp::Eq: return cmp == 0;
    case CompareOp::Ne: return cmp != 0;
    case CompareOp::Lt: return cmp < 0;
    case CompareOp::Lte: return cmp <= 0;
    case CompareOp::Gt: return cmp > 0;
    case CompareOp::Gte: return cmp >= 0;
  }
  return false;
}

std::optional<CompareOp> compare_op_from_text(std::string_view text) {
  if (text == "=" || text == "==") return CompareOp::Eq;
  if (text == "!=" || text == "<>") return CompareOp::Ne;
  if (text == "<") return CompareOp::Lt;
  if (text == "<=") return CompareOp::Lte;
  if (text == ">") return CompareOp::Gt;
  if (text == ">=") return CompareOp::Gte;
  return std::nullopt;
}

std::string_view compare_op_text(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Lte: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Gte: return ">=";
  }
  return "=";
}

}  // namespace polygate::engine

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

#include "polygate/cost.hpp"

#include <nlohmann/json.hpp>

#include "polygate/errors.hpp"

namespace polygate::cost {

void CostVector::validate() const {
  if (cpu < 0 || io < 0 || conn < 0) {
    throw DomainError("cost components must be non-negative");
  }
}

void CostCoefficients::validate() const {
  if (constant < 0 || alpha < 0 || beta < 0 || gamma < 0) {
    throw DomainError("cost coefficients must be non-negative");
  }
}

CostConfig parse_cost_config(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("cost config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("cost config must be a JSON object");

  CostConfig out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) {
      throw InputError("cost config key '" + key + "' must be a number");
    }
    double d = value.get<double>();
    if (key == "const") {
      out.coefficients.constant = d;
    } else if (key == "alpha") {
      out.coefficients.alpha = d;
    } else if (key == "beta") {
      out.coefficients.beta = d;
    } else if (key == "gamma") {
      out.coefficients.gamma = d;
    } else if (key == "t_cpu") {
      out.vector.cpu = d;
    } else if (key == "t_io") {
      out.vector.io = d;
    } else if (key == "t_conn") {
      out.vector.conn = d;
    } else {
      throw InputError("cost config has unknown key '" + key + "'");
    }
  }
  out.coefficients.validate();
  out.vector.validate();
  return out;
}

double plan_cost(const CostCoefficients& coef, const CostVector& v) {
  coef.validate();
  v.validate();
  return coef.constant * (coef.alpha * v.cpu + coef.beta * v.io + coef.gamma * v.conn);
}

double total_cost(const CostCoefficients& coef, const CostVector& v) {
  CostCoefficients unit = coef;
  unit.constant = 1.0;
  return plan_cost(unit, v);
}

double average_time(double total, std::int64_t join_count) {
  if (join_count <= 0) throw DomainError("average time needs a positive join count");
  return total / static_cast<double>(join_count);
}

double ingestion_rate(std::int64_t record_count, double avg_time) {
  if (record_count < 0) throw DomainError("record count must be non-negative");
  if (avg_time <= 0) throw DomainError("ingestion rate needs a positive average time");
  return static_cast<double>(record_count) / avg_time;
}

}  // namespace polygate::cost

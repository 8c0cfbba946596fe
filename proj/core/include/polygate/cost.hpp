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
#include <string_view>

namespace polygate::cost {

// Abstract resource charges of one plan or operation. These are unit-free
// counts (comparisons, rows, dispatches), not wall-clock measurements: the
// model's only promise is a deterministic ordering of plans, never a
// prediction of milliseconds.
struct CostVector {
  double cpu = 0;   // t_cpu
  double io = 0;    // t_io
  double conn = 0;  // t_conn
  void validate() const;

  CostVector& operator+=(const CostVector& o) {
    cpu += o.cpu;
    io += o.io;
    conn += o.conn;
    return *this;
  }
};

// Weights of the cost terms. A coefficient left out of the JSON config
// behaves as zero; the cardinality multiplier defaults to one so that the
// weighted sum and the plan cost coincide unless a caller scales it.
struct CostCoefficients {
  double constant = 1.0;  // "const" in the JSON config, >= 0
  double alpha = 0;       // weight of t_cpu
  double beta = 0;        // weight of t_io
  double gamma = 0;       // weight of t_conn
  void validate() const;
};

struct CostConfig {
  CostCoefficients coefficients;
  CostVector vector;
};

// Reads {const, alpha, beta, gamma, t_cpu, t_io, t_conn} from a JSON object;
// every key optional, missing weights and charges read as zero ("const" as
// one). Unknown keys are rejected so typos don't silently zero a weight.
CostConfig parse_cost_config(std::string_view json_text);

// plan_cost = const * (alpha * t_cpu + beta * t_io + gamma * t_conn).
double plan_cost(const CostCoefficients& coef, const CostVector& v);

// The same weighted sum with the cardinality multiplier pinned to one.
double total_cost(const CostCoefficients& coef, const CostVector& v);

// average_time = total / join_count; join_count must be positive.
double average_time(double total, std::int64_t join_count);

// ingestion_rate = record_count / avg_time; avg_time must be positive.
double ingestion_rate(std::int64_t record_count, double avg_time);

}  // namespace polygate::cost

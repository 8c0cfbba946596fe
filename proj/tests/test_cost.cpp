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

#include <random>

#include "doctest.h"
#include "polygate/cost.hpp"
#include "polygate/errors.hpp"

using namespace polygate;
using cost::CostCoefficients;
using cost::CostVector;

TEST_SUITE_BEGIN("cost");

TEST_CASE("plan cost: worked examples") {
  CostCoefficients coef{1, 1, 1, 1};
  CostVector v{10, 20, 5};
  CHECK(cost::plan_cost(coef, v) == doctest::Approx(35).epsilon(1e-12));
  coef.constant = 2;
  CHECK(cost::plan_cost(coef, v) == doctest::Approx(70).epsilon(1e-12));
  coef = CostCoefficients{1, 0, 0, 0};
  CHECK(cost::plan_cost(coef, v) == 0);
}

TEST_CASE("total cost: worked examples") {
  CHECK(cost::total_cost({1, 1, 1, 1}, {10, 20, 5}) == doctest::Approx(35).epsilon(1e-12));
  CHECK(cost::total_cost({1, 1, 0, 0}, {7, 99, 99}) == doctest::Approx(7).epsilon(1e-12));
  CHECK(cost::total_cost({1, 2, 3, 1}, {1, 1, 1}) == doctest::Approx(6).epsilon(1e-12));
}

TEST_CASE("total cost equals plan cost at unit cardinality, for random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(0, 1000);
  for (int i = 0; i < 200; ++i) {
    CostCoefficients coef{1, d(rng), d(rng), d(rng)};
    CostVector v{d(rng), d(rng), d(rng)};
    CHECK(cost::total_cost(coef, v) == doctest::Approx(cost::plan_cost(coef, v)).epsilon(1e-12));
    // and the cardinality multiplier is exactly linear
    auto scaled = coef;
    scaled.constant = 3.5;
    CHECK(cost::plan_cost(scaled, v) ==
          doctest::Approx(3.5 * cost::plan_cost(coef, v)).epsilon(1e-12));
  }
}

TEST_CASE("average time: worked examples and domain") {
  CHECK(cost::average_time(35, 7) == doctest::Approx(5).epsilon(1e-12));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0, 1e9);
  for (int i = 0; i < 50; ++i) {
    double x = d(rng);
    CHECK(cost::average_time(x, 1) == x);
  }
  CHECK_THROWS_AS(cost::average_time(35, 0), DomainError);
  CHECK_THROWS_AS(cost::average_time(35, -3), DomainError);
}

TEST_CASE("ingestion rate: worked examples and domain") {
  CHECK(cost::ingestion_rate(1000, 5) == doctest::Approx(200).epsilon(1e-12));
  CHECK(cost::ingestion_rate(0, 5) == 0);
  CHECK(cost::ingestion_rate(1'000'000, 340) ==
        doctest::Approx(1'000'000.0 / 340.0).epsilon(1e-9));
  CHECK_THROWS_AS(cost::ingestion_rate(1000, 0), DomainError);
  CHECK_THROWS_AS(cost::ingestion_rate(1000, -1), DomainError);
  CHECK_THROWS_AS(cost::ingestion_rate(-1, 5), DomainError);
}

TEST_CASE("validation: negative charges and weights are rejected") {
  CostVector bad{-1, 0, 0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CostCoefficients coef;
  coef.alpha = -0.5;
  CHECK_THROWS_AS(coef.validate(), DomainError);
  coef = {};
  coef.constant = -1;
  CHECK_THROWS_AS(coef.validate(), DomainError);
}

TEST_CASE("cost vector accumulation") {
  CostVector a{1, 2, 3};
  a += CostVector{10, 20, 30};
  CHECK(a.cpu == 11);
  CHECK(a.io == 22);
  CHECK(a.conn == 33);
}

TEST_CASE("config parsing: every key optional, absent weight is zero") {
  auto cfg = cost::parse_cost_config("{}");
  CHECK(cfg.coefficients.constant == 1.0);
  CHECK(cfg.coefficients.alpha == 0);
  CHECK(cfg.coefficients.beta == 0);
  CHECK(cfg.coefficients.gamma == 0);
  CHECK(cfg.vector.cpu == 0);
  CHECK(cfg.vector.io == 0);
  CHECK(cfg.vector.conn == 0);

  cfg = cost::parse_cost_config(
      R"({"const": 2, "alpha": 1, "beta": 0.5, "gamma": 0.25, "t_cpu": 10, "t_io": 20, "t_conn": 5})");
  CHECK(cfg.coefficients.constant == 2);
  CHECK(cfg.coefficients.alpha == 1);
  CHECK(cfg.coefficients.beta == 0.5);
  CHECK(cfg.coefficients.gamma == 0.25);
  CHECK(cfg.vector.cpu == 10);
  CHECK(cfg.vector.io == 20);
  CHECK(cfg.vector.conn == 5);

  // a missing beta must behave exactly like beta = 0
  cfg = cost::parse_cost_config(R"({"alpha": 1, "gamma": 1, "t_cpu": 3, "t_io": 100, "t_conn": 4})");
  CHECK(cost::plan_cost(cfg.coefficients, cfg.vector) == doctest::Approx(7).epsilon(1e-12));
}

TEST_CASE("config parsing: typos are rejected, not zeroed") {
  CHECK_THROWS_AS(cost::parse_cost_config(R"({"alhpa": 1})"), InputError);
  CHECK_THROWS_AS(cost::parse_cost_config("not json"), InputError);
  CHECK_THROWS_AS(cost::parse_cost_config("[1,2,3]"), InputError);
  CHECK_THROWS_AS(cost::parse_cost_config(R"({"alpha": "high"})"), InputError);
}

TEST_SUITE_END();

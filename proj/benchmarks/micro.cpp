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

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "polygate/dialect.hpp"
#include "polygate/document_engine.hpp"
#include "polygate/kmeans.hpp"
#include "polygate/query_exec.hpp"
#include "polygate/synthetic.hpp"
#include "polygate/token_ring.hpp"

namespace {

using namespace polygate;

const char* kStatements[] = {
    "Select * from People where id=3",
    "db. People. Update ({custage: {$gt: 2}}, {$set: {branch: 'main'}}, {multi: true})",
    "UPDATE People SET comments ='x' WHERE id = fb372533-eb95-4bb4-8685-6ef61e994caa IF EXISTS;",
    "MATCH (n:Person)-[:FRIEND]->(m) RETURN m;",
};

void BM_Tokenize(benchmark::State& state) {
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dialect::tokenize(kStatements[i++ % 4]));
  }
}
BENCHMARK(BM_Tokenize);

void BM_DetectEngine(benchmark::State& state) {
  const auto& corpus = dialect::default_corpus();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dialect::detect_engine(kStatements[i++ % 4], corpus));
  }
}
BENCHMARK(BM_DetectEngine);

void BM_DocumentInsert(benchmark::State& state) {
  const auto records = bench::generate_records(static_cast<std::size_t>(state.range(0)), 11);
  for (auto _ : state) {
    state.PauseTiming();
    engine::ShardedCluster cluster({"s0", "s1", "s2"}, 16384);
    cluster.create_collection("cases", true, "id");
    state.ResumeTiming();
    for (const auto& r : records) cluster.insert("cases", bench::record_to_document(r));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DocumentInsert)->Arg(1000)->Arg(10000);

void BM_TokenAssignment(benchmark::State& state) {
  engine::TokenRing ring({"n0", "n1", "n2", "n3"}, 2);
  std::uint64_t key = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::assign_token(ring, "key-" + std::to_string(key++)));
  }
}
BENCHMARK(BM_TokenAssignment);

void BM_KMeans(benchmark::State& state) {
  const auto records = bench::generate_records(static_cast<std::size_t>(state.range(0)), 11);
  std::vector<ingest::Point> points;
  for (const auto& [idx, p] : ingest::clustering_features(records)) points.push_back(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ingest::kmeans_sequential(points, 4, 11));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_KMeans)->Arg(1000)->Arg(10000);

void BM_HashJoin(benchmark::State& state) {
  const auto records = bench::generate_records(static_cast<std::size_t>(state.range(0)), 11);
  const ResultSet table = bench::records_to_table(records);
  query::JoinPlan plan;
  plan.tables = {"a", "b", "c", "d"};
  plan.predicates = {{"id", "id"}, {"id", "id"}, {"id", "id"}};
  query::TableSet tables{{"a", table}, {"b", table}, {"c", table}, {"d", table}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(query::execute_join(plan, tables));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}
BENCHMARK(BM_HashJoin)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();

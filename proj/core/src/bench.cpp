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

#include "polygate/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <memory>
#include <set>

#include <nlohmann/json.hpp>

#include "polygate/document_engine.hpp"
#include "polygate/errors.hpp"
#include "polygate/ingest.hpp"
#include "polygate/query_exec.hpp"
#include "polygate/relational_engine.hpp"
#include "polygate/stats.hpp"
#include "polygate/token_ring.hpp"
#include "polygate/widecolumn_engine.hpp"

namespace polygate::bench {

std::string_view workload_name(Workload w) {
  switch (w) {
    case Workload::Ingest: return "ingest";
    case Workload::Retrieve: return "retrieve";
    case Workload::Joins: return "joins";
    case Workload::Stats: return "stats";
  }
  return "ingest";
}

std::optional<Workload> workload_from_name(std::string_view name) {
  if (name == "ingest") return Workload::Ingest;
  if (name == "retrieve") return Workload::Retrieve;
  if (name == "joins") return Workload::Joins;
  if (name == "stats") return Workload::Stats;
  return std::nullopt;
}

void BenchSpec::validate() const {
  if (engines.empty()) throw InputError("bench spec names no engines");
  for (dialect::EngineKind e : engines) {
    if (e != dialect::EngineKind::Relational && e != dialect::EngineKind::DocumentStore &&
        e != dialect::EngineKind::WideColumn) {
      throw InputError("bench engines must be Relational, DocumentStore or WideColumn");
    }
  }
  if (scales.empty()) throw InputError("bench spec names no scales");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1]) throw InputError("scales must be strictly increasing");
  }
  if (repetitions < 1) throw InputError("repetitions must be at least 1");
  if (join_counts.empty()) throw InputError("join_counts must be non-empty");
  for (int j : join_counts) {
    if (j < 1) throw InputError("join counts must be at least 1");
  }
}

BenchSpec BenchSpec::parse(std::string_view json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InputError("bench spec is not a JSON object");
  static const std::set<std::string> kKnown = {
      "workload", "engines",  "scales",  "join_counts", "repetitions",
      "seed",     "dataset",  "profile", "allow_empty", "mix"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) throw InputError("unknown bench spec key: " + key);
  }

  BenchSpec spec;
  if (!j.contains("workload") || !j["workload"].is_string()) {
    throw InputError("bench spec needs a workload");
  }
  auto w = workload_from_name(j["workload"].get<std::string>());
  if (!w) throw InputError("unknown workload: " + j["workload"].get<std::string>());
  spec.workload = *w;

  if (!j.contains("engines") || !j["engines"].is_array()) {
    throw InputError("bench spec needs an engines array");
  }
  for (const auto& e : j["engines"]) {
    if (!e.is_string()) throw InputError("engine names must be strings");
    auto kind = dialect::engine_kind_from_name(e.get<std::string>());
    if (!kind) throw InputError("unknown engine: " + e.get<std::string>());
    spec.engines.push_back(*kind);
  }

  if (!j.contains("scales") || !j["scales"].is_array()) {
    throw InputError("bench spec needs a scales array");
  }
  for (const auto& s : j["scales"]) {
    if (!s.is_number_unsigned()) throw InputError("scales must be non-negative integers");
    spec.scales.push_back(s.get<std::size_t>());
  }

  if (j.contains("join_counts")) {
    spec.join_counts.clear();
    for (const auto& c : j["join_counts"]) {
      if (!c.is_number_integer()) throw InputError("join counts must be integers");
      spec.join_counts.push_back(c.get<int>());
    }
  }
  if (j.contains("repetitions")) spec.repetitions = j["repetitions"].get<int>();
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("dataset")) spec.dataset_path = j["dataset"].get<std::string>();
  if (j.contains("profile")) spec.profile = j["profile"].get<std::string>();
  if (j.contains("allow_empty")) spec.allow_empty = j["allow_empty"].get<bool>();
  if (j.contains("mix")) {
    const auto& m = j["mix"];
    spec.mix.active = m.value("active", spec.mix.active);
    spec.mix.recovered = m.value("recovered", spec.mix.recovered);
    spec.mix.dead = m.value("dead", spec.mix.dead);
  }

  spec.validate();
  return spec;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// A loaded engine instance plus the uniform read surface the workloads need.
struct EngineHarness {
  std::function<void(const std::vector<ingest::CaseRecord>&)> ingest;
  std::function<std::size_t()> filtered_scan;  // rows matching status=active
  std::function<ResultSet()> scan;
};

EngineHarness make_harness(dialect::EngineKind kind, std::uint64_t seed) {
  using ingest::CaseRecord;
  EngineHarness h;
  switch (kind) {
    case dialect::EngineKind::DocumentStore: {
      auto cluster = std::make_shared<engine::ShardedCluster>(
          std::vector<std::string>{"shard-0", "shard-1", "shard-2"}, std::size_t{65536});
      cluster->create_collection("cases", /*sharded=*/true, "id");
      h.ingest = [cluster](const std::vector<CaseRecord>& records) {
        for (const CaseRecord& r : records) cluster->insert("cases", record_to_document(r));
      };
      h.filtered_scan = [cluster]() {
        engine::DocFilter filter{{"status", engine::CompareOp::Eq, Value{std::string("active")}}};
        return cluster->find_docs("cases", filter).size();
      };
      h.scan = [cluster]() {
        ResultSet rs;
        rs.columns = {"id",   "age",           "sex",    "country",
                      "province", "date_confirmed", "status", "linked_id"};
        for (const engine::Document& d : cluster->find_docs("cases", {})) {
          std::vector<Value> row;
          row.reserve(rs.columns.size());
          for (const std::string& c : rs.columns) {
            auto it = d.body.find(c);
            row.push_back(it == d.body.end() ? Value{Null{}} : it->second);
          }
          rs.rows.push_back(std::move(row));
        }
        return rs;
      };
      break;
    }
    case dialect::EngineKind::WideColumn: {
      auto store = std::make_shared<engine::WideColumnStore>(
          engine::TokenRing({"node-0", "node-1", "node-2", "node-3"}), seed);
      store->create_table("cases",
                          {"id", "age", "sex", "country", "province", "date_confirmed",
                           "status", "linked_id"},
                          "id");
      h.ingest = [store](const std::vector<CaseRecord>& records) {
        for (const CaseRecord& r : records) store->upsert_row("cases", record_to_cells(r));
      };
      h.filtered_scan = [store]() {
        engine::ConditionList filter{
            {"status", engine::CompareOp::Eq, Value{std::string("active")}}};
        return store->select_rows("cases", filter).rows.size();
      };
      h.scan = [store]() { return store->scan("cases"); };
      break;
    }
    default: {
      auto store = std::make_shared<engine::RelationalStore>();
      store->create_table("cases", {"id", "age", "sex", "country", "province",
                                    "date_confirmed", "status", "linked_id"});
      h.ingest = [store](const std::vector<CaseRecord>& records) {
        const ResultSet table = records_to_table(records);
        for (const auto& row : table.rows) store->insert_row("cases", row);
      };
      h.filtered_scan = [store]() {
        const ResultSet all = store->scan("cases");
        const std::size_t status_col = 6;
        std::size_t matched = 0;
        for (const auto& row : all.rows) {
          if (engine::value_satisfies(row[status_col], engine::CompareOp::Eq,
                                      Value{std::string("active")})) {
            ++matched;
          }
        }
        return matched;
      };
      h.scan = [store]() { return store->scan("cases"); };
      break;
    }
  }
  return h;
}

query::JoinPlan self_join_plan(int join_count) {
  query::JoinPlan plan;
  plan.shape = query::JoinShape::Linear;
  for (int i = 0; i <= join_count; ++i) plan.tables.push_back("j" + std::to_string(i));
  for (int i = 0; i < join_count; ++i) plan.predicates.push_back({"id", "id"});
  return plan;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();

  // A CSV dataset is parsed once; scales take prefixes. Synthetic data is
  // regenerated per scale from the same seed.
  std::vector<ingest::CaseRecord> dataset;
  if (!spec.dataset_path.empty()) {
    const ingest::ParseReport report =
        ingest::parse_line_list(spec.dataset_path, ingest::ProfileSet::bundled().at(spec.profile),
                                ingest::OutcomeMap::bundled());
    dataset = report.records;
  }
  auto records_at_scale = [&](std::size_t scale) {
    if (spec.dataset_path.empty()) return generate_records(scale, spec.seed, spec.mix);
    const std::size_t n = std::min(scale, dataset.size());
    return std::vector<ingest::CaseRecord>(dataset.begin(), dataset.begin() + n);
  };

  std::vector<BenchRow> rows;
  for (dialect::EngineKind kind : spec.engines) {
    for (std::size_t scale : spec.scales) {
      const std::vector<ingest::CaseRecord> records = records_at_scale(scale);
      BenchRow base;
      base.workload = std::string(workload_name(spec.workload));
      base.engine = std::string(dialect::engine_kind_name(kind));
      base.scale = scale;

      switch (spec.workload) {
        case Workload::Ingest: {
          for (int rep = 1; rep <= spec.repetitions; ++rep) {
            EngineHarness h = make_harness(kind, spec.seed);
            const auto start = Clock::now();
            h.ingest(records);
            BenchRow row = base;
            row.repetition = rep;
            row.elapsed_ms = ms_since(start);
            row.cost.io = static_cast<double>(records.size());
            row.cost.conn = 1;
            // rate from this repetition's own elapsed; floored to the clock
            // granularity so an empty ingest still yields a rate
            row.ingestion_rate = cost::ingestion_rate(
                static_cast<std::int64_t>(records.size()), std::max(row.elapsed_ms, 1e-6));
            rows.push_back(std::move(row));
          }
          break;
        }
        case Workload::Retrieve: {
          EngineHarness h = make_harness(kind, spec.seed);
          h.ingest(records);
          for (int rep = 1; rep <= spec.repetitions; ++rep) {
            const auto start = Clock::now();
            const std::size_t matched = h.filtered_scan();
            BenchRow row = base;
            row.repetition = rep;
            row.elapsed_ms = ms_since(start);
            row.cost.io = static_cast<double>(records.size());
            row.cost.cpu = static_cast<double>(records.size());
            row.cost.conn = 1;
            (void)matched;
            rows.push_back(std::move(row));
          }
          break;
        }
        case Workload::Joins: {
          EngineHarness h = make_harness(kind, spec.seed);
          h.ingest(records);
          const ResultSet table = h.scan();
          for (int join_count : spec.join_counts) {
            const query::JoinPlan plan = self_join_plan(join_count);
            query::TableSet tables;
            for (const std::string& name : plan.tables) tables[name] = table;
            for (int rep = 1; rep <= spec.repetitions; ++rep) {
              engine::QueryResult jr = query::execute_join(plan, tables);
              BenchRow row = base;
              row.join_count = join_count;
              row.repetition = rep;
              row.elapsed_ms = jr.elapsed_ms;
              row.cost = jr.cost;
              rows.push_back(std::move(row));
            }
          }
          break;
        }
        case Workload::Stats: {
          for (int rep = 1; rep <= spec.repetitions; ++rep) {
            const auto start = Clock::now();
            const query::StatsSummary summary = query::compute_stats(records);
            BenchRow row = base;
            row.repetition = rep;
            row.elapsed_ms = ms_since(start);
            row.cost.io = static_cast<double>(records.size());
            row.cost.cpu = static_cast<double>(summary.total);
            row.cost.conn = 1;
            rows.push_back(std::move(row));
          }
          break;
        }
      }
    }
  }
  return rows;
}

namespace {

std::string format_number(double x) { return value_to_string(Value{x}); }

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

std::string report_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "workload,engine,scale,join_count,repetition,elapsed_ms,t_cpu,t_io,t_conn,ingestion_rate\n";
  for (const BenchRow& r : rows) {
    out += r.workload;
    out += ',';
    out += r.engine;
    out += ',';
    out += std::to_string(r.scale);
    out += ',';
    if (r.join_count) out += std::to_string(*r.join_count);
    out += ',';
    out += std::to_string(r.repetition);
    out += ',';
    out += format_number(r.elapsed_ms);
    out += ',';
    out += format_number(r.cost.cpu);
    out += ',';
    out += format_number(r.cost.io);
    out += ',';
    out += format_number(r.cost.conn);
    out += ',';
    if (r.ingestion_rate) out += format_number(*r.ingestion_rate);
    out += '\n';
  }
  return out;
}

std::string report_summary_json(const std::vector<BenchRow>& rows) {
  struct Group {
    const BenchRow* sample;
    std::vector<double> elapsed, cpu, io, conn;
  };
  // first-appearance order; rows arrive already grouped by run_bench order
  std::vector<Group> groups;
  auto same_group = [](const BenchRow& a, const BenchRow& b) {
    return a.workload == b.workload && a.engine == b.engine && a.scale == b.scale &&
           a.join_count == b.join_count;
  };
  for (const BenchRow& r : rows) {
    if (groups.empty() || !same_group(*groups.back().sample, r)) {
      groups.push_back({&r, {}, {}, {}, {}});
    }
    Group& g = groups.back();
    g.elapsed.push_back(r.elapsed_ms);
    g.cpu.push_back(r.cost.cpu);
    g.io.push_back(r.cost.io);
    g.conn.push_back(r.cost.conn);
  }

  nlohmann::json j;
  j["note"] =
      "elapsed_ms is wall-clock and hardware-specific; t_cpu/t_io/t_conn are abstract cost "
      "counts, not time";
  nlohmann::json out_groups = nlohmann::json::array();
  for (const Group& g : groups) {
    nlohmann::json gj;
    gj["workload"] = g.sample->workload;
    gj["engine"] = g.sample->engine;
    gj["scale"] = g.sample->scale;
    gj["join_count"] = g.sample->join_count ? nlohmann::json(*g.sample->join_count)
                                            : nlohmann::json(nullptr);
    gj["repetitions"] = g.elapsed.size();
    const double med_elapsed = median(g.elapsed);
    gj["median_elapsed_ms"] = med_elapsed;
    cost::CostVector med_cost{median(g.cpu), median(g.io), median(g.conn)};
    gj["median_t_cpu"] = med_cost.cpu;
    gj["median_t_io"] = med_cost.io;
    gj["median_t_conn"] = med_cost.conn;
    gj["total_cost"] = cost::total_cost({1.0, 1.0, 1.0, 1.0}, med_cost);
    if (g.sample->join_count) {
      gj["average_time_ms"] = cost::average_time(med_elapsed, *g.sample->join_count);
    } else {
      gj["average_time_ms"] = nullptr;
    }
    if (g.sample->workload == "ingest" && med_elapsed > 0) {
      // median t_io is the ingested record count, which a capped dataset can
      // leave below the nominal scale
      gj["ingestion_rate"] =
          cost::ingestion_rate(static_cast<std::int64_t>(med_cost.io), med_elapsed);
    } else {
      gj["ingestion_rate"] = nullptr;
    }
    gj["external_baseline"] = nullptr;
    out_groups.push_back(std::move(gj));
  }
  j["groups"] = std::move(out_groups);
  return j.dump(2) + "\n";
}

void emit_report(const std::vector<BenchRow>& rows, const std::string& csv_path,
                 const std::string& summary_path, bool allow_empty) {
  if (rows.empty() && !allow_empty) {
    throw InputError("refusing to write an empty report (pass allow_empty to permit)");
  }
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw InputError("cannot write " + csv_path);
  csv << report_csv(rows);
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) throw InputError("cannot write " + summary_path);
  summary << report_summary_json(rows);
}

}  // namespace polygate::bench

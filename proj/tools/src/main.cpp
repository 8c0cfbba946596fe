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

// polygate: route statements across engine dialects, size clusters, ingest
// line lists, execute join plans and run measurement campaigns.
//
// Every subcommand is a thin adapter over the library: it parses flags,
// calls one module and serializes that module's result. Exit codes: 0 on
// success, 1 on bad input (including a statement no dialect matches), 2 on
// internal failure.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polygate/bench.hpp"
#include "polygate/capacity.hpp"
#include "polygate/cost.hpp"
#include "polygate/dialect.hpp"
#include "polygate/document_engine.hpp"
#include "polygate/errors.hpp"
#include "polygate/ingest.hpp"
#include "polygate/kmeans.hpp"
#include "polygate/query_exec.hpp"
#include "polygate/relational_engine.hpp"
#include "polygate/stats.hpp"
#include "polygate/synthetic.hpp"
#include "polygate/token_ring.hpp"
#include "polygate/value_json.hpp"
#include "polygate/widecolumn_engine.hpp"

namespace {

using nlohmann::json;
using namespace polygate;

// Configuration file (JSON) with per-run defaults; explicit flags win.
struct CliConfig {
  std::string corpus_path;
  std::vector<dialect::EngineKind> engines_enabled = {dialect::EngineKind::Relational,
                                                      dialect::EngineKind::DocumentStore,
                                                      dialect::EngineKind::WideColumn};
  std::size_t chunk_size = 65536;
  std::size_t block_size = 65536;
  int node_count = 3;
  int replication = 1;
  cost::CostCoefficients coefficients{1.0, 1.0, 1.0, 1.0};
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

CliConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InputError("config file is not a JSON object");

  CliConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "corpus_path") {
      cfg.corpus_path = value.get<std::string>();
    } else if (key == "engines_enabled") {
      cfg.engines_enabled.clear();
      for (const auto& name : value) {
        auto kind = dialect::engine_kind_from_name(name.get<std::string>());
        if (!kind) throw InputError("config enables unknown engine: " + name.get<std::string>());
        cfg.engines_enabled.push_back(*kind);
      }
    } else if (key == "chunk_size") {
      cfg.chunk_size = value.get<std::size_t>();
    } else if (key == "block_size") {
      cfg.block_size = value.get<std::size_t>();
    } else if (key == "node_count") {
      cfg.node_count = value.get<int>();
    } else if (key == "replication") {
      cfg.replication = value.get<int>();
    } else if (key == "coefficients") {
      cfg.coefficients.constant = value.value("const", 1.0);
      cfg.coefficients.alpha = value.value("alpha", 0.0);
      cfg.coefficients.beta = value.value("beta", 0.0);
      cfg.coefficients.gamma = value.value("gamma", 0.0);
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "output_dir") {
      cfg.output_dir = value.get<std::string>();
    } else {
      throw InputError("unknown config key: " + key);
    }
  }
  if (cfg.chunk_size == 0 || cfg.block_size == 0) throw InputError("config sizes must be > 0");
  if (cfg.node_count < 1) throw InputError("config node_count must be >= 1");
  if (cfg.replication < 1 || cfg.replication > cfg.node_count) {
    throw InputError("config replication must be in [1, node_count]");
  }
  cfg.coefficients.validate();
  return cfg;
}

// Option values that carry JSON: a leading '{' or '[' is an inline
// document, anything else is a file path.
std::string slurp_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
  std::ifstream in(arg);
  if (!in) throw InputError("cannot read " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json_object(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw InputError(std::string(what) + " is not a JSON object");
  }
  return j;
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// route

int run_route(const std::vector<std::string>& statements, const dialect::SignatureCorpus& corpus) {
  bool all_matched = true;
  for (const std::string& s : statements) {
    const dialect::EngineKind kind = dialect::detect_engine(s, corpus);
    std::cout << dialect::engine_kind_name(kind) << "\n";
    if (kind == dialect::EngineKind::NoEngine) all_matched = false;
  }
  return all_matched ? 0 : 1;
}

// ---------------------------------------------------------------------------
// plan

// Shared pattern for the planners: defaults <- JSON document <- explicit
// flags, most specific wins.
double num_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j[key].get<double>() : fallback;
}

std::int64_t int_or(const json& j, const char* key, std::int64_t fallback) {
  return j.contains(key) ? j[key].get<std::int64_t>() : fallback;
}

std::vector<std::int64_t> sizes_or(const json& j, const char* key,
                                   std::vector<std::int64_t> fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<std::vector<std::int64_t>>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polygate: polystore query gateway and capacity planning toolkit"};
  app.require_subcommand(1);

  std::string config_path, corpus_path, out_dir;
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--config", config_path, "JSON config file with per-run defaults");
  app.add_option("--seed", seed_flag, "seed for every random choice this run makes");
  app.add_option("--corpus", corpus_path, "dialect signature corpus (TSV) overriding the bundled one");
  app.add_option("--out", out_dir, "directory for generated report files");

  // route ------------------------------------------------------------------
  auto* route = app.add_subcommand("route", "detect the engine dialect of statements");
  std::vector<std::string> route_statements;
  std::string route_file;
  route->add_option("statement", route_statements, "statements to classify");
  route->add_option("--file", route_file, "file with one statement per line");

  // plan -------------------------------------------------------------------
  auto* plan = app.add_subcommand("plan", "capacity planning calculators");
  plan->require_subcommand(1);

  auto* plan_hdfs = plan->add_subcommand("hdfs", "distributed-filesystem node storage");
  std::string hdfs_json;
  double opt_C = 1.0, opt_R = 3, opt_S = 0.0, opt_I = 0.0;
  plan_hdfs->add_option("--json", hdfs_json, "inputs as JSON {C, R, S, I}");
  plan_hdfs->add_option("--C", opt_C, "compression ratio");
  plan_hdfs->add_option("--R", opt_R, "replication factor");
  plan_hdfs->add_option("--S", opt_S, "initial data size, bytes");
  plan_hdfs->add_option("--I", opt_I, "intermediate working-set factor, [0,1)");

  auto* plan_mongo = plan->add_subcommand("mongo", "document-store split and collection limits");
  std::string mongo_json;
  std::int64_t opt_md = 16'777'216, opt_avg = 0, opt_c = 0;
  plan_mongo->add_option("--json", mongo_json, "inputs as JSON {md, avg, c}");
  plan_mongo->add_option("--md", opt_md, "maximum document size, bytes");
  plan_mongo->add_option("--avg", opt_avg, "average shard-key size, bytes");
  plan_mongo->add_option("--c", opt_c, "chunk size, bytes");

  auto* plan_cass = plan->add_subcommand("cassandra", "wide-column partition sizing");
  std::string cass_json;
  std::int64_t opt_Nr = 0, opt_Nc = 0, opt_Npk = 0, opt_Ns = 0, opt_tavg = 0;
  std::vector<std::int64_t> opt_ck, opt_cs, opt_cr, opt_cc;
  plan_cass->add_option("--json", cass_json,
                        "inputs as JSON {Nr, Nc, Npk, Ns, t_avg, ck_sizes, cs_sizes, cr_sizes, "
                        "cc_sizes}");
  plan_cass->add_option("--Nr", opt_Nr, "rows in the partition");
  plan_cass->add_option("--Nc", opt_Nc, "total columns");
  plan_cass->add_option("--Npk", opt_Npk, "primary-key columns");
  plan_cass->add_option("--Ns", opt_Ns, "static columns");
  plan_cass->add_option("--t_avg", opt_tavg, "per-value metadata overhead, bytes");
  plan_cass->add_option("--ck", opt_ck, "partition-key column sizes, bytes")->delimiter(',');
  plan_cass->add_option("--cs", opt_cs, "static column sizes, bytes")->delimiter(',');
  plan_cass->add_option("--cr", opt_cr, "regular column sizes, bytes")->delimiter(',');
  plan_cass->add_option("--cc", opt_cc, "clustering column sizes, bytes")->delimiter(',');

  auto* plan_clusters = plan->add_subcommand("clusters", "distinct cluster assignments count");
  std::string clusters_json;
  int opt_N = 0, opt_K = 0;
  plan_clusters->add_option("--json", clusters_json, "inputs as JSON {N, K}");
  plan_clusters->add_option("--N", opt_N, "items");
  plan_clusters->add_option("--K", opt_K, "non-empty clusters");

  // ingest -----------------------------------------------------------------
  auto* ingest_cmd = app.add_subcommand("ingest", "parse a line list, block, cluster and load it");
  std::string ingest_csv, ingest_profile = "generic", model_path;
  int ingest_k = 3;
  std::optional<std::size_t> block_size_flag;
  std::optional<int> nodes_flag, replication_flag;
  ingest_cmd->add_option("csv", ingest_csv, "line-list CSV file")->required();
  ingest_cmd->add_option("--profile", ingest_profile, "schema profile name");
  ingest_cmd->add_option("--k", ingest_k, "clusters for the record grouping step");
  ingest_cmd->add_option("--block-size", block_size_flag, "block size, bytes");
  ingest_cmd->add_option("--nodes", nodes_flag, "node count for block placement");
  ingest_cmd->add_option("--replication", replication_flag, "replicas per block");
  ingest_cmd->add_option("--model", model_path, "write the cluster model JSON here");

  // query ------------------------------------------------------------------
  auto* query_cmd = app.add_subcommand("query", "execute a join plan over named tables");
  std::string plan_arg, tables_arg;
  bool query_rows = false;
  query_cmd->add_option("--plan", plan_arg, "join plan, inline JSON or a file path")->required();
  query_cmd
      ->add_option("--tables", tables_arg,
                   "input tables as {name: {columns, rows}}, inline JSON or a file path")
      ->required();
  query_cmd->add_flag("--rows", query_rows, "include result rows in the output");

  // stats ------------------------------------------------------------------
  auto* stats_cmd = app.add_subcommand("stats", "case-load summary of a line list");
  std::string stats_csv, stats_profile = "generic";
  stats_cmd->add_option("csv", stats_csv, "line-list CSV file")->required();
  stats_cmd->add_option("--profile", stats_profile, "schema profile name");

  // bench ------------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "run a measurement campaign and write the report");
  std::string bench_spec_arg, bench_csv_name = "bench_report.csv",
                              bench_summary_name = "bench_summary.json";
  bench_cmd->add_option("--spec", bench_spec_arg, "campaign spec, inline JSON or a file path")
      ->required();
  bench_cmd->add_option("--csv", bench_csv_name, "report CSV filename");
  bench_cmd->add_option("--summary", bench_summary_name, "summary JSON filename");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CliConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed_flag) cfg.seed = *seed_flag;
    if (!corpus_path.empty()) cfg.corpus_path = corpus_path;
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    if (*route) {
      std::vector<std::string> statements = route_statements;
      if (!route_file.empty()) {
        std::ifstream in(route_file);
        if (!in) throw InputError("cannot read " + route_file);
        std::string line;
        while (std::getline(in, line)) statements.push_back(line);
      }
      if (statements.empty() && route_statements.empty() && route_file.empty()) {
        // `route ""` classifies the empty statement; bare `route` is a usage error
        throw InputError("route needs statements or --file");
      }
      const dialect::SignatureCorpus corpus = cfg.corpus_path.empty()
                                                  ? dialect::default_corpus()
                                                  : dialect::load_corpus(cfg.corpus_path);
      return run_route(statements, corpus);
    }

    if (*plan_hdfs) {
      json j = hdfs_json.empty() ? json::object()
                                 : parse_json_object(slurp_json_arg(hdfs_json), "plan input");
      capacity::HdfsSizingInput in;
      in.compression_ratio = plan_hdfs->count("--C") ? opt_C : num_or(j, "C", opt_C);
      in.replication_factor =
          plan_hdfs->count("--R") ? static_cast<int>(opt_R) : static_cast<int>(int_or(j, "R", 3));
      in.initial_data_bytes = plan_hdfs->count("--S") ? opt_S : num_or(j, "S", opt_S);
      in.intermediate_factor = plan_hdfs->count("--I") ? opt_I : num_or(j, "I", opt_I);
      print_json(json{{"H", capacity::hdfs_node_storage(in)}});
      return 0;
    }
    if (*plan_mongo) {
      json j = mongo_json.empty() ? json::object()
                                  : parse_json_object(slurp_json_arg(mongo_json), "plan input");
      capacity::ShardSizingInput in;
      in.max_doc_size = plan_mongo->count("--md") ? opt_md : int_or(j, "md", opt_md);
      in.avg_key_size = plan_mongo->count("--avg") ? opt_avg : int_or(j, "avg", opt_avg);
      in.chunk_size = plan_mongo->count("--c") ? opt_c : int_or(j, "c", opt_c);
      print_json(json{{"M", capacity::max_splits(in)},
                      {"MB", capacity::max_collection_size(in)}});
      return 0;
    }
    if (*plan_cass) {
      json j = cass_json.empty() ? json::object()
                                 : parse_json_object(slurp_json_arg(cass_json), "plan input");
      capacity::PartitionSpec spec;
      spec.rows = plan_cass->count("--Nr") ? opt_Nr : int_or(j, "Nr", 0);
      spec.total_columns = plan_cass->count("--Nc") ? opt_Nc : int_or(j, "Nc", 0);
      spec.primary_key_columns = plan_cass->count("--Npk") ? opt_Npk : int_or(j, "Npk", 0);
      spec.static_columns = plan_cass->count("--Ns") ? opt_Ns : int_or(j, "Ns", 0);
      spec.cell_overhead = plan_cass->count("--t_avg") ? opt_tavg : int_or(j, "t_avg", 0);
      spec.partition_key_sizes = plan_cass->count("--ck") ? opt_ck : sizes_or(j, "ck_sizes", {});
      spec.static_sizes = plan_cass->count("--cs") ? opt_cs : sizes_or(j, "cs_sizes", {});
      spec.regular_sizes = plan_cass->count("--cr") ? opt_cr : sizes_or(j, "cr_sizes", {});
      spec.clustering_sizes = plan_cass->count("--cc") ? opt_cc : sizes_or(j, "cc_sizes", {});
      print_json(json{{"Nv", capacity::partition_value_count(spec)},
                      {"St", capacity::partition_size(spec)}});
      return 0;
    }
    if (*plan_clusters) {
      json j = clusters_json.empty()
                   ? json::object()
                   : parse_json_object(slurp_json_arg(clusters_json), "plan input");
      const int n = plan_clusters->count("--N") ? opt_N : static_cast<int>(int_or(j, "N", 0));
      const int k = plan_clusters->count("--K") ? opt_K : static_cast<int>(int_or(j, "K", 0));
      // counts overflow 64 bits quickly, so the exact value travels as text
      print_json(json{{"count", capacity::cluster_assignment_count(n, k).str()}});
      return 0;
    }

    if (*ingest_cmd) {
      const std::size_t block_size = block_size_flag.value_or(cfg.block_size);
      const int nodes = nodes_flag.value_or(cfg.node_count);
      const int replication = replication_flag.value_or(cfg.replication);

      const ingest::ParseReport report = ingest::parse_line_list(
          ingest_csv, ingest::ProfileSet::bundled().at(ingest_profile),
          ingest::OutcomeMap::bundled());
      const std::vector<ingest::Block> blocks =
          ingest::split_into_blocks(report.records, block_size, nodes, replication);
      const ingest::ClusterModel model = ingest::cluster_blocks(blocks, ingest_k, cfg.seed);
      if (!model_path.empty()) {
        std::ofstream out(model_path, std::ios::binary);
        if (!out) throw InputError("cannot write " + model_path);
        out << ingest::cluster_model_json(model);
      }

      const bool doc_enabled =
          std::find(cfg.engines_enabled.begin(), cfg.engines_enabled.end(),
                    dialect::EngineKind::DocumentStore) != cfg.engines_enabled.end();
      if (!doc_enabled) {
        throw InputError("ingest loads the document store, which the config disables");
      }
      engine::ShardedCluster cluster({"shard-0", "shard-1", "shard-2"}, cfg.chunk_size);
      cluster.create_collection("cases", /*sharded=*/true, "id");
      for (const ingest::CaseRecord& r : report.records) {
        cluster.insert("cases", bench::record_to_document(r));
      }

      json out{{"rows_seen", report.rows_seen},
               {"records", report.records.size()},
               {"rejections", report.rejections.size()},
               {"blocks", blocks.size()},
               {"clusters",
                json{{"k", model.k},
                     {"assigned", model.assignments.size()},
                     {"iterations", model.iterations}}},
               {"engine",
                json{{"kind", dialect::engine_kind_name(dialect::EngineKind::DocumentStore)},
                     {"documents", cluster.doc_count("cases")},
                     {"chunks", cluster.chunks("cases").size()}}}};
      print_json(out);
      return 0;
    }

    if (*query_cmd) {
      const query::JoinPlan jp = query::JoinPlan::parse(slurp_json_arg(plan_arg));
      const json tj = parse_json_object(slurp_json_arg(tables_arg), "tables document");
      query::TableSet tables;
      for (const auto& [name, tdoc] : tj.items()) {
        ResultSet rs;
        if (!tdoc.is_object() || !tdoc.contains("columns") || !tdoc.contains("rows")) {
          throw InputError("table " + name + " needs columns and rows");
        }
        rs.columns = tdoc["columns"].get<std::vector<std::string>>();
        for (const auto& row : tdoc["rows"]) {
          std::vector<Value> values;
          for (const auto& cell : row) values.push_back(value_from_json(cell));
          if (values.size() != rs.columns.size()) {
            throw InputError("table " + name + " has a row of the wrong width");
          }
          rs.rows.push_back(std::move(values));
        }
        tables[name] = std::move(rs);
      }
      const engine::QueryResult result = query::execute_join(jp, tables);
      json out{{"columns", result.rows.columns},
               {"row_count", result.rows.rows.size()},
               {"cost",
                json{{"t_cpu", result.cost.cpu},
                     {"t_io", result.cost.io},
                     {"t_conn", result.cost.conn}}},
               {"elapsed_ms", result.elapsed_ms}};
      if (query_rows) {
        json rows = json::array();
        for (const auto& row : result.rows.rows) {
          json jr = json::array();
          for (const Value& v : row) jr.push_back(value_to_json(v));
          rows.push_back(std::move(jr));
        }
        out["rows"] = std::move(rows);
      }
      print_json(out);
      return 0;
    }

    if (*stats_cmd) {
      const ingest::ParseReport report = ingest::parse_line_list(
          stats_csv, ingest::ProfileSet::bundled().at(stats_profile),
          ingest::OutcomeMap::bundled());
      std::cout << query::stats_json(query::compute_stats(report.records)) << "\n";
      return 0;
    }

    if (*bench_cmd) {
      bench::BenchSpec spec = bench::BenchSpec::parse(slurp_json_arg(bench_spec_arg));
      if (seed_flag) spec.seed = *seed_flag;
      const std::vector<bench::BenchRow> rows = bench::run_bench(spec);
      std::filesystem::create_directories(cfg.output_dir);
      const std::string csv_path = (std::filesystem::path(cfg.output_dir) / bench_csv_name).string();
      const std::string summary_path =
          (std::filesystem::path(cfg.output_dir) / bench_summary_name).string();
      bench::emit_report(rows, csv_path, summary_path, spec.allow_empty);
      print_json(json{{"rows", rows.size()}, {"csv", csv_path}, {"summary", summary_path}});
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;  // unreachable: a subcommand is required
}

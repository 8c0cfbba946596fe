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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polygate/cost.hpp"
#include "polygate/dialect.hpp"
#include "polygate/synthetic.hpp"

namespace polygate::bench {

enum class Workload { Ingest, Retrieve, Joins, Stats };
std::string_view workload_name(Workload w);
std::optional<Workload> workload_from_name(std::string_view name);

// One measurement campaign: a workload over a set of engines and scales,
// repeated. Data comes from the seeded generator, or from a line-list CSV
// when dataset_path is set (scales then cap how many parsed records are
// used). Timings are wall-clock and hardware-specific; everything else
// about the produced rows is a pure function of the spec.
struct BenchSpec {
  Workload workload = Workload::Ingest;
  std::vector<dialect::EngineKind> engines;  // Relational/DocumentStore/WideColumn
  std::vector<std::size_t> scales;           // strictly increasing record counts
  std::vector<int> join_counts = {3, 5, 7, 9};
  int repetitions = 5;
  std::uint64_t seed = 0;
  std::string dataset_path;  // empty = synthetic
  std::string profile = "generic";
  StatusMix mix;
  bool allow_empty = false;  // permit an empty row set at report time

  void validate() const;
  // {"workload": ..., "engines": [...], "scales": [...], "join_counts": [...],
  //  "repetitions": N, "seed": N, "dataset": path, "profile": name,
  //  "allow_empty": bool} — workload, engines and scales are required.
  static BenchSpec parse(std::string_view json_text);
};

struct BenchRow {
  std::string workload;
  std::string engine;
  std::size_t scale = 0;
  std::optional<int> join_count;  // joins workload only
  int repetition = 0;             // 1-based
  double elapsed_ms = 0;
  cost::CostVector cost;
  std::optional<double> ingestion_rate;  // ingest workload only, records per ms
};

// Runs the campaign on fresh engine instances, one timed measurement at a
// time, rows ordered by (engine, scale, join_count, repetition).
std::vector<BenchRow> run_bench(const BenchSpec& spec);

// The report CSV: a fixed header plus one line per row —
//   workload,engine,scale,join_count,repetition,elapsed_ms,t_cpu,t_io,t_conn,ingestion_rate
// with empty cells where a column does not apply. Identical rows give
// identical bytes.
std::string report_csv(const std::vector<BenchRow>& rows);

// Companion summary: per (workload, engine, scale, join_count) group the
// median elapsed and cost components, the weighted total at unit
// coefficients, the per-join average time (joins) and the ingestion rate
// re-derived from the median elapsed (ingest). external_baseline is a slot
// for numbers published elsewhere; this library never fills it.
std::string report_summary_json(const std::vector<BenchRow>& rows);

// Writes both files; refuses an empty row set unless allow_empty.
void emit_report(const std::vector<BenchRow>& rows, const std::string& csv_path,
                 const std::string& summary_path, bool allow_empty = false);

}  // namespace polygate::bench

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
#include <map>
#include <string>
#include <vector>

#include "polygate/ingest.hpp"

namespace polygate::ingest {

using Point = std::vector<double>;

// Lloyd iteration, squared Euclidean distance, ties to the lowest cluster
// index, stop when assignments repeat or max_iter rounds have run.
//
// Initialization samples k distinct points with a seeded generator; a run is
// fully determined by (points, k, seed). If a cluster empties mid-run its
// centroid is re-seeded with the point sitting farthest from its assigned
// centroid (ties to the lowest point index).
struct KMeansResult {
  std::vector<Point> centroids;      // k rows, input dimensionality
  std::vector<int> assignments;      // one per point
  int iterations = 0;                // assignment rounds executed
  std::uint64_t seed = 0;
  std::vector<double> sse_history;   // per-round sum of squared distances
};

KMeansResult kmeans_sequential(const std::vector<Point>& points, int k, std::uint64_t seed,
                               int max_iter = 100);

// Same contract, computed MapReduce style: each block independently emits
// per-cluster (vector sum, count) partials, the reduce step folds them in
// ascending block-index order. block_sizes are run lengths over `points` in
// order and must sum to the point count. For any block split, assignments
// match the sequential run exactly and centroids agree to well below 1e-9
// per coordinate (the fixed fold order keeps the summation deterministic;
// it is not bit-identical to the sequential accumulation chain).
KMeansResult kmeans_mapreduce(const std::vector<Point>& points,
                              const std::vector<std::size_t>& block_sizes, int k,
                              std::uint64_t seed, int max_iter = 100);

// Clustering over case records. Features per record: (age, confirmed-date
// day offset, status as 0/1/2), each min-max normalized over the inputs.
// Records without an age have no complete feature vector: they are skipped
// for clustering (no assignment) but remain untouched in the record set.
struct ClusterModel {
  int k = 0;
  std::vector<Point> centroids;
  std::map<std::size_t, int> assignments;  // record index -> cluster
  int iterations = 0;
  std::uint64_t seed = 0;
};

// (record index, normalized feature vector) for every record with an age.
std::vector<std::pair<std::size_t, Point>> clustering_features(
    const std::vector<CaseRecord>& records);

ClusterModel cluster_records(const std::vector<CaseRecord>& records, int k, std::uint64_t seed,
                             int max_iter = 100);
// MapReduce path over ingestion blocks; block boundaries follow the blocks.
ClusterModel cluster_blocks(const std::vector<Block>& blocks, int k, std::uint64_t seed,
                            int max_iter = 100);

std::string cluster_model_json(const ClusterModel& model);

}  // namespace polygate::ingest

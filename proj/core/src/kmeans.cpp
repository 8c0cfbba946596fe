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

#include "polygate/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "polygate/errors.hpp"

namespace polygate::ingest {

namespace {

double dist2(const Point& a, const Point& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

void check_inputs(const std::vector<Point>& points, int k, int max_iter) {
  if (k <= 0) throw InputError("k must be positive");
  if (max_iter <= 0) throw InputError("max_iter must be positive");
  if (points.empty()) throw InputError("cannot cluster zero points");
  if (static_cast<std::size_t>(k) > points.size()) {
    throw InputError("k exceeds the number of points");
  }
  const std::size_t dim = points.front().size();
  if (dim == 0) throw InputError("points must have at least one dimension");
  for (const Point& p : points) {
    if (p.size() != dim) throw InputError("points disagree on dimensionality");
  }
}

// Seeded sampling of k distinct points: a Fisher-Yates pass over the index
// space, skipping coordinate duplicates so no two initial centroids
// coincide. mt19937_64 output is pinned by the standard, so the same seed
// draws the same centroids on every platform.
std::vector<Point> init_centroids(const std::vector<Point>& points, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<Point> centroids;
  for (std::size_t idx : order) {
    const Point& candidate = points[idx];
    if (std::find(centroids.begin(), centroids.end(), candidate) == centroids.end()) {
      centroids.push_back(candidate);
      if (static_cast<int>(centroids.size()) == k) return centroids;
    }
  }
  throw InputError("k exceeds the number of distinct points");
}

// Assigns every point to its nearest centroid (ties to the lowest cluster
// index) and records the squared distance. Shared verbatim by both
// variants so per-point arithmetic is identical.
void assign_points(const std::vector<Point>& points, const std::vector<Point>& centroids,
                   std::size_t begin, std::size_t end, std::vector<int>& assign,
                   std::vector<double>& dist) {
  for (std::size_t i = begin; i < end; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      const double d = dist2(points[i], centroids[c]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    assign[i] = best;
    dist[i] = best_d;
  }
}

// Re-seeds every empty cluster (ascending index) with the point currently
// farthest from its assigned centroid; each point is spent at most once.
void reseed_empty(const std::vector<Point>& points, const std::vector<double>& dist,
                  std::vector<std::size_t>& counts, std::vector<Point>& centroids) {
  std::vector<bool> spent(points.size(), false);
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    if (counts[c] != 0) continue;
    std::size_t farthest = points.size();
    double best = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!spent[i] && dist[i] > best) {
        best = dist[i];
        farthest = i;
      }
    }
    if (farthest == points.size()) break;  // fewer points than clusters left to fill
    spent[farthest] = true;
    centroids[c] = points[farthest];
    counts[c] = 1;  // mark filled so a later empty cluster picks elsewhere
  }
}

struct Partial {
  std::vector<Point> sums;
  std::vector<std::size_t> counts;
  double sse = 0;
};

Partial make_partial(int k, std::size_t dim) {
  Partial p;
  p.sums.assign(k, Point(dim, 0.0));
  p.counts.assign(k, 0);
  return p;
}

}  // namespace

KMeansResult kmeans_sequential(const std::vector<Point>& points, int k, std::uint64_t seed,
                               int max_iter) {
  check_inputs(points, k, max_iter);
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();

  KMeansResult out;
  out.seed = seed;
  out.centroids = init_centroids(points, k, seed);

  std::vector<int> assign(n, -1), prev(n, -1);
  std::vector<double> dist(n, 0.0);
  for (int iter = 1; iter <= max_iter; ++iter) {
    assign_points(points, out.centroids, 0, n, assign, dist);
    out.iterations = iter;
    out.sse_history.push_back(std::accumulate(dist.begin(), dist.end(), 0.0));
    if (assign == prev) break;
    prev = assign;

    // one straight accumulation pass over all points, in input order
    Partial acc = make_partial(k, dim);
    for (std::size_t i = 0; i < n; ++i) {
      Point& sum = acc.sums[assign[i]];
      for (std::size_t d = 0; d < dim; ++d) sum[d] += points[i][d];
      ++acc.counts[assign[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (acc.counts[c] == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        out.centroids[c][d] = acc.sums[c][d] / static_cast<double>(acc.counts[c]);
      }
    }
    reseed_empty(points, dist, acc.counts, out.centroids);
  }
  out.assignments = std::move(assign);
  return out;
}

KMeansResult kmeans_mapreduce(const std::vector<Point>& points,
                              const std::vector<std::size_t>& block_sizes, int k,
                              std::uint64_t seed, int max_iter) {
  check_inputs(points, k, max_iter);
  const std::size_t total = std::accumulate(block_sizes.begin(), block_sizes.end(),
                                            std::size_t{0});
  if (total != points.size()) {
    throw InputError("block sizes sum to " + std::to_string(total) + " but there are " +
                     std::to_string(points.size()) + " points");
  }
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();

  KMeansResult out;
  out.seed = seed;
  out.centroids = init_centroids(points, k, seed);

  std::vector<int> assign(n, -1), prev(n, -1);
  std::vector<double> dist(n, 0.0);
  for (int iter = 1; iter <= max_iter; ++iter) {
    // Map: each block assigns its run of points and emits per-cluster
    // (vector sum, count) partials plus a partial SSE.
    std::vector<Partial> partials;
    partials.reserve(block_sizes.size());
    std::size_t offset = 0;
    for (std::size_t bs : block_sizes) {
      Partial p = make_partial(k, dim);
      assign_points(points, out.centroids, offset, offset + bs, assign, dist);
      for (std::size_t i = offset; i < offset + bs; ++i) {
        Point& sum = p.sums[assign[i]];
        for (std::size_t d = 0; d < dim; ++d) sum[d] += points[i][d];
        ++p.counts[assign[i]];
        p.sse += dist[i];
      }
      partials.push_back(std::move(p));
      offset += bs;
    }

    // Reduce: fold partials in ascending block-index order, then divide.
    Partial acc = make_partial(k, dim);
    for (const Partial& p : partials) {
      for (int c = 0; c < k; ++c) {
        for (std::size_t d = 0; d < dim; ++d) acc.sums[c][d] += p.sums[c][d];
        acc.counts[c] += p.counts[c];
      }
      acc.sse += p.sse;
    }
    out.iterations = iter;
    out.sse_history.push_back(acc.sse);
    if (assign == prev) break;
    prev = assign;

    for (int c = 0; c < k; ++c) {
      if (acc.counts[c] == 0) continue;
      for (std::size_t d = 0; d < dim; ++d) {
        out.centroids[c][d] = acc.sums[c][d] / static_cast<double>(acc.counts[c]);
      }
    }
    reseed_empty(points, dist, acc.counts, out.centroids);
  }
  out.assignments = std::move(assign);
  return out;
}

std::vector<std::pair<std::size_t, Point>> clustering_features(
    const std::vector<CaseRecord>& records) {
  std::vector<std::pair<std::size_t, Point>> usable;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CaseRecord& r = records[i];
    if (!r.age) continue;  // no age, no complete feature vector
    usable.emplace_back(i, Point{*r.age, static_cast<double>(r.date_confirmed),
                                 static_cast<double>(static_cast<int>(r.status))});
  }
  if (usable.empty()) return usable;

  // min-max normalize each feature over the usable records
  const std::size_t dim = 3;
  Point lo(dim, std::numeric_limits<double>::infinity());
  Point hi(dim, -std::numeric_limits<double>::infinity());
  for (const auto& [idx, p] : usable) {
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  for (auto& [idx, p] : usable) {
    for (std::size_t d = 0; d < dim; ++d) {
      p[d] = hi[d] > lo[d] ? (p[d] - lo[d]) / (hi[d] - lo[d]) : 0.0;
    }
  }
  return usable;
}

namespace {

ClusterModel model_from(const std::vector<std::pair<std::size_t, Point>>& usable,
                        KMeansResult&& res, int k) {
  ClusterModel model;
  model.k = k;
  model.centroids = std::move(res.centroids);
  model.iterations = res.iterations;
  model.seed = res.seed;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    model.assignments[usable[i].first] = res.assignments[i];
  }
  return model;
}

}  // namespace

ClusterModel cluster_records(const std::vector<CaseRecord>& records, int k, std::uint64_t seed,
                             int max_iter) {
  auto usable = clustering_features(records);
  std::vector<Point> points;
  points.reserve(usable.size());
  for (auto& [idx, p] : usable) points.push_back(p);
  return model_from(usable, kmeans_sequential(points, k, seed, max_iter), k);
}

ClusterModel cluster_blocks(const std::vector<Block>& blocks, int k, std::uint64_t seed,
                            int max_iter) {
  // Concatenate in block order; feature extraction and normalization see the
  // same record order as the sequential path over the full record list.
  std::vector<CaseRecord> records;
  for (const Block& b : blocks) {
    records.insert(records.end(), b.records.begin(), b.records.end());
  }
  auto usable = clustering_features(records);
  std::vector<Point> points;
  points.reserve(usable.size());
  for (auto& [idx, p] : usable) points.push_back(p);

  // Usable-record counts per block become the MapReduce block sizes.
  std::vector<std::size_t> block_sizes;
  std::size_t record_offset = 0;
  std::size_t usable_pos = 0;
  for (const Block& b : blocks) {
    record_offset += b.records.size();
    std::size_t count = 0;
    while (usable_pos < usable.size() && usable[usable_pos].first < record_offset) {
      ++usable_pos;
      ++count;
    }
    block_sizes.push_back(count);
  }
  return model_from(usable, kmeans_mapreduce(points, block_sizes, k, seed, max_iter), k);
}

std::string cluster_model_json(const ClusterModel& model) {
  nlohmann::json j;
  j["k"] = model.k;
  j["seed"] = model.seed;
  j["iterations"] = model.iterations;
  j["centroids"] = model.centroids;
  nlohmann::json assign = nlohmann::json::array();
  for (const auto& [record, cluster] : model.assignments) {
    assign.push_back({{"record", record}, {"cluster", cluster}});
  }
  j["assignments"] = std::move(assign);
  return j.dump();
}

}  // namespace polygate::ingest

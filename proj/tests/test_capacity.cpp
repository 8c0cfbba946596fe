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

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "polygate/capacity.hpp"
#include "polygate/errors.hpp"

using namespace polygate;
using capacity::BigInt;

namespace {

// Independent oracle: count the partitions of {0..n-1} into exactly k
// non-empty blocks by enumerating restricted growth strings (a[0]=0,
// a[i] <= 1 + max(a[0..i-1])), which generate every set partition exactly
// once. Exponential, fine for n <= 10.
std::uint64_t count_partitions_brute(int n, int k) {
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::uint64_t hits = 0;
  auto walk = [&](auto&& self, int i, int maxv) -> void {
    if (i == n) {
      if (maxv + 1 == k) ++hits;
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      a[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, v > maxv ? v : maxv);
    }
  };
  if (n == 0) return k == 0 ? 1 : 0;
  walk(walk, 0, -1);
  return hits;
}

}  // namespace

TEST_SUITE_BEGIN("capacity");

TEST_CASE("node storage: worked examples") {
  capacity::HdfsSizingInput in;
  in.compression_ratio = 1;
  in.replication_factor = 1;
  in.initial_data_bytes = 1.2;
  in.intermediate_factor = 0;
  CHECK(capacity::hdfs_node_storage(in) == doctest::Approx(1.0).epsilon(1e-12));

  in = {};
  in.compression_ratio = 1;
  in.replication_factor = 3;
  in.initial_data_bytes = 100;
  in.intermediate_factor = 0.25;
  CHECK(capacity::hdfs_node_storage(in) ==
        doctest::Approx(300.0 / (0.75 * 1.2)).epsilon(1e-12));

  in.initial_data_bytes = 1;
  in.intermediate_factor = 1.0 / 3.0;
  CHECK(capacity::hdfs_node_storage(in) == doctest::Approx(3.75).epsilon(1e-12));
}

TEST_CASE("node storage: strictly increasing in every driver") {
  capacity::HdfsSizingInput base;
  base.compression_ratio = 1.5;
  base.replication_factor = 3;
  base.initial_data_bytes = 1000;
  base.intermediate_factor = 0.2;
  const double h0 = capacity::hdfs_node_storage(base);

  auto bumped = base;
  bumped.compression_ratio = 1.6;
  CHECK(capacity::hdfs_node_storage(bumped) > h0);
  bumped = base;
  bumped.replication_factor = 4;
  CHECK(capacity::hdfs_node_storage(bumped) > h0);
  bumped = base;
  bumped.initial_data_bytes = 1001;
  CHECK(capacity::hdfs_node_storage(bumped) > h0);
  bumped = base;
  bumped.intermediate_factor = 0.3;
  CHECK(capacity::hdfs_node_storage(bumped) > h0);
}

TEST_CASE("node storage: domain boundaries") {
  capacity::HdfsSizingInput in;
  in.compression_ratio = 0;
  CHECK_THROWS_AS(capacity::hdfs_node_storage(in), DomainError);
  in = {};
  in.replication_factor = 0;
  CHECK_THROWS_AS(capacity::hdfs_node_storage(in), DomainError);
  in = {};
  in.initial_data_bytes = -1;
  CHECK_THROWS_AS(capacity::hdfs_node_storage(in), DomainError);
  in = {};
  in.intermediate_factor = 1.0;  // would divide by zero
  CHECK_THROWS_AS(capacity::hdfs_node_storage(in), DomainError);
  in = {};
  in.intermediate_factor = -0.1;
  CHECK_THROWS_AS(capacity::hdfs_node_storage(in), DomainError);
}

TEST_CASE("cluster count: worked examples") {
  CHECK(capacity::cluster_assignment_count(5, 1) == 1);
  CHECK(capacity::cluster_assignment_count(3, 2) == 3);
  CHECK(capacity::cluster_assignment_count(4, 2) == 7);
}

TEST_CASE("cluster count: matches brute-force set-partition enumeration for all N <= 10") {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k <= n; ++k) {
      BigInt got = capacity::cluster_assignment_count(n, k);
      std::uint64_t want = count_partitions_brute(n, k);
      INFO("N=", n, " K=", k);
      CHECK(got == BigInt(want));
    }
  }
}

TEST_CASE("cluster count: degenerate identities") {
  for (int n = 1; n <= 12; ++n) {
    CHECK(capacity::cluster_assignment_count(n, 1) == 1);
    CHECK(capacity::cluster_assignment_count(n, n) == 1);
  }
}

TEST_CASE("cluster count: domain errors and big inputs") {
  CHECK_THROWS_AS(capacity::cluster_assignment_count(5, 0), DomainError);
  CHECK_THROWS_AS(capacity::cluster_assignment_count(5, 6), DomainError);
  CHECK_THROWS_AS(capacity::cluster_assignment_count(-1, 1), DomainError);
  // far beyond 64 bits; exactness is the point of the big integer
  BigInt big = capacity::cluster_assignment_count(100, 50);
  CHECK(big > 0);
  // recurrence cross-check: S(n,k) = k*S(n-1,k) + S(n-1,k-1)
  CHECK(capacity::cluster_assignment_count(100, 50) ==
        BigInt(50) * capacity::cluster_assignment_count(99, 50) +
            capacity::cluster_assignment_count(99, 49));
}

TEST_CASE("document split and collection ceilings: worked examples") {
  capacity::ShardSizingInput in;
  in.max_doc_size = 16'777'216;
  in.avg_key_size = 512;
  in.chunk_size = 67'108'864;
  CHECK(capacity::max_splits(in) == 32'768);
  CHECK(capacity::max_collection_size(in) == 1'099'511'627'776);  // 1 TiB

  in.avg_key_size = 16'777'216;
  in.chunk_size = 2;
  CHECK(capacity::max_splits(in) == 1);
  CHECK(capacity::max_collection_size(in) == 1);

  in.avg_key_size = 64;
  in.chunk_size = 67'108'864;
  CHECK(capacity::max_splits(in) == 262'144);
  CHECK(capacity::max_collection_size(in) == 8'796'093'022'208);
}

TEST_CASE("document sizing: domain boundaries") {
  capacity::ShardSizingInput in;
  in.avg_key_size = 0;
  in.chunk_size = 1;
  CHECK_THROWS_AS(capacity::max_splits(in), DomainError);
  in.avg_key_size = 512;
  in.chunk_size = 0;
  CHECK_THROWS_AS(capacity::max_collection_size(in), DomainError);
  in.chunk_size = 1;
  in.max_doc_size = 0;
  CHECK_THROWS_AS(capacity::max_splits(in), DomainError);
  // key larger than the document cap cannot happen in a stored document
  in.max_doc_size = 100;
  in.avg_key_size = 101;
  CHECK_THROWS_AS(capacity::max_splits(in), DomainError);
}

TEST_CASE("partition value count: worked examples") {
  capacity::PartitionSpec spec;
  spec.rows = 0;
  spec.total_columns = 3;
  spec.primary_key_columns = 1;
  spec.static_columns = 0;
  spec.partition_key_sizes = {4};
  spec.regular_sizes = {4, 4};
  CHECK(capacity::partition_value_count(spec) == 0);

  spec = {};
  spec.rows = 10;
  spec.total_columns = 5;
  spec.primary_key_columns = 2;
  spec.static_columns = 1;
  spec.partition_key_sizes = {8};
  spec.clustering_sizes = {8};
  spec.static_sizes = {16};
  spec.regular_sizes = {4, 4};
  CHECK(capacity::partition_value_count(spec) == 21);

  spec = {};
  spec.rows = 1;
  spec.total_columns = 4;
  spec.primary_key_columns = 1;
  spec.static_columns = 0;
  spec.partition_key_sizes = {4};
  spec.regular_sizes = {4, 4, 4};
  CHECK(capacity::partition_value_count(spec) == 3);
}

TEST_CASE("partition size: worked examples") {
  capacity::PartitionSpec spec;
  spec.total_columns = 4;
  spec.primary_key_columns = 2;
  spec.static_columns = 0;
  spec.partition_key_sizes = {8};
  spec.clustering_sizes = {8};
  spec.regular_sizes = {4, 4};
  spec.cell_overhead = 8;

  spec.rows = 0;
  CHECK(capacity::partition_size(spec) == 8);

  spec.rows = 100;
  CHECK(capacity::partition_size(spec) == 3208);

  spec = {};
  spec.rows = 1;
  spec.total_columns = 3;
  spec.primary_key_columns = 1;
  spec.static_columns = 1;
  spec.partition_key_sizes = {4};
  spec.static_sizes = {16};
  spec.regular_sizes = {4};
  spec.cell_overhead = 0;
  CHECK(capacity::partition_size(spec) == 24);
}

TEST_CASE("partition spec: structural invariants enforced") {
  capacity::PartitionSpec good;
  good.rows = 1;
  good.total_columns = 3;
  good.primary_key_columns = 1;
  good.static_columns = 1;
  good.partition_key_sizes = {4};
  good.static_sizes = {16};
  good.regular_sizes = {4};
  CHECK_NOTHROW(good.validate());

  auto spec = good;
  spec.primary_key_columns = 3;  // Npk + Ns > Nc
  CHECK_THROWS_AS(spec.validate(), DomainError);

  spec = good;
  spec.regular_sizes = {4, 4};  // size vectors no longer sum to Nc
  CHECK_THROWS_AS(spec.validate(), DomainError);

  spec = good;
  spec.clustering_sizes = {8};  // |ck|+|cc| != Npk
  CHECK_THROWS_AS(spec.validate(), DomainError);

  spec = good;
  spec.static_sizes = {};  // |cs| != Ns
  CHECK_THROWS_AS(spec.validate(), DomainError);

  spec = good;
  spec.rows = -1;
  CHECK_THROWS_AS(spec.validate(), DomainError);

  spec = good;
  spec.partition_key_sizes = {-4};
  CHECK_THROWS_AS(spec.validate(), DomainError);

  spec = good;
  spec.cell_overhead = -1;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_SUITE_END();

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

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace polygate::capacity {

using BigInt = boost::multiprecision::cpp_int;

// Inputs for distributed-filesystem node sizing. The planner's JSON/flag
// interface names these after the conventional symbols: C, R, S, I.
struct HdfsSizingInput {
  double compression_ratio = 1.0;   // C, > 0
  int replication_factor = 3;       // R (defaults to the usual 3)
  double initial_data_bytes = 0.0;  // S, >= 0
  double intermediate_factor = 0.0; // I, in [0, 1)
  void validate() const;
};

// Node storage H = (C * R * S) / ((1 - I) * 1.2).
//
// Note the 1.2 non-data overhead constant sits in the DENOMINATOR: a larger
// overhead allowance shrinks the estimate instead of growing it. A
// conventional sizing rule would multiply by 1.2. The formula is kept as
// published input conventions dictate; callers who want the multiplicative
// behaviour can fold 1.44 into C.
double hdfs_node_storage(const HdfsSizingInput& in);

// Number of ways to partition item_count distinguishable items into exactly
// cluster_count non-empty unlabeled clusters (Stirling number of the second
// kind), evaluated as (1/K!) * sum_{k=1..K} (-1)^(K-k) * C(K,k) * k^N in
// exact arbitrary-precision arithmetic. The division by K! is performed
// last and checked to be exact. Domain: 1 <= K <= N.
BigInt cluster_assignment_count(int item_count, int cluster_count);

// Inputs for document-store collection sizing: maximum document size md
// (16 MiB by default), average shard-key size, and chunk size, all bytes.
struct ShardSizingInput {
  std::int64_t max_doc_size = 16'777'216;  // md
  std::int64_t avg_key_size = 0;           // avg, > 0 and <= md
  std::int64_t chunk_size = 0;             // c, > 0
  void validate() const;
};

// M = floor(md / avg): how many split points a maximally sized document's
// worth of keys can carry.
std::int64_t max_splits(const ShardSizingInput& in);

// MB = M * c / 2: the collection ceiling if every chunk sits at half its
// configured size. Exact integer arithmetic; overflow of the 64-bit result
// is reported as a domain error.
std::int64_t max_collection_size(const ShardSizingInput& in);

// One wide-column partition. The planner's JSON interface names the scalar
// fields Nr, Nc, Npk, Ns and t_avg, and the size vectors ck/cs/cr/cc. The
// vectors must together cover exactly Nc columns, with |ck| + |cc| = Npk and
// |cs| = Ns; validate() enforces the arithmetic consistency.
struct PartitionSpec {
  std::int64_t rows = 0;                 // Nr
  std::int64_t total_columns = 0;        // Nc
  std::int64_t primary_key_columns = 0;  // Npk
  std::int64_t static_columns = 0;       // Ns
  std::vector<std::int64_t> partition_key_sizes;  // ck, bytes
  std::vector<std::int64_t> static_sizes;         // cs, bytes
  std::vector<std::int64_t> regular_sizes;        // cr, bytes
  std::vector<std::int64_t> clustering_sizes;     // cc, bytes
  std::int64_t cell_overhead = 0;        // t_avg, bytes per value
  void validate() const;
};

// Nv = Nr * (Nc - Npk - Ns) + Ns.
std::int64_t partition_value_count(const PartitionSpec& spec);

// St = sum(ck) + sum(cs) + Nr * (sum(cr) + sum(cc)) + t_avg * Nv.
std::int64_t partition_size(const PartitionSpec& spec);

}  // namespace polygate::capacity

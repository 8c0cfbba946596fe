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

#include "polygate/capacity.hpp"

#include <limits>
#include <numeric>

#include "polygate/errors.hpp"

namespace polygate::capacity {

void HdfsSizingInput::validate() const {
  if (compression_ratio <= 0) throw DomainError("compression ratio C must be positive");
  if (replication_factor <= 0) throw DomainError("replication factor R must be positive");
  if (initial_data_bytes < 0) throw DomainError("initial data size S must be non-negative");
  if (intermediate_factor < 0) throw DomainError("intermediate factor I must be non-negative");
  if (intermediate_factor >= 1) {
    throw DomainError("intermediate factor I must be below 1; the denominator (1 - I) * 1.2 "
                      "vanishes or turns negative otherwise");
  }
}

double hdfs_node_storage(const HdfsSizingInput& in) {
  in.validate();
  return (in.compression_ratio * in.replication_factor * in.initial_data_bytes) /
         ((1.0 - in.intermediate_factor) * 1.2);
}

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt num = 1;
  for (int i = 0; i < k; ++i) num *= n - i;
  return num / factorial(k);
}

}  // namespace

BigInt cluster_assignment_count(int item_count, int cluster_count) {
  if (cluster_count < 1 || cluster_count > item_count) {
    throw DomainError("cluster count K must satisfy 1 <= K <= N");
  }

  // Alternating inclusion-exclusion sum; exact at every step, divided by K!
  // only at the end. The sum counts surjections, so K! must divide it.
  BigInt sum = 0;
  for (int k = 1; k <= cluster_count; ++k) {
    BigInt term = binomial(cluster_count, k) * boost::multiprecision::pow(BigInt(k), item_count);
    if ((cluster_count - k) % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  BigInt kfact = factorial(cluster_count);
  if (sum % kfact != 0) {
    throw std::logic_error("surjection count not divisible by K!; formula implementation broken");
  }
  return sum / kfact;
}

void ShardSizingInput::validate() const {
  if (max_doc_size <= 0) throw DomainError("maximum document size md must be positive");
  if (avg_key_size <= 0) throw DomainError("average shard-key size must be positive");
  if (avg_key_size > max_doc_size) {
    throw DomainError("average shard-key size cannot exceed the maximum document size");
  }
  if (chunk_size <= 0) throw DomainError("chunk size must be positive");
}

std::int64_t max_splits(const ShardSizingInput& in) {
  in.validate();
  return in.max_doc_size / in.avg_key_size;
}

std::int64_t max_collection_size(const ShardSizingInput& in) {
  const BigInt exact = BigInt(max_splits(in)) * in.chunk_size / 2;
  if (exact > std::numeric_limits<std::int64_t>::max()) {
    throw DomainError("maximum collection size exceeds a 64-bit byte count");
  }
  return static_cast<std::int64_t>(exact);
}

void PartitionSpec::validate() const {
  if (rows < 0) throw DomainError("row count Nr must be non-negative");
  if (total_columns < 1) throw DomainError("total column count Nc must be positive");
  if (primary_key_columns < 1) throw DomainError("primary-key column count Npk must be positive");
  if (static_columns < 0) throw DomainError("static column count Ns must be non-negative");
  if (total_columns - primary_key_columns - static_columns < 0) {
    throw DomainError("primary-key and static columns exceed the total column count");
  }
  if (cell_overhead < 0) throw DomainError("per-value overhead t_avg must be non-negative");
  for (const auto* sizes :
       {&partition_key_sizes, &static_sizes, &regular_sizes, &clustering_sizes}) {
    for (std::int64_t s : *sizes) {
      if (s < 0) throw DomainError("column sizes must be non-negative");
    }
  }
  const auto count = [](const std::vector<std::int64_t>& v) {
    return static_cast<std::int64_t>(v.size());
  };
  if (count(partition_key_sizes) + count(static_sizes) + count(regular_sizes) +
          count(clustering_sizes) !=
      total_columns) {
    throw DomainError("column size vectors must together cover exactly Nc columns");
  }
  if (count(partition_key_sizes) + count(clustering_sizes) != primary_key_columns) {
    throw DomainError("partition-key plus clustering sizes must cover exactly Npk columns");
  }
  if (count(static_sizes) != static_columns) {
    throw DomainError("static sizes must cover exactly Ns columns");
  }
}

std::int64_t partition_value_count(const PartitionSpec& spec) {
  spec.validate();
  return spec.rows * (spec.total_columns - spec.primary_key_columns - spec.static_columns) +
         spec.static_columns;
}

std::int64_t partition_size(const PartitionSpec& spec) {
  spec.validate();
  auto sum = [](const std::vector<std::int64_t>& v) {
    return std::accumulate(v.begin(), v.end(), std::int64_t{0});
  };
  return sum(spec.partition_key_sizes) + sum(spec.static_sizes) +
         spec.rows * (sum(spec.regular_sizes) + sum(spec.clustering_sizes)) +
         spec.cell_overhead * partition_value_count(spec);
}

}  // namespace polygate::capacity

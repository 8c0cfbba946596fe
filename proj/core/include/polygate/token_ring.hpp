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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polygate/case_record.hpp"

namespace polygate::engine {

// The full 64-bit hash space cut into node_count contiguous token ranges,
// one per node, with replica sets walking the ring clockwise. Ranges are a
// pure function of node_count, so two rings with the same node list agree on
// every placement.
class TokenRing {
 public:
  explicit TokenRing(std::vector<std::string> node_names, int replication_factor = 1);

  std::size_t node_count() const { return nodes_.size(); }
  int replication_factor() const { return rf_; }
  const std::vector<std::string>& node_names() const { return nodes_; }

  // Owner of a token, via fixed-point scaling: owner = (token * n) / 2^64.
  std::size_t owner_index(std::uint64_t token) const;

  // Inclusive token range [first, last] held by one node. Ranges are
  // disjoint and their union is the whole 64-bit space.
  std::pair<std::uint64_t, std::uint64_t> node_range(std::size_t index) const;

  // The owner plus the next RF-1 nodes clockwise; size is always RF.
  std::vector<std::size_t> replica_indices(std::uint64_t token) const;
  std::vector<std::string> replica_nodes(std::uint64_t token) const;

 private:
  std::vector<std::string> nodes_;
  int rf_;
};

// Token of a partition key: the library-wide seedable 64-bit hash. The hash
// is part of the persisted-placement contract and must not change.
std::uint64_t token_for(std::string_view partition_key, std::uint64_t seed = 0);

// Replica set for a key, sized RF (singleton when RF = 1).
std::vector<std::string> assign_token(const TokenRing& ring, std::string_view partition_key,
                                      std::uint64_t seed = 0);

// Record-to-node placement over a ring. Vertex keys each record by its own
// id; Edge keys it by the order-independent (id, linked_id) pair — 0x1f
// never appears in ids, so the joined key is unambiguous — which lands both
// endpoints of a contact on the same node. A record without a link is its
// own partner (self-loop).
enum class PartitionStrategy { Vertex, Edge };

std::string partition_key_for(const ingest::CaseRecord& record, PartitionStrategy strategy);

// Primary-owner assignment: result[n] lists the indices (into records, in
// input order) placed on node n. Rejects empty input.
std::vector<std::vector<std::size_t>> partition_records(
    const std::vector<ingest::CaseRecord>& records, PartitionStrategy strategy,
    const TokenRing& ring, std::uint64_t seed = 0);

}  // namespace polygate::engine

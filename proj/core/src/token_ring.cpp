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

#include "polygate/token_ring.hpp"

#include <set>

#include "polygate/errors.hpp"
#include "polygate/hash.hpp"

namespace polygate::engine {

TokenRing::TokenRing(std::vector<std::string> node_names, int replication_factor)
    : nodes_(std::move(node_names)), rf_(replication_factor) {
  if (nodes_.empty()) throw InputError("a ring needs at least one node");
  if (rf_ < 1) throw InputError("replication factor must be at least 1");
  if (static_cast<std::size_t>(rf_) > nodes_.size()) {
    throw InputError("replication factor exceeds the node count");
  }
  std::set<std::string> seen;
  for (const std::string& n : nodes_) {
    if (n.empty() || !seen.insert(n).second) {
      throw InputError("node names must be non-empty and distinct");
    }
  }
}

std::size_t TokenRing::owner_index(std::uint64_t token) const {
  using u128 = unsigned __int128;
  return static_cast<std::size_t>((static_cast<u128>(token) * nodes_.size()) >> 64);
}

std::pair<std::uint64_t, std::uint64_t> TokenRing::node_range(std::size_t index) const {
  if (index >= nodes_.size()) throw InputError("node index out of range");
  using u128 = unsigned __int128;
  const u128 n = nodes_.size();
  // owner(t) = (t*n) >> 64 = i exactly when t in [ceil(i*2^64/n), ceil((i+1)*2^64/n) - 1]
  auto lower = [n](u128 i) -> std::uint64_t {
    return static_cast<std::uint64_t>(((i << 64) + n - 1) / n);
  };
  const std::uint64_t first = lower(index);
  const std::uint64_t last = index + 1 == nodes_.size()
                                 ? ~std::uint64_t{0}
                                 : lower(index + 1) - 1;
  return {first, last};
}

std::vector<std::size_t> TokenRing::replica_indices(std::uint64_t token) const {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(rf_));
  const std::size_t owner = owner_index(token);
  for (int i = 0; i < rf_; ++i) {
    out.push_back((owner + static_cast<std::size_t>(i)) % nodes_.size());
  }
  return out;
}

std::vector<std::string> TokenRing::replica_nodes(std::uint64_t token) const {
  std::vector<std::string> out;
  for (std::size_t idx : replica_indices(token)) out.push_back(nodes_[idx]);
  return out;
}

std::uint64_t token_for(std::string_view partition_key, std::uint64_t seed) {
  return hash64(partition_key, seed);
}

std::vector<std::string> assign_token(const TokenRing& ring, std::string_view partition_key,
                                      std::uint64_t seed) {
  return ring.replica_nodes(token_for(partition_key, seed));
}

std::string partition_key_for(const ingest::CaseRecord& record, PartitionStrategy strategy) {
  if (strategy == PartitionStrategy::Vertex) return record.id;
  const std::string& partner = record.linked_id ? *record.linked_id : record.id;
  const std::string& lo = record.id <= partner ? record.id : partner;
  const std::string& hi = record.id <= partner ? partner : record.id;
  std::string key;
  key.reserve(lo.size() + hi.size() + 1);
  key.append(lo);
  key.push_back('\x1f');
  key.append(hi);
  return key;
}

std::vector<std::vector<std::size_t>> partition_records(
    const std::vector<ingest::CaseRecord>& records, PartitionStrategy strategy,
    const TokenRing& ring, std::uint64_t seed) {
  if (records.empty()) throw InputError("no records to partition");
  std::vector<std::vector<std::size_t>> by_node(ring.node_count());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string key = partition_key_for(records[i], strategy);
    by_node[ring.owner_index(token_for(key, seed))].push_back(i);
  }
  return by_node;
}

}  // namespace polygate::engine

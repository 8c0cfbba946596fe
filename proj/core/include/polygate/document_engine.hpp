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
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "polygate/executor.hpp"
#include "polygate/value.hpp"

namespace polygate::engine {

// Shard keys are totally ordered byte strings; integer keys are encoded so
// that byte order equals numeric order (big-endian with the sign bit
// flipped). Hex helpers exist because raw keys may not be valid UTF-8 and
// the dump format is JSON.
using ShardKey = std::string;
ShardKey int_key(std::int64_t v);
std::string key_hex(const ShardKey& key);
ShardKey key_from_hex(std::string_view hex);

inline constexpr std::size_t kMaxDocumentSize = 16'777'216;  // 16 MiB cap

struct Document {
  ShardKey key;
  std::map<std::string, Value> body;
  std::size_t byte_size = 0;  // 0 = compute from the canonical JSON form
};

// Canonical JSON serialization (sorted field names); its length is the
// document's default byte size.
std::string document_json(const Document& doc);

// Filters are the shared AND-ed condition lists; an empty filter matches
// every document.
using DocFilter = ConditionList;

struct ChunkInfo {
  std::optional<ShardKey> low, high;  // [low, high); nullopt = open end
  std::string shard;
  std::size_t byte_size = 0;
  std::size_t doc_count = 0;
};

struct RouteResult {
  bool sharded = false;
  std::string shard;            // primary shard for unsharded collections
  std::size_t chunk_index = 0;  // meaningful only when sharded
};

struct PlacementReport {
  std::string shard;  // where the document sits after any splits
  int splits = 0;     // chunk splits this insert triggered
};

// A sharded document store in miniature: each sharded collection is a list
// of chunks whose half-open key ranges tile the whole key space; chunks that
// outgrow chunk_size split at their median key; a split's new upper chunk
// goes to the shard holding the fewest bytes. Unsharded collections live
// wholly on the primary shard. One writer or many readers at a time.
class ShardedCluster {
 public:
  ShardedCluster(std::vector<std::string> shard_names, std::size_t chunk_size);
  // Moving transfers the stored data; the moved-to object gets its own lock.
  ShardedCluster(ShardedCluster&& other) noexcept;

  void create_collection(const std::string& name, bool sharded,
                         const std::string& key_field = "id");
  bool has_collection(const std::string& name) const;
  bool is_sharded(const std::string& name) const;

  RouteResult route_key(const std::string& collection, const ShardKey& key) const;
  PlacementReport insert(const std::string& collection, Document doc);

  std::vector<Document> find_docs(const std::string& collection, const DocFilter& filter) const;
  // first_match_only mirrors the shell's default single-document update
  std::size_t update_docs(const std::string& collection, const DocFilter& filter,
                          const std::map<std::string, Value>& set_fields, bool first_match_only);
  std::size_t remove_docs(const std::string& collection, const DocFilter& filter);

  std::vector<ChunkInfo> chunks(const std::string& collection) const;
  std::size_t doc_count(const std::string& collection) const;
  std::size_t shard_bytes(const std::string& shard) const;
  const std::vector<std::string>& shard_names() const { return shards_; }
  const std::string& primary_shard() const { return shards_.front(); }
  std::size_t chunk_size() const { return chunk_size_; }

  // Newline-delimited JSON state dump: one engine preamble line, then per
  // collection a header line (name, sharded flag, chunk boundaries) followed
  // by one line per document. load() restores the exact state; a dump of
  // the loaded engine is byte-identical to the original dump.
  void dump(std::ostream& out) const;
  static ShardedCluster load(std::istream& in);

 private:
  struct Chunk {
    std::optional<ShardKey> low, high;
    std::string shard;
    std::size_t byte_size = 0;
    std::multimap<ShardKey, Document> docs;
  };
  struct Collection {
    bool sharded = false;
    std::string key_field = "id";
    std::vector<Chunk> chunks;         // sorted by range, tiling the key space
    std::vector<Document> unsharded;   // used when !sharded
    std::uint64_t auto_key = 0;        // for documents inserted without a key
  };

  const Collection& collection_ref(const std::string& name) const;
  Collection& collection_ref(const std::string& name);
  std::size_t chunk_index_for(const Collection& coll, const ShardKey& key) const;
  std::string least_loaded_shard() const;
  void split_oversized(Collection& coll, std::size_t chunk_idx, int& splits);
  void add_shard_bytes(const std::string& shard, std::ptrdiff_t delta);

  friend class DocumentExecutor;

  std::vector<std::string> shards_;
  std::size_t chunk_size_;
  std::map<std::string, Collection> collections_;
  std::map<std::string, std::size_t> shard_bytes_;
  mutable std::shared_mutex mutex_;
};

// Executes the shell dialect (db.<collection>.<method>(...)) against a
// cluster: find/insert/update/remove/deletemany with {field: value} and
// {field: {$gt: ...}} filters and {$set: {...}} updates. Collections are
// auto-created unsharded on first insert, like the real shell.
class DocumentExecutor : public StatementExecutor {
 public:
  explicit DocumentExecutor(std::shared_ptr<ShardedCluster> cluster)
      : cluster_(std::move(cluster)) {}
  QueryResult execute(const dialect::QueryStatement& statement) override;

 private:
  std::shared_ptr<ShardedCluster> cluster_;
};

}  // namespace polygate::engine

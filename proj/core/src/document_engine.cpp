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

#include "polygate/document_engine.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "polygate/errors.hpp"
#include "polygate/value_json.hpp"

namespace polygate::engine {

ShardKey int_key(std::int64_t v) {
  // flip the sign bit so two's-complement order becomes byte order
  const std::uint64_t u = static_cast<std::uint64_t>(v) ^ (1ULL << 63);
  ShardKey key(8, '\0');
  for (int i = 0; i < 8; ++i) {
    key[i] = static_cast<char>((u >> (8 * (7 - i))) & 0xff);
  }
  return key;
}

std::string key_hex(const ShardKey& key) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(key.size() * 2);
  for (char c : key) {
    const unsigned char b = static_cast<unsigned char>(c);
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

ShardKey key_from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw InputError("hex key has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InputError("bad hex digit in key");
  };
  ShardKey out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
  }
  return out;
}

std::string document_json(const Document& doc) {
  nlohmann::json body = nlohmann::json::object();
  for (const auto& [field, value] : doc.body) {
    body[field] = value_to_json(value);
  }
  nlohmann::json j;
  j["body"] = std::move(body);
  j["key"] = key_hex(doc.key);
  return j.dump();
}

namespace {

std::size_t doc_bytes(const Document& doc) {
  return doc.byte_size != 0 ? doc.byte_size : document_json(doc).size();
}

bool doc_matches(const Document& doc, const DocFilter& filter) {
  for (const FieldCondition& cond : filter) {
    auto it = doc.body.find(cond.field);
    if (it == doc.body.end()) return false;
    if (!value_satisfies(it->second, cond.op, cond.value)) return false;
  }
  return true;
}

}  // namespace

ShardedCluster::ShardedCluster(ShardedCluster&& other) noexcept
    : shards_(std::move(other.shards_)),
      chunk_size_(other.chunk_size_),
      collections_(std::move(other.collections_)),
      shard_bytes_(std::move(other.shard_bytes_)) {}

ShardedCluster::ShardedCluster(std::vector<std::string> shard_names, std::size_t chunk_size)
    : shards_(std::move(shard_names)), chunk_size_(chunk_size) {
  if (shards_.empty()) throw InputError("a cluster needs at least one shard");
  if (chunk_size_ == 0) throw InputError("chunk size must be positive");
  std::set<std::string> seen;
  for (const std::string& s : shards_) {
    if (s.empty() || !seen.insert(s).second) {
      throw InputError("shard names must be non-empty and distinct");
    }
    shard_bytes_[s] = 0;
  }
}

void ShardedCluster::create_collection(const std::string& name, bool sharded,
                                       const std::string& key_field) {
  std::unique_lock lock(mutex_);
  if (name.empty()) throw InputError("collection name must be non-empty");
  if (collections_.count(name)) throw EngineError("collection already exists: " + name);
  Collection coll;
  coll.sharded = sharded;
  coll.key_field = key_field;
  if (sharded) {
    // one chunk spanning the whole key space, on the primary shard
    Chunk c;
    c.shard = primary_shard();
    coll.chunks.push_back(std::move(c));
  }
  collections_[name] = std::move(coll);
}

bool ShardedCluster::has_collection(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return collections_.count(name) != 0;
}

bool ShardedCluster::is_sharded(const std::string& name) const {
  std::shared_lock lock(mutex_);
  return collection_ref(name).sharded;
}

const ShardedCluster::Collection& ShardedCluster::collection_ref(const std::string& name) const {
  auto it = collections_.find(name);
  if (it == collections_.end()) throw EngineError("unknown collection: " + name);
  return it->second;
}

ShardedCluster::Collection& ShardedCluster::collection_ref(const std::string& name) {
  auto it = collections_.find(name);
  if (it == collections_.end()) throw EngineError("unknown collection: " + name);
  return it->second;
}

std::size_t ShardedCluster::chunk_index_for(const Collection& coll, const ShardKey& key) const {
  // last chunk whose low bound is at or below the key; bounds tile, so the
  // key then sits below that chunk's high bound by construction
  auto it = std::upper_bound(coll.chunks.begin(), coll.chunks.end(), key,
                             [](const ShardKey& k, const Chunk& c) {
                               return c.low.has_value() && k < *c.low;
                             });
  return static_cast<std::size_t>(std::distance(coll.chunks.begin(), it)) - 1;
}

RouteResult ShardedCluster::route_key(const std::string& collection, const ShardKey& key) const {
  std::shared_lock lock(mutex_);
  const Collection& coll = collection_ref(collection);
  if (!coll.sharded) {
    return {false, primary_shard(), 0};
  }
  const std::size_t idx = chunk_index_for(coll, key);
  return {true, coll.chunks[idx].shard, idx};
}

std::string ShardedCluster::least_loaded_shard() const {
  // smallest byte total; ties go to the earliest-listed shard
  std::size_t best_bytes = static_cast<std::size_t>(-1);
  std::size_t best = 0;
  for (std::size_t i = 0; i < shards_.size(); ++i) {
    const std::size_t bytes = shard_bytes_.at(shards_[i]);
    if (bytes < best_bytes) {
      best_bytes = bytes;
      best = i;
    }
  }
  return shards_[best];
}

void ShardedCluster::add_shard_bytes(const std::string& shard, std::ptrdiff_t delta) {
  auto& bytes = shard_bytes_.at(shard);
  bytes = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(bytes) + delta);
}

void ShardedCluster::split_oversized(Collection& coll, std::size_t chunk_idx, int& splits) {
  for (;;) {
    {
      Chunk& cur = coll.chunks[chunk_idx];
      if (cur.byte_size <= chunk_size_) return;

      // count the distinct keys; a single-key chunk cannot split
      std::size_t distinct = 0;
      for (auto it = cur.docs.begin(); it != cur.docs.end();
           it = cur.docs.upper_bound(it->first)) {
        ++distinct;
      }
      if (distinct < 2) return;

      // median distinct key becomes the new boundary (upper half inclusive)
      auto median_it = cur.docs.begin();
      for (std::size_t i = 0; i < distinct / 2; ++i) {
        median_it = cur.docs.upper_bound(median_it->first);
      }
      const ShardKey boundary = median_it->first;

      Chunk upper;
      upper.low = boundary;
      upper.high = cur.high;
      upper.shard = least_loaded_shard();
      auto from = cur.docs.lower_bound(boundary);
      std::size_t moved_bytes = 0;
      for (auto it = from; it != cur.docs.end(); ++it) {
        moved_bytes += doc_bytes(it->second);
        upper.docs.insert(std::move(*it));
      }
      cur.docs.erase(from, cur.docs.end());
      cur.byte_size -= moved_bytes;
      upper.byte_size = moved_bytes;
      cur.high = boundary;
      add_shard_bytes(cur.shard, -static_cast<std::ptrdiff_t>(moved_bytes));
      add_shard_bytes(upper.shard, static_cast<std::ptrdiff_t>(moved_bytes));
      coll.chunks.insert(coll.chunks.begin() + chunk_idx + 1, std::move(upper));
      ++splits;
    }
    // settle the new upper chunk, then keep working on the lower half
    split_oversized(coll, chunk_idx + 1, splits);
  }
}

PlacementReport ShardedCluster::insert(const std::string& collection, Document doc) {
  std::unique_lock lock(mutex_);
  Collection& coll = collection_ref(collection);
  doc.byte_size = doc_bytes(doc);
  if (doc.byte_size > kMaxDocumentSize) {
    throw EngineError("document exceeds the 16 MiB size cap");
  }

  if (!coll.sharded) {
    add_shard_bytes(primary_shard(), static_cast<std::ptrdiff_t>(doc.byte_size));
    coll.unsharded.push_back(std::move(doc));
    return {primary_shard(), 0};
  }

  const std::size_t idx = chunk_index_for(coll, doc.key);
  Chunk& chunk = coll.chunks[idx];
  const ShardKey key = doc.key;
  chunk.byte_size += doc.byte_size;
  add_shard_bytes(chunk.shard, static_cast<std::ptrdiff_t>(doc.byte_size));
  chunk.docs.emplace(key, std::move(doc));

  int splits = 0;
  split_oversized(coll, idx, splits);
  const std::size_t final_idx = chunk_index_for(coll, key);
  return {coll.chunks[final_idx].shard, splits};
}

std::vector<Document> ShardedCluster::find_docs(const std::string& collection,
                                                const DocFilter& filter) const {
  std::shared_lock lock(mutex_);
  const Collection& coll = collection_ref(collection);
  std::vector<Document> out;
  if (!coll.sharded) {
    for (const Document& d : coll.unsharded) {
      if (doc_matches(d, filter)) out.push_back(d);
    }
    return out;
  }
  for (const Chunk& c : coll.chunks) {
    for (const auto& [key, d] : c.docs) {
      if (doc_matches(d, filter)) out.push_back(d);
    }
  }
  return out;
}

std::size_t ShardedCluster::update_docs(const std::string& collection, const DocFilter& filter,
                                        const std::map<std::string, Value>& set_fields,
                                        bool first_match_only) {
  std::unique_lock lock(mutex_);
  Collection& coll = collection_ref(collection);
  std::size_t updated = 0;
  auto apply = [&](Document& d) {
    for (const auto& [field, value] : set_fields) d.body[field] = value;
    ++updated;
  };

  if (!coll.sharded) {
    for (Document& d : coll.unsharded) {
      if (!doc_matches(d, filter)) continue;
      const std::size_t before = doc_bytes(d);
      apply(d);
      d.byte_size = document_json(d).size();  // updates re-measure the document
      add_shard_bytes(primary_shard(),
                      static_cast<std::ptrdiff_t>(d.byte_size) - static_cast<std::ptrdiff_t>(before));
      if (first_match_only) break;
    }
    return updated;
  }

  for (std::size_t ci = 0; ci < coll.chunks.size(); ++ci) {
    Chunk& c = coll.chunks[ci];
    bool chunk_changed = false;
    for (auto& [key, d] : c.docs) {
      if (!doc_matches(d, filter)) continue;
      const std::size_t before = doc_bytes(d);
      apply(d);
      d.byte_size = document_json(d).size();
      c.byte_size = c.byte_size - before + d.byte_size;
      add_shard_bytes(c.shard,
                      static_cast<std::ptrdiff_t>(d.byte_size) - static_cast<std::ptrdiff_t>(before));
      chunk_changed = true;
      if (first_match_only) break;
    }
    if (chunk_changed) {
      int splits = 0;
      split_oversized(coll, ci, splits);
    }
    if (first_match_only && updated) break;
  }
  return updated;
}

std::size_t ShardedCluster::remove_docs(const std::string& collection, const DocFilter& filter) {
  std::unique_lock lock(mutex_);
  Collection& coll = collection_ref(collection);
  std::size_t removed = 0;

  if (!coll.sharded) {
    auto it = coll.unsharded.begin();
    while (it != coll.unsharded.end()) {
      if (doc_matches(*it, filter)) {
        add_shard_bytes(primary_shard(), -static_cast<std::ptrdiff_t>(doc_bytes(*it)));
        it = coll.unsharded.erase(it);
        ++removed;
      } else {
        ++it;
      }
    }
    return removed;
  }

  for (Chunk& c : coll.chunks) {
    auto it = c.docs.begin();
    while (it != c.docs.end()) {
      if (doc_matches(it->second, filter)) {
        const std::size_t bytes = doc_bytes(it->second);
        c.byte_size -= bytes;
        add_shard_bytes(c.shard, -static_cast<std::ptrdiff_t>(bytes));
        it = c.docs.erase(it);
        ++removed;
      } else {
        ++it;
      }
    }
  }
  return removed;
}

std::vector<ChunkInfo> ShardedCluster::chunks(const std::string& collection) const {
  std::shared_lock lock(mutex_);
  const Collection& coll = collection_ref(collection);
  if (!coll.sharded) throw EngineError("collection is not sharded: " + collection);
  std::vector<ChunkInfo> out;
  out.reserve(coll.chunks.size());
  for (const Chunk& c : coll.chunks) {
    out.push_back({c.low, c.high, c.shard, c.byte_size, c.docs.size()});
  }
  return out;
}

std::size_t ShardedCluster::doc_count(const std::string& collection) const {
  std::shared_lock lock(mutex_);
  const Collection& coll = collection_ref(collection);
  if (!coll.sharded) return coll.unsharded.size();
  std::size_t n = 0;
  for (const Chunk& c : coll.chunks) n += c.docs.size();
  return n;
}

std::size_t ShardedCluster::shard_bytes(const std::string& shard) const {
  std::shared_lock lock(mutex_);
  auto it = shard_bytes_.find(shard);
  if (it == shard_bytes_.end()) throw EngineError("unknown shard: " + shard);
  return it->second;
}

namespace {

nlohmann::json key_json(const std::optional<ShardKey>& key) {
  if (!key) return nullptr;
  return key_hex(*key);
}

nlohmann::json doc_line(const Document& d) {
  nlohmann::json body = nlohmann::json::object();
  for (const auto& [field, value] : d.body) body[field] = value_to_json(value);
  nlohmann::json j;
  j["body"] = std::move(body);
  j["key"] = key_hex(d.key);
  j["size"] = d.byte_size;
  return j;
}

Document doc_from_line(const nlohmann::json& j) {
  Document d;
  d.key = key_from_hex(j.at("key").get<std::string>());
  d.byte_size = j.at("size").get<std::size_t>();
  for (const auto& [field, value] : j.at("body").items()) {
    d.body[field] = value_from_json(value);
  }
  return d;
}

}  // namespace

void ShardedCluster::dump(std::ostream& out) const {
  std::shared_lock lock(mutex_);
  nlohmann::json preamble;
  preamble["chunk_size"] = chunk_size_;
  preamble["engine"] = "document";
  preamble["shards"] = shards_;
  out << preamble.dump() << '\n';

  for (const auto& [name, coll] : collections_) {
    nlohmann::json header;
    header["auto_key"] = coll.auto_key;
    header["collection"] = name;
    header["key_field"] = coll.key_field;
    header["sharded"] = coll.sharded;
    if (coll.sharded) {
      nlohmann::json chunks = nlohmann::json::array();
      std::size_t docs = 0;
      for (const Chunk& c : coll.chunks) {
        nlohmann::json cj;
        cj["high"] = key_json(c.high);
        cj["low"] = key_json(c.low);
        cj["shard"] = c.shard;
        chunks.push_back(std::move(cj));
        docs += c.docs.size();
      }
      header["chunks"] = std::move(chunks);
      header["docs"] = docs;
    } else {
      header["docs"] = coll.unsharded.size();
    }
    out << header.dump() << '\n';

    if (coll.sharded) {
      for (const Chunk& c : coll.chunks) {
        for (const auto& [key, d] : c.docs) out << doc_line(d).dump() << '\n';
      }
    } else {
      for (const Document& d : coll.unsharded) out << doc_line(d).dump() << '\n';
    }
  }
}

ShardedCluster ShardedCluster::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty engine dump");
  nlohmann::json preamble = nlohmann::json::parse(line, nullptr, false);
  if (preamble.is_discarded() || preamble.value("engine", "") != "document") {
    throw InputError("dump preamble is not a document-engine header");
  }
  ShardedCluster cluster(preamble.at("shards").get<std::vector<std::string>>(),
                         preamble.at("chunk_size").get<std::size_t>());

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json header = nlohmann::json::parse(line);
    const std::string name = header.at("collection").get<std::string>();
    Collection coll;
    coll.sharded = header.at("sharded").get<bool>();
    coll.key_field = header.at("key_field").get<std::string>();
    coll.auto_key = header.at("auto_key").get<std::uint64_t>();
    if (coll.sharded) {
      for (const auto& cj : header.at("chunks")) {
        Chunk c;
        if (!cj.at("low").is_null()) c.low = key_from_hex(cj.at("low").get<std::string>());
        if (!cj.at("high").is_null()) c.high = key_from_hex(cj.at("high").get<std::string>());
        c.shard = cj.at("shard").get<std::string>();
        coll.chunks.push_back(std::move(c));
      }
      if (coll.chunks.empty()) throw InputError("sharded collection with no chunks in dump");
    }

    const std::size_t docs = header.at("docs").get<std::size_t>();
    for (std::size_t i = 0; i < docs; ++i) {
      if (!std::getline(in, line)) throw InputError("dump truncated inside collection " + name);
      Document d = doc_from_line(nlohmann::json::parse(line));
      if (coll.sharded) {
        const std::size_t idx = cluster.chunk_index_for(coll, d.key);
        Chunk& c = coll.chunks[idx];
        c.byte_size += d.byte_size;
        cluster.add_shard_bytes(c.shard, static_cast<std::ptrdiff_t>(d.byte_size));
        const ShardKey key = d.key;
        c.docs.emplace(key, std::move(d));
      } else {
        cluster.add_shard_bytes(cluster.primary_shard(),
                                static_cast<std::ptrdiff_t>(d.byte_size));
        coll.unsharded.push_back(std::move(d));
      }
    }
    cluster.collections_[name] = std::move(coll);
  }
  return cluster;
}

// ---------------------------------------------------------------------------
// shell statement execution

namespace {

// Permissive object-literal parser for the shell dialect: bare or quoted
// keys (including $operators), string/number/bool/null scalars, bare words
// as strings, nested objects. Produces nlohmann JSON.
class ShellParser {
 public:
  explicit ShellParser(std::string_view text) : text_(text) {}

  std::vector<nlohmann::json> parse_arguments() {
    std::vector<nlohmann::json> args;
    skip_ws();
    if (done()) return args;
    for (;;) {
      args.push_back(parse_value());
      skip_ws();
      if (done()) return args;
      expect(',');
    }
  }

 private:
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) throw EngineError("unexpected end of shell arguments");
    return text_[pos_];
  }
  void expect(char c) {
    if (peek() != c) {
      throw EngineError(std::string("expected '") + c + "' in shell arguments");
    }
    ++pos_;
  }

  nlohmann::json parse_value() {
    const char c = peek();
    if (c == '{') return parse_object();
    if (c == '\'' || c == '"') return parse_string(c);
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') return parse_number();
    return parse_bareword();
  }

  nlohmann::json parse_object() {
    expect('{');
    nlohmann::json obj = nlohmann::json::object();
    if (peek() == '}') {
      ++pos_;
      return obj;
    }
    for (;;) {
      std::string key = parse_key();
      expect(':');
      obj[key] = parse_value();
      const char c = peek();
      if (c == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return obj;
    }
  }

  std::string parse_key() {
    const char c = peek();
    if (c == '\'' || c == '"') return parse_string(c).get<std::string>();
    std::string word;
    while (pos_ < text_.size()) {
      const char k = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(k)) || k == '_' || k == '$') {
        word.push_back(k);
        ++pos_;
      } else {
        break;
      }
    }
    if (word.empty()) throw EngineError("expected a field name in shell arguments");
    return word;
  }

  nlohmann::json parse_string(char quote) {
    expect(quote);
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != quote) {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) throw EngineError("unterminated string in shell arguments");
    ++pos_;  // closing quote
    return out;
  }

  nlohmann::json parse_number() {
    const std::size_t start = pos_;
    if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
    bool real = false;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      if (text_[pos_] == '.') real = true;
      ++pos_;
    }
    const std::string num(text_.substr(start, pos_ - start));
    try {
      if (real) return std::stod(num);
      return static_cast<std::int64_t>(std::stoll(num));
    } catch (const std::exception&) {
      throw EngineError("bad number in shell arguments: " + num);
    }
  }

  nlohmann::json parse_bareword() {
    std::string word = parse_key();
    if (word == "true") return true;
    if (word == "false") return false;
    if (word == "null") return nullptr;
    return word;  // the shell tolerates unquoted string values
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

CompareOp op_from_dollar(const std::string& name) {
  if (name == "$eq") return CompareOp::Eq;
  if (name == "$ne") return CompareOp::Ne;
  if (name == "$lt") return CompareOp::Lt;
  if (name == "$lte") return CompareOp::Lte;
  if (name == "$gt") return CompareOp::Gt;
  if (name == "$gte") return CompareOp::Gte;
  throw EngineError("unsupported filter operator: " + name);
}

DocFilter filter_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw EngineError("filters must be documents");
  DocFilter filter;
  for (const auto& [field, value] : obj.items()) {
    if (value.is_object()) {
      for (const auto& [op, operand] : value.items()) {
        filter.push_back({field, op_from_dollar(op), value_from_json(operand)});
      }
    } else {
      filter.push_back({field, CompareOp::Eq, value_from_json(value)});
    }
  }
  return filter;
}

std::map<std::string, Value> flat_fields(const nlohmann::json& obj, const char* what) {
  if (!obj.is_object()) throw EngineError(std::string(what) + " must be a document");
  std::map<std::string, Value> out;
  for (const auto& [field, value] : obj.items()) {
    if (value.is_object() || value.is_array()) {
      throw EngineError(std::string("nested values are not supported in ") + what);
    }
    out[field] = value_from_json(value);
  }
  return out;
}

ResultSet docs_to_result(const std::vector<Document>& docs) {
  ResultSet rs;
  std::set<std::string> fields;
  for (const Document& d : docs) {
    for (const auto& [field, value] : d.body) fields.insert(field);
  }
  rs.columns.assign(fields.begin(), fields.end());
  for (const Document& d : docs) {
    std::vector<Value> row;
    row.reserve(rs.columns.size());
    for (const std::string& col : rs.columns) {
      auto it = d.body.find(col);
      row.push_back(it == d.body.end() ? Value{Null{}} : it->second);
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

ResultSet count_result(std::size_t n) {
  ResultSet rs;
  rs.columns = {"affected"};
  rs.rows = {{static_cast<std::int64_t>(n)}};
  return rs;
}

// extracts the raw text between the chain's opening parenthesis and its
// matching close, respecting quotes
std::string_view call_arguments(std::string_view raw) {
  const std::size_t open = raw.find('(');
  if (open == std::string_view::npos) throw EngineError("shell call has no argument list");
  int depth = 0;
  char quote = 0;
  for (std::size_t i = open; i < raw.size(); ++i) {
    const char c = raw[i];
    if (quote) {
      if (c == '\\') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '(' || c == '{' || c == '[') {
      ++depth;
    } else if (c == ')' || c == '}' || c == ']') {
      --depth;
      if (depth == 0) return raw.substr(open + 1, i - open - 1);
    }
  }
  throw EngineError("unbalanced parentheses in shell call");
}

}  // namespace

QueryResult DocumentExecutor::execute(const dialect::QueryStatement& statement) {
  using dialect::TokenKind;
  const auto start = std::chrono::steady_clock::now();
  const auto& ts = statement.tokens;
  auto is_dot = [&](std::size_t i) {
    return i < ts.size() && ts[i].kind == TokenKind::Punct && ts[i].text == ".";
  };
  auto is_name = [&](std::size_t i) {
    return i < ts.size() &&
           (ts[i].kind == TokenKind::Identifier || ts[i].kind == TokenKind::Keyword);
  };
  if (ts.size() < 6 || ts[0].kind != TokenKind::Identifier ||
      (ts[0].text != "db" && ts[0].text != "DB" && ts[0].text != "Db") || !is_dot(1) ||
      !is_name(2) || !is_dot(3) || !is_name(4)) {
    throw EngineError("not a document-shell statement");
  }
  const std::string collection = ts[2].text;
  std::string method;
  for (char c : ts[4].text) method.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  std::vector<nlohmann::json> args = ShellParser(call_arguments(statement.raw)).parse_arguments();

  QueryResult result;
  result.cost.conn = 1;

  if (method == "insert") {
    if (args.size() != 1) throw EngineError("insert expects one document");
    if (!cluster_->has_collection(collection)) {
      cluster_->create_collection(collection, /*sharded=*/false);
    }
    Document doc;
    doc.body = flat_fields(args[0], "insert");
    // shard key from the collection's key field, else an auto-assigned one
    std::unique_lock lock(cluster_->mutex_);
    auto& coll = cluster_->collection_ref(collection);
    auto key_it = doc.body.find(coll.key_field);
    if (key_it == doc.body.end()) {
      doc.key = int_key(static_cast<std::int64_t>(coll.auto_key++));
    } else if (const auto* i = std::get_if<std::int64_t>(&key_it->second)) {
      doc.key = int_key(*i);
    } else {
      doc.key = value_to_string(key_it->second);
    }
    lock.unlock();
    cluster_->insert(collection, std::move(doc));
    result.cost.io = 1;
    result.rows = count_result(1);
  } else if (method == "find") {
    if (args.size() > 1) throw EngineError("find expects at most one filter");
    DocFilter filter = args.empty() ? DocFilter{} : filter_from_json(args[0]);
    std::vector<Document> docs;
    std::size_t scanned = 0;
    if (cluster_->has_collection(collection)) {
      scanned = cluster_->doc_count(collection);
      docs = cluster_->find_docs(collection, filter);
    }
    result.cost.io = static_cast<double>(scanned);
    result.cost.cpu = static_cast<double>(scanned * std::max<std::size_t>(filter.size(), 1));
    result.rows = docs_to_result(docs);
  } else if (method == "update") {
    if (args.size() != 2 && args.size() != 3) {
      throw EngineError("update expects (filter, update[, options])");
    }
    DocFilter filter = filter_from_json(args[0]);
    if (!args[1].is_object() || args[1].size() != 1 || !args[1].contains("$set")) {
      throw EngineError("only {$set: {...}} updates are supported");
    }
    auto set_fields = flat_fields(args[1]["$set"], "$set");
    bool multi = false;
    if (args.size() == 3) {
      if (!args[2].is_object()) throw EngineError("update options must be a document");
      multi = args[2].value("multi", false);
    }
    std::size_t scanned =
        cluster_->has_collection(collection) ? cluster_->doc_count(collection) : 0;
    std::size_t updated = 0;
    if (scanned) {
      updated = cluster_->update_docs(collection, filter, set_fields, !multi);
    }
    result.cost.io = static_cast<double>(scanned);
    result.cost.cpu = static_cast<double>(scanned * std::max<std::size_t>(filter.size(), 1));
    result.rows = count_result(updated);
  } else if (method == "remove" || method == "deletemany") {
    if (args.size() > 1) throw EngineError(method + " expects at most one filter");
    DocFilter filter = args.empty() ? DocFilter{} : filter_from_json(args[0]);
    std::size_t scanned =
        cluster_->has_collection(collection) ? cluster_->doc_count(collection) : 0;
    std::size_t removed = 0;
    if (scanned) {
      removed = cluster_->remove_docs(collection, filter);
    }
    result.cost.io = static_cast<double>(scanned);
    result.cost.cpu = static_cast<double>(scanned * std::max<std::size_t>(filter.size(), 1));
    result.rows = count_result(removed);
  } else {
    throw EngineError("unsupported shell method: " + method);
  }

  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace polygate::engine

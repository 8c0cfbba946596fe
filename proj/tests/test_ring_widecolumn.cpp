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

#include <algorithm>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "polygate/dialect.hpp"
#include "polygate/errors.hpp"
#include "polygate/hash.hpp"
#include "polygate/token_ring.hpp"
#include "polygate/value.hpp"
#include "polygate/widecolumn_engine.hpp"

using namespace polygate;
using engine::TokenRing;
using engine::WideColumnStore;

namespace {

std::vector<std::string> node_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("node" + std::to_string(i));
  return out;
}

// Independent restatement of the placement hash so a silent algorithm change
// cannot slip past the suite: fold the seed as eight little-endian bytes,
// then FNV-1a over the payload.
std::uint64_t reference_hash(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>((seed >> (8 * i)) & 0xff));
  for (char c : bytes) mix(static_cast<unsigned char>(c));
  return h;
}

ingest::CaseRecord record_with_link(std::string id, std::optional<std::string> link) {
  ingest::CaseRecord r;
  r.id = std::move(id);
  r.linked_id = std::move(link);
  r.date_confirmed = 18300;
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("engine.ring");

TEST_CASE("constructor rejects unusable topologies") {
  CHECK_THROWS_AS(TokenRing({}, 1), InputError);
  CHECK_THROWS_AS(TokenRing({"a", "b"}, 0), InputError);
  CHECK_THROWS_AS(TokenRing({"a", "b"}, -1), InputError);
  CHECK_THROWS_AS(TokenRing({"a", "b"}, 3), InputError);
  CHECK_THROWS_AS(TokenRing({"a", "a"}, 1), InputError);
  CHECK_THROWS_AS(TokenRing({"a", ""}, 1), InputError);
}

TEST_CASE("node ranges tile the whole 64-bit token space") {
  for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5},
                        std::size_t{7}, std::size_t{16}}) {
    TokenRing ring(node_names(n));
    auto first = ring.node_range(0);
    CHECK(first.first == 0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      auto cur = ring.node_range(i);
      auto next = ring.node_range(i + 1);
      CHECK(cur.first <= cur.second);
      CHECK(cur.second + 1 == next.first);
    }
    CHECK(ring.node_range(n - 1).second == std::numeric_limits<std::uint64_t>::max());
  }
}

TEST_CASE("owner lookup agrees with a linear range scan") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {std::size_t{1}, std::size_t{3}, std::size_t{5}, std::size_t{12}}) {
    TokenRing ring(node_names(n));
    auto scan_owner = [&](std::uint64_t token) {
      for (std::size_t i = 0; i < n; ++i) {
        auto [lo, hi] = ring.node_range(i);
        if (lo <= token && token <= hi) return i;
      }
      FAIL("token not covered by any range");
      return n;
    };
    // range boundaries are the interesting tokens; random probes fill in
    for (std::size_t i = 0; i < n; ++i) {
      auto [lo, hi] = ring.node_range(i);
      CHECK(ring.owner_index(lo) == i);
      CHECK(ring.owner_index(hi) == i);
    }
    for (int t = 0; t < 2000; ++t) {
      const std::uint64_t token = rng();
      CHECK(ring.owner_index(token) == scan_owner(token));
      // the stated fixed-point formula, recomputed independently
      const auto wide = static_cast<unsigned __int128>(token) * n;
      CHECK(ring.owner_index(token) == static_cast<std::size_t>(wide >> 64));
    }
  }
}

TEST_CASE("replica sets walk the ring clockwise") {
  TokenRing ring(node_names(5), 3);
  CHECK(ring.replication_factor() == 3);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t token = rng();
    auto replicas = ring.replica_indices(token);
    REQUIRE(replicas.size() == 3);
    CHECK(replicas[0] == ring.owner_index(token));
    for (std::size_t i = 1; i < replicas.size(); ++i) {
      CHECK(replicas[i] == (replicas[i - 1] + 1) % 5);
    }
    CHECK(std::set<std::size_t>(replicas.begin(), replicas.end()).size() == 3);
  }

  // full replication touches every node exactly once
  TokenRing full(node_names(4), 4);
  auto all = full.replica_indices(1234567);
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<std::size_t>{0, 1, 2, 3});

  auto names = ring.replica_nodes(42);
  auto idx = ring.replica_indices(42);
  REQUIRE(names.size() == idx.size());
  for (std::size_t i = 0; i < names.size(); ++i) CHECK(names[i] == ring.node_names()[idx[i]]);
}

TEST_CASE("the placement hash is pinned bit-for-bit") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 500; ++t) {
    std::string key;
    const std::size_t len = rng() % 24;
    for (std::size_t i = 0; i < len; ++i) key.push_back(static_cast<char>(rng() & 0xff));
    const std::uint64_t seed = rng();
    CHECK(hash64(key, seed) == reference_hash(key, seed));
    CHECK(engine::token_for(key, seed) == reference_hash(key, seed));
  }
  CHECK(hash64("") == reference_hash("", 0));
  CHECK(hash64("abc", 1) != hash64("abc", 2));  // the seed must matter
}

TEST_CASE("partition keys: vertices by id, edges by unordered pair") {
  using engine::PartitionStrategy;
  auto a_to_b = record_with_link("a", "b");
  auto b_to_a = record_with_link("b", "a");
  auto loner = record_with_link("c", std::nullopt);

  CHECK(engine::partition_key_for(a_to_b, PartitionStrategy::Vertex) == "a");
  CHECK(engine::partition_key_for(loner, PartitionStrategy::Vertex) == "c");

  const std::string pair_key = engine::partition_key_for(a_to_b, PartitionStrategy::Edge);
  CHECK(pair_key == std::string("a") + '\x1f' + "b");
  CHECK(engine::partition_key_for(b_to_a, PartitionStrategy::Edge) == pair_key);
  // a record without a link partners with itself
  CHECK(engine::partition_key_for(loner, PartitionStrategy::Edge) ==
        std::string("c") + '\x1f' + "c");
}

TEST_CASE("record partitioning matches an independent recompute") {
  using engine::PartitionStrategy;
  TokenRing ring(node_names(4));
  const std::uint64_t seed = 99;

  std::vector<ingest::CaseRecord> records;
  std::mt19937_64 rng(31);
  for (int i = 0; i < 400; ++i) {
    std::string id = "case-" + std::to_string(i);
    std::optional<std::string> link;
    if (rng() % 3 == 0) link = "case-" + std::to_string(rng() % 400);
    records.push_back(record_with_link(std::move(id), std::move(link)));
  }

  for (auto strategy : {PartitionStrategy::Vertex, PartitionStrategy::Edge}) {
    auto buckets = engine::partition_records(records, strategy, ring, seed);
    REQUIRE(buckets.size() == 4);
    std::vector<bool> seen(records.size(), false);
    for (std::size_t node = 0; node < buckets.size(); ++node) {
      for (std::size_t idx : buckets[node]) {
        REQUIRE(idx < records.size());
        CHECK(!seen[idx]);
        seen[idx] = true;
        const std::string key = engine::partition_key_for(records[idx], strategy);
        CHECK(ring.owner_index(engine::token_for(key, seed)) == node);
      }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }

  // edge strategy co-locates the two endpoints of a link
  std::vector<ingest::CaseRecord> pair = {record_with_link("x", "y"),
                                          record_with_link("y", "x")};
  auto buckets = engine::partition_records(pair, PartitionStrategy::Edge, ring, seed);
  for (const auto& bucket : buckets) {
    CHECK((bucket.empty() || bucket.size() == 2));
  }

  CHECK_THROWS_AS(engine::partition_records({}, PartitionStrategy::Vertex, ring, seed),
                  InputError);

  // assign_token is the key-level view of the same placement
  auto nodes = engine::assign_token(ring, "case-0", seed);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0] ==
        ring.node_names()[ring.owner_index(engine::token_for("case-0", seed))]);
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("engine.widecolumn");

namespace {

WideColumnStore make_store(std::size_t nodes = 3, std::uint64_t seed = 0) {
  return WideColumnStore(TokenRing(node_names(nodes)), seed);
}

}  // namespace

TEST_CASE("table creation validates its schema") {
  auto store = make_store();
  CHECK_THROWS_AS(store.create_table("", {"a"}, "a"), InputError);
  CHECK_THROWS_AS(store.create_table("t", {"a", "a"}, "a"), InputError);
  CHECK_THROWS_AS(store.create_table("t", {"a", ""}, "a"), InputError);
  CHECK_THROWS_AS(store.create_table("t", {"a", "b"}, "zz"), InputError);
  CHECK_THROWS_AS(store.create_table("t", {"a", "b"}, "a", "zz"), InputError);
  store.create_table("t", {"a", "b"}, "a");
  CHECK_THROWS_AS(store.create_table("t", {"c"}, "c"), EngineError);
  CHECK(store.has_table("t"));
  CHECK(store.table_columns("t") == std::vector<std::string>{"a", "b"});
  CHECK(store.partition_key_column("t") == "a");
  CHECK_THROWS_AS(store.row_count("missing"), EngineError);
}

TEST_CASE("upserts merge cells and respect IF NOT EXISTS") {
  auto store = make_store();
  store.create_table("people", {"id", "name", "age"}, "id");

  CHECK(store.upsert_row("people", {{"id", Value{std::int64_t{1}}},
                                    {"name", Value{std::string("ada")}}}));
  CHECK(store.row_count("people") == 1);

  // merging: age arrives, name survives untouched
  CHECK(!store.upsert_row("people", {{"id", Value{std::int64_t{1}}},
                                     {"age", Value{std::int64_t{36}}}}));
  auto rs = store.scan("people");
  REQUIRE(rs.rows.size() == 1);
  REQUIRE(rs.columns == std::vector<std::string>{"id", "name", "age"});
  CHECK(rs.rows[0][1] == Value{std::string("ada")});
  CHECK(rs.rows[0][2] == Value{std::int64_t{36}});

  // IF NOT EXISTS refuses to touch the row
  CHECK(!store.upsert_row("people", {{"id", Value{std::int64_t{1}}},
                                     {"name", Value{std::string("eve")}}},
                          /*if_absent_only=*/true));
  CHECK(store.scan("people").rows[0][1] == Value{std::string("ada")});

  CHECK_THROWS_AS(store.upsert_row("people", {{"ghost", Value{std::int64_t{0}}}}), EngineError);
  CHECK_THROWS_AS(store.upsert_row("people", {{"name", Value{std::string("x")}}}), EngineError);
  CHECK_THROWS_AS(store.upsert_row("people", {{"id", Value{Null{}}}}), EngineError);
}

TEST_CASE("a clustering key widens the primary key") {
  auto store = make_store();
  store.create_table("series", {"country", "day", "cases"}, "country", "day");
  auto cell = [](const char* c, std::int64_t d, std::int64_t n) {
    return std::map<std::string, Value>{{"country", Value{std::string(c)}},
                                        {"day", Value{d}},
                                        {"cases", Value{n}}};
  };
  CHECK(store.upsert_row("series", cell("DE", 1, 10)));
  CHECK(store.upsert_row("series", cell("DE", 2, 12)));
  CHECK(!store.upsert_row("series", cell("DE", 2, 15)));  // same (pk, ck): merge
  CHECK(store.row_count("series") == 2);

  CHECK_THROWS_AS(store.upsert_row("series", {{"country", Value{std::string("DE")}},
                                              {"cases", Value{std::int64_t{1}}}}),
                  EngineError);  // clustering key missing
  CHECK_THROWS_AS(store.update_rows("series", {}, {{"day", Value{std::int64_t{9}}}}, false),
                  EngineError);  // key columns cannot be assigned
}

TEST_CASE("updates hit filtered rows; a missed key-equality update upserts") {
  auto store = make_store();
  store.create_table("t", {"id", "v"}, "id");
  store.upsert_row("t", {{"id", Value{std::int64_t{1}}}, {"v", Value{std::int64_t{10}}}});
  store.upsert_row("t", {{"id", Value{std::int64_t{2}}}, {"v", Value{std::int64_t{20}}}});

  engine::ConditionList big{{"v", engine::CompareOp::Gte, Value{std::int64_t{15}}}};
  CHECK(store.update_rows("t", big, {{"v", Value{std::int64_t{0}}}}, false) == 1);

  // equality on the full primary key, no match, upsert allowed -> new row
  engine::ConditionList key3{{"id", engine::CompareOp::Eq, Value{std::int64_t{3}}}};
  CHECK(store.update_rows("t", key3, {{"v", Value{std::int64_t{30}}}}, false) == 1);
  CHECK(store.row_count("t") == 3);

  // same but IF EXISTS -> nothing happens
  engine::ConditionList key4{{"id", engine::CompareOp::Eq, Value{std::int64_t{4}}}};
  CHECK(store.update_rows("t", key4, {{"v", Value{std::int64_t{40}}}}, true) == 0);
  CHECK(store.row_count("t") == 3);

  // a non-key miss never upserts
  engine::ConditionList miss{{"v", engine::CompareOp::Eq, Value{std::int64_t{-1}}}};
  CHECK(store.update_rows("t", miss, {{"v", Value{std::int64_t{5}}}}, false) == 0);
  CHECK(store.row_count("t") == 3);
}

TEST_CASE("row deletion and cell clearing") {
  auto store = make_store();
  store.create_table("t", {"id", "a", "b"}, "id");
  for (std::int64_t i = 0; i < 6; ++i) {
    store.upsert_row("t", {{"id", Value{i}}, {"a", Value{i % 2}}, {"b", Value{i}}});
  }
  engine::ConditionList odd{{"a", engine::CompareOp::Eq, Value{std::int64_t{1}}}};
  CHECK(store.clear_cells("t", {"b"}, odd) == 3);
  for (const auto& row : store.select_rows("t", odd).rows) {
    CHECK(row[2] == Value{Null{}});
  }
  CHECK_THROWS_AS(store.clear_cells("t", {"id"}, odd), EngineError);
  CHECK_THROWS_AS(store.clear_cells("t", {"ghost"}, odd), EngineError);

  CHECK(store.delete_rows("t", odd) == 3);
  CHECK(store.row_count("t") == 3);
  CHECK(store.delete_rows("t", {}) == 3);
  CHECK(store.row_count("t") == 0);
}

TEST_CASE("rows come back in token order and node placement is recomputable") {
  auto store = make_store(4, /*seed=*/17);
  store.create_table("t", {"id", "v"}, "id");
  std::mt19937_64 rng(3);
  std::set<std::int64_t> ids;
  while (ids.size() < 300) ids.insert(static_cast<std::int64_t>(rng() % 100000));
  for (std::int64_t id : ids) {
    store.upsert_row("t", {{"id", Value{id}}, {"v", Value{id * 2}}});
  }

  auto rs = store.scan("t");
  REQUIRE(rs.rows.size() == 300);
  std::uint64_t prev = 0;
  bool first = true;
  for (const auto& row : rs.rows) {
    const std::uint64_t token = engine::token_for(value_hash_key(row[0]), 17);
    if (!first) CHECK(prev <= token);
    prev = token;
    first = false;
  }

  auto per_node = store.rows_per_node("t");
  std::size_t total = 0;
  std::map<std::string, std::size_t> expected;
  for (const auto& [node, count] : per_node) {
    total += count;
    expected[node] = 0;
  }
  CHECK(total == 300);
  for (std::int64_t id : ids) {
    expected[store.node_of(Value{id})] += 1;
  }
  CHECK(per_node == expected);
}

TEST_CASE("dump/load round-trips byte-exactly") {
  auto store = make_store(3, 5);
  store.create_table("people", {"id", "name"}, "id");
  store.create_table("series", {"country", "day", "cases"}, "country", "day");
  for (std::int64_t i = 0; i < 40; ++i) {
    store.upsert_row("people", {{"id", Value{i}}, {"name", Value{std::string("p") + std::to_string(i)}}});
    store.upsert_row("series", {{"country", Value{std::string(i % 2 ? "DE" : "FR")}},
                                {"day", Value{i}},
                                {"cases", Value{i * 3}}});
  }
  std::ostringstream first;
  store.dump(first);
  std::istringstream in(first.str());
  WideColumnStore restored = WideColumnStore::load(in);
  std::ostringstream second;
  restored.dump(second);
  CHECK(first.str() == second.str());
  CHECK(restored.row_count("people") == 40);
  CHECK(restored.hash_seed() == 5);
  CHECK(restored.ring().node_count() == 3);
}

TEST_CASE("statement executor: the decorated CQL subset end to end") {
  auto run_on = [](std::shared_ptr<WideColumnStore> store, std::string_view stmt) {
    engine::WideColumnExecutor exec(std::move(store));
    return exec.execute(dialect::tokenize(stmt));
  };

  SUBCASE("insert creates the table; select scans and projects") {
    auto store = std::make_shared<WideColumnStore>(make_store());
    auto ins = run_on(store,
                      R"s(INSERT INTO People (custid, branch, status) VALUES ('appl01', 'main', 'A');)s");
    CHECK(ins.rows.columns == std::vector<std::string>{"affected"});
    CHECK(ins.rows.rows[0][0] == Value{std::int64_t{1}});
    CHECK(ins.cost.io == 1);
    CHECK(ins.cost.conn == 1);
    CHECK(store->partition_key_column("People") == "custid");

    run_on(store, "INSERT INTO People (custid, branch, status) VALUES ('appl02', 'east', 'B')");
    // IF NOT EXISTS leaves the existing row alone
    run_on(store,
           "INSERT INTO People (custid, branch, status) VALUES ('appl01', 'west', 'Z') IF NOT EXISTS");
    CHECK(store->row_count("People") == 2);

    auto all = run_on(store, "SELECT * FROM People;");
    CHECK(all.rows.rows.size() == 2);
    CHECK(all.cost.io == 2);

    auto proj = run_on(store, "SELECT branch FROM People WHERE custid = 'appl01'");
    REQUIRE(proj.rows.columns == std::vector<std::string>{"branch"});
    REQUIRE(proj.rows.rows.size() == 1);
    CHECK(proj.rows.rows[0][0] == Value{std::string("main")});

    CHECK_THROWS_AS(run_on(store, "SELECT ghost FROM People"), EngineError);
    CHECK_THROWS_AS(run_on(store, "SELECT * FROM People LIMIT 5"), EngineError);
    CHECK_THROWS_AS(run_on(store, "SELECT * FROM Missing"), EngineError);
    CHECK_THROWS_AS(run_on(store, "DROP TABLE People"), EngineError);
  }

  SUBCASE("conditional update with a bareword UUID key") {
    auto store = std::make_shared<WideColumnStore>(make_store());
    run_on(store,
           "INSERT INTO People (id, comments) VALUES ('fb372533-eb95-4bb4-8685-6ef61e994caa', 'tbd')");
    auto upd = run_on(store,
                      R"s(UPDATE People SET comments ='Rides hard, gets along with others, a real winner' WHERE id = fb372533-eb95-4bb4-8685-6ef61e994caa IF EXISTS;)s");
    CHECK(upd.rows.rows[0][0] == Value{std::int64_t{1}});
    auto check = run_on(store, "SELECT comments FROM People");
    CHECK(check.rows.rows[0][0] ==
          Value{std::string("Rides hard, gets along with others, a real winner")});

    // IF EXISTS on a key that is not there: no upsert
    auto missed = run_on(store,
                         "UPDATE People SET comments = 'x' WHERE id = 'nobody' IF EXISTS");
    CHECK(missed.rows.rows[0][0] == Value{std::int64_t{0}});
    CHECK(store->row_count("People") == 1);

    // without IF EXISTS the same statement materializes the row
    auto upserted = run_on(store, "UPDATE People SET comments = 'x' WHERE id = 'nobody'");
    CHECK(upserted.rows.rows[0][0] == Value{std::int64_t{1}});
    CHECK(store->row_count("People") == 2);

    // USING clauses are tolerated and skipped
    auto ttl = run_on(store,
                      "UPDATE People USING TTL 60 SET comments = 'y' WHERE id = 'nobody'");
    CHECK(ttl.rows.rows[0][0] == Value{std::int64_t{1}});
  }

  SUBCASE("column delete clears cells, row delete removes rows") {
    auto store = std::make_shared<WideColumnStore>(make_store());
    run_on(store,
           "INSERT INTO People (id, lastname) VALUES ('c7fcb40-c141-4207-9494-a29f98de6f', 'Smith')");
    auto cleared = run_on(store,
                          R"s(DELETE lastname FROM People WHERE id = 'c7fcb40-c141-4207-9494-a29f98de6f';)s");
    CHECK(cleared.rows.rows[0][0] == Value{std::int64_t{1}});
    CHECK(store->row_count("People") == 1);
    auto row = run_on(store, "SELECT lastname FROM People");
    CHECK(row.rows.rows[0][0] == Value{Null{}});

    run_on(store, "INSERT INTO Cases (id, v) VALUES (2, 9)");
    auto dropped = run_on(store, R"s(DELETE FROM DB. Cases WHERE id= 2;)s");
    CHECK(dropped.rows.rows[0][0] == Value{std::int64_t{1}});
    CHECK(store->row_count("Cases") == 0);
  }
}

TEST_SUITE_END();

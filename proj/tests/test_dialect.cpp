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

#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "polygate/dialect.hpp"
#include "polygate/errors.hpp"
#include "routing_cases.hpp"

using namespace polygate;
using dialect::EngineKind;
using dialect::Token;
using dialect::TokenKind;

TEST_SUITE_BEGIN("dialect");

TEST_CASE("tokenize: canonical SQL statement") {
  auto st = dialect::tokenize("Select * from People;");
  REQUIRE(st.tokens.size() == 5);
  CHECK(st.tokens[0] == Token{TokenKind::Keyword, "SELECT"});
  CHECK(st.tokens[1] == Token{TokenKind::Punct, "*"});
  CHECK(st.tokens[2] == Token{TokenKind::Keyword, "FROM"});
  CHECK(st.tokens[3] == Token{TokenKind::Identifier, "People"});
  CHECK(st.tokens[4] == Token{TokenKind::Punct, ";"});
  CHECK(st.raw == "Select * from People;");
}

TEST_CASE("tokenize: empty input gives empty token sequence") {
  CHECK(dialect::tokenize("").tokens.empty());
}

TEST_CASE("tokenize: shell method chain") {
  auto st = dialect::tokenize("db. People. Find ();");
  REQUIRE(st.tokens.size() == 8);
  CHECK(st.tokens[0] == Token{TokenKind::Identifier, "db"});
  CHECK(st.tokens[1] == Token{TokenKind::Punct, "."});
  CHECK(st.tokens[2] == Token{TokenKind::Identifier, "People"});
  CHECK(st.tokens[3] == Token{TokenKind::Punct, "."});
  CHECK(st.tokens[4] == Token{TokenKind::Identifier, "Find"});
  CHECK(st.tokens[5] == Token{TokenKind::Punct, "("});
  CHECK(st.tokens[6] == Token{TokenKind::Punct, ")"});
  CHECK(st.tokens[7] == Token{TokenKind::Punct, ";"});
}

TEST_CASE("tokenize: literals and numbers keep their text") {
  auto st = dialect::tokenize("where id = 'John' and n = 43.2 or h = 0x3af6240c1000035dbc");
  bool saw_string = false, saw_real = false, saw_hex = false;
  for (const Token& t : st.tokens) {
    if (t.kind == TokenKind::String && t.text == "John") saw_string = true;
    if (t.kind == TokenKind::Number && t.text == "43.2") saw_real = true;
    if (t.kind == TokenKind::Number && t.text == "0x3af6240c1000035dbc") saw_hex = true;
  }
  CHECK(saw_string);
  CHECK(saw_real);
  CHECK(saw_hex);
}

TEST_CASE("tokenize: unterminated literal becomes an opaque tail, not an error") {
  auto st = dialect::tokenize("select 'oops");
  REQUIRE(!st.tokens.empty());
  CHECK(st.tokens.back().kind == TokenKind::Opaque);
}

TEST_CASE("tokenize: total and deterministic over arbitrary bytes") {
  std::mt19937_64 rng(20260819);
  std::uniform_int_distribution<int> len(0, 80);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(byte(rng)));
    auto first = dialect::tokenize(s);
    auto second = dialect::tokenize(s);
    CHECK(first.tokens == second.tokens);
    CHECK(first.raw == s);
  }
}

TEST_CASE("routing fixture: every statement routes to its family's engine") {
  const auto& corpus = dialect::default_corpus();
  for (const auto& c : testing::routing_cases()) {
    EngineKind got = dialect::detect_engine(c.statement, corpus);
    INFO("statement: ", std::string(c.statement));
    CHECK(got == c.expected);
  }
  // the fixture covers all six engine families
  std::set<EngineKind> seen;
  for (const auto& c : testing::routing_cases()) seen.insert(c.expected);
  CHECK(seen.size() == 6);
}

TEST_CASE("detect_engine: empty and gibberish statements yield NoEngine") {
  const auto& corpus = dialect::default_corpus();
  CHECK(dialect::detect_engine("", corpus) == EngineKind::NoEngine);
  CHECK(dialect::detect_engine("xyzzy!!", corpus) == EngineKind::NoEngine);
  CHECK(dialect::detect_engine("the quick brown fox", corpus) == EngineKind::NoEngine);
}

TEST_CASE("detect_engine: priority order is the tie-break") {
  // Both the relational and wide-column signatures accept an undecorated
  // SELECT; the relational engine carries the smaller priority and must win.
  const auto& corpus = dialect::default_corpus();
  const auto st = dialect::tokenize("SELECT * FROM People;");
  const dialect::DialectSignature* relational = nullptr;
  const dialect::DialectSignature* widecolumn = nullptr;
  for (const auto& sig : corpus.signatures) {
    if (sig.engine == EngineKind::Relational) relational = &sig;
    if (sig.engine == EngineKind::WideColumn) widecolumn = &sig;
  }
  REQUIRE(relational != nullptr);
  REQUIRE(widecolumn != nullptr);
  auto any_match = [&](const dialect::DialectSignature& sig) {
    for (const auto& m : sig.markers) {
      if (dialect::marker_matches(m, st)) return true;
    }
    return false;
  };
  CHECK(any_match(*relational));
  CHECK(any_match(*widecolumn));
  CHECK(relational->priority < widecolumn->priority);
  CHECK(dialect::detect_engine(st, corpus) == EngineKind::Relational);
}

TEST_CASE("detect_engine: decorated CQL shapes do not look like generic SQL") {
  const auto& corpus = dialect::default_corpus();
  CHECK(dialect::detect_engine("UPDATE t SET a=1 WHERE id=2 IF EXISTS;", corpus) ==
        EngineKind::WideColumn);
  CHECK(dialect::detect_engine("UPDATE t USING TTL 60 SET a=1 WHERE id=2;", corpus) ==
        EngineKind::WideColumn);
  CHECK(dialect::detect_engine("DELETE col FROM t WHERE id=2;", corpus) ==
        EngineKind::WideColumn);
  CHECK(dialect::detect_engine("DELETE FROM ks. t WHERE id=2;", corpus) ==
        EngineKind::WideColumn);
}

TEST_CASE("default corpus: six engines, sorted priorities, known version") {
  const auto& corpus = dialect::default_corpus();
  REQUIRE(corpus.signatures.size() == 6);
  std::size_t markers = 0;
  for (std::size_t i = 0; i < corpus.signatures.size(); ++i) {
    if (i > 0) CHECK(corpus.signatures[i - 1].priority < corpus.signatures[i].priority);
    CHECK(!corpus.signatures[i].markers.empty());
    markers += corpus.signatures[i].markers.size();
  }
  CHECK(markers >= 24);
  CHECK(corpus.version == "bundled-1");
}

TEST_CASE("detect_engine: deterministic across repeated calls") {
  const auto& corpus = dialect::default_corpus();
  for (const auto& c : testing::routing_cases()) {
    EngineKind a = dialect::detect_engine(c.statement, corpus);
    EngineKind b = dialect::detect_engine(c.statement, corpus);
    CHECK(a == b);
  }
}

TEST_CASE("parse_corpus: grammar and invariant violations are rejected") {
  CHECK_THROWS_AS(dialect::parse_corpus(""), CorpusError);  // no engines at all
  CHECK_THROWS_AS(dialect::parse_corpus("# only a comment\n"), CorpusError);
  // missing field
  CHECK_THROWS_AS(dialect::parse_corpus("relational\t0\tkeyword\n"), CorpusError);
  // unknown engine
  CHECK_THROWS_AS(dialect::parse_corpus("martian\t0\tkeyword\tSELECT\n"), CorpusError);
  // bad priority
  CHECK_THROWS_AS(dialect::parse_corpus("relational\tzero\tkeyword\tSELECT\n"), CorpusError);
  CHECK_THROWS_AS(dialect::parse_corpus("relational\t-1\tkeyword\tSELECT\n"), CorpusError);
  // unknown marker kind
  CHECK_THROWS_AS(dialect::parse_corpus("relational\t0\tregex\tSELECT.*\n"), CorpusError);
  // empty pattern
  CHECK_THROWS_AS(dialect::parse_corpus("relational\t0\tkeyword\t\n"), CorpusError);
  // unknown structural shape
  CHECK_THROWS_AS(dialect::parse_corpus("relational\t0\tstructural\tsql-upsert\n"), CorpusError);

  auto lines_for_all = [](int rel_priority) {
    std::string text;
    text += "relational\t" + std::to_string(rel_priority) + "\tstructural\tsql-select\n";
    text += "document\t1\tstructural\tmember-chain:find\n";
    text += "widecolumn\t2\tkeyword\tUSING\n";
    text += "keyvalue\t3\tprefix\triak-shell>\n";
    text += "graph\t4\tstructural\tnode-pattern:match\n";
    text += "documenthttp\t5\tstructural\tjson-selector\n";
    return text;
  };
  CHECK_NOTHROW(dialect::parse_corpus(lines_for_all(0)));
  // duplicate priority across two engines
  CHECK_THROWS_AS(dialect::parse_corpus(lines_for_all(1)), CorpusError);
  // one engine listed with two different priorities
  CHECK_THROWS_AS(
      dialect::parse_corpus(lines_for_all(0) + "relational\t9\tkeyword\tSELECT\n"),
      CorpusError);
  // an engine missing entirely
  std::string missing = lines_for_all(0);
  missing = missing.substr(missing.find('\n') + 1);
  CHECK_THROWS_AS(dialect::parse_corpus(missing), CorpusError);
}

TEST_CASE("parse_corpus: version comment and fallback") {
  std::string text = "# version: v7\n";
  text += "relational\t0\tstructural\tsql-select\n";
  text += "document\t1\tstructural\tmember-chain:find\n";
  text += "widecolumn\t2\tkeyword\tUSING\n";
  text += "keyvalue\t3\tprefix\triak-shell>\n";
  text += "graph\t4\tstructural\tnode-pattern:match\n";
  text += "documenthttp\t5\tstructural\tjson-selector\n";
  CHECK(dialect::parse_corpus(text).version == "v7");
  CHECK(dialect::parse_corpus(text.substr(text.find('\n') + 1), "fallback").version ==
        "fallback");
}

TEST_CASE("load_corpus: missing file is an input error") {
  CHECK_THROWS_AS(dialect::load_corpus("/nonexistent/corpus.tsv"), InputError);
}

TEST_CASE("marker_matches: structural recognizers in isolation") {
  using dialect::Marker;
  using dialect::MarkerKind;
  auto matches = [](std::string pattern, std::string_view stmt) {
    return dialect::marker_matches(Marker{MarkerKind::Structural, std::move(pattern)},
                                   dialect::tokenize(stmt));
  };
  CHECK(matches("sql-select", "select a from t"));
  CHECK(!matches("sql-select", "select a from ks.t"));      // qualified table
  CHECK(!matches("sql-select", "select a from t using x")); // decorated
  CHECK(matches("sql-insert", "insert into t values (1)"));
  CHECK(!matches("sql-insert", "insert into `t` values (1)"));
  CHECK(matches("sql-update", "update t set a=1"));
  CHECK(matches("sql-delete", "delete from t where id=1"));
  CHECK(matches("sql-delete", "delete * from t"));
  CHECK(!matches("sql-delete", "delete col from t"));
  CHECK(matches("cql-column-delete", "delete col from t"));
  CHECK(matches("cql-qualified-delete", "delete from ks. t where id=1"));
  CHECK(matches("cypher-delete", "DELETE rel"));
  CHECK(!matches("cypher-delete", "DELETE rel FROM t"));
  CHECK(matches("member-chain:find", "db.orders.find()"));
  CHECK(!matches("member-chain:find", "db.orders.remove()"));
  CHECK(matches("member-chain:remove", "db.orders.remove()"));
  CHECK(matches("node-pattern:match", "MATCH (n)"));
  CHECK(matches("node-pattern:create", "CREATE (n)"));
  CHECK(!matches("node-pattern:create", "CREATE TABLE t (id int)"));
  CHECK(matches("json-selector", "\"selector\": {\"a\": 1}"));
  CHECK(matches("n1ql-insert", "INSERT INTO t VALUES (1) RETURNING *"));
  CHECK(matches("http-verb-url:put", "curl -X PUT http://h/p"));
  CHECK(!matches("http-verb-url:put", "curl -X DELETE http://h/p"));
  CHECK(matches("http-verb-url:delete", "curl -X DELETE https://h/p"));
  CHECK_THROWS_AS(matches("no-such-shape", "x"), CorpusError);
}

TEST_CASE("marker_matches: prefix and keyword kinds") {
  using dialect::Marker;
  using dialect::MarkerKind;
  Marker prefix{MarkerKind::Prefix, "riak-shell>select"};
  CHECK(dialect::marker_matches(prefix, dialect::tokenize("riak-shell>select * from t")));
  CHECK(dialect::marker_matches(prefix, dialect::tokenize("  RIAK-SHELL>SELECT 1")));
  CHECK(!dialect::marker_matches(prefix, dialect::tokenize("select riak-shell>")));

  Marker kw{MarkerKind::Keyword, "IF EXISTS"};
  CHECK(dialect::marker_matches(kw, dialect::tokenize("update t set a=1 if exists")));
  CHECK(!dialect::marker_matches(kw, dialect::tokenize("update t set a=1 if not exists")));
}

TEST_CASE("engine kind names round-trip") {
  for (EngineKind k :
       {EngineKind::Relational, EngineKind::DocumentStore, EngineKind::WideColumn,
        EngineKind::KeyValueStore, EngineKind::GraphStore, EngineKind::DocumentHttpStore}) {
    auto back = dialect::engine_kind_from_name(dialect::engine_kind_name(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(dialect::engine_kind_from_name("widecolumn") == EngineKind::WideColumn);
  CHECK(!dialect::engine_kind_from_name("martian").has_value());
}

TEST_SUITE_END();

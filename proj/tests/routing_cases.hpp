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

#include <string_view>
#include <vector>

#include "polygate/dialect.hpp"

namespace polygate::testing {

struct RoutingCase {
  std::string_view statement;
  dialect::EngineKind expected;
};

// Representative CRUD statements of each engine family, kept verbatim
// (spelling, spacing, stray shell prompts and all). The expected engine
// encodes the routing law: generic SQL shapes resolve to Relational even
// though a wide-column store would accept them; everything else goes to the
// engine whose dialect the statement is written in.
inline const std::vector<RoutingCase>& routing_cases() {
  using dialect::EngineKind;
  static const std::vector<RoutingCase> kCases = {
      // SQL family
      {R"s(Select * from People;)s", EngineKind::Relational},
      {R"s(Select * from People where id=3)s", EngineKind::Relational},
      {R"s(Insert into People(id, Name, position, phone) values(1,'John','Egypt','0100000'))s",
       EngineKind::Relational},
      {R"s(Update People set position='USA' where id=25)s", EngineKind::Relational},
      {R"s(Delete * from People where id=25)s", EngineKind::Relational},

      // shell-method-chain document family
      {R"s(db. People. Find ();)s", EngineKind::DocumentStore},
      {R"s(db. People. Insert ({cust_id: 'appl01', branch: 'main', status: 'A'}))s",
       EngineKind::DocumentStore},
      {R"s(db. People. Update ({custage: {$gt: 2}}, {$set: {branch: 'main'}}, {multi: true}))s",
       EngineKind::DocumentStore},
      {R"s(db. PeopleCollection.deletemany();)s", EngineKind::DocumentStore},
      {R"s(db. PeopleCollection.remove();)s", EngineKind::DocumentStore},

      // CQL family; the undecorated SELECT/INSERT are byte-for-byte valid SQL
      // and resolve to Relational by priority order
      {R"s(SELECT * FROM People;)s", EngineKind::Relational},
      {R"s(INSERT INTO People (custid, branch, status) VALUES ('appl01', 'main', 'A');)s",
       EngineKind::Relational},
      {R"s(UPDATE People SET comments ='Rides hard, gets along with others, a real winner' WHERE id = fb372533-eb95-4bb4-8685-6ef61e994caa IF EXISTS;)s",
       EngineKind::WideColumn},
      {R"s(DELETE lastname FROM People WHERE id = 'c7fcb40-c141-4207-9494-a29f98de6f';)s",
       EngineKind::WideColumn},
      {R"s(DELETE FROM DB. People WHERE id= 2;)s", EngineKind::WideColumn},

      // key-value shell family
      {R"s(riak-shell>select Name, Position from People where id > 1234560 and region = 'South Atlantic' and state = 'South Carolina')s",
       EngineKind::KeyValueStore},
      {R"s(riak-shell>INSERT INTO People VALUES ('SC', '2018-01-01T15:00:00', 'sunny', 43.2, 0x3af6240c1000035dbc), ('SC', '2017-01-01T16:00:00', 'cloudy', 41.5, 0x3af557bc4000042dbc), ('SC', '2017-01-01T17:00:00', 'windy', 33.0, 0x3af002ee10000a2dbc);)s",
       EngineKind::KeyValueStore},
      {R"s(riak-shell>Update People set position='USA' where id=25)s", EngineKind::KeyValueStore},
      {R"s(riak-shell>Delete * from People where id=25)s", EngineKind::KeyValueStore},

      // document-over-HTTP family
      {R"s("selector": {
  "year": {"$gt": 2010} },
  "fields": ["_id", "_rev", "year", "title"], "sort": [{"year": "asc"}],
  "limit": 2, "skip": 0,
  "execution_stats": true)s",
       EngineKind::DocumentHttpStore},
      {R"s(INSERT INTO `travel-sample` (KEY, VALUE) VALUES ("key1", { "type" : "hotel", "name" : "new hotel" }) RETURNING *)s",
       EngineKind::DocumentHttpStore},
      {R"s(curl -X PUT http://127.0.0.1:5984/database_name/document_id/ -d '{"field": "value", "_rev": "revision id" }')s",
       EngineKind::DocumentHttpStore},
      {R"s($ curl -X DELETE http://127.0.0.1:5984/my_database/001?rev=1-3fcc78daac7a90803f0a5e383
{"ok":true,"id":"001","rev":"2a561d56de1ce3305d693bd156"})s",
       EngineKind::DocumentHttpStore},

      // graph-pattern family, including the standalone fragments its
      // multi-step update/delete recipes are written as
      {R"s(MATCH (C:People)
WHERE 3 <= p.yearsExp <= 7
RETURN p)s",
       EngineKind::GraphStore},
      {R"s($ CREATE (n))s", EngineKind::GraphStore},
      {R"s($ CREATE (node1: Test))s", EngineKind::GraphStore},
      {R"s($ CREATE (node1: test), (node2: Test2), (node: Test3))s", EngineKind::GraphStore},
      {R"s($ CREATE (node1:Test {nodeId: 2, nodeName: 'sample', nodeDescription: 'testing'})return node1)s",
       EngineKind::GraphStore},
      {R"s($ CREATE (node1: Test) set node1.name-'test' return node1)s", EngineKind::GraphStore},
      {R"s($ CREATE (emp:Employee), (pro:Project) ,(emp)-(ew:EMP_WORKS_FOR_PRO)->(pro) return emp, pro)s",
       EngineKind::GraphStore},
      {R"s(MATCH (mgr:People {PeopleID:5})
MATCH (cust: People { PeopleID:3})-[rel:REPORTS_TO]->()
DELETE rel)s",
       EngineKind::GraphStore},
      {R"s(CREATE (cust)-[:REPORTS_TO]->(mgr))s", EngineKind::GraphStore},
      {R"s(RETURN *;)s", EngineKind::GraphStore},
      {R"s(MATCH (mgr:People {PeopleID:5}))s", EngineKind::GraphStore},
      {R"s(MATCH (cust: People { PeopleID:3})-[rel:REPORTS_TO]->())s", EngineKind::GraphStore},
      {R"s(DELETE rel)s", EngineKind::GraphStore},
  };
  return kCases;
}

}  // namespace polygate::testing

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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polygate::dialect {

// The engine families the gateway can route to. NoEngine is the failure
// value returned when no signature matches; it is never a routing target.
enum class EngineKind {
  Relational,
  DocumentStore,
  WideColumn,
  KeyValueStore,
  GraphStore,
  DocumentHttpStore,
  NoEngine,
};

std::string_view engine_kind_name(EngineKind kind);

// Accepts both the canonical names above and the lowercase spellings used in
// corpus files ("relational", "document", "widecolumn", "keyvalue", "graph",
// "documenthttp").
std::optional<EngineKind> engine_kind_from_name(std::string_view name);

enum class TokenKind {
  Keyword,     // reserved word, text upper-cased
  Identifier,  // bare name, text preserved
  Number,      // integer/real/hex literal, text preserved
  String,      // quoted literal, text is the unquoted payload
  Punct,       // single operator/separator character
  Opaque,      // anything the tokenizer could not classify
};

struct Token {
  TokenKind kind;
  std::string text;
  bool operator==(const Token&) const = default;
};

struct QueryStatement {
  std::string raw;
  std::vector<Token> tokens;
};

// Total and deterministic: any byte string tokenizes, unparseable fragments
// come back as Opaque tokens rather than errors.
QueryStatement tokenize(std::string_view raw);

enum class MarkerKind { Prefix, Keyword, Structural };

struct Marker {
  MarkerKind kind;
  // Prefix: literal statement prefix, matched case-insensitively after
  //   leading whitespace is skipped.
  // Keyword: space-separated keyword sequence that must appear contiguously
  //   in the token stream.
  // Structural: name of a token-shape recognizer built into the matcher,
  //   optionally parameterized as "shape:arg" (see marker_matches).
  std::string pattern;
};

struct DialectSignature {
  EngineKind engine;
  int priority = 0;  // smaller wins; ties across engines are a corpus error
  std::vector<Marker> markers;
};

struct SignatureCorpus {
  std::vector<DialectSignature> signatures;  // sorted by priority
  std::string version;
};

// Corpus file grammar: one marker per line,
//   engine <tab> priority <tab> marker-kind <tab> pattern
// with '#' comment lines and blank lines ignored. A comment of the form
// "# version: <id>" names the corpus. All lines of one engine must agree on
// its priority; two engines must not share one. Every engine kind must end
// up with at least one marker.
SignatureCorpus parse_corpus(std::string_view text,
                             std::string_view fallback_version = "unversioned");
SignatureCorpus load_corpus(const std::string& path);

// The corpus compiled into the library: one statement-family marker per CRUD
// family of each supported engine. Identical to the shipped
// data/dialect_corpus.tsv.
const SignatureCorpus& default_corpus();

bool marker_matches(const Marker& marker, const QueryStatement& statement);

// First match in priority order wins; no match yields NoEngine. Pure:
// identical input and corpus give the identical answer on any thread.
EngineKind detect_engine(const QueryStatement& statement,
                         const SignatureCorpus& corpus);
EngineKind detect_engine(std::string_view raw, const SignatureCorpus& corpus);

}  // namespace polygate::dialect

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

#include "polygate/dialect.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "polygate/errors.hpp"
#include "bundled_data.hpp"

namespace polygate::dialect {

namespace {

std::string to_upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](unsigned char x, unsigned char y) {
           return std::tolower(x) == std::tolower(y);
         });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Reserved words recognized across the supported dialects. Anything else
// alphabetic is an identifier.
const std::unordered_set<std::string>& keywords() {
  static const std::unordered_set<std::string> kKeywords = {
      "SELECT", "FROM",   "WHERE",  "INSERT",    "INTO",  "VALUES", "UPDATE",
      "SET",    "DELETE", "IF",     "EXISTS",    "USING", "MATCH",  "CREATE",
      "RETURN", "RETURNING", "KEY", "VALUE",     "AND",   "OR",     "NOT",
      "TRUE",   "FALSE",  "NULL",   "LIMIT",     "ORDER", "BY",     "TABLE",
  };
  return kKeywords;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::string_view engine_kind_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::Relational: return "Relational";
    case EngineKind::DocumentStore: return "DocumentStore";
    case EngineKind::WideColumn: return "WideColumn";
    case EngineKind::KeyValueStore: return "KeyValueStore";
    case EngineKind::GraphStore: return "GraphStore";
    case EngineKind::DocumentHttpStore: return "DocumentHttpStore";
    case EngineKind::NoEngine: return "NoEngine";
  }
  return "NoEngine";
}

std::optional<EngineKind> engine_kind_from_name(std::string_view name) {
  struct Entry {
    std::string_view name;
    EngineKind kind;
  };
  static constexpr std::array<Entry, 13> kNames{{
      {"relational", EngineKind::Relational},
      {"document", EngineKind::DocumentStore},
      {"documentstore", EngineKind::DocumentStore},
      {"widecolumn", EngineKind::WideColumn},
      {"keyvalue", EngineKind::KeyValueStore},
      {"keyvaluestore", EngineKind::KeyValueStore},
      {"graph", EngineKind::GraphStore},
      {"graphstore", EngineKind::GraphStore},
      {"documenthttp", EngineKind::DocumentHttpStore},
      {"documenthttpstore", EngineKind::DocumentHttpStore},
      {"noengine", EngineKind::NoEngine},
      {"sql", EngineKind::Relational},
      {"cql", EngineKind::WideColumn},
  }};
  for (const auto& e : kNames) {
    if (iequals(name, e.name)) return e.kind;
  }
  return std::nullopt;
}

QueryStatement tokenize(std::string_view raw) {
  QueryStatement out;
  out.raw.assign(raw);
  std::size_t i = 0;
  const std::size_t n = raw.size();
  while (i < n) {
    char c = raw[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t j = i + 1;
      while (j < n && is_ident_char(raw[j])) ++j;
      std::string word(raw.substr(i, j - i));
      std::string upper = to_upper(word);
      if (keywords().count(upper)) {
        out.tokens.push_back({TokenKind::Keyword, std::move(upper)});
      } else {
        out.tokens.push_back({TokenKind::Identifier, std::move(word)});
      }
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      if (c == '0' && i + 1 < n && (raw[i + 1] == 'x' || raw[i + 1] == 'X')) {
        j = i + 2;
        while (j < n && std::isxdigit(static_cast<unsigned char>(raw[j]))) ++j;
      } else {
        bool seen_dot = false;
        while (j < n && (std::isdigit(static_cast<unsigned char>(raw[j])) ||
                         (!seen_dot && raw[j] == '.' && j + 1 < n &&
                          std::isdigit(static_cast<unsigned char>(raw[j + 1]))))) {
          if (raw[j] == '.') seen_dot = true;
          ++j;
        }
      }
      out.tokens.push_back({TokenKind::Number, std::string(raw.substr(i, j - i))});
      i = j;
      continue;
    }
    if (c == '\'' || c == '"') {
      std::size_t j = i + 1;
      while (j < n && raw[j] != c) {
        if (raw[j] == '\\' && j + 1 < n) ++j;  // skip escaped character
        ++j;
      }
      if (j >= n) {
        // Unterminated literal: keep the rest opaque instead of failing.
        out.tokens.push_back({TokenKind::Opaque, std::string(raw.substr(i))});
        break;
      }
      out.tokens.push_back({TokenKind::String, std::string(raw.substr(i + 1, j - i - 1))});
      i = j + 1;
      continue;
    }
    static constexpr std::string_view kPunct = "()*,;.={}[]<>:$`-+/?!@&|%^~#\\";
    if (kPunct.find(c) != std::string_view::npos) {
      out.tokens.push_back({TokenKind::Punct, std::string(1, c)});
      ++i;
      continue;
    }
    out.tokens.push_back({TokenKind::Opaque, std::string(1, c)});
    ++i;
  }
  return out;
}

namespace {

using Tokens = std::vector<Token>;

bool is_kw(const Token& t, std::string_view kw) {
  return t.kind == TokenKind::Keyword && t.text == kw;
}
bool is_punct(const Token& t, char c) {
  return t.kind == TokenKind::Punct && t.text.size() == 1 && t.text[0] == c;
}
bool is_name(const Token& t) {
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword;
}
bool contains_kw(const Tokens& ts, std::string_view kw) {
  return std::any_of(ts.begin(), ts.end(), [&](const Token& t) { return is_kw(t, kw); });
}
bool contains_punct(const Tokens& ts, char c) {
  return std::any_of(ts.begin(), ts.end(), [&](const Token& t) { return is_punct(t, c); });
}

// Distinctive decorations of the non-relational SQL lookalikes. The generic
// SQL recognizers decline a statement carrying any of these so that the
// priority rule alone never swallows a more specific dialect.
bool has_non_sql_decoration(const Tokens& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Token& t = ts[i];
    if (is_kw(t, "USING") || is_kw(t, "RETURNING")) return true;
    if (is_kw(t, "IF") && i + 1 < ts.size() && is_kw(ts[i + 1], "EXISTS")) return true;
    if (is_punct(t, '`') || is_punct(t, '{')) return true;
  }
  return false;
}

std::size_t find_kw(const Tokens& ts, std::string_view kw, std::size_t from = 0) {
  for (std::size_t i = from; i < ts.size(); ++i) {
    if (is_kw(ts[i], kw)) return i;
  }
  return ts.size();
}

// table reference at position i must be a bare (unqualified) identifier
bool bare_table_at(const Tokens& ts, std::size_t i) {
  if (i >= ts.size() || ts[i].kind != TokenKind::Identifier) return false;
  return i + 1 >= ts.size() || !is_punct(ts[i + 1], '.');
}

bool match_sql_select(const Tokens& ts) {
  if (ts.empty() || !is_kw(ts[0], "SELECT")) return false;
  std::size_t from = find_kw(ts, "FROM");
  if (from == ts.size()) return false;
  return bare_table_at(ts, from + 1) && !has_non_sql_decoration(ts);
}

bool match_sql_insert(const Tokens& ts) {
  if (ts.size() < 3 || !is_kw(ts[0], "INSERT") || !is_kw(ts[1], "INTO")) return false;
  if (ts[2].kind != TokenKind::Identifier) return false;
  if (ts.size() > 3 && is_punct(ts[3], '.')) return false;
  return contains_kw(ts, "VALUES") && !has_non_sql_decoration(ts);
}

bool match_sql_update(const Tokens& ts) {
  if (ts.size() < 2 || !is_kw(ts[0], "UPDATE")) return false;
  if (ts[1].kind != TokenKind::Identifier) return false;
  if (ts.size() > 2 && is_punct(ts[2], '.')) return false;
  return contains_kw(ts, "SET") && !has_non_sql_decoration(ts);
}

bool match_sql_delete(const Tokens& ts) {
  if (ts.empty() || !is_kw(ts[0], "DELETE")) return false;
  std::size_t from;
  if (ts.size() > 1 && is_kw(ts[1], "FROM")) {
    from = 1;
  } else if (ts.size() > 2 && is_punct(ts[1], '*') && is_kw(ts[2], "FROM")) {
    from = 2;
  } else {
    return false;
  }
  return bare_table_at(ts, from + 1) && !has_non_sql_decoration(ts);
}

// db. <collection>. <method> ( ... ) — the shell form of the document store.
bool match_member_chain(const Tokens& ts, std::string_view method) {
  if (ts.size() < 6) return false;
  if (ts[0].kind != TokenKind::Identifier || !iequals(ts[0].text, "db")) return false;
  if (!is_punct(ts[1], '.') || !is_name(ts[2]) || !is_punct(ts[3], '.')) return false;
  if (!is_name(ts[4]) || !is_punct(ts[5], '(')) return false;
  return method == "*" || method.empty() || iequals(ts[4].text, method);
}

// MATCH (...) / CREATE (...) node patterns, optionally behind a shell '$'.
bool match_node_pattern(const Tokens& ts, std::string_view verb) {
  std::size_t i = 0;
  while (i < ts.size() && is_punct(ts[i], '$')) ++i;
  if (i + 1 >= ts.size()) return false;
  bool is_match = is_kw(ts[i], "MATCH");
  bool is_create = is_kw(ts[i], "CREATE");
  if (!is_match && !is_create) return false;
  if (!is_punct(ts[i + 1], '(')) return false;
  if (verb.empty() || verb == "*") return true;
  return (is_match && iequals(verb, "match")) || (is_create && iequals(verb, "create"));
}

// A quoted "selector" key introducing a JSON filter document.
bool match_json_selector(const Tokens& ts) {
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i].kind == TokenKind::String && iequals(ts[i].text, "selector") &&
        is_punct(ts[i + 1], ':')) {
      return true;
    }
  }
  return false;
}

// INSERT that is not plain SQL: backtick-quoted bucket, (KEY, VALUE) column
// list, RETURNING clause or an inline JSON document.
bool match_n1ql_insert(const Tokens& ts) {
  if (ts.size() < 2 || !is_kw(ts[0], "INSERT") || !is_kw(ts[1], "INTO")) return false;
  if (contains_punct(ts, '`') || contains_punct(ts, '{')) return true;
  if (contains_kw(ts, "RETURNING")) return true;
  return contains_kw(ts, "KEY") && contains_kw(ts, "VALUE");
}

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from = 0) {
  if (needle.empty() || hay.size() < needle.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    if (iequals(hay.substr(i, needle.size()), needle)) return i;
  }
  return std::string_view::npos;
}

// curl -X <verb> http://... — the HTTP face of the document store.
bool match_http_verb_url(std::string_view raw, std::string_view verb) {
  if (find_ci(raw, "curl") == std::string_view::npos) return false;
  if (find_ci(raw, "http://") == std::string_view::npos &&
      find_ci(raw, "https://") == std::string_view::npos) {
    return false;
  }
  std::size_t x = 0;
  while ((x = find_ci(raw, "-x", x)) != std::string_view::npos) {
    std::size_t v = x + 2;
    while (v < raw.size() && std::isspace(static_cast<unsigned char>(raw[v]))) ++v;
    std::size_t e = v;
    while (e < raw.size() && std::isalpha(static_cast<unsigned char>(raw[e]))) ++e;
    if (e > v) {
      if (verb.empty() || verb == "*" || iequals(raw.substr(v, e - v), verb)) return true;
    }
    x += 2;
  }
  return false;
}

// DELETE <column> FROM ... — column-targeted delete, which plain SQL lacks.
bool match_cql_column_delete(const Tokens& ts) {
  if (ts.size() < 3 || !is_kw(ts[0], "DELETE")) return false;
  if (!is_name(ts[1]) || is_kw(ts[1], "FROM")) return false;
  return is_kw(ts[2], "FROM");
}

// DELETE FROM <keyspace>. <table> ... — keyspace-qualified table reference.
bool match_cql_qualified_delete(const Tokens& ts) {
  if (ts.size() < 5 || !is_kw(ts[0], "DELETE") || !is_kw(ts[1], "FROM")) return false;
  return is_name(ts[2]) && is_punct(ts[3], '.') && is_name(ts[4]);
}

// DELETE <identifier> with no FROM clause anywhere — detaches a bound graph
// element rather than table rows.
bool match_cypher_delete(const Tokens& ts) {
  if (ts.size() < 2 || !is_kw(ts[0], "DELETE")) return false;
  if (!is_name(ts[1]) || is_kw(ts[1], "FROM")) return false;
  return !contains_kw(ts, "FROM");
}

struct StructuralPattern {
  std::string shape;
  std::string arg;
};

StructuralPattern split_structural(std::string_view pattern) {
  auto colon = pattern.find(':');
  if (colon == std::string_view::npos) return {std::string(pattern), ""};
  return {std::string(pattern.substr(0, colon)), std::string(pattern.substr(colon + 1))};
}

const std::set<std::string>& structural_shapes() {
  static const std::set<std::string> kShapes = {
      "sql-select",          "sql-insert",     "sql-update",  "sql-delete",
      "member-chain",        "node-pattern",   "json-selector", "n1ql-insert",
      "http-verb-url",       "cql-column-delete", "cql-qualified-delete",
      "cypher-delete",
  };
  return kShapes;
}

bool match_structural(const StructuralPattern& p, const QueryStatement& st) {
  const Tokens& ts = st.tokens;
  if (p.shape == "sql-select") return match_sql_select(ts);
  if (p.shape == "sql-insert") return match_sql_insert(ts);
  if (p.shape == "sql-update") return match_sql_update(ts);
  if (p.shape == "sql-delete") return match_sql_delete(ts);
  if (p.shape == "member-chain") return match_member_chain(ts, p.arg);
  if (p.shape == "node-pattern") return match_node_pattern(ts, p.arg);
  if (p.shape == "json-selector") return match_json_selector(ts);
  if (p.shape == "n1ql-insert") return match_n1ql_insert(ts);
  if (p.shape == "http-verb-url") return match_http_verb_url(st.raw, p.arg);
  if (p.shape == "cql-column-delete") return match_cql_column_delete(ts);
  if (p.shape == "cql-qualified-delete") return match_cql_qualified_delete(ts);
  if (p.shape == "cypher-delete") return match_cypher_delete(ts);
  throw CorpusError("unknown structural shape: " + p.shape);
}

bool match_keyword_sequence(std::string_view pattern, const Tokens& ts) {
  std::vector<std::string> words;
  std::istringstream in{std::string(pattern)};
  std::string w;
  while (in >> w) words.push_back(w);
  if (words.empty()) return false;
  if (ts.size() < words.size()) return false;
  for (std::size_t i = 0; i + words.size() <= ts.size(); ++i) {
    bool all = true;
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (!is_name(ts[i + j]) || !iequals(ts[i + j].text, words[j])) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool match_prefix(std::string_view pattern, std::string_view raw) {
  std::string_view body = raw;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) {
    body.remove_prefix(1);
  }
  return body.size() >= pattern.size() && iequals(body.substr(0, pattern.size()), pattern);
}

}  // namespace

bool marker_matches(const Marker& marker, const QueryStatement& statement) {
  switch (marker.kind) {
    case MarkerKind::Prefix:
      return match_prefix(marker.pattern, statement.raw);
    case MarkerKind::Keyword:
      return match_keyword_sequence(marker.pattern, statement.tokens);
    case MarkerKind::Structural:
      return match_structural(split_structural(marker.pattern), statement);
  }
  return false;
}

SignatureCorpus parse_corpus(std::string_view text, std::string_view fallback_version) {
  SignatureCorpus corpus;
  corpus.version.assign(fallback_version);

  std::map<EngineKind, DialectSignature> by_engine;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '#') {
      static constexpr std::string_view kVersionTag = "# version:";
      if (stripped.size() > kVersionTag.size() &&
          iequals(stripped.substr(0, kVersionTag.size()), kVersionTag)) {
        corpus.version.assign(trim(stripped.substr(kVersionTag.size())));
      }
      continue;
    }

    std::vector<std::string_view> fields;
    std::size_t f = 0;
    while (true) {
      std::size_t tab = line.find('\t', f);
      if (tab == std::string_view::npos) {
        fields.push_back(trim(line.substr(f)));
        break;
      }
      fields.push_back(trim(line.substr(f, tab - f)));
      f = tab + 1;
    }
    if (fields.size() != 4) {
      throw CorpusError("corpus line " + std::to_string(line_no) +
                        ": expected 4 tab-separated fields, got " +
                        std::to_string(fields.size()));
    }

    auto engine = engine_kind_from_name(fields[0]);
    if (!engine || *engine == EngineKind::NoEngine) {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": unknown engine '" +
                        std::string(fields[0]) + "'");
    }
    int priority = 0;
    auto [p, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), priority);
    if (ec != std::errc() || p != fields[1].data() + fields[1].size() || priority < 0) {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": bad priority '" +
                        std::string(fields[1]) + "'");
    }
    MarkerKind kind;
    if (iequals(fields[2], "prefix")) {
      kind = MarkerKind::Prefix;
    } else if (iequals(fields[2], "keyword")) {
      kind = MarkerKind::Keyword;
    } else if (iequals(fields[2], "structural")) {
      kind = MarkerKind::Structural;
    } else {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": unknown marker kind '" +
                        std::string(fields[2]) + "'");
    }
    if (fields[3].empty()) {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": empty pattern");
    }
    if (kind == MarkerKind::Structural) {
      auto sp = split_structural(fields[3]);
      if (!structural_shapes().count(sp.shape)) {
        throw CorpusError("corpus line " + std::to_string(line_no) +
                          ": unknown structural shape '" + sp.shape + "'");
      }
    }

    auto [it, inserted] = by_engine.try_emplace(*engine);
    DialectSignature& sig = it->second;
    if (inserted) {
      sig.engine = *engine;
      sig.priority = priority;
    } else if (sig.priority != priority) {
      throw CorpusError("corpus line " + std::to_string(line_no) + ": engine '" +
                        std::string(engine_kind_name(*engine)) +
                        "' listed with conflicting priorities " +
                        std::to_string(sig.priority) + " and " + std::to_string(priority));
    }
    sig.markers.push_back({kind, std::string(fields[3])});
  }

  static constexpr std::array<EngineKind, 6> kAllEngines = {
      EngineKind::Relational,   EngineKind::DocumentStore, EngineKind::WideColumn,
      EngineKind::KeyValueStore, EngineKind::GraphStore,    EngineKind::DocumentHttpStore,
  };
  for (EngineKind k : kAllEngines) {
    if (!by_engine.count(k)) {
      throw CorpusError("corpus is missing markers for engine '" +
                        std::string(engine_kind_name(k)) + "'");
    }
  }

  std::map<int, EngineKind> by_priority;
  for (auto& [kind, sig] : by_engine) {
    auto [it, inserted] = by_priority.try_emplace(sig.priority, kind);
    if (!inserted) {
      throw CorpusError("duplicate priority " + std::to_string(sig.priority) + " shared by '" +
                        std::string(engine_kind_name(it->second)) + "' and '" +
                        std::string(engine_kind_name(kind)) + "'");
    }
    corpus.signatures.push_back(std::move(sig));
  }
  std::sort(corpus.signatures.begin(), corpus.signatures.end(),
            [](const DialectSignature& a, const DialectSignature& b) {
              return a.priority < b.priority;
            });
  return corpus;
}

SignatureCorpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open corpus file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), path);
}

const SignatureCorpus& default_corpus() {
  static const SignatureCorpus kDefault = parse_corpus(data::bundled_corpus_text(), "bundled");
  return kDefault;
}

EngineKind detect_engine(const QueryStatement& statement, const SignatureCorpus& corpus) {
  for (const DialectSignature& sig : corpus.signatures) {
    for (const Marker& m : sig.markers) {
      if (marker_matches(m, statement)) return sig.engine;
    }
  }
  return EngineKind::NoEngine;
}

EngineKind detect_engine(std::string_view raw, const SignatureCorpus& corpus) {
  return detect_engine(tokenize(raw), corpus);
}

}  // namespace polygate::dialect

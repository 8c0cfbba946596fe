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

#include "polygate/dialect.hpp"
#include "polygate/errors.hpp"
#include "polygate/executor.hpp"
#include "polygate/value.hpp"

// Token-stream cursor shared by the SQL-family executors. The tokenizer
// emits single-character punctuation, so two-character operators (<=, >=,
// !=, <>) are reassembled here.
namespace polygate::engine::sqlcur {

class Cursor {
 public:
  explicit Cursor(const std::vector<dialect::Token>& tokens) : ts_(&tokens) {}

  bool done() const {
    // a trailing semicolon is never significant
    return i_ >= ts_->size() ||
           (i_ + 1 == ts_->size() && at_punct(';'));
  }
  std::size_t pos() const { return i_; }
  const dialect::Token& cur() const { return (*ts_)[i_]; }
  void advance() { ++i_; }

  bool at_kw(std::string_view kw) const {
    return i_ < ts_->size() && (*ts_)[i_].kind == dialect::TokenKind::Keyword &&
           (*ts_)[i_].text == kw;
  }
  bool at_punct(char c) const {
    return i_ < ts_->size() && (*ts_)[i_].kind == dialect::TokenKind::Punct &&
           (*ts_)[i_].text.size() == 1 && (*ts_)[i_].text[0] == c;
  }
  bool at_name() const {
    return i_ < ts_->size() && ((*ts_)[i_].kind == dialect::TokenKind::Identifier ||
                                (*ts_)[i_].kind == dialect::TokenKind::Keyword);
  }

  bool accept_kw(std::string_view kw) {
    if (!at_kw(kw)) return false;
    ++i_;
    return true;
  }
  bool accept_punct(char c) {
    if (!at_punct(c)) return false;
    ++i_;
    return true;
  }
  void expect_kw(std::string_view kw) {
    if (!accept_kw(kw)) throw EngineError("expected " + std::string(kw));
  }
  void expect_punct(char c) {
    if (!accept_punct(c)) throw EngineError(std::string("expected '") + c + "'");
  }

  // Bare name (column/table); keywords double as names so a table may be
  // called e.g. "values" without confusing the corpus statements we accept.
  std::string expect_name(const char* what) {
    if (!at_name()) throw EngineError(std::string("expected a ") + what);
    return (*ts_)[i_++].text;
  }

  // Comparison operator, gluing adjacent punctuation: = == != <> < <= > >=
  std::optional<CompareOp> accept_compare_op() {
    if (i_ >= ts_->size() || (*ts_)[i_].kind != dialect::TokenKind::Punct) return std::nullopt;
    const char a = (*ts_)[i_].text[0];
    auto two = [this](char second) {
      return i_ + 1 < ts_->size() && (*ts_)[i_ + 1].kind == dialect::TokenKind::Punct &&
             (*ts_)[i_ + 1].text.size() == 1 && (*ts_)[i_ + 1].text[0] == second;
    };
    switch (a) {
      case '=':
        i_ += two('=') ? 2 : 1;
        return CompareOp::Eq;
      case '<':
        if (two('=')) { i_ += 2; return CompareOp::Lte; }
        if (two('>')) { i_ += 2; return CompareOp::Ne; }
        ++i_;
        return CompareOp::Lt;
      case '>':
        if (two('=')) { i_ += 2; return CompareOp::Gte; }
        ++i_;
        return CompareOp::Gt;
      case '!':
        if (two('=')) { i_ += 2; return CompareOp::Ne; }
        return std::nullopt;
      default:
        return std::nullopt;
    }
  }

  // Literal value: quoted string, number (optionally signed), TRUE/FALSE/
  // NULL. When allow_bareword is set, a run of identifiers/numbers/dashes
  // (a UUID, say) is swallowed as one text value, stopping before IF / a
  // comma / a closing parenthesis / end.
  std::optional<Value> accept_literal(bool allow_bareword) {
    using dialect::TokenKind;
    if (i_ >= ts_->size()) return std::nullopt;
    const dialect::Token& t = (*ts_)[i_];
    if (t.kind == TokenKind::String) {
      ++i_;
      return Value{t.text};
    }
    if (t.kind == TokenKind::Number) {
      ++i_;
      return number_value(t.text);
    }
    if ((at_punct('-') || at_punct('+')) && i_ + 1 < ts_->size() &&
        (*ts_)[i_ + 1].kind == TokenKind::Number) {
      const bool neg = t.text[0] == '-';
      Value v = number_value((*ts_)[i_ + 1].text);
      i_ += 2;
      if (neg) {
        if (auto* x = std::get_if<std::int64_t>(&v)) return Value{-*x};
        return Value{-std::get<double>(v)};
      }
      return v;
    }
    if (accept_kw("TRUE")) return Value{std::int64_t{1}};
    if (accept_kw("FALSE")) return Value{std::int64_t{0}};
    if (accept_kw("NULL")) return Value{Null{}};
    if (allow_bareword && t.kind == TokenKind::Identifier) {
      std::string word;
      while (i_ < ts_->size()) {
        const dialect::Token& p = (*ts_)[i_];
        if (p.kind == TokenKind::Identifier || p.kind == TokenKind::Number) {
          word += p.text;
        } else if (p.kind == TokenKind::Punct && p.text == "-") {
          word += '-';
        } else {
          break;
        }
        ++i_;
      }
      return Value{std::move(word)};
    }
    return std::nullopt;
  }

  Value expect_literal(bool allow_bareword) {
    auto v = accept_literal(allow_bareword);
    if (!v) throw EngineError("expected a literal value");
    return *v;
  }

 private:
  static Value number_value(const std::string& text) {
    // hex blobs stay textual; decimal integers and reals become numbers
    if (text.size() > 1 && (text[1] == 'x' || text[1] == 'X')) return Value{text};
    return value_from_text(text);
  }

  const std::vector<dialect::Token>* ts_;
  std::size_t i_ = 0;
};

struct Predicate {
  std::string column;
  CompareOp op = CompareOp::Eq;
  Value value;
};

// WHERE <col> <op> <literal>; the leading WHERE must already be consumed.
inline Predicate parse_predicate(Cursor& cur, bool allow_bareword) {
  Predicate p;
  p.column = cur.expect_name("column name");
  auto op = cur.accept_compare_op();
  if (!op) throw EngineError("expected a comparison operator");
  p.op = *op;
  p.value = cur.expect_literal(allow_bareword);
  return p;
}

}  // namespace polygate::engine::sqlcur

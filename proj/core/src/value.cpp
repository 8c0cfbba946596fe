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

#include "polygate/value.hpp"

#include <charconv>
#include <cmath>

namespace polygate {

std::string value_to_string(const Value& v) {
  struct Visitor {
    std::string operator()(Null) const { return ""; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const {
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
      return std::string(buf, end);
    }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, v);
}

Value value_from_text(std::string_view text) {
  if (text.empty()) return Null{};
  std::int64_t i = 0;
  auto [ip, iec] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (iec == std::errc() && ip == text.data() + text.size()) return i;
  double d = 0;
  auto [dp, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (dec == std::errc() && dp == text.data() + text.size() && std::isfinite(d)) return d;
  return std::string(text);
}

std::string value_hash_key(const Value& v) {
  static constexpr char kTags[] = {'n', 'i', 'r', 't'};
  std::string out(1, kTags[v.index()]);
  out += ':';
  out += value_to_string(v);
  return out;
}

bool row_less(const std::vector<Value>& a, const std::vector<Value>& b) {
  return a < b;
}

}  // namespace polygate

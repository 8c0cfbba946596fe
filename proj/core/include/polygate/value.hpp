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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace polygate {

struct Null {
  auto operator<=>(const Null&) const = default;
};

// Cell value shared by the simulated engines, join execution and CSV I/O.
// Equality is typed: integer 1 and text "1" are different values.
using Value = std::variant<Null, std::int64_t, double, std::string>;

// Canonical text form: integers in decimal, reals in shortest round-trip
// form, text verbatim, null as the empty string.
std::string value_to_string(const Value& v);

// Inverse-ish of the above for untyped sources (CSV cells): integral text
// becomes an integer, other numeric text a real, "" null, anything else text.
Value value_from_text(std::string_view text);

// Canonical key for hashing: the text form prefixed by a type tag so values
// of different types never collide.
std::string value_hash_key(const Value& v);

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

// Total order over rows (variant order: by type index, then value) used to
// compare result multisets.
bool row_less(const std::vector<Value>& a, const std::vector<Value>& b);

}  // namespace polygate

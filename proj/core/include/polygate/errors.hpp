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

#include <stdexcept>
#include <string>

namespace polygate {

// Bad user input: malformed files, invalid flags, inconsistent specs.
// The CLI maps these to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A formula or operation was called outside its mathematical domain
// (negative sizes, intermediate factor >= 1, zero joins, ...).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// The signature corpus violates its own grammar or invariants.
class CorpusError : public InputError {
 public:
  using InputError::InputError;
};

// A join plan is structurally invalid or refers to unknown tables/columns.
class PlanError : public InputError {
 public:
  using InputError::InputError;
};

// A storage engine rejected a statement or operation at execution time.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polygate

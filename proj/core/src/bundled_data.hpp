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

// Accessors for the data files under core/data/ that get embedded into the
// library at configure time. The files on disk stay the source of truth;
// every one of them can be overridden at runtime through the CLI.
namespace polygate::data {

std::string_view bundled_corpus_text();
std::string_view bundled_outcome_map_text();
std::string_view bundled_profiles_text();

}  // namespace polygate::data

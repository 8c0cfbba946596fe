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

#include "bundled_data.hpp"

#include "embedded_data.hpp"

namespace polygate::data {

std::string_view bundled_corpus_text() { return generated::kCorpus; }
std::string_view bundled_outcome_map_text() { return generated::kOutcomeMap; }
std::string_view bundled_profiles_text() { return generated::kProfiles; }

}  // namespace polygate::data

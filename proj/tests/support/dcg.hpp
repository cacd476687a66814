// Copyright 2026 The islandparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <span>
#include <string>

#include "islandparse/grammar_dsl.hpp"

namespace islandparse::testing {

// Textbook DCG recognition: clauses are concatenated left to right, `,` and
// `:` alike, with no skipping. Throws std::invalid_argument on optional
// groups, ignore clauses and hooks.
bool dcg_accepts(std::span<const RuleSource> rules, const Term& category, std::span<const std::string> tokens);

}  // namespace islandparse::testing

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

#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>
#include <set>

#include "islandparse/grammar_dsl.hpp"
#include "islandparse/rational.hpp"
#include "islandparse/term.hpp"

namespace islandparse::oracle {

// One analysis: the result term up to variable renaming, its island and
// coverage.
struct Analysis {
  std::string term;  // variant_key of the resolved result
  int begin = 1;
  int end = 1;
  int coverage = 0;
  friend auto operator<=>(const Analysis&, const Analysis&) = default;
};

using OracleResult = std::set<Analysis>;

class DepthBoundExceeded : public std::runtime_error {
 public:
  explicit DepthBoundExceeded(int bound);
};

class HookNotSupported : public std::runtime_error {
 public:
  explicit HookNotSupported(const std::string& name);
};

enum class DepthPolicy {
  Throw,  // DepthBoundExceeded when a derivation nests deeper than the bound
  Truncate,  // abandon such derivations silently
};

// Reference enumerator. Works on the rule sources directly: clauses are taken
// strictly left to right, each searching the rest of the rule's region, and
// head marks are ignored.
OracleResult enumerate_all(std::span<const RuleSource> rules, const Term& cat, std::span<const std::string> tokens,
                           const Rational& global_threshold, int depth_bound = 64,
                           DepthPolicy policy = DepthPolicy::Throw);

// Depth that no derivation can need when the grammar has no cycle of rules
// able to reproduce an island unchanged: nesting either shrinks the island or
// passes to a different rule.
int sufficient_depth(std::span<const RuleSource> rules, std::size_t token_count);

}  // namespace islandparse::oracle

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

#include <random>
#include <span>
#include <string>
#include <vector>

#include "islandparse/engine.hpp"
#include "islandparse/grammar_dsl.hpp"

namespace islandparse::testing {

// Knobs for generated grammars. Categories only call categories with a
// larger index, so the grammars never recurse.
struct GrammarShape {
  int max_rules = 6;
  int max_heads = 2;
  bool optionals = true;
  bool adjacency = true;
  bool ignore_rules = true;
  bool arguments = true;
  bool disjunctions = true;
  bool local_thresholds = false;
};

struct RandomGrammar {
  std::string text;
  std::string text_without_heads;
  std::string start;  // query pattern for the top category
  bool has_local_thresholds = false;
};

inline const std::vector<std::string>& vocabulary() {
  static const std::vector<std::string> words{"a", "b", "c", "d"};
  return words;
}

RandomGrammar random_grammar(std::mt19937& rng, const GrammarShape& shape);

// A token sequence derivable from `category` when argument unification is
// ignored; may therefore be ungrammatical.
std::vector<std::string> sample_sentence(std::span<const RuleSource> rules, const std::string& category,
                                         std::mt19937& rng, std::size_t max_len);

std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t len);

// Random insertions and deletions, keeping at most `max_len` tokens.
std::vector<std::string> add_noise(std::vector<std::string> tokens, std::mt19937& rng, std::size_t max_len);

// Inputs for one grammar: samples, noisy samples and random strings.
std::vector<std::vector<std::string>> test_inputs(std::span<const RuleSource> rules, const std::string& category,
                                                  std::mt19937& rng, std::size_t count, std::size_t max_len);

// Chart entries breaking coverage or island structure, one message each.
std::vector<std::string> chart_violations(const ParseSession& session);

}  // namespace islandparse::testing

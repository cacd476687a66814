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

#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "islandparse/compiler.hpp"
#include "islandparse/engine.hpp"
#include "islandparse/grammar_dsl.hpp"
#include "islandparse/oracle.hpp"

namespace islandparse::testing {

inline std::vector<RuleSource> bundled_rules(const std::string& file) {
  const std::filesystem::path p = std::filesystem::path(ISLANDPARSE_GRAMMAR_DIR) / file;
  return load_grammar_files({&p, 1});
}

inline std::shared_ptr<const Grammar> bundled(const std::string& file) {
  return std::make_shared<const Grammar>(compile(bundled_rules(file)));
}

inline std::shared_ptr<const Grammar> grammar(const std::string& text) {
  return std::make_shared<const Grammar>(compile(parse_grammar(text)));
}

inline SessionOptions at_threshold(Rational t) {
  SessionOptions o;
  o.global_threshold = t;
  return o;
}

inline const std::vector<std::string>& brook_sentence() {
  static const std::vector<std::string> t{"have", "you", "the", "tree", "by", "the", "brook", "that"};
  return t;
}

inline const std::vector<std::string>& conjunct_sentence() {
  static const std::vector<std::string> t{"john", "saw", "mary", "and", "mark", "saw", "them"};
  return t;
}

// Solutions as comparable tuples: term up to renaming, island, coverage.
inline oracle::OracleResult solution_set(ParseSession& s, const Term& cat, Region region) {
  oracle::OracleResult out;
  s.solve_call(cat, region, [&](const Solution& x) {
    out.insert({variant_key(x.result), x.island.begin, x.island.end, x.coverage});
    return true;
  });
  return out;
}

inline oracle::OracleResult solution_set(ParseSession& s, const Term& cat) {
  return solution_set(s, cat, s.whole_input());
}

// Reference result for the (possibly left-recursive) bundled grammars.
inline oracle::OracleResult reference(const std::vector<RuleSource>& rules, const std::string& cat,
                                      const std::vector<std::string>& tokens, Rational t) {
  return oracle::enumerate_all(rules, parse_term(cat), tokens, t, oracle::sufficient_depth(rules, tokens.size()),
                               oracle::DepthPolicy::Truncate);
}

}  // namespace islandparse::testing

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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "islandparse/rational.hpp"
#include "islandparse/term.hpp"

namespace islandparse {

// `,` orders two clauses; `:` additionally makes them contiguous.
enum class Connective { Ordered, Adjacent };

struct IgnoreClassClause {};  // `[]`
struct CallClause {
  Term term;
  bool is_head = false;
};
struct TerminalClause {  // `@word`
  std::string text;
  bool is_head = false;
};
struct IgnoreCallClause {  // `-name(...)`
  Term term;
};
struct HookClause {  // `{ name(Args...) }`
  std::string name;
  std::vector<Term> args;
};

using ClauseItem = std::variant<IgnoreClassClause, CallClause, TerminalClause, IgnoreCallClause, HookClause>;

struct BodyNode;

struct Sequence {
  std::vector<BodyNode> items;  // at least two
  std::vector<Connective> gaps;  // gaps[i] joins items[i] and items[i+1]
};

struct Disjunction {
  std::vector<BodyNode> alternatives;  // at least two
};

struct OptionalGroup {  // `(? body ?)`
  std::shared_ptr<const BodyNode> body;
};

struct BodyNode {
  std::variant<ClauseItem, Sequence, Disjunction, OptionalGroup> node;
  // Position of the first token; not part of structural equality.
  int line = 0;
  int column = 0;
};

struct RuleSource {
  bool ignore_rule = false;
  Term head = Term::atom("_");
  std::optional<Rational> local_threshold;
  // `# T` with a variable: the threshold is supplied at run time by a hook.
  std::optional<Term> threshold_var;
  BodyNode body;
  // Indexed by rule-local variable id; `_` marks anonymous variables.
  std::vector<std::string> var_names;
  int line = 0;
  std::string source;

  // `name/arity` of the head.
  std::string signature() const;
};

bool operator==(const BodyNode& a, const BodyNode& b);
bool operator==(const ClauseItem& a, const ClauseItem& b);
// Structural equality: positions and source names are ignored.
bool operator==(const RuleSource& a, const RuleSource& b);

class GrammarSyntaxError : public std::runtime_error {
 public:
  GrammarSyntaxError(std::string source, int line, int column, std::string expected, std::string found);
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string source_;
  int line_;
  int column_;
  std::string expected_;
  std::string found_;
};

class ThresholdRangeError : public std::runtime_error {
 public:
  ThresholdRangeError(std::string source, int line, int column, Rational value);
  int line() const { return line_; }
  int column() const { return column_; }
  Rational value() const { return value_; }

 private:
  int line_;
  int column_;
  Rational value_;
};

// Reads grammar text into rules in source order. `%` starts a line comment.
// Throws GrammarSyntaxError or ThresholdRangeError.
std::vector<RuleSource> parse_grammar(std::string_view text, std::string_view source_name = "<input>");

// Concatenates the rules of several `.lhip` files in load order.
std::vector<RuleSource> load_grammar_files(std::span<const std::filesystem::path> paths);

// Parses one term such as `s(S)`. Variables get ids 0.. in order of first
// appearance; their names are stored in `var_names` when given.
Term parse_term(std::string_view text, std::vector<std::string>* var_names = nullptr);

// Canonical grammar text; parse_grammar(pretty_print(r)) == r.
std::string pretty_print(const RuleSource& rule);
std::string pretty_print(std::span<const RuleSource> rules);
std::string pretty_print(const BodyNode& body, std::span<const std::string> var_names = {});

}  // namespace islandparse

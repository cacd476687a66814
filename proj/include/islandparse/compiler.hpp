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

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "islandparse/grammar_dsl.hpp"
#include "islandparse/rational.hpp"
#include "islandparse/term.hpp"

namespace islandparse {

// Rule ids are dense from 1 in load order; -1 stands for terminal consumption.
using RuleId = int;
inline constexpr RuleId kTerminalRuleId = -1;

// Region references. Non-negative values are source indices of steps in the
// same branch; the referenced step is always earlier in evaluation order.
inline constexpr int kBranchStart = -1;
inline constexpr int kBranchEnd = -2;

struct CompiledBranch;

struct CompiledStep {
  enum class Kind { Call, Terminal, IgnoreCall, IgnoreClass, Hook, Optional };

  Kind kind = Kind::IgnoreClass;
  bool is_head = false;
  // Connective to the source-preceding step (meaningless for the first step).
  Connective left = Connective::Ordered;
  // Call / IgnoreCall target pattern, in rule-local variables.
  std::optional<Term> term;
  // Terminal text or hook name.
  std::string text;
  std::vector<Term> hook_args;
  // Rules a Call or IgnoreCall may resolve to, in load order.
  std::vector<RuleId> targets;
  // Optional groups: the present alternatives (the empty one is implicit).
  std::vector<CompiledBranch> alternatives;

  int source_index = 0;
  // The island start/end of the step named here bounds this step's region.
  int region_start_ref = kBranchStart;
  int region_end_ref = kBranchEnd;
  // Position of this step in the branch evaluation order.
  int eval_position = 0;
};

struct CompiledBranch {
  std::vector<CompiledStep> steps;  // source order
  std::vector<int> evaluation_order;  // heads in source order, then the rest
};

struct CompiledRule {
  RuleId id = 0;
  Term head = Term::atom("_");
  bool ignore_rule = false;
  // Unset means "use the session global threshold".
  std::optional<Rational> threshold;
  std::optional<Term> threshold_var;
  int var_count = 0;
  std::vector<CompiledBranch> branches;
  int line = 0;
  std::string source;

  std::string signature() const { return head.name() + "/" + std::to_string(head.arity()); }
};

struct Diagnostic {
  enum class Kind {
    UnresolvedCall,
    IgnoreInvocationOfNormalRule,
    HeadInsideOptional,
    CoveringRestrictionViolation,
    LeftRecursionWarning,
  };
  Kind kind;
  std::string rule;  // signature of the offending rule
  int branch = 0;  // 0-based branch index, -1 when not branch specific
  int line = 0;
  std::string source;
  std::string message;

  bool is_error() const { return kind != Kind::LeftRecursionWarning; }
  std::string to_string() const;
};

std::string_view diagnostic_name(Diagnostic::Kind kind);

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct CompileOptions {
  Rational global_threshold_default{0};
};

class Grammar {
 public:
  const std::vector<CompiledRule>& rules() const { return rules_; }
  const CompiledRule& rule(RuleId id) const { return rules_.at(static_cast<std::size_t>(id - 1)); }
  std::size_t size() const { return rules_.size(); }
  // Ignore rules in load order.
  const std::vector<RuleId>& ignore_rule_ids() const { return ignore_ids_; }
  // Rules a plain call with this name/arity resolves to (non-ignore only).
  std::span<const RuleId> normal_rules(const std::string& name, std::size_t arity) const;
  std::span<const RuleId> ignore_rules(const std::string& name, std::size_t arity) const;
  Rational global_threshold_default() const { return global_threshold_; }
  const std::vector<Diagnostic>& warnings() const { return warnings_; }

 private:
  friend Grammar compile(std::span<const RuleSource>, const CompileOptions&);
  std::vector<CompiledRule> rules_;
  std::vector<RuleId> ignore_ids_;
  std::map<std::pair<std::string, std::size_t>, std::vector<RuleId>> normal_index_;
  std::map<std::pair<std::string, std::size_t>, std::vector<RuleId>> ignore_index_;
  Rational global_threshold_{0};
  std::vector<Diagnostic> warnings_;
};

// Normalizes every rule body into branches, partitions heads from non-heads,
// assigns region references and resolves calls. Throws CompileError carrying
// every error diagnostic found; warnings are kept on the grammar.
Grammar compile(std::span<const RuleSource> rules, const CompileOptions& options = {});

// Branches of a body in disjunctive normal form, before head partitioning.
// Each `;` path yields one branch; optional groups stay nested.
std::vector<CompiledBranch> normalize_body(const BodyNode& body);

struct CoveringViolation {
  std::string message;
};

// ok (nullopt) iff the branch has a non-optional Call or Terminal step.
std::optional<CoveringViolation> check_covering(const CompiledBranch& branch);

}  // namespace islandparse

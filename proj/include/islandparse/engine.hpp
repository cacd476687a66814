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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "islandparse/compiler.hpp"
#include "islandparse/rational.hpp"
#include "islandparse/term.hpp"

namespace islandparse {

// Input positions are 1-based: token i occupies [i, i+1).
using Position = int;
using ChartId = int;

// Half-open search region [begin, end).
struct Region {
  Position begin = 1;
  Position end = 1;
  friend bool operator==(const Region&, const Region&) = default;
};

// Half-open island [begin, end).
struct Island {
  Position begin = 1;
  Position end = 1;
  int span() const { return end - begin; }
  bool empty() const { return begin == end; }
  friend bool operator==(const Island&, const Island&) = default;
  friend auto operator<=>(const Island&, const Island&) = default;
};

// coverage / span, or 1 for an empty island.
Rational coverage_ratio(int coverage, Island island);

// True iff the island is empty or coverage/span >= t, in exact arithmetic.
bool threshold_ok(int coverage, Island island, const Rational& t);

struct Solution {
  Term result;  // resolved instance of the queried pattern
  Island island;
  int coverage = 0;
  Rational ratio{1};
  // Rule that produced it (kTerminalRuleId for terminals, 0 for the empty
  // ignore-class alternative).
  RuleId rule_id = 0;
  std::optional<ChartId> chart_ref;
};

struct ChartEntry {
  ChartId id = 0;
  RuleId rule_id = 0;
  Island island;
  int coverage = 0;
  Term result = Term::atom("_");  // resolved snapshot; the token for terminals
  std::vector<ChartId> sub_results;  // ordered by island start
  std::set<ChartId> used_by;
};

// Record of rule successes. One entry per distinct derivation.
class Chart {
 public:
  // Returns the id of the matching entry, creating it if needed, and links
  // every sub-result back to it.
  ChartId record(RuleId rule, Island island, int coverage, const Term& result, std::vector<ChartId> sub_results);

  const ChartEntry& entry(ChartId id) const { return entries_.at(static_cast<std::size_t>(id)); }
  const std::vector<ChartEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Successes of `rule` over exactly `island`.
  std::vector<ChartId> lookup(RuleId rule, Island island) const;
  // Successes of `rule` whose island lies within `region`.
  std::vector<ChartId> lookup(RuleId rule, Region region) const;

  // Positions of terminals consumed under an entry, in input order.
  std::vector<Position> covered_positions(ChartId id) const;

 private:
  std::vector<ChartEntry> entries_;
  std::unordered_map<std::string, ChartId> index_;
};

struct HookResult {
  bool success = true;
  // Unified with the corresponding call argument when set.
  std::vector<std::optional<Term>> outputs;
  // Replaces the threshold of the rule invocation running the hook.
  std::optional<Rational> threshold_override;
};

// Hooks receive resolved arguments. They must be deterministic: the engine
// may call them repeatedly while backtracking.
using HookFn = std::function<HookResult(std::span<const Term> args)>;

class HookRegistry {
 public:
  void add(std::string name, HookFn fn) { hooks_[std::move(name)] = std::move(fn); }
  const HookFn* find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name) != nullptr; }

 private:
  std::map<std::string, HookFn> hooks_;
};

// Number of atomic leaves in a term; unbound variables count zero.
int count_items(const Term& t);

// `set_dynamic_threshold(Items, T)`: binds T to `/(P,Q)` and overrides the
// rule threshold with policy(count_items(Items)).
HookFn make_dynamic_threshold_hook(std::function<Rational(int)> policy);

// 1/2 when more than one item was found, 9/10 otherwise.
Rational default_dynamic_threshold_policy(int items);

// Registry with `set_dynamic_threshold` using the default policy.
HookRegistry default_hooks();

class EngineError : public std::runtime_error {
 public:
  enum class Kind { UnknownHook, HookError, InvalidQuery };
  EngineError(Kind kind, std::string hook, const std::string& message);
  Kind kind() const { return kind_; }
  const std::string& hook() const { return hook_; }

 private:
  Kind kind_;
  std::string hook_;
};

struct SessionOptions {
  // Defaults to the grammar's global threshold.
  std::optional<Rational> global_threshold;
  int depth_limit = 128;
  bool occurs_check = true;
};

struct EngineStats {
  long rule_body_evaluations = 0;  // branch evaluations actually started
  long table_replays = 0;  // calls answered from completed enumerations
  long failure_replays = 0;  // of which had no solutions
  long depth_limit_hits = 0;
  long reentrant_prunes = 0;
};

// One parse of one token sequence. Keeps its chart across queries. Not
// thread-safe; independent sessions over a shared grammar may run in parallel.
class ParseSession {
 public:
  using Visitor = std::function<bool(const Solution&)>;

  ParseSession(std::shared_ptr<const Grammar> grammar, std::vector<std::string> tokens,
               SessionOptions options = {}, HookRegistry hooks = default_hooks());

  const Grammar& grammar() const { return *grammar_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t token_count() const { return tokens_.size(); }
  Region whole_input() const { return Region{1, static_cast<Position>(tokens_.size()) + 1}; }

  Rational global_threshold() const { return global_threshold_; }
  void set_global_threshold(Rational t);

  // Enumerates solutions of `pattern` (a term whose variables are local to
  // it) within `region`, depth first in rule load order. The visitor returns
  // false to stop; the function returns false iff it was stopped.
  bool solve_call(const Term& pattern, Region region, const Visitor& visit);
  bool consume_terminal(std::string_view text, Region region, const Visitor& visit);
  // The empty solution first, then every ignore rule in load order.
  bool solve_ignore_class(Region region, const Visitor& visit);

  // Runs a registered hook on resolved arguments. Throws EngineError.
  HookResult run_hook(const std::string& name, std::span<const Term> args) const;

  const Chart& chart() const { return chart_; }
  const EngineStats& stats() const { return stats_; }
  // Human-readable notes about abandoned subtrees (depth limit).
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  struct StepResult {
    Island island;
    int coverage = 0;
    std::vector<ChartId> charts;
  };
  using Cont = std::function<bool(const StepResult&)>;

  struct Frame;
  struct StepState;
  struct TableRecord {
    Term result;
    Island island;
    int coverage;
    std::vector<ChartId> charts;
  };
  struct TableEntry {
    Position max_end = 0;
    std::vector<TableRecord> records;
  };

  void check_region(Region r) const;
  bool solve_targets(std::span<const RuleId> targets, const std::string& key_prefix, const Term& call, Region region,
                     const Cont& k);
  bool invoke_rule(const CompiledRule& rule, const Term& call, Region region, const Cont& k);
  bool eval_steps(Frame& frame, const CompiledBranch& branch, Region region, std::vector<StepState>& states,
                  std::size_t pos, bool floating_start, const std::function<bool()>& done);
  bool eval_step(Frame& frame, const CompiledStep& step, Region region, bool floating_context, const Cont& accept);
  bool scan_terminal(const std::string& text, Region region, const Cont& k);
  bool ignore_class(Region region, const Cont& k);
  Rational effective_threshold(const Frame& frame) const;
  Solution make_solution(const Term& result, const StepResult& r) const;

  std::shared_ptr<const Grammar> grammar_;
  std::vector<std::string> tokens_;
  SessionOptions options_;
  HookRegistry hooks_;
  Rational global_threshold_;
  BindingStore store_;
  Chart chart_;
  std::unordered_map<std::string, TableEntry> table_;
  std::unordered_map<std::string, int> active_;
  int depth_ = 0;
  long prunes_ = 0;
  EngineStats stats_;
  std::vector<std::string> notes_;
};

}  // namespace islandparse

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

#include "islandparse/engine.hpp"

#include <algorithm>

namespace islandparse {

Rational coverage_ratio(int coverage, Island island) {
  if (island.empty()) return Rational(1);
  return Rational(coverage, island.span());
}

bool threshold_ok(int coverage, Island island, const Rational& t) {
  if (island.empty()) return true;
  return Rational(coverage, island.span()) >= t;
}

// ---------------------------------------------------------------------------
// Chart

ChartId Chart::record(RuleId rule, Island island, int coverage, const Term& result, std::vector<ChartId> sub_results) {
  std::string key = std::to_string(rule) + "|" + std::to_string(island.begin) + "|" + std::to_string(island.end) +
                    "|" + std::to_string(coverage) + "|" + variant_key(result) + "|";
  for (ChartId s : sub_results) key += std::to_string(s) + ",";
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  const auto id = static_cast<ChartId>(entries_.size());
  for (ChartId s : sub_results) entries_.at(static_cast<std::size_t>(s)).used_by.insert(id);
  entries_.push_back(ChartEntry{id, rule, island, coverage, result, std::move(sub_results), {}});
  index_.emplace(std::move(key), id);
  return id;
}

std::vector<ChartId> Chart::lookup(RuleId rule, Island island) const {
  std::vector<ChartId> out;
  for (const auto& e : entries_)
    if (e.rule_id == rule && e.island == island) out.push_back(e.id);
  return out;
}

std::vector<ChartId> Chart::lookup(RuleId rule, Region region) const {
  std::vector<ChartId> out;
  for (const auto& e : entries_)
    if (e.rule_id == rule && e.island.begin >= region.begin && e.island.end <= region.end) out.push_back(e.id);
  return out;
}

std::vector<Position> Chart::covered_positions(ChartId id) const {
  std::vector<Position> out;
  std::vector<ChartId> work{id};
  while (!work.empty()) {
    const ChartEntry& e = entry(work.back());
    work.pop_back();
    if (e.rule_id == kTerminalRuleId)
      out.push_back(e.island.begin);
    else
      work.insert(work.end(), e.sub_results.begin(), e.sub_results.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Hooks

const HookFn* HookRegistry::find(const std::string& name) const {
  auto it = hooks_.find(name);
  return it == hooks_.end() ? nullptr : &it->second;
}

int count_items(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return 0;
    case Term::Kind::Atom:
    case Term::Kind::Number:
      return 1;
    case Term::Kind::Compound: {
      int n = 0;
      for (const Term& a : t.args()) n += count_items(a);
      return n;
    }
  }
  return 0;
}

Rational default_dynamic_threshold_policy(int items) { return items > 1 ? Rational(1, 2) : Rational(9, 10); }

HookFn make_dynamic_threshold_hook(std::function<Rational(int)> policy) {
  return [policy = std::move(policy)](std::span<const Term> args) {
    if (args.size() != 2) throw std::invalid_argument("expects 2 arguments, got " + std::to_string(args.size()));
    const Rational t = policy(count_items(args[0]));
    HookResult r;
    r.outputs = {std::nullopt,
                 Term::compound("/", {Term::number(t.numerator()), Term::number(t.denominator())})};
    r.threshold_override = t;
    return r;
  };
}

HookRegistry default_hooks() {
  HookRegistry reg;
  reg.add("set_dynamic_threshold", make_dynamic_threshold_hook(default_dynamic_threshold_policy));
  return reg;
}

EngineError::EngineError(Kind kind, std::string hook, const std::string& message)
    : std::runtime_error(hook.empty() ? message : hook + ": " + message), kind_(kind), hook_(std::move(hook)) {}

// ---------------------------------------------------------------------------
// Session

struct ParseSession::Frame {
  const CompiledRule* rule;
  std::vector<std::optional<Term>> renaming;
  Term head;
  std::optional<Rational> override;
};

struct ParseSession::StepState {
  bool done = false;
  // Empty, with no non-empty step before it: not tied to any position.
  bool floating = false;
  Island island;
  int coverage = 0;
  std::vector<ChartId> charts;
};

ParseSession::ParseSession(std::shared_ptr<const Grammar> grammar, std::vector<std::string> tokens,
                           SessionOptions options, HookRegistry hooks)
    : grammar_(std::move(grammar)),
      tokens_(std::move(tokens)),
      options_(options),
      hooks_(std::move(hooks)),
      global_threshold_(options.global_threshold.value_or(grammar_->global_threshold_default())),
      store_(options.occurs_check) {
  set_global_threshold(global_threshold_);
}

void ParseSession::set_global_threshold(Rational t) {
  if (t < 0 || t > 1) throw std::invalid_argument("threshold " + to_string(t) + " outside [0,1]");
  if (t != global_threshold_) table_.clear();
  global_threshold_ = t;
}

void ParseSession::check_region(Region r) const {
  const auto last = static_cast<Position>(tokens_.size()) + 1;
  if (r.begin < 1 || r.begin > r.end || r.end > last)
    throw std::out_of_range("region [" + std::to_string(r.begin) + "," + std::to_string(r.end) +
                            ") outside input [1," + std::to_string(last) + ")");
}

HookResult ParseSession::run_hook(const std::string& name, std::span<const Term> args) const {
  const HookFn* fn = hooks_.find(name);
  if (!fn) throw EngineError(EngineError::Kind::UnknownHook, name, "no hook registered under this name");
  try {
    return (*fn)(args);
  } catch (const EngineError&) {
    throw;
  } catch (const std::exception& e) {
    throw EngineError(EngineError::Kind::HookError, name, e.what());
  }
}

Rational ParseSession::effective_threshold(const Frame& frame) const {
  if (frame.override) return *frame.override;
  if (frame.rule->threshold) return *frame.rule->threshold;
  if (frame.rule->threshold_var) {
    const Term& local = *frame.rule->threshold_var;
    auto i = static_cast<std::size_t>(local.var_id());
    if (i < frame.renaming.size() && frame.renaming[i]) {
      Term v = resolve(*frame.renaming[i], store_);
      if (v.is_number() && (v.value() == 0 || v.value() == 1)) return Rational(v.value());
      if (v.is_compound() && v.name() == "/" && v.arity() == 2 && v.args()[0].is_number() &&
          v.args()[1].is_number() && v.args()[1].value() > 0) {
        Rational t(v.args()[0].value(), v.args()[1].value());
        if (t >= 0 && t <= 1) return t;
      }
    }
  }
  return global_threshold_;
}

Solution ParseSession::make_solution(const Term& result, const StepResult& r) const {
  Solution s{result, r.island, r.coverage, coverage_ratio(r.coverage, r.island), 0, std::nullopt};
  if (r.charts.size() == 1) {
    s.chart_ref = r.charts.front();
    s.rule_id = chart_.entry(r.charts.front()).rule_id;
  }
  return s;
}

namespace {

// Aggregates step islands: min start / max end over non-empty ones, anchored
// at the region start when all are empty.
template <typename States>
void aggregate(const States& states, Region region, const Chart& chart, Island& island, int& coverage,
               std::vector<ChartId>& charts) {
  island = Island{region.begin, region.begin};
  coverage = 0;
  bool any = false;
  for (const auto& s : states) {
    coverage += s.coverage;
    charts.insert(charts.end(), s.charts.begin(), s.charts.end());
    if (s.island.empty()) continue;
    if (!any) {
      island = s.island;
      any = true;
    } else {
      island.begin = std::min(island.begin, s.island.begin);
      island.end = std::max(island.end, s.island.end);
    }
  }
  std::sort(charts.begin(), charts.end(), [&chart](ChartId a, ChartId b) {
    return chart.entry(a).island < chart.entry(b).island;
  });
}

}  // namespace

bool ParseSession::scan_terminal(const std::string& text, Region region, const Cont& k) {
  for (Position p = region.begin; p < region.end; ++p) {
    if (tokens_[static_cast<std::size_t>(p - 1)] != text) continue;
    Island island{p, p + 1};
    ChartId id = chart_.record(kTerminalRuleId, island, 1, Term::atom(text), {});
    if (!k(StepResult{island, 1, {id}})) return false;
  }
  return true;
}

bool ParseSession::ignore_class(Region region, const Cont& k) {
  if (!k(StepResult{Island{region.begin, region.begin}, 0, {}})) return false;
  for (RuleId id : grammar_->ignore_rule_ids()) {
    TrailGuard guard(store_);
    std::vector<std::optional<Term>> renaming;
    Term call = rename_apart(grammar_->rule(id).head, store_, renaming);
    const RuleId only[] = {id};
    if (!solve_targets(only, "r" + std::to_string(id), call, region, k)) return false;
  }
  return true;
}

bool ParseSession::solve_targets(std::span<const RuleId> targets, const std::string& key_prefix, const Term& call,
                                 Region region, const Cont& k) {
  const std::string key = key_prefix + "|" + variant_key(resolve(call, store_)) + "@" + std::to_string(region.begin);

  if (auto it = table_.find(key); it != table_.end() && it->second.max_end >= region.end) {
    // Copy: continuations may add table entries and invalidate `it`.
    const std::vector<TableRecord> records = it->second.records;
    ++stats_.table_replays;
    if (records.empty()) ++stats_.failure_replays;
    for (const auto& rec : records) {
      if (rec.island.end > region.end) continue;
      TrailGuard guard(store_);
      std::unordered_map<VarId, Term> renaming;
      Term instance = rename_apart(rec.result, store_, renaming);
      if (!unify(call, instance, store_)) continue;
      if (!k(StepResult{rec.island, rec.coverage, rec.charts})) return false;
    }
    return true;
  }

  const std::string active_key = key + "-" + std::to_string(region.end);
  if (active_[active_key] > 0) {
    ++stats_.reentrant_prunes;
    ++prunes_;
    return true;
  }
  if (depth_ >= options_.depth_limit) {
    ++stats_.depth_limit_hits;
    ++prunes_;
    if (notes_.size() < 16)
      notes_.push_back("depth limit " + std::to_string(options_.depth_limit) + " reached calling " +
                       to_string(resolve(call, store_)) + "; subtree abandoned");
    return true;
  }

  // Marks the call active for the duration of its own search, but not while
  // continuations (the caller's remaining work) run.
  struct Active {
    ParseSession& s;
    const std::string& key;
    Active(ParseSession& s, const std::string& key) : s(s), key(key) {
      ++s.active_[key];
      ++s.depth_;
    }
    ~Active() {
      --s.active_[key];
      --s.depth_;
    }
  };
  struct Inactive {
    ParseSession& s;
    const std::string& key;
    Inactive(ParseSession& s, const std::string& key) : s(s), key(key) {
      --s.active_[key];
      --s.depth_;
    }
    ~Inactive() {
      ++s.active_[key];
      ++s.depth_;
    }
  };

  Active active(*this, active_key);
  const long prunes_before = prunes_;
  long continuation_prunes = 0;
  bool stopped = false;
  std::vector<TableRecord> records;

  const Cont wrapped = [&](const StepResult& r) {
    records.push_back(TableRecord{resolve(call, store_), r.island, r.coverage, r.charts});
    Inactive inactive(*this, active_key);
    const long before = prunes_;
    const bool more = k(r);
    continuation_prunes += prunes_ - before;
    if (!more) stopped = true;
    return more;
  };

  for (RuleId id : targets)
    if (!invoke_rule(grammar_->rule(id), call, region, wrapped)) break;

  if (!stopped && prunes_ - prunes_before - continuation_prunes == 0) {
    TableEntry& e = table_[key];
    if (e.max_end < region.end) {
      e.max_end = region.end;
      e.records = std::move(records);
    }
  }
  return !stopped;
}

bool ParseSession::invoke_rule(const CompiledRule& rule, const Term& call, Region region, const Cont& k) {
  for (const CompiledBranch& branch : rule.branches) {
    TrailGuard guard(store_);
    Frame frame{&rule, std::vector<std::optional<Term>>(static_cast<std::size_t>(rule.var_count)), Term::atom("_"),
                std::nullopt};
    frame.head = rename_apart(rule.head, store_, frame.renaming);
    if (!unify(call, frame.head, store_)) continue;
    ++stats_.rule_body_evaluations;
    std::vector<StepState> states(branch.steps.size());
    const bool more = eval_steps(frame, branch, region, states, 0, true, [&]() {
      Island island;
      int coverage = 0;
      std::vector<ChartId> charts;
      aggregate(states, region, chart_, island, coverage, charts);
      if (!threshold_ok(coverage, island, effective_threshold(frame))) return true;
      StepResult r{island, coverage, {}};
      if (!island.empty())
        r.charts.push_back(chart_.record(rule.id, island, coverage, resolve(frame.head, store_), std::move(charts)));
      return k(r);
    });
    if (!more) return false;
  }
  return true;
}

bool ParseSession::eval_steps(Frame& frame, const CompiledBranch& branch, Region region,
                              std::vector<StepState>& states, std::size_t pos, bool floating_start,
                              const std::function<bool()>& done) {
  if (pos == branch.evaluation_order.size()) return done();
  const auto idx = static_cast<std::size_t>(branch.evaluation_order[pos]);
  const CompiledStep& step = branch.steps[idx];
  const Position start = step.region_start_ref == kBranchStart
                             ? region.begin
                             : states[static_cast<std::size_t>(step.region_start_ref)].island.end;
  const Position end = step.region_end_ref == kBranchEnd
                           ? region.end
                           : states[static_cast<std::size_t>(step.region_end_ref)].island.begin;
  if (start > end) return true;

  const StepState* prev = idx > 0 && step.left == Connective::Adjacent ? &states[idx - 1] : nullptr;
  const StepState* next = idx + 1 < states.size() && branch.steps[idx + 1].left == Connective::Adjacent
                              ? &states[idx + 1]
                              : nullptr;
  // Only meaningful for non-heads, whose predecessor is already evaluated.
  const bool floating_context = idx == 0 ? floating_start : states[idx - 1].floating;
  return eval_step(frame, step, Region{start, end}, floating_context, [&](const StepResult& r) {
    const bool floats = r.island.empty() && floating_context;
    if (prev && prev->done && !prev->floating && r.island.begin != prev->island.end) return true;
    if (next && next->done && !floats && r.island.end != next->island.begin) return true;
    StepState& s = states[idx];
    s = StepState{true, floats, r.island, r.coverage, r.charts};
    const bool more = eval_steps(frame, branch, region, states, pos + 1, floating_start, done);
    s.done = false;
    return more;
  });
}

bool ParseSession::eval_step(Frame& frame, const CompiledStep& step, Region region, bool floating_context,
                             const Cont& accept) {
  using Kind = CompiledStep::Kind;
  const StepResult empty{Island{region.begin, region.begin}, 0, {}};
  switch (step.kind) {
    case Kind::Terminal:
      return scan_terminal(step.text, region, accept);
    case Kind::Call:
    case Kind::IgnoreCall: {
      Term call = rename_apart(*step.term, store_, frame.renaming);
      return solve_targets(step.targets, step.kind == Kind::Call ? "c" : "i", call, region, accept);
    }
    case Kind::IgnoreClass:
      return ignore_class(region, accept);
    case Kind::Hook: {
      std::vector<Term> args, resolved;
      for (const Term& a : step.hook_args) {
        args.push_back(rename_apart(a, store_, frame.renaming));
        resolved.push_back(resolve(args.back(), store_));
      }
      HookResult hr = run_hook(step.text, resolved);
      if (!hr.success) return true;
      TrailGuard guard(store_);
      for (std::size_t i = 0; i < hr.outputs.size() && i < args.size(); ++i)
        if (hr.outputs[i] && !unify(args[i], *hr.outputs[i], store_)) return true;
      const auto saved = frame.override;
      if (hr.threshold_override) frame.override = hr.threshold_override;
      const bool more = accept(empty);
      frame.override = saved;
      return more;
    }
    case Kind::Optional: {
      for (const CompiledBranch& alt : step.alternatives) {
        std::vector<StepState> states(alt.steps.size());
        const bool more = eval_steps(frame, alt, region, states, 0, floating_context, [&]() {
          StepResult r;
          aggregate(states, region, chart_, r.island, r.coverage, r.charts);
          return accept(r);
        });
        if (!more) return false;
      }
      return accept(empty);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Public entry points

bool ParseSession::solve_call(const Term& pattern, Region region, const Visitor& visit) {
  check_region(region);
  if (!pattern.is_callable())
    throw EngineError(EngineError::Kind::InvalidQuery, "", "query " + to_string(pattern) + " is not a rule name");
  TrailGuard guard(store_);
  std::vector<std::optional<Term>> renaming;
  Term call = rename_apart(pattern, store_, renaming);
  auto targets = grammar_->normal_rules(call.name(), call.arity());
  std::string prefix = "c";
  if (targets.empty()) {
    targets = grammar_->ignore_rules(call.name(), call.arity());
    prefix = "i";
  }
  return solve_targets(targets, prefix, call, region,
                       [&](const StepResult& r) { return visit(make_solution(resolve(call, store_), r)); });
}

bool ParseSession::consume_terminal(std::string_view text, Region region, const Visitor& visit) {
  check_region(region);
  const std::string word(text);
  return scan_terminal(word, region, [&](const StepResult& r) { return visit(make_solution(Term::atom(word), r)); });
}

bool ParseSession::solve_ignore_class(Region region, const Visitor& visit) {
  check_region(region);
  if (!visit(make_solution(Term::atom("[]"), StepResult{Island{region.begin, region.begin}, 0, {}}))) return false;
  for (RuleId id : grammar_->ignore_rule_ids()) {
    TrailGuard guard(store_);
    std::vector<std::optional<Term>> renaming;
    Term call = rename_apart(grammar_->rule(id).head, store_, renaming);
    const RuleId only[] = {id};
    const bool more = solve_targets(only, "r" + std::to_string(id), call, region, [&](const StepResult& r) {
      return visit(make_solution(resolve(call, store_), r));
    });
    if (!more) return false;
  }
  return true;
}

}  // namespace islandparse

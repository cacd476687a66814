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

#include "islandparse/compiler.hpp"

#include <algorithm>
#include <set>

namespace islandparse {

std::string_view diagnostic_name(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::UnresolvedCall:
      return "UnresolvedCall";
    case Diagnostic::Kind::IgnoreInvocationOfNormalRule:
      return "IgnoreInvocationOfNormalRule";
    case Diagnostic::Kind::HeadInsideOptional:
      return "HeadInsideOptional";
    case Diagnostic::Kind::CoveringRestrictionViolation:
      return "CoveringRestrictionViolation";
    case Diagnostic::Kind::LeftRecursionWarning:
      return "LeftRecursionWarning";
  }
  return "?";
}

std::string Diagnostic::to_string() const {
  std::string out = source.empty() ? std::string() : source + ":";
  out += std::to_string(line) + ": ";
  out += is_error() ? "error: " : "warning: ";
  out += std::string(diagnostic_name(kind)) + " in rule " + rule;
  if (branch >= 0) out += " (branch " + std::to_string(branch + 1) + ")";
  if (!message.empty()) out += ": " + message;
  return out;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "\n";
    out += d.to_string();
  }
  return out;
}

}  // namespace

CompileError::CompileError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::span<const RuleId> Grammar::normal_rules(const std::string& name, std::size_t arity) const {
  auto it = normal_index_.find({name, arity});
  if (it == normal_index_.end()) return {};
  return it->second;
}

std::span<const RuleId> Grammar::ignore_rules(const std::string& name, std::size_t arity) const {
  auto it = ignore_index_.find({name, arity});
  if (it == ignore_index_.end()) return {};
  return it->second;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

CompiledStep step_from_clause(const ClauseItem& item) {
  CompiledStep s;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IgnoreClassClause>) {
          s.kind = CompiledStep::Kind::IgnoreClass;
        } else if constexpr (std::is_same_v<T, CallClause>) {
          s.kind = CompiledStep::Kind::Call;
          s.term = x.term;
          s.is_head = x.is_head;
        } else if constexpr (std::is_same_v<T, TerminalClause>) {
          s.kind = CompiledStep::Kind::Terminal;
          s.text = x.text;
          s.is_head = x.is_head;
        } else if constexpr (std::is_same_v<T, IgnoreCallClause>) {
          s.kind = CompiledStep::Kind::IgnoreCall;
          s.term = x.term;
        } else {
          s.kind = CompiledStep::Kind::Hook;
          s.text = x.name;
          s.hook_args = x.args;
        }
      },
      item);
  return s;
}

}  // namespace

std::vector<CompiledBranch> normalize_body(const BodyNode& body) {
  return std::visit(
      [](const auto& x) -> std::vector<CompiledBranch> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ClauseItem>) {
          CompiledBranch b;
          b.steps.push_back(step_from_clause(x));
          return {std::move(b)};
        } else if constexpr (std::is_same_v<T, OptionalGroup>) {
          CompiledStep s;
          s.kind = CompiledStep::Kind::Optional;
          s.alternatives = normalize_body(*x.body);
          CompiledBranch b;
          b.steps.push_back(std::move(s));
          return {std::move(b)};
        } else if constexpr (std::is_same_v<T, Disjunction>) {
          std::vector<CompiledBranch> out;
          for (const auto& alt : x.alternatives)
            for (auto& b : normalize_body(alt)) out.push_back(std::move(b));
          return out;
        } else {
          std::vector<CompiledBranch> acc(1);
          for (std::size_t i = 0; i < x.items.size(); ++i) {
            auto alts = normalize_body(x.items[i]);
            std::vector<CompiledBranch> next;
            next.reserve(acc.size() * alts.size());
            for (const auto& prefix : acc) {
              for (const auto& alt : alts) {
                CompiledBranch b = prefix;
                for (std::size_t k = 0; k < alt.steps.size(); ++k) {
                  b.steps.push_back(alt.steps[k]);
                  if (k == 0 && i > 0) b.steps.back().left = x.gaps[i - 1];
                }
                next.push_back(std::move(b));
              }
            }
            acc = std::move(next);
          }
          return acc;
        }
      },
      body.node);
}

std::optional<CoveringViolation> check_covering(const CompiledBranch& branch) {
  for (const auto& s : branch.steps)
    if (s.kind == CompiledStep::Kind::Call || s.kind == CompiledStep::Kind::Terminal) return std::nullopt;
  return CoveringViolation{
      "body has no clause that necessarily covers input (optional clauses, ignore rules and hooks do not)"};
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

class RuleCompiler {
 public:
  RuleCompiler(const Grammar& g, const RuleSource& src, std::vector<Diagnostic>& diags)
      : grammar_(g), src_(src), diags_(diags) {}

  void plan(CompiledBranch& b, int branch_index, bool inside_optional) {
    const int n = static_cast<int>(b.steps.size());
    std::vector<int> heads;
    for (int i = 0; i < n; ++i) {
      CompiledStep& s = b.steps[static_cast<std::size_t>(i)];
      s.source_index = i;
      if (s.is_head) {
        if (inside_optional) {
          report(Diagnostic::Kind::HeadInsideOptional, branch_index,
                 "head clause inside (? ... ?); an absent optional head would leave regions undefined");
          s.is_head = false;
        } else {
          heads.push_back(i);
        }
      }
    }
    b.evaluation_order = heads;
    for (int i = 0; i < n; ++i)
      if (!b.steps[static_cast<std::size_t>(i)].is_head) b.evaluation_order.push_back(i);
    for (int pos = 0; pos < n; ++pos)
      b.steps[static_cast<std::size_t>(b.evaluation_order[static_cast<std::size_t>(pos)])].eval_position = pos;

    int prev_head = kBranchStart;
    for (int i = 0; i < n; ++i) {
      CompiledStep& s = b.steps[static_cast<std::size_t>(i)];
      if (s.is_head) {
        s.region_start_ref = prev_head;
        s.region_end_ref = kBranchEnd;
        prev_head = i;
      } else {
        s.region_start_ref = i == 0 ? kBranchStart : i - 1;
        auto next = std::find_if(heads.begin(), heads.end(), [i](int h) { return h > i; });
        s.region_end_ref = next == heads.end() ? kBranchEnd : *next;
      }
      resolve(s, branch_index);
      if (s.kind == CompiledStep::Kind::Optional)
        for (auto& alt : s.alternatives) plan(alt, branch_index, true);
    }
  }

 private:
  void resolve(CompiledStep& s, int branch_index) {
    if (s.kind != CompiledStep::Kind::Call && s.kind != CompiledStep::Kind::IgnoreCall) return;
    const Term& t = *s.term;
    auto normal = grammar_.normal_rules(t.name(), t.arity());
    auto ignore = grammar_.ignore_rules(t.name(), t.arity());
    const std::string sig = t.name() + "/" + std::to_string(t.arity());
    if (s.kind == CompiledStep::Kind::Call) {
      if (normal.empty()) {
        report(Diagnostic::Kind::UnresolvedCall, branch_index,
               ignore.empty() ? "no rule for " + sig
                              : sig + " is an ignore rule; invoke it as -" + t.name() + " or through []");
      }
      s.targets.assign(normal.begin(), normal.end());
    } else {
      if (ignore.empty()) {
        report(normal.empty() ? Diagnostic::Kind::UnresolvedCall : Diagnostic::Kind::IgnoreInvocationOfNormalRule,
               branch_index,
               normal.empty() ? "no ignore rule for " + sig
                              : sig + " is not declared as an ignore rule (prefix its definition with '-')");
      }
      s.targets.assign(ignore.begin(), ignore.end());
    }
  }

  void report(Diagnostic::Kind kind, int branch, std::string message) {
    diags_.push_back(Diagnostic{kind, src_.signature(), branch, src_.line, src_.source, std::move(message)});
  }

  const Grammar& grammar_;
  const RuleSource& src_;
  std::vector<Diagnostic>& diags_;
};

// Rules whose solving may re-enter themselves over the same region start
// before consuming anything.
void leading_targets(const Grammar& g, const CompiledBranch& b, std::set<RuleId>& out) {
  for (int idx : b.evaluation_order) {
    const CompiledStep& s = b.steps[static_cast<std::size_t>(idx)];
    switch (s.kind) {
      case CompiledStep::Kind::Call:
        out.insert(s.targets.begin(), s.targets.end());
        return;
      case CompiledStep::Kind::Terminal:
        return;
      case CompiledStep::Kind::IgnoreCall:
        out.insert(s.targets.begin(), s.targets.end());
        break;
      case CompiledStep::Kind::IgnoreClass:
        out.insert(g.ignore_rule_ids().begin(), g.ignore_rule_ids().end());
        break;
      case CompiledStep::Kind::Optional:
        for (const auto& alt : s.alternatives) leading_targets(g, alt, out);
        break;
      case CompiledStep::Kind::Hook:
        break;
    }
  }
}

}  // namespace

Grammar compile(std::span<const RuleSource> rules, const CompileOptions& options) {
  Grammar g;
  g.global_threshold_ = options.global_threshold_default;
  std::vector<Diagnostic> diags;

  for (std::size_t i = 0; i < rules.size(); ++i) {
    const RuleSource& src = rules[i];
    const RuleId id = static_cast<RuleId>(i + 1);
    auto key = std::make_pair(src.head.name(), src.head.arity());
    if (src.ignore_rule) {
      g.ignore_index_[key].push_back(id);
      g.ignore_ids_.push_back(id);
    } else {
      g.normal_index_[key].push_back(id);
    }
  }

  for (std::size_t i = 0; i < rules.size(); ++i) {
    const RuleSource& src = rules[i];
    CompiledRule r;
    r.id = static_cast<RuleId>(i + 1);
    r.head = src.head;
    r.ignore_rule = src.ignore_rule;
    r.threshold = src.local_threshold;
    r.threshold_var = src.threshold_var;
    r.var_count = static_cast<int>(src.var_names.size());
    r.line = src.line;
    r.source = src.source;
    r.branches = normalize_body(src.body);
    RuleCompiler rc(g, src, diags);
    for (std::size_t b = 0; b < r.branches.size(); ++b) {
      rc.plan(r.branches[b], static_cast<int>(b), false);
      if (!r.ignore_rule) {
        if (auto v = check_covering(r.branches[b]))
          diags.push_back(Diagnostic{Diagnostic::Kind::CoveringRestrictionViolation, src.signature(),
                                     static_cast<int>(b), src.line, src.source, v->message});
      }
    }
    g.rules_.push_back(std::move(r));
  }

  std::vector<Diagnostic> errors;
  for (auto& d : diags) {
    if (d.is_error())
      errors.push_back(std::move(d));
    else
      g.warnings_.push_back(std::move(d));
  }
  if (!errors.empty()) throw CompileError(std::move(errors));

  // Left-recursion through leading steps is legal but may not terminate
  // without the engine's guards.
  const std::size_t n = g.rules_.size();
  std::vector<std::set<RuleId>> edges(n + 1);
  for (const auto& r : g.rules_)
    for (const auto& b : r.branches) leading_targets(g, b, edges[static_cast<std::size_t>(r.id)]);
  for (const auto& r : g.rules_) {
    std::vector<bool> seen(n + 1, false);
    std::vector<RuleId> work(edges[static_cast<std::size_t>(r.id)].begin(),
                             edges[static_cast<std::size_t>(r.id)].end());
    bool cyclic = false;
    while (!work.empty() && !cyclic) {
      RuleId cur = work.back();
      work.pop_back();
      if (cur == r.id) cyclic = true;
      if (seen[static_cast<std::size_t>(cur)]) continue;
      seen[static_cast<std::size_t>(cur)] = true;
      for (RuleId nxt : edges[static_cast<std::size_t>(cur)]) work.push_back(nxt);
    }
    if (cyclic)
      g.warnings_.push_back(Diagnostic{Diagnostic::Kind::LeftRecursionWarning, r.signature(), -1, r.line, r.source,
                                       "rule " + std::to_string(r.id) +
                                           " can call itself before consuming input; relying on the depth guard"});
  }
  return g;
}

}  // namespace islandparse

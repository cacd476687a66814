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


#include "islandparse/oracle.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace islandparse::oracle {

DepthBoundExceeded::DepthBoundExceeded(int bound)
    : std::runtime_error("oracle depth bound " + std::to_string(bound) + " exceeded") {}

HookNotSupported::HookNotSupported(const std::string& name)
    : std::runtime_error("oracle cannot evaluate hook " + name) {}

namespace {

struct Acc {
  bool any = false;
  int begin = 0;
  int end = 0;
  int coverage = 0;

  Acc with(int b, int e, int c) const {
    Acc out = *this;
    out.coverage += c;
    if (b == e) return out;
    if (!out.any) {
      out.any = true;
      out.begin = b;
      out.end = e;
    } else {
      out.begin = std::min(out.begin, b);
      out.end = std::max(out.end, e);
    }
    return out;
  }
};

// Where the next clause may start. `floating` holds until the rule body has
// produced a non-empty island; until then `:` constrains nothing.
struct At {
  int pos;
  bool floating;
};

// Continuation after a body fragment: position reached and accumulated
// islands so far.
using Next = std::function<void(At, const Acc&)>;
// Continuation after a rule success: island and coverage.
using Found = std::function<void(int, int, int)>;

class Enumerator {
 public:
  Enumerator(std::span<const RuleSource> rules, std::span<const std::string> tokens, Rational global, int bound,
             DepthPolicy policy)
      : rules_(rules), tokens_(tokens), global_(global), bound_(bound), policy_(policy) {}

  BindingStore& store() { return store_; }
  int last() const { return static_cast<int>(tokens_.size()) + 1; }

  bool has_rules(const Term& call, bool ignore) const {
    for (const auto& r : rules_)
      if (r.ignore_rule == ignore && matches(r, call)) return true;
    return false;
  }

  void call(const Term& call, bool ignore, int b, int c, const Found& k) {
    for (const auto& r : rules_)
      if (r.ignore_rule == ignore && matches(r, call)) apply(r, call, b, c, k);
  }

  void apply(const RuleSource& r, const Term& call, int b, int c, const Found& k) {
    if (depth_ >= bound_) {
      if (policy_ == DepthPolicy::Throw) throw DepthBoundExceeded(bound_);
      return;
    }
    TrailGuard guard(store_);
    std::vector<std::optional<Term>> renaming(r.var_names.size());
    Term head = rename_apart(r.head, store_, renaming);
    if (!unify(call, head, store_)) return;
    ++depth_;
    struct Leave {
      int& d;
      ~Leave() { --d; }
    } leave{depth_};
    body(r.body, renaming, At{b, true}, c, std::nullopt, Acc{}, [&](At, const Acc& acc) {
      const int ib = acc.any ? acc.begin : b;
      const int ie = acc.any ? acc.end : b;
      if (!admissible(acc.coverage, ib, ie, threshold(r, renaming))) return;
      k(ib, ie, acc.coverage);
    });
  }

 private:
  static bool matches(const RuleSource& r, const Term& call) {
    return r.head.name() == call.name() && r.head.arity() == call.arity();
  }

  static bool admissible(int cov, int b, int e, const Rational& t) {
    return b == e || Rational(cov, e - b) >= t;
  }

  Rational threshold(const RuleSource& r, std::vector<std::optional<Term>>& renaming) {
    if (r.local_threshold) return *r.local_threshold;
    if (r.threshold_var) {
      auto i = static_cast<std::size_t>(r.threshold_var->var_id());
      if (i < renaming.size() && renaming[i]) {
        Term v = resolve(*renaming[i], store_);
        if (v.is_number() && (v.value() == 0 || v.value() == 1)) return Rational(v.value());
        if (v.is_compound() && v.name() == "/" && v.arity() == 2 && v.args()[0].is_number() &&
            v.args()[1].is_number() && v.args()[1].value() > 0) {
          Rational t(v.args()[0].value(), v.args()[1].value());
          if (t >= 0 && t <= 1) return t;
        }
      }
    }
    return global_;
  }

  // An item found at [b, e) after `prev`, joined by `conn`.
  static bool joins(std::optional<Connective> conn, At prev, int b) {
    return prev.floating || conn != Connective::Adjacent || b == prev.pos;
  }

  void body(const BodyNode& n, std::vector<std::optional<Term>>& ren, At prev, int c,
            std::optional<Connective> conn, const Acc& acc, const Next& k) {
    if (const auto* seq = std::get_if<Sequence>(&n.node)) {
      sequence(*seq, 0, ren, prev, c, conn, acc, k);
    } else if (const auto* dis = std::get_if<Disjunction>(&n.node)) {
      for (const auto& alt : dis->alternatives) body(alt, ren, prev, c, conn, acc, k);
    } else if (const auto* opt = std::get_if<OptionalGroup>(&n.node)) {
      body(*opt->body, ren, prev, c, std::nullopt, Acc{}, [&](At, const Acc& inner) {
        if (!inner.any) {
          k(prev, acc);
        } else if (joins(conn, prev, inner.begin)) {
          k(At{inner.end, false}, acc.with(inner.begin, inner.end, inner.coverage));
        }
      });
      k(prev, acc);
    } else {
      item(std::get<ClauseItem>(n.node), ren, prev, c, conn, acc, k);
    }
  }

  void sequence(const Sequence& seq, std::size_t i, std::vector<std::optional<Term>>& ren, At prev, int c,
                std::optional<Connective> conn, const Acc& acc, const Next& k) {
    if (i == seq.items.size()) {
      k(prev, acc);
      return;
    }
    const auto here = i == 0 ? conn : std::optional<Connective>(seq.gaps[i - 1]);
    body(seq.items[i], ren, prev, c, here,
         acc, [&](At p, const Acc& a) { sequence(seq, i + 1, ren, p, c, conn, a, k); });
  }

  void item(const ClauseItem& it, std::vector<std::optional<Term>>& ren, At prev, int c,
            std::optional<Connective> conn, const Acc& acc, const Next& k) {
    const auto found = [&](int b, int e, int cov) {
      if (b == e) {
        k(prev, acc);
      } else if (joins(conn, prev, b)) {
        k(At{e, false}, acc.with(b, e, cov));
      }
    };
    const int start = prev.pos;
    if (const auto* t = std::get_if<TerminalClause>(&it)) {
      for (int p = start; p < c; ++p)
        if (tokens_[static_cast<std::size_t>(p - 1)] == t->text) found(p, p + 1, 1);
    } else if (const auto* call_clause = std::get_if<CallClause>(&it)) {
      call(rename_apart(call_clause->term, store_, ren), false, start, c, found);
    } else if (const auto* ign = std::get_if<IgnoreCallClause>(&it)) {
      call(rename_apart(ign->term, store_, ren), true, start, c, found);
    } else if (std::holds_alternative<IgnoreClassClause>(it)) {
      found(start, start, 0);
      for (const auto& r : rules_) {
        if (!r.ignore_rule) continue;
        TrailGuard guard(store_);
        std::vector<std::optional<Term>> fresh;
        Term h = rename_apart(r.head, store_, fresh);
        apply(r, h, start, c, found);
      }
    } else {
      throw HookNotSupported(std::get<HookClause>(it).name);
    }
  }

  std::span<const RuleSource> rules_;
  std::span<const std::string> tokens_;
  Rational global_;
  int bound_;
  DepthPolicy policy_;
  int depth_ = 0;
  BindingStore store_;
};

}  // namespace

OracleResult enumerate_all(std::span<const RuleSource> rules, const Term& cat, std::span<const std::string> tokens,
                           const Rational& global_threshold, int depth_bound, DepthPolicy policy) {
  OracleResult out;
  if (!cat.is_callable()) return out;
  Enumerator e(rules, tokens, global_threshold, depth_bound, policy);
  std::vector<std::optional<Term>> renaming;
  Term call = rename_apart(cat, e.store(), renaming);
  const bool ignore = !e.has_rules(call, false);
  e.call(call, ignore, 1, e.last(), [&](int b, int end, int cov) {
    out.insert(Analysis{variant_key(resolve(call, e.store())), b, end, cov});
  });
  return out;
}

int sufficient_depth(std::span<const RuleSource> rules, std::size_t token_count) {
  return static_cast<int>((rules.size() + 1) * (token_count + 1));
}

}  // namespace islandparse::oracle

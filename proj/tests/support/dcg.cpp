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


#include "dcg.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace islandparse::testing {

namespace {

using Next = std::function<bool(std::size_t)>;

class Dcg {
 public:
  Dcg(std::span<const RuleSource> rules, std::span<const std::string> tokens) : rules_(rules), tokens_(tokens) {}

  bool nonterminal(const Term& goal, std::size_t pos, const Next& k) {
    for (const auto& r : rules_) {
      if (r.ignore_rule || r.head.name() != goal.name() || r.head.arity() != goal.arity()) continue;
      TrailGuard guard(store_);
      std::vector<std::optional<Term>> ren(r.var_names.size());
      if (!unify(goal, rename_apart(r.head, store_, ren), store_)) continue;
      if (body(r.body, ren, pos, k)) return true;
    }
    return false;
  }

  BindingStore& store() { return store_; }

 private:
  bool body(const BodyNode& n, std::vector<std::optional<Term>>& ren, std::size_t pos, const Next& k) {
    if (const auto* seq = std::get_if<Sequence>(&n.node)) return sequence(*seq, 0, ren, pos, k);
    if (const auto* dis = std::get_if<Disjunction>(&n.node)) {
      for (const auto& alt : dis->alternatives)
        if (body(alt, ren, pos, k)) return true;
      return false;
    }
    if (std::holds_alternative<OptionalGroup>(n.node)) throw std::invalid_argument("optional group");
    const auto& it = std::get<ClauseItem>(n.node);
    if (const auto* t = std::get_if<TerminalClause>(&it))
      return pos < tokens_.size() && tokens_[pos] == t->text && k(pos + 1);
    if (const auto* c = std::get_if<CallClause>(&it)) return nonterminal(rename_apart(c->term, store_, ren), pos, k);
    throw std::invalid_argument("clause outside plain DCG");
  }

  bool sequence(const Sequence& s, std::size_t i, std::vector<std::optional<Term>>& ren, std::size_t pos,
                const Next& k) {
    if (i == s.items.size()) return k(pos);
    return body(s.items[i], ren, pos, [&](std::size_t p) { return sequence(s, i + 1, ren, p, k); });
  }

  std::span<const RuleSource> rules_;
  std::span<const std::string> tokens_;
  BindingStore store_;
};

}  // namespace

bool dcg_accepts(std::span<const RuleSource> rules, const Term& category, std::span<const std::string> tokens) {
  Dcg dcg(rules, tokens);
  std::vector<std::optional<Term>> ren;
  Term goal = rename_apart(category, dcg.store(), ren);
  return dcg.nonterminal(goal, 0, [&](std::size_t end) { return end == tokens.size(); });
}

}  // namespace islandparse::testing

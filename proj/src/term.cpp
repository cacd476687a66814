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

#include "islandparse/term.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace islandparse {

Term Term::variable(VarId id) {
  if (id < 0) throw std::invalid_argument("negative variable id");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->scalar = id;
  return Term(std::move(n));
}

Term Term::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::number(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->scalar = value;
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return atom(std::move(functor));
  if (functor.empty()) throw std::invalid_argument("empty functor name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->name = std::move(functor);
  n->args = std::move(args);
  return Term(std::move(n));
}

VarId Term::var_id() const {
  if (!is_variable()) throw std::logic_error("var_id() on non-variable term");
  return static_cast<VarId>(node_->scalar);
}

std::int64_t Term::value() const {
  if (!is_number()) throw std::logic_error("value() on non-number term");
  return node_->scalar;
}

const std::string& Term::name() const {
  if (!is_atom() && !is_compound()) throw std::logic_error("name() on variable or number");
  return node_->name;
}

std::span<const Term> Term::args() const { return node_->args; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Variable:
    case Term::Kind::Number:
      return a.node_->scalar == b.node_->scalar;
    case Term::Kind::Atom:
      return a.node_->name == b.node_->name;
    case Term::Kind::Compound:
      if (a.node_->name != b.node_->name || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (!(a.node_->args[i] == b.node_->args[i])) return false;
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

Term BindingStore::fresh_var() { return Term::variable(next_++); }

void BindingStore::reserve_ids(VarId id) {
  if (id > next_) next_ = id;
}

void BindingStore::undo(Mark m) {
  while (trail_.size() > m.trail) {
    bindings_[static_cast<std::size_t>(trail_.back())].reset();
    trail_.pop_back();
  }
}

bool BindingStore::is_bound(VarId id) const {
  auto i = static_cast<std::size_t>(id);
  return i < bindings_.size() && bindings_[i].has_value();
}

const Term* BindingStore::lookup(VarId id) const {
  auto i = static_cast<std::size_t>(id);
  if (i >= bindings_.size() || !bindings_[i]) return nullptr;
  return &*bindings_[i];
}

Term BindingStore::deref(const Term& t) const {
  Term cur = t;
  while (cur.is_variable()) {
    const Term* b = lookup(cur.var_id());
    if (!b) break;
    cur = *b;
  }
  return cur;
}

void BindingStore::bind(VarId id, Term value) {
  auto i = static_cast<std::size_t>(id);
  if (i >= bindings_.size()) bindings_.resize(i + 1);
  if (bindings_[i]) throw std::logic_error("rebinding a bound variable");
  bindings_[i] = std::move(value);
  trail_.push_back(id);
  if (id >= next_) next_ = id + 1;
}

bool occurs_in(VarId id, const Term& t, const BindingStore& store) {
  std::vector<Term> work{t};
  while (!work.empty()) {
    Term cur = store.deref(work.back());
    work.pop_back();
    if (cur.is_variable()) {
      if (cur.var_id() == id) return true;
    } else if (cur.is_compound()) {
      for (const Term& a : cur.args()) work.push_back(a);
    }
  }
  return false;
}

bool unify(const Term& a, const Term& b, BindingStore& store) {
  const auto m = store.mark();
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [x0, y0] = std::move(work.back());
    work.pop_back();
    Term x = store.deref(x0);
    Term y = store.deref(y0);
    if (x.is_variable() && y.is_variable() && x.var_id() == y.var_id()) continue;
    if (x.is_variable() || y.is_variable()) {
      // Bind the younger variable to the older one so chains stay short.
      if (x.is_variable() && y.is_variable() && y.var_id() > x.var_id()) std::swap(x, y);
      if (!x.is_variable()) std::swap(x, y);
      if (store.occurs_check() && !y.is_variable() && occurs_in(x.var_id(), y, store)) {
        store.undo(m);
        return false;
      }
      store.bind(x.var_id(), y);
      continue;
    }
    if (x.kind() != y.kind()) {
      store.undo(m);
      return false;
    }
    switch (x.kind()) {
      case Term::Kind::Number:
        if (x.value() != y.value()) {
          store.undo(m);
          return false;
        }
        break;
      case Term::Kind::Atom:
        if (x.name() != y.name()) {
          store.undo(m);
          return false;
        }
        break;
      case Term::Kind::Compound:
        if (x.name() != y.name() || x.arity() != y.arity()) {
          store.undo(m);
          return false;
        }
        for (std::size_t i = x.arity(); i-- > 0;) work.emplace_back(x.args()[i], y.args()[i]);
        break;
      case Term::Kind::Variable:
        break;
    }
  }
  return true;
}

Term resolve(const Term& t, const BindingStore& store) {
  Term d = store.deref(t);
  if (!d.is_compound()) return d;
  std::vector<Term> args;
  args.reserve(d.arity());
  bool changed = false;
  for (const Term& a : d.args()) {
    args.push_back(resolve(a, store));
    if (!(args.back() == a)) changed = true;
  }
  if (!changed) return d;
  return Term::compound(d.name(), std::move(args));
}

Term rename_apart(const Term& t, BindingStore& store, std::vector<std::optional<Term>>& renaming) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto i = static_cast<std::size_t>(t.var_id());
      if (i >= renaming.size()) renaming.resize(i + 1);
      if (!renaming[i]) renaming[i] = store.fresh_var();
      return *renaming[i];
    }
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(rename_apart(a, store, renaming));
      return Term::compound(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

Term rename_apart(const Term& t, BindingStore& store, std::unordered_map<VarId, Term>& renaming) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      auto [it, inserted] = renaming.try_emplace(t.var_id(), t);
      if (inserted) it->second = store.fresh_var();
      return it->second;
    }
    case Term::Kind::Compound: {
      std::vector<Term> args;
      args.reserve(t.arity());
      for (const Term& a : t.args()) args.push_back(rename_apart(a, store, renaming));
      return Term::compound(t.name(), std::move(args));
    }
    default:
      return t;
  }
}

VarId max_var_id(const Term& t) {
  if (t.is_variable()) return t.var_id();
  VarId m = -1;
  if (t.is_compound())
    for (const Term& a : t.args()) m = std::max(m, max_var_id(a));
  return m;
}

// ---------------------------------------------------------------------------

std::string display_var_name(std::size_t n) {
  std::string s(1, static_cast<char>('A' + n % 26));
  if (n >= 26) s += std::to_string(n / 26);
  return s;
}

bool needs_quotes(std::string_view atom) {
  if (atom.empty() || !std::islower(static_cast<unsigned char>(atom.front()))) return true;
  for (char c : atom)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return true;
  return false;
}

std::string quote_atom(std::string_view atom) {
  std::string out = "'";
  for (char c : atom) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

namespace {

enum class Style { Display, Source, Key };

void print(const Term& t, Style style, std::span<const std::string> names,
           std::unordered_map<VarId, std::size_t>& seen, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Variable: {
      VarId id = t.var_id();
      if (style == Style::Source) {
        auto i = static_cast<std::size_t>(id);
        if (i < names.size() && !names[i].empty())
          out += names[i];
        else
          out += "_G" + std::to_string(id);
        return;
      }
      auto [it, inserted] = seen.try_emplace(id, seen.size());
      out += style == Style::Display ? display_var_name(it->second) : "_" + std::to_string(it->second);
      return;
    }
    case Term::Kind::Number:
      out += std::to_string(t.value());
      return;
    case Term::Kind::Atom:
    case Term::Kind::Compound:
      out += style != Style::Display && needs_quotes(t.name()) ? quote_atom(t.name()) : t.name();
      if (t.is_compound()) {
        out += '(';
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i) out += ',';
          print(t.args()[i], style, names, seen, out);
        }
        out += ')';
      }
      return;
  }
}

std::string print(const Term& t, Style style, std::span<const std::string> names = {}) {
  std::unordered_map<VarId, std::size_t> seen;
  std::string out;
  print(t, style, names, seen, out);
  return out;
}

}  // namespace

std::string to_string(const Term& t) { return print(t, Style::Display); }

std::string to_source(const Term& t, std::span<const std::string> var_names) {
  return print(t, Style::Source, var_names);
}

std::string variant_key(const Term& t) { return print(t, Style::Key); }

}  // namespace islandparse

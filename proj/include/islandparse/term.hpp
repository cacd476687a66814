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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace islandparse {

using VarId = std::int32_t;

// Immutable first-order term. Copies share structure, so passing terms by
// value is cheap and they may be shared freely between threads.
class Term {
 public:
  enum class Kind { Variable, Atom, Number, Compound };

  static Term variable(VarId id);
  static Term atom(std::string name);
  static Term number(std::int64_t value);
  // An empty argument list yields an atom: zero-arity names are atoms.
  static Term compound(std::string functor, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::Variable; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_number() const { return kind() == Kind::Number; }
  bool is_compound() const { return kind() == Kind::Compound; }
  // Atoms and compounds can name rules.
  bool is_callable() const { return is_atom() || is_compound(); }

  VarId var_id() const;
  std::int64_t value() const;
  // Atom name or compound functor.
  const std::string& name() const;
  std::span<const Term> args() const;
  std::size_t arity() const { return node_->args.size(); }

  // Structural identity; variables compare by id.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::int64_t scalar = 0;  // variable id or number value
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Variable bindings with a trail for undo-to-mark on backtracking.
class BindingStore {
 public:
  struct Mark {
    std::size_t trail = 0;
  };

  explicit BindingStore(bool occurs_check = true) : occurs_check_(occurs_check) {}

  Term fresh_var();
  // Ensures ids below `id` are never handed out by fresh_var().
  void reserve_ids(VarId id);

  Mark mark() const { return Mark{trail_.size()}; }
  void undo(Mark m);

  bool is_bound(VarId id) const;
  const Term* lookup(VarId id) const;
  // Follows variable bindings until an unbound variable or non-variable.
  Term deref(const Term& t) const;
  void bind(VarId id, Term value);

  bool occurs_check() const { return occurs_check_; }
  void set_occurs_check(bool enabled) { occurs_check_ = enabled; }

  std::size_t binding_count() const { return trail_.size(); }

 private:
  std::vector<std::optional<Term>> bindings_;
  std::vector<VarId> trail_;
  VarId next_ = 0;
  bool occurs_check_;
};

// Restores the store to the mark taken at construction unless released.
class TrailGuard {
 public:
  explicit TrailGuard(BindingStore& store) : store_(store), mark_(store.mark()) {}
  ~TrailGuard() { store_.undo(mark_); }
  TrailGuard(const TrailGuard&) = delete;
  TrailGuard& operator=(const TrailGuard&) = delete;

 private:
  BindingStore& store_;
  BindingStore::Mark mark_;
};

// On failure the store is left exactly as it was.
bool unify(const Term& a, const Term& b, BindingStore& store);

// Replaces bound variables recursively; unbound variables stay.
Term resolve(const Term& t, const BindingStore& store);

// Whether variable `id` occurs in `t` under `store`.
bool occurs_in(VarId id, const Term& t, const BindingStore& store);

// Copies `t` replacing every variable by a fresh one from `store`. The term is
// taken literally (no dereferencing), so it must be self-contained: grammar
// terms with rule-local ids, or resolved snapshots. `renaming` is indexed by
// the source variable id and grows as needed; sharing it across calls renames
// several terms consistently.
Term rename_apart(const Term& t, BindingStore& store, std::vector<std::optional<Term>>& renaming);
// Same, keyed sparsely; for snapshots whose variable ids are large.
Term rename_apart(const Term& t, BindingStore& store, std::unordered_map<VarId, Term>& renaming);

// Display form: atoms bare, compounds `f(a,b)`, unbound variables as `A`,
// `B`, ... in first-appearance order.
std::string to_string(const Term& t);

// Source form: atoms quoted when they are not plain lowercase identifiers, and
// variables named from `var_names` (indexed by id) or `_G<id>` otherwise.
std::string to_source(const Term& t, std::span<const std::string> var_names = {});

// Canonical text of a term up to variable renaming: two terms have the same
// key iff they are variants of each other.
std::string variant_key(const Term& t);

// Name used for the n-th distinct variable in display form: A..Z, A1..Z1, ...
std::string display_var_name(std::size_t n);

bool needs_quotes(std::string_view atom);
std::string quote_atom(std::string_view atom);

// Largest variable id occurring in `t`, or -1 when ground.
VarId max_var_id(const Term& t);

}  // namespace islandparse

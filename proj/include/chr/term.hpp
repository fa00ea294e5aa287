// Copyright 2026 The chr-coind Authors. All Rights Reserved.
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

#ifndef CHR_TERM_HPP_
#define CHR_TERM_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chr {

// First-order term: integer, atom, variable or compound. Immutable and
// cheap to copy (shared node). Lists use the atom "[]" and the binary
// functor "." for cons cells.
class Term {
 public:
  enum class Kind : std::uint8_t { Int, Atom, Var, Compound };

  static constexpr std::string_view kNil = "[]";
  static constexpr std::string_view kCons = ".";
  static constexpr std::string_view kComma = ",";

  Term();  // the empty list

  static Term integer(std::int64_t value);
  static Term atom(std::string name);
  static Term var(std::string name);
  // Arity 0 yields an atom.
  static Term compound(std::string functor, std::vector<Term> args);
  static Term nil();
  static Term cons(Term head, Term tail);
  static Term list(const std::vector<Term>& elements, Term tail = nil());
  // Right-nested ','/2 chain; a single element is returned as is.
  static Term tuple(const std::vector<Term>& elements);

  Kind kind() const;
  bool is_int() const { return kind() == Kind::Int; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_compound() const { return kind() == Kind::Compound; }
  bool is_nil() const;
  bool is_cons() const;
  // Atom or compound: something that can stand as a constraint.
  bool is_callable() const { return is_atom() || is_compound(); }

  std::int64_t int_value() const;
  // Atom name, variable name or compound functor. Empty for integers.
  const std::string& name() const;
  std::size_t arity() const;
  std::span<const Term> args() const;
  const Term& arg(std::size_t i) const;

  bool ground() const;
  // True if some subterm is a '+' or '-' compound.
  bool has_arith() const;
  std::size_t hash() const;
  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Standard order: Int < Atom < Var < Compound; integers by value, names
// lexicographically, compounds by arity, then functor, then arguments.
std::strong_ordering term_compare(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return term_compare(a, b) < 0; }
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Variables of t in order of first occurrence, without duplicates.
std::vector<std::string> term_vars(const Term& t);
void collect_vars(const Term& t, std::vector<std::string>& out);

// Finite map from variable names to terms, kept in triangular form: a
// binding may mention other bound variables, resolve() follows chains.
// Bindings added through unify() never create cycles.
class Substitution {
 public:
  using Map = std::map<std::string, Term, std::less<>>;

  Substitution() = default;

  const Term* find(std::string_view var) const;
  bool contains(std::string_view var) const { return find(var) != nullptr; }
  void bind(std::string var, Term value) { bindings_.insert_or_assign(std::move(var), std::move(value)); }
  void erase(std::string_view var);
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  Map::const_iterator begin() const { return bindings_.begin(); }
  Map::const_iterator end() const { return bindings_.end(); }

  // Dereferences variable chains at the top level only.
  Term walk(const Term& t) const;
  // Full application, following chains.
  Term resolve(const Term& t) const;
  // Single simultaneous replacement, no chain following. Used for one-way
  // matchers whose range may mention names from another scope.
  Term apply_once(const Term& t) const;

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  Map bindings_;
};

// Most general unifier extending `under`, with occurs check.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& under = {});
// In-place variant. On failure `s` may hold partial bindings; record the
// newly bound names in `trail` to roll back.
bool unify_into(const Term& a, const Term& b, Substitution& s, std::vector<std::string>* trail = nullptr);

// One-way matching: binds only variables of `pattern` so that
// pattern·θ is syntactically the subject. Subject variables are treated as
// constants. Repeated pattern variables must map to identical subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject, const Substitution& under = {});
bool match_into(const Term& pattern, const Term& subject, Substitution& theta,
                std::vector<std::string>* trail = nullptr);

// Integer value of a ground arithmetic term built from integers, +, -.
std::optional<std::int64_t> eval_ground(const Term& t);
// Replaces every ground arithmetic subterm by its value.
Term fold_arith(const Term& t);

// Elements of a proper list; nullopt if the spine is not a proper list.
std::optional<std::vector<Term>> list_elements(const Term& t);

// Sorted duplicate-free union of two proper lists.
std::optional<Term> merge3(const Term& l1, const Term& l2);
// Boolean disjunction on 0/1 integers.
std::optional<Term> or3(const Term& b1, const Term& b2);

// Text form in the shared term syntax (re-parseable).
std::string to_string(const Term& t);

}  // namespace chr

#endif  // CHR_TERM_HPP_

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

#include "chr/term.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace chr {

struct Term::Node {
  Kind kind = Kind::Atom;
  std::int64_t value = 0;
  std::string name;
  std::vector<Term> args;
  bool ground = true;
  bool arith = false;
  std::size_t hash = 0;
};

namespace {

std::size_t hash_mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool is_arith_functor(const std::string& f, std::size_t arity) {
  return (f == "+" && arity == 2) || (f == "-" && (arity == 1 || arity == 2));
}

const Term& nil_term() {
  static const Term nil = Term::atom(std::string(Term::kNil));
  return nil;
}

}  // namespace

Term::Term() : Term(nil_term()) {}

Term Term::integer(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->value = value;
  n->hash = hash_mix(1, std::hash<std::int64_t>{}(value));
  return Term(std::move(n));
}

Term Term::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->hash = hash_mix(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->ground = false;
  n->hash = hash_mix(3, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) return atom(std::move(functor));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->arith = is_arith_functor(functor, args.size());
  std::size_t h = hash_mix(4, std::hash<std::string>{}(functor));
  h = hash_mix(h, args.size());
  for (const Term& a : args) {
    n->ground = n->ground && a.ground();
    n->arith = n->arith || a.has_arith();
    h = hash_mix(h, a.hash());
  }
  n->hash = h;
  n->name = std::move(functor);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::nil() { return nil_term(); }

Term Term::cons(Term head, Term tail) {
  return compound(std::string(kCons), {std::move(head), std::move(tail)});
}

Term Term::list(const std::vector<Term>& elements, Term tail) {
  Term out = std::move(tail);
  for (auto it = elements.rbegin(); it != elements.rend(); ++it) out = cons(*it, out);
  return out;
}

Term Term::tuple(const std::vector<Term>& elements) {
  if (elements.empty()) throw std::invalid_argument("empty tuple");
  Term out = elements.back();
  for (auto it = elements.rbegin() + 1; it != elements.rend(); ++it)
    out = compound(std::string(kComma), {*it, out});
  return out;
}

Term::Kind Term::kind() const { return node_->kind; }
bool Term::is_nil() const { return node_->kind == Kind::Atom && node_->name == kNil; }
bool Term::is_cons() const {
  return node_->kind == Kind::Compound && node_->args.size() == 2 && node_->name == kCons;
}
std::int64_t Term::int_value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
std::size_t Term::arity() const { return node_->args.size(); }
std::span<const Term> Term::args() const { return node_->args; }
const Term& Term::arg(std::size_t i) const { return node_->args.at(i); }
bool Term::ground() const { return node_->ground; }
bool Term::has_arith() const { return node_->arith; }
std::size_t Term::hash() const { return node_->hash; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
  switch (a.node_->kind) {
    case Term::Kind::Int:
      return a.node_->value == b.node_->value;
    case Term::Kind::Atom:
    case Term::Kind::Var:
      return a.node_->name == b.node_->name;
    case Term::Kind::Compound:
      return a.node_->name == b.node_->name && a.node_->args == b.node_->args;
  }
  return false;
}

std::strong_ordering term_compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return std::strong_ordering::equal;
  auto rank = [](Term::Kind k) {
    switch (k) {
      case Term::Kind::Int: return 0;
      case Term::Kind::Atom: return 1;
      case Term::Kind::Var: return 2;
      case Term::Kind::Compound: return 3;
    }
    return 4;
  };
  if (auto c = rank(a.kind()) <=> rank(b.kind()); c != 0) return c;
  switch (a.kind()) {
    case Term::Kind::Int:
      return a.int_value() <=> b.int_value();
    case Term::Kind::Atom:
    case Term::Kind::Var:
      return a.name().compare(b.name()) <=> 0;
    case Term::Kind::Compound: {
      if (auto c = a.arity() <=> b.arity(); c != 0) return c;
      if (auto c = a.name().compare(b.name()) <=> 0; c != 0) return c;
      for (std::size_t i = 0; i < a.arity(); ++i) {
        if (auto c = term_compare(a.arg(i), b.arg(i)); c != 0) return c;
      }
      return std::strong_ordering::equal;
    }
  }
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> out;
  collect_vars(t, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

const Term* Substitution::find(std::string_view var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::erase(std::string_view var) {
  auto it = bindings_.find(var);
  if (it != bindings_.end()) bindings_.erase(it);
}

Term Substitution::walk(const Term& t) const {
  Term cur = t;
  while (cur.is_var()) {
    const Term* next = find(cur.name());
    if (next == nullptr) break;
    cur = *next;
  }
  return cur;
}

Term Substitution::resolve(const Term& t) const {
  if (t.ground() || bindings_.empty()) return t;
  if (t.is_var()) {
    Term w = walk(t);
    return w.is_var() ? w : resolve(w);
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(resolve(a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Term Substitution::apply_once(const Term& t) const {
  if (t.ground() || bindings_.empty()) return t;
  if (t.is_var()) {
    const Term* v = find(t.name());
    return v == nullptr ? t : *v;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply_once(a));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

bool operator==(const Substitution& a, const Substitution& b) { return a.bindings_ == b.bindings_; }

// ---------------------------------------------------------------------------
// Unification and matching

namespace {

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  if (t.ground()) return false;
  Term w = s.walk(t);
  if (w.is_var()) return w.name() == var;
  for (const Term& a : w.args()) {
    if (occurs(var, a, s)) return true;
  }
  return false;
}

}  // namespace

bool unify_into(const Term& a, const Term& b, Substitution& s, std::vector<std::string>* trail) {
  Term x = s.walk(a);
  Term y = s.walk(b);
  if (x.same_node(y)) return true;
  if (x.is_var() && y.is_var() && x.name() == y.name()) return true;
  if (x.is_var()) {
    if (occurs(x.name(), y, s)) return false;
    s.bind(x.name(), y);
    if (trail != nullptr) trail->push_back(x.name());
    return true;
  }
  if (y.is_var()) {
    if (occurs(y.name(), x, s)) return false;
    s.bind(y.name(), x);
    if (trail != nullptr) trail->push_back(y.name());
    return true;
  }
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Term::Kind::Int:
      return x.int_value() == y.int_value();
    case Term::Kind::Atom:
      return x.name() == y.name();
    case Term::Kind::Compound:
      if (x.name() != y.name() || x.arity() != y.arity()) return false;
      if (x.ground() && y.ground()) return x == y;
      for (std::size_t i = 0; i < x.arity(); ++i) {
        if (!unify_into(x.arg(i), y.arg(i), s, trail)) return false;
      }
      return true;
    case Term::Kind::Var:
      break;
  }
  return false;
}

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& under) {
  Substitution s = under;
  if (!unify_into(a, b, s)) return std::nullopt;
  return s;
}

bool match_into(const Term& pattern, const Term& subject, Substitution& theta, std::vector<std::string>* trail) {
  if (pattern.ground()) return pattern == subject;
  if (pattern.is_var()) {
    if (const Term* bound = theta.find(pattern.name())) return *bound == subject;
    theta.bind(pattern.name(), subject);
    if (trail != nullptr) trail->push_back(pattern.name());
    return true;
  }
  // Non-ground compound pattern.
  if (!subject.is_compound() || subject.arity() != pattern.arity() || subject.name() != pattern.name())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), theta, trail)) return false;
  }
  return true;
}

std::optional<Substitution> match(const Term& pattern, const Term& subject, const Substitution& under) {
  Substitution theta = under;
  if (!match_into(pattern, subject, theta)) return std::nullopt;
  return theta;
}

// ---------------------------------------------------------------------------
// Arithmetic and host built-ins

std::optional<std::int64_t> eval_ground(const Term& t) {
  if (t.is_int()) return t.int_value();
  if (!t.is_compound() || !t.ground()) return std::nullopt;
  if (t.arity() == 1 && t.name() == "-") {
    auto v = eval_ground(t.arg(0));
    if (!v) return std::nullopt;
    return -*v;
  }
  if (t.arity() != 2 || (t.name() != "+" && t.name() != "-")) return std::nullopt;
  auto l = eval_ground(t.arg(0));
  auto r = eval_ground(t.arg(1));
  if (!l || !r) return std::nullopt;
  return t.name() == "+" ? *l + *r : *l - *r;
}

Term fold_arith(const Term& t) {
  if (!t.has_arith()) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const Term& a : t.args()) args.push_back(fold_arith(a));
  Term rebuilt = Term::compound(t.name(), std::move(args));
  if (is_arith_functor(rebuilt.name(), rebuilt.arity())) {
    if (auto v = eval_ground(rebuilt)) return Term::integer(*v);
  }
  return rebuilt;
}

std::optional<std::vector<Term>> list_elements(const Term& t) {
  std::vector<Term> out;
  Term cur = t;
  while (cur.is_cons()) {
    out.push_back(cur.arg(0));
    cur = cur.arg(1);
  }
  if (!cur.is_nil()) return std::nullopt;
  return out;
}

std::optional<Term> merge3(const Term& l1, const Term& l2) {
  auto a = list_elements(l1);
  auto b = list_elements(l2);
  if (!a || !b) return std::nullopt;
  std::vector<Term> all = std::move(*a);
  all.insert(all.end(), b->begin(), b->end());
  std::sort(all.begin(), all.end(), TermLess{});
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return Term::list(all);
}

std::optional<Term> or3(const Term& b1, const Term& b2) {
  auto is_bit = [](const Term& t) { return t.is_int() && (t.int_value() == 0 || t.int_value() == 1); };
  if (!is_bit(b1) || !is_bit(b2)) return std::nullopt;
  return Term::integer((b1.int_value() == 1 || b2.int_value() == 1) ? 1 : 0);
}

}  // namespace chr

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

#include "chr/store.hpp"

namespace chr {

namespace {

bool is(const Term& t, std::string_view name, std::size_t arity) {
  return t.is_callable() && t.arity() == arity && t.name() == name;
}

}  // namespace

Term BuiltinStore::normalize(const Term& t) const { return fold_arith(bindings_.resolve(t)); }

void BuiltinStore::tell(const ConstraintAtom& c) {
  if (failed_) return;
  std::size_t before = bindings_.size();
  if (!run_builtin(c.term())) {
    failed_ = true;
    return;
  }
  // Wake residual constraints until nothing changes.
  while (!suspended_.empty() && bindings_.size() != before) {
    before = bindings_.size();
    std::vector<Term> pending;
    pending.swap(suspended_);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      bool ok = true;
      if (!try_residual(pending[i], ok)) {
        suspended_.push_back(pending[i]);
      } else if (!ok) {
        failed_ = true;
        suspended_.insert(suspended_.end(), pending.begin() + static_cast<std::ptrdiff_t>(i) + 1, pending.end());
        return;
      }
    }
  }
}

bool BuiltinStore::run_builtin(const Term& c) {
  if (is(c, "true", 0)) return true;
  if (is(c, "false", 0)) return false;
  if (is(c, "=", 2)) return unify_into(c.arg(0), c.arg(1), bindings_);
  if (is(c, "<", 2)) {
    Term l = normalize(c.arg(0));
    Term r = normalize(c.arg(1));
    if (!l.ground() || !r.ground())
      throw InstantiationError("instantiation error in " + to_string(Term::compound("<", {l, r})));
    auto lv = eval_ground(l);
    auto rv = eval_ground(r);
    return lv && rv && *lv < *rv;
  }
  if (is(c, "nonvar", 1)) {
    if (normalize(c.arg(0)).is_var()) throw InstantiationError("instantiation error in " + to_string(c));
    return true;
  }
  if (is(c, "or", 3) || is(c, "merge", 3)) {
    bool ok = true;
    if (!try_residual(c, ok)) suspended_.push_back(c);
    return ok;
  }
  throw std::invalid_argument("not a built-in constraint: " + to_string(c));
}

bool BuiltinStore::try_residual(const Term& c, bool& ok) {
  Term x = normalize(c.arg(0));
  Term y = normalize(c.arg(1));
  if (!x.ground() || !y.ground()) return false;
  std::optional<Term> r = c.name() == "or" ? or3(x, y) : merge3(x, y);
  ok = r.has_value() && unify_into(c.arg(2), *r, bindings_);
  return true;
}

BuiltinStore tell(BuiltinStore s, const ConstraintAtom& c) {
  s.tell(c);
  return s;
}

// ---------------------------------------------------------------------------
// Entailment

namespace {

class Asker {
 public:
  Asker(const BuiltinStore& store, const std::set<std::string>& locals) : store_(store), locals_(locals) {}

  AskVerdict check(const Term& g) {
    if (is(g, "true", 0)) return AskVerdict::Holds;
    if (is(g, "false", 0)) return AskVerdict::Fails;
    if (is(g, "=", 2)) {
      std::vector<std::string> trail;
      if (!unify_local(view(g.arg(0)), view(g.arg(1)), trail)) return AskVerdict::Fails;
      for (const auto& v : trail) {
        if (locals_.count(v) == 0) return AskVerdict::Unknown;
      }
      return AskVerdict::Holds;
    }
    if (is(g, "<", 2)) {
      auto l = eval_ground(view(g.arg(0)));
      auto r = eval_ground(view(g.arg(1)));
      if (!l || !r) return AskVerdict::Unknown;
      return *l < *r ? AskVerdict::Holds : AskVerdict::Fails;
    }
    if (is(g, "nonvar", 1)) return view(g.arg(0)).is_var() ? AskVerdict::Unknown : AskVerdict::Holds;
    // or/merge in a guard: decided only on ground inputs.
    if (is(g, "or", 3) || is(g, "merge", 3)) {
      Term x = view(g.arg(0));
      Term y = view(g.arg(1));
      if (!x.ground() || !y.ground()) return AskVerdict::Unknown;
      std::optional<Term> r = g.name() == "or" ? or3(x, y) : merge3(x, y);
      if (!r) return AskVerdict::Fails;
      return check(Term::compound("=", {g.arg(2), *r}));
    }
    return AskVerdict::Unknown;
  }

  Substitution local_bindings() const {
    Substitution out;
    for (const auto& [name, value] : overlay_) out.bind(name, overlay_.resolve(value));
    return out;
  }

 private:
  Term view(const Term& t) const { return fold_arith(overlay_.resolve(store_.normalize(t))); }

  // Unification that binds local variables in preference to store ones.
  bool unify_local(const Term& a, const Term& b, std::vector<std::string>& trail) {
    Term x = overlay_.walk(a);
    Term y = overlay_.walk(b);
    if (x.is_var() && y.is_var() && x.name() == y.name()) return true;
    if (y.is_var() && (!x.is_var() || (locals_.count(y.name()) != 0 && locals_.count(x.name()) == 0)))
      std::swap(x, y);
    if (x.is_var()) {
      if (occurs(x.name(), y)) return false;
      overlay_.bind(x.name(), y);
      trail.push_back(x.name());
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
        for (std::size_t i = 0; i < x.arity(); ++i) {
          if (!unify_local(x.arg(i), y.arg(i), trail)) return false;
        }
        return true;
      case Term::Kind::Var:
        break;
    }
    return false;
  }

  bool occurs(const std::string& var, const Term& t) const {
    if (t.ground()) return false;
    Term w = overlay_.walk(t);
    if (w.is_var()) return w.name() == var;
    for (const Term& a : w.args()) {
      if (occurs(var, a)) return true;
    }
    return false;
  }

  const BuiltinStore& store_;
  const std::set<std::string>& locals_;
  Substitution overlay_;
};

}  // namespace

AskResult ask(const BuiltinStore& s, const Atoms& guard, const std::set<std::string>& locals) {
  Asker asker(s, locals);
  AskResult out;
  out.verdict = AskVerdict::Holds;
  for (const auto& g : guard) {
    AskVerdict v = asker.check(g.term());
    if (v == AskVerdict::Fails) return AskResult{AskVerdict::Fails, {}};
    if (v == AskVerdict::Unknown) out.verdict = AskVerdict::Unknown;
  }
  if (out.verdict == AskVerdict::Holds) out.locals = asker.local_bindings();
  return out;
}

AskResult ask(const BuiltinStore& s, const Substitution& theta, const Atoms& guard) {
  const std::string prefix = "%";
  Substitution rename = theta;
  std::set<std::string> locals;
  for (const auto& g : guard) {
    for (const auto& v : term_vars(g.term())) {
      if (theta.contains(v)) continue;
      rename.bind(v, Term::var(prefix + v));
      locals.insert(prefix + v);
    }
  }
  Atoms instantiated;
  for (const auto& g : guard) instantiated.emplace_back(rename.apply_once(g.term()));
  AskResult r = ask(s, instantiated, locals);

  Substitution back;
  for (const auto& l : locals) back.bind(l, Term::var(l.substr(prefix.size())));
  Substitution renamed;
  for (const auto& [name, value] : r.locals) renamed.bind(name.substr(prefix.size()), back.apply_once(value));
  r.locals = std::move(renamed);
  return r;
}

}  // namespace chr

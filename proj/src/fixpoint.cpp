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

#include "chr/fixpoint.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>

#include "chr/store.hpp"

namespace chr {

CanonState CanonState::bottom() {
  CanonState s;
  s.consistent = false;
  return s;
}

std::size_t CanonStateHash::operator()(const CanonState& s) const {
  std::size_t h = s.consistent ? 0x9e3779b97f4a7c15ull : 0x51ed270b27c1a3bdull;
  for (const Term& t : s.atoms) h = (h ^ t.hash()) * 0x100000001b3ull;
  return h;
}

std::string to_string(const CanonState& s) {
  if (!s.consistent) return "false";
  if (s.atoms.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(s.atoms[i]);
  }
  return out;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member:
      return "MEMBER";
    case Membership::NonMember:
      return "NON-MEMBER";
    case Membership::NoInconsistencyWithinBound:
      return "NO-INCONSISTENCY-WITHIN-BOUND";
    case Membership::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

CanonState canonical(std::vector<Term> atoms, const Program& p, bool contraction) {
  CanonState s;
  std::sort(atoms.begin(), atoms.end(), TermLess{});
  if (contraction) {
    std::vector<Term> kept;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (i > 0 && atoms[i] == atoms[i - 1] && p.is_persistent(atoms[i])) continue;
      kept.push_back(atoms[i]);
    }
    atoms = std::move(kept);
    s.persistent_dedup = true;
  }
  s.atoms = std::move(atoms);
  return s;
}

namespace {

// Tells the built-ins, then resolves the user atoms. nullopt means ⊥.
std::optional<std::vector<Term>> settle(const std::vector<Term>& builtins, const std::vector<Term>& users) {
  BuiltinStore store;
  try {
    for (const Term& b : builtins) store.tell(ConstraintAtom(b));
  } catch (const InstantiationError& e) {
    throw GroundEnumerationError(std::string("abstract enumeration requires ground fragment: ") + e.what());
  }
  if (store.failed()) return std::nullopt;
  std::vector<Term> out;
  for (const Term& u : users) {
    Term t = store.normalize(u);
    if (!t.ground())
      throw GroundEnumerationError("abstract enumeration requires ground fragment: " + to_string(t));
    out.push_back(t);
  }
  return out;
}

}  // namespace

CanonState canonical_goal(const Atoms& goal, const Program& p, bool contraction) {
  std::vector<Term> builtins;
  std::vector<Term> users;
  for (const auto& a : goal) (a.is_builtin() ? builtins : users).push_back(a.term());
  auto atoms = settle(builtins, users);
  if (!atoms) return CanonState::bottom();
  return canonical(std::move(*atoms), p, contraction);
}

std::optional<std::size_t> GroundTransitionSystem::find(const CanonState& s) const {
  auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::size_t>> GroundTransitionSystem::successors() const {
  std::vector<std::vector<std::size_t>> out(states.size());
  for (const Edge& e : edges) out[e.from].push_back(e.to);
  return out;
}

std::vector<std::vector<std::size_t>> GroundTransitionSystem::predecessors() const {
  std::vector<std::vector<std::size_t>> out(states.size());
  for (const Edge& e : edges) out[e.to].push_back(e.from);
  return out;
}

namespace {

class Expander {
 public:
  Expander(const Program& p, bool contraction) : p_(p), contraction_(contraction) {}

  void expand(const CanonState& s, const std::function<void(const std::string&, CanonState)>& emit) {
    state_ = &s;
    emit_ = &emit;
    for (const Rule& r : p_.rules) {
      rule_ = &r;
      heads_.clear();
      for (const auto& h : r.kept) heads_.push_back(h.term());
      for (const auto& h : r.removed) heads_.push_back(h.term());
      kept_use_.assign(s.atoms.size(), 0);
      removed_use_.assign(s.atoms.size(), 0);
      chosen_.clear();
      Substitution theta;
      select(0, theta);
    }
  }

 private:
  void select(std::size_t j, Substitution& theta) {
    if (j == heads_.size()) {
      fire(theta);
      return;
    }
    bool is_kept = j < rule_->kept.size();
    const auto& atoms = state_->atoms;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (removed_use_[i] != 0) continue;
      if (kept_use_[i] != 0 && !(is_kept && contraction_ && p_.is_persistent(atoms[i]))) continue;
      // Equal copies with equal usage give the same successor.
      if (i > 0 && atoms[i] == atoms[i - 1] && kept_use_[i] == kept_use_[i - 1] &&
          removed_use_[i] == removed_use_[i - 1])
        continue;
      std::vector<std::string> trail;
      if (match_into(heads_[j], atoms[i], theta, &trail)) {
        (is_kept ? kept_use_ : removed_use_)[i]++;
        chosen_.push_back(i);
        select(j + 1, theta);
        chosen_.pop_back();
        (is_kept ? kept_use_ : removed_use_)[i]--;
      }
      for (const auto& v : trail) theta.erase(v);
    }
  }

  void fire(const Substitution& theta) {
    BuiltinStore empty;
    AskResult verdict = ask(empty, theta, rule_->guard);
    if (verdict.verdict != AskVerdict::Holds) return;
    Substitution sigma = theta;
    for (const auto& [name, value] : verdict.locals) sigma.bind(name, value);

    std::vector<Term> builtins;
    std::vector<Term> users;
    for (const auto& b : rule_->body) {
      Term t = fold_arith(sigma.apply_once(b.term()));
      (b.is_builtin() ? builtins : users).push_back(t);
    }
    auto body = settle(builtins, users);
    if (!body) {
      (*emit_)(rule_->name, CanonState::bottom());
      return;
    }
    std::vector<Term> next;
    for (std::size_t i = 0; i < state_->atoms.size(); ++i) {
      if (removed_use_[i] == 0) next.push_back(state_->atoms[i]);
    }
    next.insert(next.end(), body->begin(), body->end());
    (*emit_)(rule_->name, canonical(std::move(next), p_, contraction_));
  }

  const Program& p_;
  bool contraction_;
  const CanonState* state_ = nullptr;
  const std::function<void(const std::string&, CanonState)>* emit_ = nullptr;
  const Rule* rule_ = nullptr;
  std::vector<Term> heads_;
  std::vector<int> kept_use_;
  std::vector<int> removed_use_;
  std::vector<std::size_t> chosen_;
};

bool all_persistent(const CanonState& s, const Program& p) {
  return s.consistent && std::all_of(s.atoms.begin(), s.atoms.end(), [&](const Term& t) { return p.is_persistent(t); });
}

// Backward closure of `seed` along edges.
std::vector<bool> backward_closure(const GroundTransitionSystem& ts, std::vector<bool> in) {
  auto preds = ts.predecessors();
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) work.push_back(i);
  }
  while (!work.empty()) {
    std::size_t i = work.front();
    work.pop_front();
    for (std::size_t p : preds[i]) {
      if (!in[p]) {
        in[p] = true;
        work.push_back(p);
      }
    }
  }
  return in;
}

std::vector<bool> bottom_reachable(const GroundTransitionSystem& ts) {
  std::vector<bool> seed(ts.states.size(), false);
  for (std::size_t i = 0; i < ts.states.size(); ++i) seed[i] = !ts.states[i].consistent;
  return backward_closure(ts, std::move(seed));
}

}  // namespace

GroundTransitionSystem enumerate(const Program& p, const std::vector<CanonState>& roots, std::size_t bound,
                                 bool contraction) {
  GroundTransitionSystem ts;
  ts.bound = bound;
  std::deque<std::size_t> queue;
  auto add = [&](CanonState s) -> std::optional<std::size_t> {
    if (auto found = ts.find(s)) return found;
    if (ts.states.size() >= bound) {
      ts.truncated = true;
      return std::nullopt;
    }
    std::size_t i = ts.states.size();
    ts.purely_persistent.push_back(all_persistent(s, p));
    ts.index.emplace(s, i);
    ts.states.push_back(std::move(s));
    ts.expanded.push_back(false);
    queue.push_back(i);
    return i;
  };
  for (const CanonState& r : roots) {
    for (const Term& t : r.atoms) {
      if (!t.ground()) throw GroundEnumerationError("abstract enumeration requires ground fragment: " + to_string(t));
    }
    add(r);
  }

  Expander expander(p, contraction);
  std::set<std::tuple<std::size_t, std::string, std::size_t>> seen;
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    bool complete = true;
    if (ts.states[i].consistent) {
      CanonState current = ts.states[i];
      expander.expand(current, [&](const std::string& rule, CanonState next) {
        auto j = add(std::move(next));
        if (!j) {
          complete = false;
          return;
        }
        if (seen.emplace(i, rule, *j).second) ts.edges.push_back(Edge{i, rule, *j});
      });
    }
    ts.expanded[i] = complete;
  }
  return ts;
}

GroundTransitionSystem simplification_subsystem(const GroundTransitionSystem& ts, const Program& p) {
  GroundTransitionSystem out = ts;
  out.edges.clear();
  for (const Edge& e : ts.edges) {
    const Rule* r = p.find_rule(e.rule);
    if (r != nullptr && !r->is_propagation()) out.edges.push_back(e);
  }
  return out;
}

std::vector<bool> lfp_csr(const GroundTransitionSystem& ts) {
  if (ts.truncated) throw std::invalid_argument("least fixpoint needs a complete transition system");
  std::vector<bool> seed(ts.states.size(), false);
  for (std::size_t i = 0; i < ts.states.size(); ++i) seed[i] = ts.states[i].consistent && ts.states[i].atoms.empty();
  return backward_closure(ts, std::move(seed));
}

GfpResult gfp_cpr(const GroundTransitionSystem& ts) {
  GfpResult out;
  out.exact = !ts.truncated;
  std::vector<bool> bad = bottom_reachable(ts);
  out.member.resize(bad.size());
  for (std::size_t i = 0; i < bad.size(); ++i) out.member[i] = !bad[i];
  return out;
}

std::vector<bool> hybrid_nested(const GroundTransitionSystem& full, const GroundTransitionSystem& simpl) {
  if (full.truncated || simpl.truncated)
    throw std::invalid_argument("hybrid fixpoint needs a complete transition system");
  if (full.states.size() != simpl.states.size())
    throw std::invalid_argument("hybrid fixpoint needs systems over the same states");
  // Inner least fixpoint over simplification edges.
  std::vector<bool> seed(simpl.states.size(), false);
  for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = simpl.purely_persistent[i];
  std::vector<bool> member = backward_closure(simpl, std::move(seed));

  // Outer greatest fixpoint: drop states with a full successor outside.
  auto succ = full.successors();
  auto preds = full.predecessors();
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < member.size(); ++i) {
    if (!member[i]) work.push_back(i);
  }
  while (!work.empty()) {
    std::size_t j = work.front();
    work.pop_front();
    for (std::size_t i : preds[j]) {
      if (member[i]) {
        member[i] = false;
        work.push_back(i);
      }
    }
  }
  return member;
}

Membership lfp_membership(const GroundTransitionSystem& ts, const CanonState& root) {
  auto i = ts.find(root);
  if (!i) return Membership::Inconclusive;
  std::vector<bool> seed(ts.states.size(), false);
  for (std::size_t k = 0; k < ts.states.size(); ++k) seed[k] = ts.states[k].consistent && ts.states[k].atoms.empty();
  std::vector<bool> in = backward_closure(ts, std::move(seed));
  // A path to an answer is a witness even in a truncated system.
  if (in[*i]) return Membership::Member;
  return ts.truncated ? Membership::Inconclusive : Membership::NonMember;
}

Membership gfp_membership(const GroundTransitionSystem& ts, const CanonState& root) {
  auto i = ts.find(root);
  if (!i) return Membership::Inconclusive;
  GfpResult r = gfp_cpr(ts);
  if (!r.member[*i]) return Membership::NonMember;
  return r.exact ? Membership::Member : Membership::NoInconsistencyWithinBound;
}

Membership hybrid_membership(const GroundTransitionSystem& full, const Program& p, const CanonState& root) {
  auto i = full.find(root);
  if (!i || full.truncated) return Membership::Inconclusive;
  auto member = hybrid_nested(full, simplification_subsystem(full, p));
  return member[*i] ? Membership::Member : Membership::NonMember;
}

DataSufficiencyResult data_sufficient_bounded(const Program& p, const CanonState& root, std::size_t bound) {
  GroundTransitionSystem ts = enumerate(p, {root}, bound, true);
  GroundTransitionSystem simpl = simplification_subsystem(ts, p);
  // ⊥ is equivalent to a purely persistent state.
  std::vector<bool> seed(ts.states.size(), false);
  for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = ts.purely_persistent[i] || !ts.states[i].consistent;
  std::vector<bool> ok = backward_closure(simpl, std::move(seed));

  auto succ = simpl.successors();
  bool undetermined = false;
  for (std::size_t i = 0; i < ts.states.size(); ++i) {
    if (ok[i]) continue;
    // Conclusive only if every simplification successor was explored.
    std::vector<bool> visited(ts.states.size(), false);
    std::deque<std::size_t> work{i};
    visited[i] = true;
    bool closed = true;
    while (!work.empty() && closed) {
      std::size_t k = work.front();
      work.pop_front();
      if (!ts.expanded[k]) closed = false;
      for (std::size_t n : succ[k]) {
        if (!visited[n]) {
          visited[n] = true;
          work.push_back(n);
        }
      }
    }
    if (closed) return {DataSufficiency::Counterexample, ts.states[i]};
    undetermined = true;
  }
  return {undetermined ? DataSufficiency::Inconclusive : DataSufficiency::YesWithinBound, std::nullopt};
}

}  // namespace chr

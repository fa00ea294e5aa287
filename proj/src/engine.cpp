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

#include "chr/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace chr {

std::size_t TokenHash::operator()(const Token& t) const {
  std::size_t h = std::hash<std::string>{}(t.rule);
  for (ConstraintId id : t.ids) h = h * 1000003u ^ std::hash<ConstraintId>{}(id);
  return h;
}

const char* to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::Solve:
      return "solve";
    case TransitionKind::Introduce:
      return "introduce";
    case TransitionKind::Apply:
      return "apply";
  }
  return "?";
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Success:
      return "success";
    case RunStatus::Failed:
      return "failed";
    case RunStatus::Error:
      return "error";
    case RunStatus::StepLimit:
      return "step_limit";
  }
  return "?";
}

std::string format_trace_line(const TraceEntry& e) {
  std::ostringstream os;
  os << e.step << '\t' << to_string(e.kind) << '\t' << (e.rule.empty() ? "-" : e.rule) << '\t' << e.store_size
     << '\t' << e.token_count;
  return os.str();
}

namespace {

constexpr std::string_view kLocalPrefix = "%";

std::int64_t fresh_floor(const Atoms& goal) {
  std::int64_t next = 0;
  std::vector<std::string> vars;
  for (const auto& a : goal) collect_vars(a.term(), vars);
  for (const auto& v : vars) {
    if (v.size() > 2 && v.compare(0, 2, "_G") == 0 &&
        std::all_of(v.begin() + 2, v.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      next = std::max<std::int64_t>(next, std::stoll(v.substr(2)) + 1);
    }
  }
  return next;
}

std::string bucket_key(const Term& t) { return t.name() + "/" + std::to_string(t.arity()); }

// Per-rule data computed once per run.
struct CompiledRule {
  const Rule* rule = nullptr;
  std::size_t order = 0;
  std::vector<Term> heads;  // kept then removed
  std::vector<std::string> keys;
  // vars of each head argument
  std::vector<std::vector<std::vector<std::string>>> arg_vars;
  std::vector<std::string> locals;
  std::set<std::string> renamed_locals;
};

std::vector<CompiledRule> compile(const Program& p) {
  std::vector<CompiledRule> out;
  for (std::size_t i = 0; i < p.rules.size(); ++i) {
    const Rule& r = p.rules[i];
    CompiledRule c;
    c.rule = &r;
    c.order = i;
    for (const Atoms* part : {&r.kept, &r.removed}) {
      for (const auto& h : *part) {
        c.heads.push_back(h.term());
        c.keys.push_back(bucket_key(h.term()));
        std::vector<std::vector<std::string>> per_arg;
        for (const Term& a : h.term().args()) per_arg.push_back(term_vars(a));
        c.arg_vars.push_back(std::move(per_arg));
      }
    }
    c.locals = r.local_vars();
    for (const auto& l : c.locals) c.renamed_locals.insert(std::string(kLocalPrefix) + l);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CompiledRule& a, const CompiledRule& b) { return a.rule->priority < b.rule->priority; });
  return out;
}

// Mutable ω_p machine. The CHR store is kept in id order, which is also
// insertion order since ids only grow.
class Machine {
 public:
  Machine(const ConcreteState& s, const Program& p) : rules_(compile(p)) {
    goal_ = s.goal;
    builtins_ = s.builtins;
    tokens_ = s.tokens;
    globals_ = s.globals;
    next_id_ = s.next_id;
    next_fresh_ = s.next_fresh;
    for (const auto& c : s.chr_store) insert(c.id, c.atom.term());
  }

  ConcreteState state() const {
    ConcreteState s;
    s.goal = goal_;
    for (const auto& [id, t] : atoms_) s.chr_store.push_back({ConstraintAtom(t), id});
    s.builtins = builtins_;
    s.tokens = tokens_;
    s.globals = globals_;
    s.next_id = next_id_;
    s.next_fresh = next_fresh_;
    return s;
  }

  bool failed() const { return builtins_.failed(); }
  bool goal_empty() const { return goal_.empty(); }
  bool goal_front_builtin() const { return !goal_.empty() && goal_.front().is_builtin(); }
  std::size_t store_size() const { return atoms_.size(); }
  std::size_t token_count() const { return tokens_.size(); }

  void solve() {
    ConstraintAtom c = goal_.front();
    goal_.pop_front();
    std::size_t before = builtins_.bindings().size();
    builtins_.tell(c);
    if (!builtins_.failed() && builtins_.bindings().size() != before) renormalize();
  }

  ConstraintId introduce() {
    ConstraintAtom c = goal_.front();
    goal_.pop_front();
    ConstraintId id = next_id_++;
    insert(id, builtins_.normalize(c.term()));
    return id;
  }

  // Instances in priority, textual, id order. `visit` returns true to stop.
  // With `whole_level` the search continues through the first level that
  // has an instance.
  void search(const std::function<bool(RuleInstance&&)>& visit, bool whole_level) {
    std::optional<int> level;
    for (const CompiledRule& r : rules_) {
      if (level && r.rule->priority != *level) break;
      bool found = false;
      bool stop = false;
      Substitution theta;
      std::vector<ConstraintId> chosen;
      match_heads(r, 0, theta, chosen, [&](RuleInstance&& inst) {
        found = true;
        stop = visit(std::move(inst));
        return stop;
      });
      if (stop) return;
      if (found) {
        if (!whole_level) return;
        level = r.rule->priority;
      }
    }
  }

  std::optional<RuleInstance> first_instance() {
    std::optional<RuleInstance> out;
    search(
        [&](RuleInstance&& inst) {
          out = std::move(inst);
          return true;
        },
        false);
    return out;
  }

  void commit(const RuleInstance& inst) {
    const Rule& r = *inst.rule;
    for (ConstraintId id : inst.removed_ids) erase(id);
    tokens_.insert(inst.token);

    Substitution sigma = inst.theta;
    Substitution fresh;  // renamed local -> new variable
    for (const auto& l : r.local_vars()) {
      std::string renamed = std::string(kLocalPrefix) + l;
      if (!inst.guard_bindings.contains(renamed)) fresh.bind(renamed, Term::var("_G" + std::to_string(next_fresh_++)));
    }
    for (const auto& l : r.local_vars()) {
      std::string renamed = std::string(kLocalPrefix) + l;
      if (const Term* v = inst.guard_bindings.find(renamed)) {
        sigma.bind(l, fresh.apply_once(*v));
      } else {
        sigma.bind(l, *fresh.find(renamed));
      }
    }
    for (const auto& b : r.body) goal_.emplace_back(fold_arith(sigma.apply_once(b.term())));
  }

  std::vector<ConstraintId> ids_of_store() const {
    std::vector<ConstraintId> out;
    for (const auto& [id, t] : atoms_) out.push_back(id);
    return out;
  }

 private:
  using IdSet = std::set<ConstraintId>;
  using ArgIndex = std::unordered_map<std::size_t, IdSet>;

  void insert(ConstraintId id, const Term& t) {
    atoms_.emplace(id, t);
    std::string key = bucket_key(t);
    buckets_[key].insert(id);
    if (!t.ground()) nonground_.insert(id);
    auto it = arg_index_.find(key);
    if (it != arg_index_.end()) {
      for (auto& [pos, idx] : it->second) idx[t.arg(pos).hash()].insert(id);
    }
  }

  void erase(ConstraintId id) {
    auto at = atoms_.find(id);
    if (at == atoms_.end()) return;
    const Term t = at->second;
    std::string key = bucket_key(t);
    buckets_[key].erase(id);
    nonground_.erase(id);
    auto it = arg_index_.find(key);
    if (it != arg_index_.end()) {
      for (auto& [pos, idx] : it->second) {
        auto slot = idx.find(t.arg(pos).hash());
        if (slot != idx.end()) {
          slot->second.erase(id);
          if (slot->second.empty()) idx.erase(slot);
        }
      }
    }
    atoms_.erase(at);
  }

  // Rewrites stored atoms that mention newly bound variables.
  void renormalize() {
    std::vector<std::pair<ConstraintId, Term>> changed;
    for (ConstraintId id : nonground_) {
      const Term& old = atoms_.at(id);
      Term now = builtins_.normalize(old);
      if (!(now == old)) changed.emplace_back(id, now);
    }
    for (auto& [id, t] : changed) {
      erase(id);
      insert(id, t);
    }
  }

  const ArgIndex& index_for(const std::string& key, std::size_t pos) {
    auto& per_key = arg_index_[key];
    auto it = per_key.find(pos);
    if (it != per_key.end()) return it->second;
    ArgIndex& idx = per_key[pos];
    for (ConstraintId id : buckets_[key]) idx[atoms_.at(id).arg(pos).hash()].insert(id);
    return idx;
  }

  bool match_heads(const CompiledRule& r, std::size_t j, Substitution& theta, std::vector<ConstraintId>& chosen,
                   const std::function<bool(RuleInstance&&)>& visit) {
    if (j == r.heads.size()) return finish(r, theta, chosen, visit);
    const Term& pattern = r.heads[j];
    auto bucket = buckets_.find(r.keys[j]);
    if (bucket == buckets_.end() || bucket->second.empty()) return false;

    const IdSet* candidates = &bucket->second;
    static const IdSet kEmpty;
    for (std::size_t pos = 0; pos < pattern.arity(); ++pos) {
      const auto& vars = r.arg_vars[j][pos];
      if (!std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return theta.contains(v); })) continue;
      if (vars.empty() && !pattern.arg(pos).ground()) continue;
      const ArgIndex& idx = index_for(r.keys[j], pos);
      auto slot = idx.find(theta.apply_once(pattern.arg(pos)).hash());
      candidates = slot == idx.end() ? &kEmpty : &slot->second;
      break;
    }

    // Copy: a visit may not mutate, but the index can rehash when built.
    std::vector<ConstraintId> ids(candidates->begin(), candidates->end());
    std::vector<std::string> trail;
    for (ConstraintId id : ids) {
      if (std::find(chosen.begin(), chosen.end(), id) != chosen.end()) continue;
      trail.clear();
      if (match_into(pattern, atoms_.at(id), theta, &trail)) {
        chosen.push_back(id);
        bool stop = match_heads(r, j + 1, theta, chosen, visit);
        chosen.pop_back();
        if (stop) return true;
      }
      for (const auto& v : trail) theta.erase(v);
    }
    return false;
  }

  bool finish(const CompiledRule& r, const Substitution& theta, const std::vector<ConstraintId>& chosen,
              const std::function<bool(RuleInstance&&)>& visit) {
    Token token{r.rule->name, chosen};
    if (tokens_.count(token) != 0) return false;

    AskResult verdict{AskVerdict::Holds, {}};
    if (!r.rule->guard.empty()) {
      Substitution rename = theta;
      for (const auto& l : r.locals) rename.bind(l, Term::var(std::string(kLocalPrefix) + l));
      Atoms guard;
      for (const auto& g : r.rule->guard) guard.emplace_back(rename.apply_once(g.term()));
      verdict = ask(builtins_, guard, r.renamed_locals);
    }
    if (verdict.verdict != AskVerdict::Holds) return false;

    RuleInstance inst;
    inst.rule = r.rule;
    inst.theta = theta;
    std::size_t nk = r.rule->kept.size();
    inst.kept_ids.assign(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(nk));
    inst.removed_ids.assign(chosen.begin() + static_cast<std::ptrdiff_t>(nk), chosen.end());
    inst.token = std::move(token);
    inst.guard_bindings = std::move(verdict.locals);
    return visit(std::move(inst));
  }

  std::vector<CompiledRule> rules_;
  std::deque<ConstraintAtom> goal_;
  std::map<ConstraintId, Term> atoms_;
  BuiltinStore builtins_;
  std::unordered_set<Token, TokenHash> tokens_;
  std::vector<std::string> globals_;
  ConstraintId next_id_ = 0;
  std::int64_t next_fresh_ = 0;

  std::unordered_map<std::string, IdSet> buckets_;
  std::unordered_map<std::string, std::map<std::size_t, ArgIndex>> arg_index_;
  IdSet nonground_;
};

}  // namespace

ConcreteState initial_state(const Query& query) {
  ConcreteState s;
  s.goal.assign(query.goal.begin(), query.goal.end());
  s.globals = query.globals;
  s.next_fresh = fresh_floor(query.goal);
  return s;
}

std::optional<ConcreteState> solve_step(const ConcreteState& s) {
  if (s.goal.empty() || !s.goal.front().is_builtin()) return std::nullopt;
  ConcreteState out = s;
  ConstraintAtom c = out.goal.front();
  out.goal.pop_front();
  out.builtins.tell(c);
  for (auto& ic : out.chr_store) ic.atom = ConstraintAtom(out.builtins.normalize(ic.atom.term()));
  return out;
}

std::optional<ConcreteState> introduce_step(const ConcreteState& s) {
  if (s.goal.empty() || s.goal.front().is_builtin()) return std::nullopt;
  ConcreteState out = s;
  ConstraintAtom c = out.goal.front();
  out.goal.pop_front();
  out.chr_store.push_back({ConstraintAtom(out.builtins.normalize(c.term())), out.next_id++});
  return out;
}

std::vector<RuleInstance> applicable_instances(const ConcreteState& s, const Program& p) {
  std::vector<RuleInstance> out;
  if (!s.goal.empty()) return out;
  Machine m(s, p);
  m.search(
      [&](RuleInstance&& inst) {
        out.push_back(std::move(inst));
        return false;
      },
      true);
  return out;
}

std::optional<ConcreteState> apply_step(const ConcreteState& s, const Program& p) {
  if (!s.goal.empty()) return std::nullopt;
  Machine m(s, p);
  auto inst = m.first_instance();
  if (!inst) return std::nullopt;
  m.commit(*inst);
  return m.state();
}

DerivationResult run(const Query& query, const Program& p, const RunOptions& options) {
  return run_from(initial_state(query), p, options);
}

DerivationResult run_from(ConcreteState state, const Program& p, const RunOptions& options) {
  if (options.step_limit <= 0) throw std::invalid_argument("step limit must be positive");
  DerivationResult result;
  Machine m(state, p);
  std::int64_t steps = 0;

  auto record = [&](TransitionKind kind, std::string rule, std::vector<ConstraintId> ids,
                    std::optional<ConcreteState> before) {
    ++steps;
    if (!options.trace && options.trace_stream == nullptr) return;
    TraceEntry e{steps, kind, std::move(rule), m.store_size(), m.token_count(), std::move(ids), std::move(before)};
    if (options.trace_stream != nullptr) *options.trace_stream << format_trace_line(e) << '\n';
    if (options.trace) result.trace.push_back(std::move(e));
  };
  auto snapshot = [&]() -> std::optional<ConcreteState> {
    if (options.trace && options.snapshots) return m.state();
    return std::nullopt;
  };

  try {
    while (true) {
      if (m.failed()) {
        result.status = RunStatus::Failed;
        break;
      }
      if (options.validate && steps > 0) {
        auto problems = validate_state(m.state());
        if (!problems.empty()) {
          result.status = RunStatus::Error;
          result.message = problems.front();
          break;
        }
      }
      if (!m.goal_empty()) {
        if (steps >= options.step_limit) {
          result.status = RunStatus::StepLimit;
          break;
        }
        auto before = snapshot();
        if (m.goal_front_builtin()) {
          m.solve();
          record(TransitionKind::Solve, "", {}, std::move(before));
        } else {
          ConstraintId id = m.introduce();
          record(TransitionKind::Introduce, "", {id}, std::move(before));
        }
        continue;
      }
      auto inst = m.first_instance();
      if (!inst) {
        result.status = RunStatus::Success;
        break;
      }
      if (steps >= options.step_limit) {
        result.status = RunStatus::StepLimit;
        break;
      }
      auto before = snapshot();
      m.commit(*inst);
      record(TransitionKind::Apply, inst->rule->name, inst->token.ids, std::move(before));
    }
  } catch (const InstantiationError& e) {
    result.status = RunStatus::Error;
    result.message = e.what();
  }
  result.steps = steps;
  result.final = m.state();
  return result;
}

std::vector<std::string> validate_state(const ConcreteState& s) {
  std::vector<std::string> out;
  std::set<ConstraintId> seen;
  for (const auto& c : s.chr_store) {
    if (!seen.insert(c.id).second) out.push_back("duplicate id " + std::to_string(c.id));
    if (c.id < 0 || c.id >= s.next_id) out.push_back("id " + std::to_string(c.id) + " not below next_id");
    if (!c.atom.is_user()) out.push_back("built-in in CHR store: " + to_string(c.atom));
  }
  for (const auto& t : s.tokens) {
    std::set<ConstraintId> in_token;
    for (ConstraintId id : t.ids) {
      if (id < 0 || id >= s.next_id) out.push_back("token of " + t.rule + " names unallocated id");
      if (!in_token.insert(id).second) out.push_back("token of " + t.rule + " repeats an id");
    }
  }
  return out;
}

std::string render_final(const ConcreteState& s) {
  std::ostringstream os;
  for (const auto& g : s.globals) {
    Term v = s.builtins.normalize(Term::var(g));
    if (v.is_var() && v.name() == g) continue;
    os << g << " = " << to_string(v) << '\n';
  }
  std::vector<Term> atoms;
  for (const auto& c : s.chr_store) atoms.push_back(s.builtins.normalize(c.atom.term()));
  std::sort(atoms.begin(), atoms.end(), TermLess{});
  for (const auto& a : atoms) os << to_string(a) << '\n';
  return os.str();
}

}  // namespace chr

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

#include "chr/hybrid.hpp"

#include <set>
#include <stdexcept>

namespace chr {

namespace {

// Rule text with the name dropped and variables numbered by first
// occurrence, so that variants compare equal.
std::string variant_key(const Rule& r) {
  std::vector<std::string> vars;
  for (const Atoms* part : {&r.kept, &r.removed, &r.guard, &r.body}) {
    for (const auto& a : *part) collect_vars(a.term(), vars);
  }
  Substitution rename;
  for (std::size_t i = 0; i < vars.size(); ++i) rename.bind(vars[i], Term::var("V" + std::to_string(i)));
  Rule copy = r;
  copy.name = "r";
  for (Atoms* part : {&copy.kept, &copy.removed, &copy.guard, &copy.body}) {
    for (auto& a : *part) a = ConstraintAtom(rename.apply_once(a.term()));
  }
  return to_string(copy);
}

std::string unused_name(const std::string& base, const std::set<std::string>& taken) {
  for (int k = 1;; ++k) {
    std::string name = base + "_s" + std::to_string(k);
    if (taken.count(name) == 0) return name;
  }
}

std::string fresh_var(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  while (taken.count(name) != 0) name += "_";
  taken.insert(name);
  return name;
}

}  // namespace

ControlFamily choose_family(const Program& p) {
  std::set<std::string> names;
  for (const Symbol& s : user_symbols(p)) names.insert(s.name);
  for (int k = 0;; ++k) {
    std::string suffix = k == 0 ? "" : (k == 1 ? "_h" : "_h" + std::to_string(k - 1));
    ControlFamily f{"f" + suffix, "a" + suffix, "c_f" + suffix, "c_a" + suffix};
    if (names.count(f.wrap) == 0 && names.count(f.alive) == 0 && names.count(f.next_stamp) == 0 &&
        names.count(f.next_alive) == 0)
      return f;
  }
}

Program step1_saturate(const Program& p, std::map<std::string, Provenance>* provenance) {
  Program out = p;
  std::set<std::string> names;
  std::set<std::string> seen;
  std::map<std::string, Provenance> prov;
  for (Rule& r : out.rules) {
    r.priority = r.is_propagation() ? kPropagationPriority : kSimplificationPriority;
    names.insert(r.name);
    seen.insert(variant_key(r));
    prov[r.name] = Provenance{r.name, {r.name}};
  }

  for (std::size_t i = 0; i < out.rules.size(); ++i) {
    const Rule r = out.rules[i];
    for (std::size_t c = 0; c < r.kept.size(); ++c) {
      for (std::size_t d = c + 1; d < r.kept.size(); ++d) {
        const Term& tc = r.kept[c].term();
        const Term& td = r.kept[d].term();
        if (!out.is_persistent(tc) || !out.is_persistent(td)) continue;
        if (symbol_of(tc) != symbol_of(td) || !unify(tc, td)) continue;

        Rule derived = r;
        derived.kept.erase(derived.kept.begin() + static_cast<std::ptrdiff_t>(d));
        Atoms guard;
        for (std::size_t k = 0; k < tc.arity(); ++k) {
          if (tc.arg(k) == td.arg(k)) continue;
          guard.emplace_back(Term::compound("=", {tc.arg(k), td.arg(k)}));
        }
        guard.insert(guard.end(), r.guard.begin(), r.guard.end());
        derived.guard = std::move(guard);
        if (!seen.insert(variant_key(derived)).second) continue;

        derived.name = unused_name(r.name, names);
        names.insert(derived.name);
        Provenance pr = prov[r.name];
        pr.chain.push_back(derived.name);
        prov[derived.name] = std::move(pr);
        out.rules.push_back(std::move(derived));
      }
    }
  }
  if (provenance != nullptr) *provenance = std::move(prov);
  return out;
}

Program step2_wrap(const Program& p, const ControlFamily& family) {
  Program out = p;
  for (Rule& r : out.rules) {
    std::vector<std::string> used = r.head_vars();
    for (const auto& v : r.local_vars()) used.push_back(v);
    std::set<std::string> taken(used.begin(), used.end());
    int stamp = 0;
    for (auto& k : r.kept) {
      if (!out.is_persistent(k.term())) continue;
      Term x = Term::var(fresh_var("Stamp" + std::to_string(++stamp), taken));
      k = ConstraintAtom(Term::compound(family.alive, {x, k.term()}));
    }
    for (auto& b : r.body) {
      if (b.is_user() && out.is_persistent(b.term())) b = ConstraintAtom(Term::compound(family.wrap, {b.term()}));
    }
  }
  return out;
}

TranslatedProgram step3_control(const Program& p, const ControlFamily& family) {
  for (const char* reserved : {"stamp", "set", "unfreeze"}) {
    if (p.find_rule(reserved) != nullptr)
      throw std::invalid_argument(std::string("rule name '") + reserved + "' is used by the translation");
  }
  const std::string& f = family.wrap;
  const std::string& a = family.alive;
  const std::string text =                                                                           //
      "1 :: stamp @ " + f + "(X), " + family.next_stamp + "(Y) <=> " + f + "(Y, X), " + family.next_stamp +
      "(Y+1).\n"
      "2 :: set @ " + a + "(Y, X) \\ " + a + "(Z, X) <=> Y < Z | true.\n"
      "5 :: unfreeze @ " + f + "(Y, X), " + family.next_alive + "(Y) <=> " + a + "(Y, X), " + family.next_alive +
      "(Y+1).\n";
  Program control = parse_program(text);

  TranslatedProgram out;
  out.program = p;
  out.family = family;
  for (Rule& r : out.program.rules) r.priority = r.is_propagation() ? kPropagationPriority : kSimplificationPriority;
  for (Rule& r : control.rules) {
    out.provenance[r.name] = Provenance{r.name, {r.name}};
    out.program.rules.push_back(std::move(r));
  }
  return out;
}

TranslatedProgram translate(const Program& p, const TranslateOptions& options) {
  if (options.require_hybrid) {
    auto violations = validate_hybrid(p);
    if (!violations.empty())
      throw std::invalid_argument("not a hybrid program: rule '" + violations.front().rule + "': " +
                                  violations.front().reason);
  }
  ControlFamily family = choose_family(p);
  std::map<std::string, Provenance> provenance;
  Program saturated = step1_saturate(p, &provenance);
  TranslatedProgram out = step3_control(step2_wrap(saturated, family), family);
  for (auto& [name, pr] : provenance) out.provenance[name] = pr;
  return out;
}

Query translate_state(const Query& q, const Program& source, const ControlFamily& family) {
  Query out;
  out.globals = q.globals;
  for (const auto& a : q.goal) {
    if (a.is_user() && source.is_persistent(a.term())) {
      out.goal.emplace_back(Term::compound(family.wrap, {a.term()}));
    } else {
      out.goal.push_back(a);
    }
  }
  out.goal.emplace_back(Term::compound(family.next_stamp, {Term::integer(0)}));
  out.goal.emplace_back(Term::compound(family.next_alive, {Term::integer(0)}));
  return out;
}

}  // namespace chr

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

#include "chr/lang.hpp"

#include <algorithm>

namespace chr {

Symbol symbol_of(const Term& atom) { return Symbol{atom.name(), atom.arity()}; }

bool is_builtin_symbol(std::string_view name, std::size_t arity) {
  switch (arity) {
    case 0:
      return name == "true" || name == "false";
    case 1:
      return name == "nonvar";
    case 2:
      return name == "=" || name == "<";
    case 3:
      return name == "or" || name == "merge";
    default:
      return false;
  }
}

ConstraintAtom::ConstraintAtom(Term term)
    : term_(std::move(term)),
      kind_(is_builtin_symbol(term_.name(), term_.arity()) && term_.is_callable() ? AtomKind::Builtin
                                                                                   : AtomKind::User) {}

std::vector<std::string> Rule::head_vars() const {
  std::vector<std::string> out;
  for (const auto& a : kept) collect_vars(a.term(), out);
  for (const auto& a : removed) collect_vars(a.term(), out);
  return out;
}

std::vector<std::string> Rule::local_vars() const {
  std::vector<std::string> head = head_vars();
  std::vector<std::string> all;
  for (const auto& a : guard) collect_vars(a.term(), all);
  for (const auto& a : body) collect_vars(a.term(), all);
  std::vector<std::string> out;
  for (auto& v : all) {
    if (std::find(head.begin(), head.end(), v) == head.end()) out.push_back(v);
  }
  return out;
}

const Rule* Program::find_rule(std::string_view name) const {
  for (const Rule& r : rules) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::vector<Violation> validate_hybrid(const Program& program) {
  std::vector<Violation> out;
  for (const Rule& r : program.rules) {
    for (const auto& a : r.kept) {
      if (!program.is_persistent(a.term()))
        out.push_back({r.name, "kept head constraint " + to_string(a) + " is linear"});
    }
    for (const auto& a : r.removed) {
      if (program.is_persistent(a.term()))
        out.push_back({r.name, "removed head constraint " + to_string(a) + " is persistent"});
    }
  }
  return out;
}

const std::set<Symbol>& reserved_symbols() {
  static const std::set<Symbol> reserved = {{"f", 1}, {"f", 2}, {"a", 2}, {"c_f", 1}, {"c_a", 1}};
  return reserved;
}

std::set<Symbol> user_symbols(const Program& program) {
  std::set<Symbol> out;
  for (const Rule& r : program.rules) {
    for (const Atoms* part : {&r.kept, &r.removed, &r.body}) {
      for (const auto& a : *part) {
        if (a.is_user()) out.insert(a.symbol());
      }
    }
  }
  out.insert(program.persistent_symbols.begin(), program.persistent_symbols.end());
  out.insert(program.linear_symbols.begin(), program.linear_symbols.end());
  return out;
}

std::set<Symbol> reserved_symbols_used(const Program& program) {
  std::set<Symbol> out;
  for (const Symbol& s : user_symbols(program)) {
    if (reserved_symbols().count(s) != 0) out.insert(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Logical reading

namespace {

std::vector<std::string> non_trivial(const Atoms& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) {
    if (a.is_builtin() && a.functor() == "true") continue;
    out.push_back(to_string(a));
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string conjunction(const std::vector<std::string>& items) {
  if (items.empty()) return "true";
  if (items.size() == 1) return items.front();
  return "(" + join(items, " ∧ ") + ")";
}

}  // namespace

std::string rule_reading(const Rule& rule) {
  std::vector<std::string> antecedent = non_trivial(rule.kept);
  for (auto& g : non_trivial(rule.guard)) antecedent.push_back(g);

  std::vector<std::string> rhs_items = non_trivial(rule.guard);
  for (auto& b : non_trivial(rule.body)) rhs_items.push_back(b);
  std::vector<std::string> locals = rule.local_vars();
  std::string rhs = locals.empty() ? conjunction(rhs_items)
                                   : "∃" + join(locals, ",") + "(" +
                                         (rhs_items.empty() ? "true" : join(rhs_items, " ∧ ")) + ")";

  std::string core;
  if (rule.is_propagation()) {
    core = rhs;
  } else {
    core = conjunction(non_trivial(rule.removed)) + " ↔ " + rhs;
    if (!antecedent.empty()) core = "(" + core + ")";
  }
  if (antecedent.empty()) return "∀(" + core + ")";
  return "∀(" + conjunction(antecedent) + " → " + core + ")";
}

std::string state_reading(const Query& query) {
  std::vector<std::string> vars;
  for (const auto& a : query.goal) collect_vars(a.term(), vars);
  std::vector<std::string> hidden;
  for (auto& v : vars) {
    if (std::find(query.globals.begin(), query.globals.end(), v) == query.globals.end()) hidden.push_back(v);
  }
  std::vector<std::string> items = non_trivial(query.goal);
  if (hidden.empty()) return conjunction(items);
  return "∃" + join(hidden, ",") + "(" + (items.empty() ? "true" : join(items, " ∧ ")) + ")";
}

std::string logical_reading(const Program& program) {
  std::string out;
  for (const Rule& r : program.rules) out += rule_reading(r) + "\n";
  out += "state ⟨C | E | X⟩: ∃-X(C ∧ E)\n";
  return out;
}

// ---------------------------------------------------------------------------
// Scalar product

Atoms scalar_goal(const Atoms& goal, int n) {
  if (n < 1) throw std::invalid_argument("scalar factor must be positive");
  Atoms out;
  for (const auto& a : goal) {
    int copies = a.is_user() ? n : 1;
    for (int k = 0; k < copies; ++k) out.push_back(a);
  }
  return out;
}

Program scalar_program(const Program& program, int n) {
  if (n < 1) throw std::invalid_argument("scalar factor must be positive");
  Program out = program;
  for (Rule& r : out.rules) {
    if (!r.is_propagation())
      throw std::invalid_argument("scalar product needs a propagation-only program, rule '" + r.name +
                                  "' is a simplification");
    r.body = scalar_goal(r.body, n);
    r.name += "_x" + std::to_string(n);
  }
  return out;
}

}  // namespace chr

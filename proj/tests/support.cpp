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

#include "support.hpp"

#include <algorithm>

namespace chr::testing {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1))];
}

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

Term leaf(Rng& rng, bool ground) {
  switch (uniform(rng, 0, ground ? 2 : 3)) {
    case 0:
      return Term::integer(uniform(rng, -2, 3));
    case 1:
      return Term::atom(pick(rng, std::vector<std::string>{"a", "b", "c", "hello world", "Big", "[]"}));
    case 2:
      return Term::nil();
    default:
      return Term::var(pick(rng, std::vector<std::string>{"X", "Y", "Z"}));
  }
}

Term gen_term(Rng& rng, int depth, bool ground) {
  if (depth <= 0 || coin(rng, 0.35)) return leaf(rng, ground);
  switch (uniform(rng, 0, 5)) {
    case 0:
      return Term::compound("f", {gen_term(rng, depth - 1, ground)});
    case 1:
      return Term::compound("g", {gen_term(rng, depth - 1, ground), gen_term(rng, depth - 1, ground)});
    case 2:
      return Term::compound("h", {gen_term(rng, depth - 1, ground), gen_term(rng, depth - 1, ground),
                                  gen_term(rng, depth - 1, ground)});
    case 3: {
      std::vector<Term> items;
      for (int i = uniform(rng, 0, 3); i > 0; --i) items.push_back(gen_term(rng, depth - 1, ground));
      return Term::list(items);
    }
    case 4:
      return Term::tuple({gen_term(rng, depth - 1, ground), gen_term(rng, depth - 1, ground)});
    default:
      return Term::compound(coin(rng) ? "+" : "-", {gen_term(rng, depth - 1, ground), gen_term(rng, depth - 1, ground)});
  }
}

}  // namespace

Term random_term(Rng& rng, int depth) { return gen_term(rng, depth, false); }
Term random_ground_term(Rng& rng, int depth) { return gen_term(rng, depth, true); }

Atoms parse_atoms(const std::string& text) { return parse_query(text).goal; }

// ---------------------------------------------------------------------------

Program random_program(Rng& rng) {
  std::string text;
  if (coin(rng)) text += ":- persistent p/1.\n";
  if (coin(rng)) text += ":- linear q/2.\n";
  if (coin(rng)) text += ":- persistent (~)/2.\n";
  auto user_atom = [&]() {
    switch (uniform(rng, 0, 4)) {
      case 0:
        return "p(" + to_string(random_term(rng, 2)) + ")";
      case 1:
        return "q(" + to_string(random_term(rng, 1)) + ", " + to_string(random_term(rng, 2)) + ")";
      case 2:
        return std::string("s");
      case 3:
        return to_string(random_term(rng, 1)) + " ~ " + to_string(random_term(rng, 1));
      default:
        return "t(" + to_string(random_term(rng, 2)) + ")";
    }
  };
  auto builtin = [&](bool guard) {
    switch (uniform(rng, 0, guard ? 5 : 4)) {
      case 0:
        return "X = " + to_string(random_term(rng, 2));
      case 1:
        return std::string("Y < Z + 1");
      case 2:
        return std::string("true");
      case 3:
        return std::string("or(X, 1, Z)");
      case 4:
        return std::string("merge([a], Y, Z)");
      default:
        return std::string("nonvar(X)");
    }
  };
  int rules = uniform(rng, 1, 4);
  for (int i = 0; i < rules; ++i) {
    std::vector<std::string> kept;
    std::vector<std::string> removed;
    for (int k = uniform(rng, 0, 2); k > 0; --k) kept.push_back(user_atom());
    for (int k = uniform(rng, kept.empty() ? 1 : 0, 2); k > 0; --k) removed.push_back(user_atom());
    std::string rule;
    if (coin(rng, 0.8)) rule += "r" + std::to_string(i) + " @ ";
    if (coin(rng)) rule += std::to_string(uniform(rng, 1, 6)) + " :: ";
    if (removed.empty()) {
      rule += join(kept, ", ") + " ==> ";
    } else if (kept.empty()) {
      rule += join(removed, ", ") + " <=> ";
    } else {
      rule += join(kept, ", ") + " \\ " + join(removed, ", ") + " <=> ";
    }
    std::vector<std::string> guard;
    for (int k = uniform(rng, 0, 2); k > 0; --k) guard.push_back(builtin(true));
    if (!guard.empty()) rule += join(guard, ", ") + " | ";
    std::vector<std::string> body;
    for (int k = uniform(rng, 1, 3); k > 0; --k) body.push_back(coin(rng) ? user_atom() : builtin(false));
    rule += join(body, ", ") + ".\n";
    text += rule;
  }
  return parse_program(text);
}

// ---------------------------------------------------------------------------

HornCase random_horn_case(Rng& rng) {
  const std::vector<std::string> props = {"p", "q", "r"};
  std::string text;
  int max_head = 1;
  for (int i = uniform(rng, 1, 3); i > 0; --i) {
    std::vector<std::string> head;
    for (int k = uniform(rng, 1, 2); k > 0; --k) head.push_back(pick(rng, props));
    max_head = std::max<int>(max_head, static_cast<int>(head.size()));
    std::vector<std::string> body;
    for (int k = uniform(rng, 1, 2); k > 0; --k) body.push_back(coin(rng, 0.2) ? "false" : pick(rng, props));
    text += "h" + std::to_string(i) + " @ " + join(head, ", ") + " ==> " + join(body, ", ") + ".\n";
  }
  HornCase c;
  c.program = parse_program(text);
  c.n = max_head + 1;
  for (int k = uniform(rng, 1, 4); k > 0; --k) c.root.push_back(pick(rng, props));
  return c;
}

bool horn_consistent(const Program& p, const std::vector<std::string>& root) {
  std::set<std::string> facts(root.begin(), root.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : p.rules) {
      bool fires = std::all_of(r.kept.begin(), r.kept.end(), [&](const auto& a) { return facts.count(a.functor()); });
      if (!fires) continue;
      for (const auto& b : r.body) {
        if (b.is_builtin() && b.functor() == "true") continue;
        if (facts.insert(b.functor()).second) changed = true;
      }
    }
  }
  return facts.count("false") == 0;
}

// ---------------------------------------------------------------------------

Program random_hybrid_program(Rng& rng) {
  const std::vector<std::string> persistent = {"p", "q", "s(a)", "s(b)"};
  std::string text =
      ":- persistent p/0.\n:- persistent q/0.\n:- persistent s/1.\n"
      ":- linear l1/0.\n:- linear l2/0.\n:- linear l3/0.\n";
  for (int i = 1; i <= 3; ++i) {
    std::string rule = "simp" + std::to_string(i) + " @ ";
    int kept = uniform(rng, 0, 3);
    if (kept == 1) rule += "p \\ ";
    if (kept == 2) rule += "q \\ ";
    rule += "l" + std::to_string(i) + " <=> ";
    std::vector<std::string> body;
    if (i > 1 && coin(rng, 0.6)) body.push_back("l" + std::to_string(uniform(rng, 1, i - 1)));
    for (int k = uniform(rng, 0, 2); k > 0; --k) body.push_back(pick(rng, persistent));
    if (coin(rng, 0.15)) body.push_back("false");
    if (body.empty()) body.push_back("true");
    text += rule + join(body, ", ") + ".\n";
  }
  for (int k = uniform(rng, 0, 2); k > 0; --k) {
    std::vector<std::string> head;
    std::set<std::string> vars;
    for (int h = uniform(rng, 1, 2); h > 0; --h) {
      switch (uniform(rng, 0, 3)) {
        case 0:
          head.push_back("p");
          break;
        case 1:
          head.push_back("q");
          break;
        case 2:
          head.push_back("s(X)");
          vars.insert("X");
          break;
        default:
          head.push_back("s(Y)");
          vars.insert("Y");
          break;
      }
    }
    std::vector<std::string> body;
    for (int b = uniform(rng, 1, 2); b > 0; --b) {
      int choice = uniform(rng, 0, 9);
      if (choice == 0) {
        body.push_back("false");
      } else if (choice == 1 && !vars.empty()) {
        body.push_back(*vars.begin() + " = a");
      } else {
        body.push_back(pick(rng, persistent));
      }
    }
    text += "prop" + std::to_string(k) + " @ " + join(head, ", ") + " ==> " + join(body, ", ") + ".\n";
  }
  return parse_program(text);
}

Atoms random_hybrid_root(Rng& rng) {
  const std::vector<std::string> linear = {"l1", "l2", "l3"};
  const std::vector<std::string> persistent = {"p", "q", "s(a)", "s(b)"};
  std::vector<std::string> atoms;
  for (int k = uniform(rng, 0, 2); k > 0; --k) atoms.push_back(pick(rng, linear));
  for (int k = uniform(rng, atoms.empty() ? 1 : 0, 2); k > 0; --k) atoms.push_back(pick(rng, persistent));
  return parse_atoms(join(atoms, ", "));
}

// ---------------------------------------------------------------------------

Program random_engine_program(Rng& rng) {
  bool propagation_only = coin(rng, 0.35);
  std::string text;
  int rules = uniform(rng, 1, 4);
  for (int i = 0; i < rules; ++i) {
    std::vector<std::string> vars;
    auto arg = [&](bool head) -> std::string {
      if (coin(rng, 0.6)) {
        std::string v = pick(rng, std::vector<std::string>{"X", "Y"});
        if (head && std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        if (!head && std::find(vars.begin(), vars.end(), v) == vars.end()) return std::to_string(uniform(rng, 0, 2));
        return v;
      }
      return std::to_string(uniform(rng, 0, 2));
    };
    auto atom = [&](bool head) -> std::string {
      switch (uniform(rng, 0, 3)) {
        case 0:
          return "p(" + arg(head) + ")";
        case 1:
          return "q(" + arg(head) + ")";
        case 2:
          return "r(" + arg(head) + ", " + arg(head) + ")";
        default:
          return "s";
      }
    };
    std::vector<std::string> kept;
    std::vector<std::string> removed;
    int kind = propagation_only ? 0 : uniform(rng, 0, 2);
    for (int k = uniform(rng, 1, 2); k > 0; --k) (kind == 1 ? removed : kept).push_back(atom(true));
    if (kind == 2)
      for (int k = uniform(rng, 1, 2); k > 0; --k) removed.push_back(atom(true));

    std::string rule = "e" + std::to_string(i) + " @ " + std::to_string(uniform(rng, 1, 5)) + " :: ";
    if (removed.empty()) {
      rule += join(kept, ", ") + " ==> ";
    } else if (kept.empty()) {
      rule += join(removed, ", ") + " <=> ";
    } else {
      rule += join(kept, ", ") + " \\ " + join(removed, ", ") + " <=> ";
    }
    if (!vars.empty() && coin(rng, 0.4)) {
      const std::string& v = pick(rng, vars);
      switch (uniform(rng, 0, 3)) {
        case 0:
          rule += v + " < 2 | ";
          break;
        case 1:
          rule += v + " = 1 | ";
          break;
        case 2:
          rule += "nonvar(" + v + ") | ";
          break;
        default:
          rule += vars.front() + " < " + vars.back() + " + 1 | ";
          break;
      }
    }
    std::vector<std::string> body;
    for (int k = uniform(rng, 0, 3); k > 0; --k) {
      int choice = uniform(rng, 0, 9);
      if (choice < 6) {
        body.push_back(atom(false));
      } else if (choice == 6 && !vars.empty()) {
        body.push_back("p(" + pick(rng, vars) + " + 1)");
      } else if (choice == 7) {
        body.push_back("q(Z)");
      } else if (choice == 8 && !vars.empty()) {
        body.push_back(pick(rng, vars) + " = " + std::to_string(uniform(rng, 0, 2)));
      } else {
        body.push_back(coin(rng, 0.3) ? "false" : "true");
      }
    }
    if (body.empty()) body.push_back("true");
    text += rule + join(body, ", ") + ".\n";
  }
  return parse_program(text);
}

Atoms random_engine_query(Rng& rng) {
  std::vector<std::string> atoms;
  for (int k = uniform(rng, 1, 5); k > 0; --k) {
    std::string i = std::to_string(uniform(rng, 0, 2));
    switch (uniform(rng, 0, 3)) {
      case 0:
        atoms.push_back("p(" + i + ")");
        break;
      case 1:
        atoms.push_back("q(" + i + ")");
        break;
      case 2:
        atoms.push_back("r(" + i + ", " + std::to_string(uniform(rng, 0, 2)) + ")");
        break;
      default:
        atoms.push_back("s");
        break;
    }
  }
  return parse_atoms(join(atoms, ", "));
}

// ---------------------------------------------------------------------------

namespace {

Term star(const Term& e) { return Term::compound("star", {e}); }
Term plus(const Term& e) { return Term::compound("plus", {e}); }
Term concat(const Term& a, const Term& b) { return Term::compound(",", {a, b}); }
bool is_op(const Term& e, const char* name, std::size_t arity) {
  return e.is_compound() && e.name() == name && e.arity() == arity;
}

Term regex_leaf(Rng& rng) {
  switch (uniform(rng, 0, 7)) {
    case 0:
      return Term::nil();
    case 1:
      return Term::integer(1);
    case 2:
    case 3:
    case 4:
      return Term::atom("a");
    default:
      return Term::atom("b");
  }
}

}  // namespace

Term random_regex(Rng& rng, int depth) {
  if (depth <= 1 || coin(rng, 0.25)) return regex_leaf(rng);
  switch (uniform(rng, 0, 3)) {
    case 0:
      return concat(random_regex(rng, depth - 1), random_regex(rng, depth - 1));
    case 1:
      return star(random_regex(rng, depth - 1));
    case 2:
      return plus(random_regex(rng, depth - 1));
    default: {
      std::vector<Term> items;
      for (int k = uniform(rng, 2, 3); k > 0; --k) items.push_back(random_regex(rng, depth - 1));
      return Term::list(items);
    }
  }
}

Term equivalent_variant(Rng& rng, const Term& e) {
  switch (uniform(rng, 0, 8)) {
    case 0:
      return Term::list({e, e});
    case 1:
      return concat(Term::integer(1), e);
    case 2:
      return concat(e, Term::integer(1));
    case 3:
      return Term::list({e, Term::nil()});
    case 4:
      if (is_op(e, "star", 1)) return coin(rng) ? star(e) : Term::list({Term::integer(1), plus(e.arg(0))});
      return Term::list({e});
    case 5:
      if (is_op(e, "plus", 1)) return concat(e.arg(0), star(e.arg(0)));
      return concat(e, Term::list({Term::integer(1)}));
    case 6:
      if (e.is_cons()) {
        auto items = *list_elements(e);
        std::reverse(items.begin(), items.end());
        return Term::list(items);
      }
      return Term::list({Term::nil(), e});
    case 7:
      if (is_op(e, ",", 2) && is_op(e.arg(0), ",", 2))
        return concat(e.arg(0).arg(0), concat(e.arg(0).arg(1), e.arg(1)));
      if (is_op(e, ",", 2) && is_op(e.arg(1), ",", 2))
        return concat(concat(e.arg(0), e.arg(1).arg(0)), e.arg(1).arg(1));
      return concat(e, Term::integer(1));
    default:
      if (e.is_compound() && !e.is_cons() && e.arity() > 0) {
        std::vector<Term> args(e.args().begin(), e.args().end());
        std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(args.size()) - 1));
        args[k] = equivalent_variant(rng, args[k]);
        return Term::compound(e.name(), args);
      }
      if (e.is_cons()) {
        auto items = *list_elements(e);
        std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1));
        items[k] = equivalent_variant(rng, items[k]);
        return Term::list(items);
      }
      return Term::list({e, e});
  }
}

Term near_miss(Rng& rng, const Term& e) {
  if (e.is_nil() || e.is_int() || e.is_atom()) {
    Term other = regex_leaf(rng);
    while (other == e) other = regex_leaf(rng);
    return other;
  }
  if (e.is_cons()) {
    auto items = *list_elements(e);
    std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(items.size()) - 1));
    items[k] = near_miss(rng, items[k]);
    return Term::list(items);
  }
  std::vector<Term> args(e.args().begin(), e.args().end());
  std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(args.size()) - 1));
  args[k] = near_miss(rng, args[k]);
  return Term::compound(e.name(), args);
}

std::vector<RegexPair> regex_corpus(unsigned seed, int count, int depth) {
  Rng rng(seed);
  std::vector<RegexPair> out;
  for (int i = 0; i < count; ++i) {
    switch (i % 3) {
      case 0:
        out.push_back({random_regex(rng, depth), random_regex(rng, depth)});
        break;
      case 1: {
        Term e = random_regex(rng, depth - 1);
        out.push_back({e, equivalent_variant(rng, e)});
        break;
      }
      default: {
        Term e = random_regex(rng, depth);
        out.push_back({e, near_miss(rng, e)});
        break;
      }
    }
  }
  return out;
}

}  // namespace chr::testing

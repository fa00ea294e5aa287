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

#include "chr/coind.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "chr/hybrid.hpp"

namespace chr {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return "EQUAL";
    case Verdict::NotEqual:
      return "NOT-EQUAL";
    case Verdict::Limit:
      return "LIMIT";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Automata

namespace {

bool valid_state_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

const char* kBisimText =
    ":- linear f/2.\n"
    ":- persistent ~/2.\n"
    "bisim @ f(L, (Lt, La, Lb)), f(K, (Kt, Ka, Kb)), L ~ K ==> Lt = Kt, La ~ Ka, Lb ~ Kb.\n";

}  // namespace

Automaton load_automaton(std::string_view text) {
  Automaton aut;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string w; fields >> w;) f.push_back(w);
    if (f.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("automaton line " + std::to_string(number) + ": " + why);
    };
    if (f.size() != 4) fail("expected <name> <0|1> <a-succ> <b-succ>");
    if (f[1] != "0" && f[1] != "1") fail("output bit must be 0 or 1, got '" + f[1] + "'");
    for (int k : {0, 2, 3}) {
      if (!valid_state_name(f[k])) fail("bad state name '" + f[k] + "'");
    }
    if (aut.dest.count(f[0]) != 0) fail("duplicate state '" + f[0] + "'");
    aut.states.push_back(f[0]);
    aut.dest[f[0]] = AutomatonState{f[1] == "1" ? 1 : 0, f[2], f[3]};
  }
  for (const auto& [name, d] : aut.dest) {
    for (const auto& succ : {d.a, d.b}) {
      if (aut.dest.count(succ) == 0)
        throw std::invalid_argument("automaton: state '" + name + "' has unknown successor '" + succ + "'");
    }
  }
  return aut;
}

std::string state_variable(const std::string& state) { return "S_" + state; }

Atoms automaton_to_constraints(const Automaton& aut) {
  Atoms out;
  for (const auto& name : aut.states) {
    const AutomatonState& d = aut.dest.at(name);
    Term triple = Term::tuple({Term::integer(d.bit), Term::var(state_variable(d.a)), Term::var(state_variable(d.b))});
    out.emplace_back(Term::compound("f", {Term::var(state_variable(name)), triple}));
  }
  return out;
}

Program bisim_program() { return parse_program(kBisimText); }

CheckResult bisim_check(const Automaton& aut, const std::string& s1, const std::string& s2, int n,
                        std::int64_t step_limit, const RunOptions& base) {
  for (const auto& s : {s1, s2}) {
    if (aut.dest.count(s) == 0) throw std::invalid_argument("unknown automaton state '" + s + "'");
  }
  static const Program program = bisim_program();
  static const TranslatedProgram translated = translate(program, TranslateOptions{false});

  Query q;
  q.goal = automaton_to_constraints(aut);
  q.goal.emplace_back(Term::compound("~", {Term::var(state_variable(s1)), Term::var(state_variable(s2))}));
  q.goal = scalar_goal(q.goal, n);
  Query tq = translate_state(q, program, translated.family);

  RunOptions options = base;
  options.step_limit = step_limit;
  CheckResult out;
  out.run = run(tq, translated.program, options);
  switch (out.run.status) {
    case RunStatus::Success:
      out.verdict = Verdict::Equal;
      break;
    case RunStatus::Failed:
      out.verdict = Verdict::NotEqual;
      break;
    case RunStatus::StepLimit:
      throw std::runtime_error("bisimulation check hit the step limit");
    case RunStatus::Error:
      throw std::runtime_error("bisimulation check failed: " + out.run.message);
  }
  return out;
}

bool oracle_bisimilar(const Automaton& aut, const std::string& s1, const std::string& s2) {
  std::set<std::pair<std::string, std::string>> seen{{s1, s2}};
  std::deque<std::pair<std::string, std::string>> work{{s1, s2}};
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    const AutomatonState& dx = aut.dest.at(x);
    const AutomatonState& dy = aut.dest.at(y);
    if (dx.bit != dy.bit) return false;
    for (auto next : {std::pair{dx.a, dy.a}, std::pair{dx.b, dy.b}}) {
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Regex syntax

namespace {

class RegexParser {
 public:
  explicit RegexParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  Term expr() {
    Term left = postfix();
    if (eat(',')) return Term::compound(",", {left, expr()});
    return left;
  }

  Term postfix() {
    Term e = primary();
    while (true) {
      if (eat('*')) {
        e = Term::compound("star", {e});
      } else if (eat('+')) {
        e = Term::compound("plus", {e});
      } else {
        return e;
      }
    }
  }

  Term primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_++];
    switch (c) {
      case 'a':
      case 'b':
        return Term::atom(std::string(1, c));
      case '1':
        return Term::integer(1);
      case '(': {
        Term e = expr();
        expect(')');
        return e;
      }
      case '[': {
        std::vector<Term> items;
        if (!eat(']')) {
          do {
            items.push_back(postfix());
          } while (eat(','));
          expect(']');
        }
        return Term::list(items);
      }
      default:
        --pos_;
        fail("unexpected '" + std::string(1, c) + "'");
    }
    return Term();
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("regex column " + std::to_string(pos_ + 1) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool is_concat(const Term& e) { return e.is_compound() && e.name() == "," && e.arity() == 2; }

// `atomic` asks for a form that can take a postfix operator or sit in a list.
std::string regex_text(const Term& e, bool atomic) {
  if (e.is_nil()) return "[]";
  if (e.is_int()) return std::to_string(e.int_value());
  if (e.is_atom()) return e.name();
  if (e.is_cons()) {
    std::string out = "[";
    auto items = list_elements(e);
    if (!items) throw std::invalid_argument("not a regular expression: " + to_string(e));
    for (std::size_t i = 0; i < items->size(); ++i) {
      if (i > 0) out += ",";
      out += regex_text((*items)[i], true);
    }
    return out + "]";
  }
  if (is_concat(e)) {
    std::string body = regex_text(e.arg(0), true) + "," + regex_text(e.arg(1), false);
    return atomic ? "(" + body + ")" : body;
  }
  if (e.arity() == 1 && (e.name() == "star" || e.name() == "plus"))
    return regex_text(e.arg(0), true) + (e.name() == "star" ? "*" : "+");
  throw std::invalid_argument("not a regular expression: " + to_string(e));
}

}  // namespace

Term parse_regex(std::string_view text) { return RegexParser(text).parse(); }

std::string regex_to_string(const Term& e) { return regex_text(e, false); }

bool is_regex(const Term& e) {
  if (e.is_nil()) return true;
  if (e.is_int()) return e.int_value() == 1;
  if (e.is_atom()) return e.name() == "a" || e.name() == "b";
  if (e.is_cons()) {
    auto items = list_elements(e);
    return items && std::all_of(items->begin(), items->end(), [](const Term& t) { return is_regex(t); });
  }
  if (is_concat(e)) return is_regex(e.arg(0)) && is_regex(e.arg(1));
  if (e.is_compound() && e.arity() == 1 && (e.name() == "star" || e.name() == "plus")) return is_regex(e.arg(0));
  return false;
}

// ---------------------------------------------------------------------------
// Destructor program

const std::string& destructor_program_text() {
  static const std::string text =
      ":- linear f/2.\n"
      ":- linear f_conc/5.\n"
      ":- persistent ~/2.\n"
      "d_empty @ f([], R) <=> R = (0, [], []).\n"
      "d_eps @ f(1, R) <=> R = (1, [], []).\n"
      "d_a @ f(a, R) <=> R = (0, [1], []).\n"
      "d_b @ f(b, R) <=> R = (0, [], [1]).\n"
      "d_alt @ f([E|L], R) <=> R = (T, A, B), f(E, (Et, Ea, Eb)), f(L, (Lt, La, Lb)),\n"
      "    or(Et, Lt, T), merge(Ea, La, A), merge(Eb, Lb, B).\n"
      "d_star @ f(star(E), R) <=> R = (1, [(Ea, [star(E)])], [(Eb, [star(E)])]), f(E, (_, Ea, Eb)).\n"
      "d_plus @ f(plus(K), R) <=> R = (T, [Ka, (Ka, plus(K))], [Kb, (Kb, plus(K))]), f(K, (T, Ka, Kb)).\n"
      "d_conc @ f((E, F), R) <=> f(E, (Et, Ea, Eb)), f_conc(Et, Ea, Eb, F, R).\n"
      "d_conc0 @ f_conc(0, Ea, Eb, F, R) <=> R = (0, [(Ea, F)], [(Eb, F)]).\n"
      "d_conc1 @ f_conc(1, Ea, Eb, F, R) <=> R = (T, A, B), f(F, (T, Fa, Fb)),\n"
      "    merge([(Ea, F)], Fa, A), merge([(Eb, F)], Fb, B).\n"
      "bisim @ L ~ K ==> nonvar(L), nonvar(K) | f(L, (T, La, Lb)), f(K, (T, Ka, Kb)), La ~ Ka, Lb ~ Kb.\n";
  return text;
}

Program destructor_program() { return parse_program(destructor_program_text()); }

CheckResult regex_equal(const Term& e1, const Term& e2, std::int64_t step_limit, const RunOptions& base) {
  for (const Term& e : {e1, e2}) {
    if (!is_regex(e) || !e.ground()) throw std::invalid_argument("not a ground regular expression: " + to_string(e));
  }
  static const Program program = destructor_program();
  static const TranslatedProgram translated = translate(program);

  Query q;
  q.goal.emplace_back(Term::compound("~", {e1, e2}));
  Query tq = translate_state(q, program, translated.family);
  RunOptions options = base;
  options.step_limit = step_limit;
  CheckResult out;
  out.run = run(tq, translated.program, options);
  switch (out.run.status) {
    case RunStatus::Success:
      out.verdict = Verdict::Equal;
      break;
    case RunStatus::Failed:
      out.verdict = Verdict::NotEqual;
      break;
    case RunStatus::StepLimit:
      out.verdict = Verdict::Limit;
      break;
    case RunStatus::Error:
      throw std::runtime_error("regex check failed: " + out.run.message);
  }
  return out;
}

std::optional<Term> run_destructor(const Term& e, std::int64_t step_limit) {
  static const Program program = destructor_program();
  Query q;
  q.goal.emplace_back(Term::compound("f", {e, Term::var("R")}));
  q.globals = {"R"};
  RunOptions options;
  options.step_limit = step_limit;
  DerivationResult r = run(q, program, options);
  if (r.status != RunStatus::Success || !r.final.chr_store.empty()) return std::nullopt;
  Term value = r.final.builtins.normalize(Term::var("R"));
  if (!value.ground()) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------------------
// Oracle

namespace {

struct Re;
using ReP = std::shared_ptr<const Re>;

struct Re {
  enum class Kind { Zero, One, Char, Cat, Star, Alt } kind;
  char c = 0;
  std::vector<ReP> kids;
  std::string key;
};

ReP make(Re::Kind k, char c, std::vector<ReP> kids, std::string key) {
  auto r = std::make_shared<Re>();
  r->kind = k;
  r->c = c;
  r->kids = std::move(kids);
  r->key = std::move(key);
  return r;
}

ReP zero() {
  static const ReP z = make(Re::Kind::Zero, 0, {}, "0");
  return z;
}
ReP one() {
  static const ReP o = make(Re::Kind::One, 0, {}, "1");
  return o;
}
ReP chr(char c) { return make(Re::Kind::Char, c, {}, std::string(1, c)); }

ReP cat(const ReP& x, const ReP& y) {
  if (x->kind == Re::Kind::Zero || y->kind == Re::Kind::Zero) return zero();
  if (x->kind == Re::Kind::One) return y;
  if (y->kind == Re::Kind::One) return x;
  return make(Re::Kind::Cat, 0, {x, y}, "(" + x->key + "." + y->key + ")");
}

ReP star(const ReP& x) {
  if (x->kind == Re::Kind::Zero || x->kind == Re::Kind::One) return one();
  if (x->kind == Re::Kind::Star) return x;
  return make(Re::Kind::Star, 0, {x}, x->key + "*");
}

ReP alt(const std::vector<ReP>& items) {
  std::vector<ReP> flat;
  for (const ReP& r : items) {
    if (r->kind == Re::Kind::Alt) {
      flat.insert(flat.end(), r->kids.begin(), r->kids.end());
    } else if (r->kind != Re::Kind::Zero) {
      flat.push_back(r);
    }
  }
  std::sort(flat.begin(), flat.end(), [](const ReP& a, const ReP& b) { return a->key < b->key; });
  flat.erase(std::unique(flat.begin(), flat.end(), [](const ReP& a, const ReP& b) { return a->key == b->key; }),
             flat.end());
  if (flat.empty()) return zero();
  if (flat.size() == 1) return flat.front();
  std::string key = "[";
  for (const ReP& r : flat) key += r->key + "|";
  key += "]";
  return make(Re::Kind::Alt, 0, std::move(flat), std::move(key));
}

ReP from_term(const Term& e) {
  if (e.is_nil()) return zero();
  if (e.is_int() && e.int_value() == 1) return one();
  if (e.is_atom() && (e.name() == "a" || e.name() == "b")) return chr(e.name()[0]);
  if (e.is_cons()) {
    auto items = list_elements(e);
    if (!items) throw std::invalid_argument("not a regular expression: " + to_string(e));
    std::vector<ReP> rs;
    for (const Term& t : *items) rs.push_back(from_term(t));
    return alt(rs);
  }
  if (is_concat(e)) return cat(from_term(e.arg(0)), from_term(e.arg(1)));
  if (e.is_compound() && e.arity() == 1 && e.name() == "star") return star(from_term(e.arg(0)));
  if (e.is_compound() && e.arity() == 1 && e.name() == "plus") {
    ReP x = from_term(e.arg(0));
    return cat(x, star(x));
  }
  throw std::invalid_argument("not a regular expression: " + to_string(e));
}

bool nullable(const ReP& r) {
  switch (r->kind) {
    case Re::Kind::Zero:
    case Re::Kind::Char:
      return false;
    case Re::Kind::One:
    case Re::Kind::Star:
      return true;
    case Re::Kind::Cat:
      return nullable(r->kids[0]) && nullable(r->kids[1]);
    case Re::Kind::Alt:
      return std::any_of(r->kids.begin(), r->kids.end(), [](const ReP& k) { return nullable(k); });
  }
  return false;
}

ReP derive(const ReP& r, char c) {
  switch (r->kind) {
    case Re::Kind::Zero:
    case Re::Kind::One:
      return zero();
    case Re::Kind::Char:
      return r->c == c ? one() : zero();
    case Re::Kind::Cat: {
      ReP left = cat(derive(r->kids[0], c), r->kids[1]);
      return nullable(r->kids[0]) ? alt({left, derive(r->kids[1], c)}) : left;
    }
    case Re::Kind::Star:
      return cat(derive(r->kids[0], c), r);
    case Re::Kind::Alt: {
      std::vector<ReP> ds;
      for (const ReP& k : r->kids) ds.push_back(derive(k, c));
      return alt(ds);
    }
  }
  return zero();
}

}  // namespace

bool oracle_nullable(const Term& e) { return nullable(from_term(e)); }

bool oracle_matches(const Term& e, std::string_view word) {
  ReP r = from_term(e);
  for (char c : word) r = derive(r, c);
  return nullable(r);
}

OracleResult oracle_lang_equal(const Term& e1, const Term& e2, int max_len) {
  struct Node {
    std::string word;
    ReP x;
    ReP y;
  };
  std::vector<Node> level{{"", from_term(e1), from_term(e2)}};
  for (int len = 0; len <= max_len && !level.empty(); ++len) {
    std::vector<Node> next;
    for (const Node& n : level) {
      if (nullable(n.x) != nullable(n.y)) return {false, n.word};
      // Identical normal forms denote the same language below this word.
      if (n.x->key == n.y->key) continue;
      for (char c : {'a', 'b'}) next.push_back({n.word + c, derive(n.x, c), derive(n.y, c)});
    }
    level = std::move(next);
  }
  return {true, std::nullopt};
}

}  // namespace chr

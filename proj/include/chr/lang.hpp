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

#ifndef CHR_LANG_HPP_
#define CHR_LANG_HPP_

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chr/term.hpp"

namespace chr {

inline constexpr int kSimplificationPriority = 3;
inline constexpr int kPropagationPriority = 4;

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  auto operator<=>(const Symbol&) const = default;
};

Symbol symbol_of(const Term& atom);

// =/2, </2, true/0, false/0, or/3, merge/3, nonvar/1.
bool is_builtin_symbol(std::string_view name, std::size_t arity);

enum class AtomKind { Builtin, User };

// A constraint occurrence. The kind is derived from the symbol.
class ConstraintAtom {
 public:
  explicit ConstraintAtom(Term term);

  const Term& term() const { return term_; }
  AtomKind kind() const { return kind_; }
  bool is_builtin() const { return kind_ == AtomKind::Builtin; }
  bool is_user() const { return kind_ == AtomKind::User; }
  const std::string& functor() const { return term_.name(); }
  std::size_t arity() const { return term_.arity(); }
  Symbol symbol() const { return symbol_of(term_); }

  friend bool operator==(const ConstraintAtom& a, const ConstraintAtom& b) { return a.term_ == b.term_; }

 private:
  Term term_;
  AtomKind kind_;
};

using Atoms = std::vector<ConstraintAtom>;

struct Rule {
  std::string name;
  int priority = kSimplificationPriority;
  Atoms kept;
  Atoms removed;
  Atoms guard;  // empty means true
  Atoms body;

  bool is_propagation() const { return removed.empty(); }
  std::vector<std::string> head_vars() const;
  // lv(r): variables of guard and body that do not occur in the heads.
  std::vector<std::string> local_vars() const;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Program {
  std::vector<Rule> rules;
  std::set<Symbol> persistent_symbols;
  std::set<Symbol> linear_symbols;

  // Undeclared user symbols are linear.
  bool is_persistent(const Symbol& s) const { return persistent_symbols.count(s) != 0; }
  bool is_persistent(const Term& atom) const { return is_persistent(symbol_of(atom)); }
  const Rule* find_rule(std::string_view name) const;

  friend bool operator==(const Program&, const Program&) = default;
};

struct Query {
  Atoms goal;
  std::vector<std::string> globals;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ParseOptions {
  // Reject the control symbols used by the hybrid translation.
  bool reject_reserved = false;
};

Term parse_term(std::string_view text);
Program parse_program(std::string_view text, const ParseOptions& options = {});
// Comma-separated atoms with an optional final '.'. Globals are the goal
// variables.
Query parse_query(std::string_view text);

std::string to_string(const ConstraintAtom& atom);
std::string to_string(const Atoms& atoms);
std::string to_string(const Rule& rule);
std::string to_string(const Program& program);

struct Violation {
  std::string rule;
  std::string reason;
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Kept heads must be persistent and removed heads linear.
std::vector<Violation> validate_hybrid(const Program& program);

// f/1, f/2, a/2, c_f/1, c_a/1.
const std::set<Symbol>& reserved_symbols();
std::set<Symbol> reserved_symbols_used(const Program& program);
// All user symbols occurring in heads and bodies.
std::set<Symbol> user_symbols(const Program& program);

std::string rule_reading(const Rule& rule);
std::string state_reading(const Query& query);
// One formula per rule, then the state template line.
std::string logical_reading(const Program& program);

// P^n: user body constraints repeated n times. Throws std::invalid_argument
// on a simplification rule or n < 1.
Program scalar_program(const Program& program, int n);
Atoms scalar_goal(const Atoms& goal, int n);

}  // namespace chr

#endif  // CHR_LANG_HPP_

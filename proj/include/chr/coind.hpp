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

#ifndef CHR_COIND_HPP_
#define CHR_COIND_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chr/engine.hpp"
#include "chr/lang.hpp"
#include "chr/term.hpp"

namespace chr {

// ---------------------------------------------------------------------------
// Binary automata

struct AutomatonState {
  int bit = 0;
  std::string a;
  std::string b;
  friend bool operator==(const AutomatonState&, const AutomatonState&) = default;
};

struct Automaton {
  std::vector<std::string> states;  // file order
  std::map<std::string, AutomatonState> dest;
};

// `<name> <0|1> <a-succ> <b-succ>` per line, `#` comments. Throws
// std::invalid_argument naming the offending line.
Automaton load_automaton(std::string_view text);

// The variable standing for an automaton state.
std::string state_variable(const std::string& state);

// One f(S, (T, Sa, Sb)) atom per state.
Atoms automaton_to_constraints(const Automaton& aut);

// The single propagation rule on the explicit encoding, f/2 linear and ~/2
// persistent.
Program bisim_program();

enum class Verdict { Equal, NotEqual, Limit };
const char* to_string(Verdict v);

struct CheckResult {
  Verdict verdict = Verdict::Limit;
  DerivationResult run;
};

// Runs n·(D, s1 ~ s2) under the translated bisimulation rule. Throws
// std::invalid_argument on unknown states and std::runtime_error if the
// step limit is hit.
CheckResult bisim_check(const Automaton& aut, const std::string& s1, const std::string& s2, int n = 3,
                        std::int64_t step_limit = 100000, const RunOptions& base = {});

// Exact product-automaton check, independent of the rule engine.
bool oracle_bisimilar(const Automaton& aut, const std::string& s1, const std::string& s2);

// ---------------------------------------------------------------------------
// Regular expressions over {a, b}
//
// Encoded as terms: [] (empty alternation), 1, a, b, (E, F), star(E),
// plus(E), and lists [E|L] for alternation.

// Postfix * and +, right-associative `,`, [e1, e2, ...] lists, parentheses.
// Throws std::invalid_argument.
Term parse_regex(std::string_view text);
std::string regex_to_string(const Term& e);
bool is_regex(const Term& e);

// Destructor rules for f/2 and f_conc/5 plus the guarded ~ rule.
Program destructor_program();
const std::string& destructor_program_text();

CheckResult regex_equal(const Term& e1, const Term& e2, std::int64_t step_limit = 100000,
                        const RunOptions& base = {});

// Runs f(e, R) to quiescence and returns R, or nullopt when it did not
// settle to a ground triple.
std::optional<Term> run_destructor(const Term& e, std::int64_t step_limit = 100000);

// ---------------------------------------------------------------------------
// Oracle: derivatives on a normalized representation, no rules involved.

bool oracle_nullable(const Term& e);
bool oracle_matches(const Term& e, std::string_view word);

struct OracleResult {
  bool equal = true;           // up to the length bound
  std::optional<std::string> witness;  // shortlex-first word in exactly one
};
OracleResult oracle_lang_equal(const Term& e1, const Term& e2, int max_len);

}  // namespace chr

#endif  // CHR_COIND_HPP_

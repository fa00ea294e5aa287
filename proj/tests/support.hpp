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

// Random generators and independent oracles shared by the unit suites and
// the acceptance binary.

#ifndef CHR_TESTS_SUPPORT_HPP_
#define CHR_TESTS_SUPPORT_HPP_

#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chr/lang.hpp"
#include "chr/term.hpp"

namespace chr::testing {

using Rng = std::mt19937;

int uniform(Rng& rng, int lo, int hi);
bool coin(Rng& rng, double p = 0.5);

// Terms over f/1, g/2, h/3, atoms a..c, ints 0..3, variables X..Z.
Term random_term(Rng& rng, int depth);
Term random_ground_term(Rng& rng, int depth);

// Random parseable program: mixed rule kinds, guards, builtins, explicit
// priorities and declarations.
Program random_program(Rng& rng);

// Propositional propagation-only program over p, q, r with false in bodies.
struct HornCase {
  Program program;
  std::vector<std::string> root;  // atom names, with multiplicity
  int n = 1;
};
HornCase random_horn_case(Rng& rng);
// Forward chaining of the rules as Horn clauses from the root atoms.
bool horn_consistent(const Program& p, const std::vector<std::string>& root);

// Hybrid program over persistent p/0, q/0, s/1 and linear l1..l3, with one
// size-decreasing simplification rule per linear symbol.
Program random_hybrid_program(Rng& rng);
Atoms random_hybrid_root(Rng& rng);

// Program for the engine invariant suite; ground queries come from
// random_engine_query.
Program random_engine_program(Rng& rng);
Atoms random_engine_query(Rng& rng);

// Regular expressions of depth at most `depth`.
Term random_regex(Rng& rng, int depth);
// Language-preserving rewrite of e.
Term equivalent_variant(Rng& rng, const Term& e);
// e with one leaf replaced.
Term near_miss(Rng& rng, const Term& e);

struct RegexPair {
  Term left;
  Term right;
};
std::vector<RegexPair> regex_corpus(unsigned seed, int count, int depth);

Atoms parse_atoms(const std::string& text);

}  // namespace chr::testing

namespace chr {
// Readable gtest failure messages.
inline void PrintTo(const Term& t, std::ostream* os) { *os << to_string(t); }
}  // namespace chr

#endif  // CHR_TESTS_SUPPORT_HPP_

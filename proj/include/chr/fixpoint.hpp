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

#ifndef CHR_FIXPOINT_HPP_
#define CHR_FIXPOINT_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "chr/lang.hpp"
#include "chr/term.hpp"

namespace chr {

// Ground abstract state: a sorted multiset of ground user atoms, or the
// single inconsistent state.
struct CanonState {
  std::vector<Term> atoms;
  bool consistent = true;
  bool persistent_dedup = false;

  static CanonState bottom();
  friend bool operator==(const CanonState& a, const CanonState& b) {
    return a.consistent == b.consistent && a.atoms == b.atoms;
  }
};

struct CanonStateHash {
  std::size_t operator()(const CanonState& s) const;
};

std::string to_string(const CanonState& s);

class GroundEnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorts, and with `contraction` keeps one copy of each persistent atom.
CanonState canonical(std::vector<Term> atoms, const Program& p, bool contraction);
// Ground goal to state: built-ins are decided, user atoms collected.
// Throws GroundEnumerationError on a non-ground goal.
CanonState canonical_goal(const Atoms& goal, const Program& p, bool contraction);

struct Edge {
  std::size_t from = 0;
  std::string rule;
  std::size_t to = 0;
};

struct GroundTransitionSystem {
  std::vector<CanonState> states;
  std::vector<Edge> edges;
  // States whose successors were all computed.
  std::vector<bool> expanded;
  // Consistent states made only of persistent atoms.
  std::vector<bool> purely_persistent;
  bool truncated = false;
  std::size_t bound = 0;

  std::optional<std::size_t> find(const CanonState& s) const;
  std::vector<std::vector<std::size_t>> successors() const;
  std::vector<std::vector<std::size_t>> predecessors() const;

  std::unordered_map<CanonState, std::size_t, CanonStateHash> index;
};

inline constexpr std::size_t kDefaultBound = 10000;

// Breadth-first closure of all rule instances from `roots`, ignoring
// priorities and tokens, up to `bound` distinct states.
GroundTransitionSystem enumerate(const Program& p, const std::vector<CanonState>& roots,
                                 std::size_t bound = kDefaultBound, bool contraction = false);

// Edges of simplification rules only, over the same states.
GroundTransitionSystem simplification_subsystem(const GroundTransitionSystem& ts, const Program& p);

// Least fixpoint of the existential cause operator seeded with consistent
// answers. Indexed by state. Throws std::invalid_argument when truncated.
std::vector<bool> lfp_csr(const GroundTransitionSystem& ts);

struct GfpResult {
  // False when the system was truncated: `member` then only says that no
  // inconsistency was found within the bound.
  bool exact = true;
  std::vector<bool> member;
};
GfpResult gfp_cpr(const GroundTransitionSystem& ts);

// νX.([P](X) ∩ μY.(⟨P^s⟩(Y) ∪ consistent persistent states)). Both systems
// must share state indices (see simplification_subsystem).
std::vector<bool> hybrid_nested(const GroundTransitionSystem& full, const GroundTransitionSystem& simpl);

enum class Membership { Member, NonMember, NoInconsistencyWithinBound, Inconclusive };
const char* to_string(Membership m);

Membership lfp_membership(const GroundTransitionSystem& ts, const CanonState& root);
Membership gfp_membership(const GroundTransitionSystem& ts, const CanonState& root);
Membership hybrid_membership(const GroundTransitionSystem& full, const Program& p, const CanonState& root);

enum class DataSufficiency { YesWithinBound, Counterexample, Inconclusive };

struct DataSufficiencyResult {
  DataSufficiency verdict = DataSufficiency::Inconclusive;
  std::optional<CanonState> counterexample;
};

DataSufficiencyResult data_sufficient_bounded(const Program& p, const CanonState& root,
                                              std::size_t bound = kDefaultBound);

}  // namespace chr

#endif  // CHR_FIXPOINT_HPP_

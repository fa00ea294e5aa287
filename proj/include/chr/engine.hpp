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

#ifndef CHR_ENGINE_HPP_
#define CHR_ENGINE_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "chr/lang.hpp"
#include "chr/store.hpp"
#include "chr/term.hpp"

namespace chr {

using ConstraintId = std::int64_t;

struct IdentifiedConstraint {
  ConstraintAtom atom;
  ConstraintId id = 0;
};

// (rule, kept ids then removed ids, in head order).
struct Token {
  std::string rule;
  std::vector<ConstraintId> ids;
  friend bool operator==(const Token&, const Token&) = default;
};

struct TokenHash {
  std::size_t operator()(const Token& t) const;
};

struct ConcreteState {
  std::deque<ConstraintAtom> goal;
  std::vector<IdentifiedConstraint> chr_store;  // insertion order
  BuiltinStore builtins;
  std::unordered_set<Token, TokenHash> tokens;
  std::vector<std::string> globals;
  ConstraintId next_id = 0;
  // Counter for the _G<k> variables created when a body is instantiated.
  std::int64_t next_fresh = 0;
};

ConcreteState initial_state(const Query& query);

// One way of firing a rule on the current store.
struct RuleInstance {
  const Rule* rule = nullptr;
  Substitution theta;  // head variables to store terms
  std::vector<ConstraintId> kept_ids;
  std::vector<ConstraintId> removed_ids;
  Token token;
  Substitution guard_bindings;  // locals bound by the guard, renamed form
};

enum class TransitionKind { Solve, Introduce, Apply };
const char* to_string(TransitionKind kind);

std::optional<ConcreteState> solve_step(const ConcreteState& s);
std::optional<ConcreteState> introduce_step(const ConcreteState& s);

// All instances at the most urgent priority level that has any, ordered by
// rule textual order and then ascending head ids. Empty if the goal is not.
std::vector<RuleInstance> applicable_instances(const ConcreteState& s, const Program& p);
std::optional<ConcreteState> apply_step(const ConcreteState& s, const Program& p);

enum class RunStatus { Success, Failed, Error, StepLimit };
const char* to_string(RunStatus status);

struct TraceEntry {
  std::int64_t step = 0;
  TransitionKind kind = TransitionKind::Solve;
  std::string rule;  // empty unless Apply
  std::size_t store_size = 0;
  std::size_t token_count = 0;
  std::vector<ConstraintId> ids;  // fired head ids, or the introduced id
  std::optional<ConcreteState> before;
};

// `<step>\t<kind>\t<rule-or-->\t<store-size>\t<token-count>`
std::string format_trace_line(const TraceEntry& e);

struct RunOptions {
  std::int64_t step_limit = 100000;
  bool trace = false;
  // Keep the pre-transition state in every trace entry.
  bool snapshots = false;
  // Lines are also streamed here when set.
  std::ostream* trace_stream = nullptr;
  // Run validate_state after every transition; violations stop the run.
  bool validate = false;
};

struct DerivationResult {
  ConcreteState final;
  RunStatus status = RunStatus::Success;
  std::int64_t steps = 0;
  std::vector<TraceEntry> trace;
  std::string message;  // instantiation or validation error text
};

DerivationResult run(const Query& query, const Program& p, const RunOptions& options = {});
DerivationResult run_from(ConcreteState state, const Program& p, const RunOptions& options = {});

// Id uniqueness, ids below next_id, tokens naming only allocated ids.
std::vector<std::string> validate_state(const ConcreteState& s);

// Final state rendering: bindings of globals, then the sorted store.
std::string render_final(const ConcreteState& s);

}  // namespace chr

#endif  // CHR_ENGINE_HPP_

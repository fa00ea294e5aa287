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

#include <gtest/gtest.h>

#include <set>

#include "chr/engine.hpp"
#include "support.hpp"

namespace chr {
namespace {

const char* kPairs = "r @ a, a <=> true.\nloop @ b <=> b.\nfail @ c <=> false.";
const char* kCounter = "zero @ q(0) ==> false.\nnext @ q(X) ==> q(X+1).";

ConcreteState drained(const char* query) {
  ConcreteState s = initial_state(parse_query(query));
  while (!s.goal.empty()) {
    auto n = s.goal.front().is_builtin() ? solve_step(s) : introduce_step(s);
    s = *n;
  }
  return s;
}

TEST(Steps, Solve) {
  ConcreteState s = initial_state(parse_query("X = a, p(X)"));
  auto t = solve_step(s);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->goal.size(), 1u);
  EXPECT_EQ(t->builtins.normalize(parse_term("X")), parse_term("a"));
  EXPECT_FALSE(solve_step(*t).has_value());
  auto f = solve_step(initial_state(parse_query("false")));
  ASSERT_TRUE(f.has_value());
  EXPECT_FALSE(f->builtins.consistent());
}

TEST(Steps, Introduce) {
  ConcreteState s = initial_state(parse_query("p(X), q"));
  auto t = introduce_step(s);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->chr_store.at(0).id, 0);
  EXPECT_EQ(t->next_id, 1);
  auto u = introduce_step(*t);
  EXPECT_EQ(u->chr_store.at(1).id, 1);
  EXPECT_FALSE(introduce_step(initial_state(parse_query("true"))).has_value());
  ConcreteState empty;
  EXPECT_FALSE(introduce_step(empty).has_value());
}

TEST(Apply, PairInstance) {
  Program p = parse_program(kPairs);
  auto instances = applicable_instances(drained("a, a"), p);
  ASSERT_FALSE(instances.empty());
  EXPECT_EQ(instances[0].rule->name, "r");
  EXPECT_EQ(instances[0].removed_ids, (std::vector<ConstraintId>{0, 1}));
  EXPECT_TRUE(applicable_instances(drained("a"), p).empty());

  auto after = apply_step(drained("a, a"), p);
  ASSERT_TRUE(after.has_value());
  EXPECT_TRUE(after->chr_store.empty());
  ASSERT_EQ(after->goal.size(), 1u);
  EXPECT_EQ(to_string(after->goal[0]), "true");
}

TEST(Apply, PropagationToken) {
  Program p = parse_program("next @ q(X) ==> q(X+1).");
  ConcreteState s = drained("q(1)");
  auto t = apply_step(s, p);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->chr_store.size(), 1u);
  EXPECT_EQ(to_string(t->goal.at(0)), "q(2)");
  EXPECT_TRUE(t->tokens.count(Token{"next", {0}}));
  t->goal.clear();
  EXPECT_TRUE(applicable_instances(*t, p).empty());
}

TEST(Apply, PriorityPreemption) {
  Program p = parse_program("low @ 5 :: a ==> b.\nhigh @ 1 :: a ==> c.");
  auto instances = applicable_instances(drained("a"), p);
  ASSERT_EQ(instances.size(), 1u);
  EXPECT_EQ(instances[0].rule->name, "high");
}

TEST(Apply, GuardUnknownBlocks) {
  Program p = parse_program("g @ p(X) <=> nonvar(X) | q.");
  EXPECT_TRUE(applicable_instances(drained("p(Y)"), p).empty());
  EXPECT_EQ(applicable_instances(drained("p(Y), Y = 1"), p).size(), 1u);
}

TEST(Run, Examples) {
  Program p = parse_program(kPairs);
  DerivationResult r = run(parse_query("a, a, a"), p);
  EXPECT_EQ(r.status, RunStatus::Success);
  ASSERT_EQ(r.final.chr_store.size(), 1u);
  EXPECT_EQ(to_string(r.final.chr_store[0].atom), "a");
  EXPECT_EQ(run(parse_query("c"), p).status, RunStatus::Failed);

  DerivationResult q = run(parse_query("q(0)"), parse_program(kCounter));
  EXPECT_EQ(q.status, RunStatus::Failed);
  EXPECT_LE(q.steps, 3);
  EXPECT_FALSE(q.final.builtins.consistent());
}

TEST(Run, StepLimitAndError) {
  Program p = parse_program(kPairs);
  RunOptions o;
  o.step_limit = 50;
  DerivationResult r = run(parse_query("b"), p, o);
  EXPECT_EQ(r.status, RunStatus::StepLimit);
  EXPECT_EQ(r.steps, 50);
  DerivationResult e = run(parse_query("X < 1"), p);
  EXPECT_EQ(e.status, RunStatus::Error);
  EXPECT_FALSE(e.message.empty());
}

TEST(Run, FreshLocals) {
  Program p = parse_program("r @ p(X) <=> X = f(Z), q(Z).");
  DerivationResult r = run(parse_query("p(A), p(_G7)"), p);
  ASSERT_EQ(r.status, RunStatus::Success);
  ASSERT_EQ(r.final.chr_store.size(), 2u);
  Term z0 = r.final.chr_store[0].atom.term().arg(0);
  Term z1 = r.final.chr_store[1].atom.term().arg(0);
  EXPECT_TRUE(z0.is_var());
  EXPECT_NE(z0, z1);
  EXPECT_NE(z0.name(), "_G7");
  EXPECT_NE(z1.name(), "_G7");
}

TEST(Run, RenderFinal) {
  DerivationResult r = run(parse_query("X = 1, b2, a1"), Program{});
  EXPECT_EQ(render_final(r.final), "X = 1\na1\nb2\n");
}

TEST(Trace, Format) {
  TraceEntry e;
  e.step = 3;
  e.kind = TransitionKind::Apply;
  e.rule = "r";
  e.store_size = 2;
  e.token_count = 1;
  EXPECT_EQ(format_trace_line(e), "3\tapply\tr\t2\t1");
  e.kind = TransitionKind::Solve;
  e.rule.clear();
  EXPECT_EQ(format_trace_line(e), "3\tsolve\t-\t2\t1");
}

// Properties over random programs.

class EngineProperty : public ::testing::TestWithParam<unsigned> {};

TEST_P(EngineProperty, DeterministicTraces) {
  testing::Rng rng(GetParam());
  RunOptions o;
  o.trace = true;
  o.step_limit = 300;
  for (int i = 0; i < 30; ++i) {
    Program p = testing::random_engine_program(rng);
    Query q{testing::random_engine_query(rng), {}};
    DerivationResult a = run(q, p, o);
    DerivationResult b = run(q, p, o);
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k)
      EXPECT_EQ(format_trace_line(a.trace[k]), format_trace_line(b.trace[k]));
    EXPECT_EQ(render_final(a.final), render_final(b.final));
  }
}

TEST_P(EngineProperty, ValidatorAndFailureStatus) {
  testing::Rng rng(GetParam());
  RunOptions o;
  o.validate = true;
  o.step_limit = 300;
  for (int i = 0; i < 30; ++i) {
    Program p = testing::random_engine_program(rng);
    Query q{testing::random_engine_query(rng), {}};
    DerivationResult r = run(q, p, o);
    EXPECT_NE(r.status, RunStatus::Error) << r.message << "\n" << to_string(p);
    EXPECT_EQ(r.status == RunStatus::Failed, !r.final.builtins.consistent());
    EXPECT_TRUE(validate_state(r.final).empty());
  }
}

TEST(Validator, DetectsCorruption) {
  ConcreteState s = drained("a, b");
  EXPECT_TRUE(validate_state(s).empty());
  s.chr_store[1].id = 0;
  EXPECT_FALSE(validate_state(s).empty());
  ConcreteState t = drained("a");
  t.next_id = 0;
  EXPECT_FALSE(validate_state(t).empty());
}

INSTANTIATE_TEST_SUITE_P(Seeds, EngineProperty, ::testing::Values(31u, 32u, 33u));

}  // namespace
}  // namespace chr

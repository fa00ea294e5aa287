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

#include <algorithm>

#include "chr/store.hpp"
#include "support.hpp"

namespace chr {
namespace {

ConstraintAtom C(const char* text) { return ConstraintAtom(parse_term(text)); }

BuiltinStore told(std::initializer_list<const char*> cs) {
  BuiltinStore s;
  for (const char* c : cs) s.tell(C(c));
  return s;
}

TEST(Tell, Basics) {
  BuiltinStore s = told({"X = a"});
  EXPECT_TRUE(s.consistent());
  EXPECT_EQ(s.normalize(parse_term("X")), parse_term("a"));
  EXPECT_FALSE(tell(s, C("X = b")).consistent());
  EXPECT_TRUE(told({"1 < 2"}).bindings().empty());
  EXPECT_FALSE(told({"2 < 1"}).consistent());
  EXPECT_FALSE(told({"false"}).consistent());
  EXPECT_TRUE(told({"true"}).consistent());
}

TEST(Tell, Arithmetic) {
  BuiltinStore s = told({"X = 2", "Y = X + 1"});
  EXPECT_EQ(s.normalize(parse_term("Y")), parse_term("3"));
  EXPECT_TRUE(tell(s, C("X < Y")).consistent());
}

TEST(Tell, InstantiationError) {
  BuiltinStore s;
  EXPECT_THROW(s.tell(C("X < 2")), InstantiationError);
}

TEST(Tell, OrAndMergeWaitForInputs) {
  BuiltinStore s = told({"or(X, 1, Z)"});
  EXPECT_TRUE(s.consistent());
  EXPECT_EQ(s.suspended().size(), 1u);
  s.tell(C("X = 0"));
  EXPECT_EQ(s.normalize(parse_term("Z")), parse_term("1"));
  EXPECT_TRUE(s.suspended().empty());

  BuiltinStore m = told({"merge(L, [a], R)", "L = [c, b]"});
  EXPECT_EQ(m.normalize(parse_term("R")), parse_term("[a, b, c]"));
  EXPECT_FALSE(told({"or(0, 0, 1)"}).consistent());
  EXPECT_FALSE(told({"merge([b], [a], [b, a])"}).consistent());
}

TEST(Ask, Examples) {
  Substitution theta;
  theta.bind("Y", parse_term("3"));
  theta.bind("Z", parse_term("5"));
  EXPECT_EQ(ask(BuiltinStore{}, theta, testing::parse_atoms("Y < Z")).verdict, AskVerdict::Holds);
  EXPECT_EQ(ask(BuiltinStore{}, theta, testing::parse_atoms("Z < Y")).verdict, AskVerdict::Fails);

  Substitution l;
  l.bind("L", parse_term("star(a)"));
  EXPECT_EQ(ask(BuiltinStore{}, l, Atoms{C("nonvar(L)")}).verdict, AskVerdict::Holds);
  EXPECT_EQ(ask(BuiltinStore{}, Substitution{}, Atoms{C("nonvar(L)")}).verdict, AskVerdict::Unknown);
}

TEST(Ask, LocalsMayBeBoundGlobalsMayNot) {
  BuiltinStore s = told({"A = f(b)"});
  Substitution theta;
  theta.bind("X", parse_term("A"));
  // X is a head variable bound to the store term f(b); W is local.
  AskResult r = ask(s, theta, testing::parse_atoms("X = f(W)"));
  EXPECT_EQ(r.verdict, AskVerdict::Holds);
  EXPECT_EQ(r.locals.resolve(parse_term("W")), parse_term("b"));

  // Binding the store variable B would constrain the caller.
  Substitution open;
  open.bind("X", parse_term("B"));
  EXPECT_EQ(ask(s, open, testing::parse_atoms("X = c")).verdict, AskVerdict::Unknown);
  EXPECT_EQ(ask(s, theta, testing::parse_atoms("X = c")).verdict, AskVerdict::Fails);
}

TEST(Ask, DoesNotMutate) {
  BuiltinStore s = told({"A = 1"});
  Substitution before = s.bindings();
  Substitution theta;
  theta.bind("X", parse_term("A"));
  ask(s, theta, testing::parse_atoms("X = W, W < 3"));
  EXPECT_EQ(s.bindings(), before);
}

// Properties.

class StoreProperty : public ::testing::TestWithParam<unsigned> {};

std::vector<ConstraintAtom> random_equations(testing::Rng& rng) {
  std::vector<ConstraintAtom> out;
  for (int k = testing::uniform(rng, 1, 5); k > 0; --k) {
    Term l = testing::random_term(rng, 2);
    Term r = testing::random_term(rng, 2);
    out.emplace_back(Term::compound("=", {l, r}));
  }
  return out;
}

TEST_P(StoreProperty, TellOrderInsensitive) {
  testing::Rng rng(GetParam());
  const std::vector<std::string> vars = {"X", "Y", "Z"};
  for (int i = 0; i < 200; ++i) {
    auto eqs = random_equations(rng);
    auto shuffled = eqs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    BuiltinStore a;
    BuiltinStore b;
    for (const auto& e : eqs) a.tell(e);
    for (const auto& e : shuffled) b.tell(e);
    ASSERT_EQ(a.consistent(), b.consistent());
    if (!a.consistent()) continue;
    // Same equalities between variables and the same ground values.
    for (const auto& x : vars) {
      Term ax = a.normalize(Term::var(x));
      Term bx = b.normalize(Term::var(x));
      EXPECT_EQ(ax.ground(), bx.ground());
      if (ax.ground()) EXPECT_EQ(ax, bx);
      for (const auto& y : vars) EXPECT_EQ(ax == a.normalize(Term::var(y)), bx == b.normalize(Term::var(y)));
    }
  }
}

TEST_P(StoreProperty, FalseAlwaysFails) {
  testing::Rng rng(GetParam());
  for (int i = 0; i < 50; ++i) {
    BuiltinStore s;
    for (const auto& e : random_equations(rng)) s.tell(e);
    EXPECT_FALSE(tell(s, C("false")).consistent());
  }
}

TEST_P(StoreProperty, HoldsIsStableUnderExtension) {
  testing::Rng rng(GetParam());
  int holds = 0;
  for (int i = 0; i < 200; ++i) {
    BuiltinStore s;
    s.tell(C("X = A"));
    for (const auto& e : random_equations(rng)) s.tell(e);
    if (!s.consistent()) continue;
    Substitution theta;
    theta.bind("H", parse_term("A"));
    Term rhs = testing::random_term(rng, 2);
    if (testing::coin(rng)) rhs = testing::coin(rng) ? Term::var("W") : s.normalize(Term::var("A"));
    Atoms guard = {ConstraintAtom(Term::compound("=", {Term::var("H"), rhs}))};
    // Guard variables other than H are locals of the rule.
    AskResult r = ask(s, theta, guard);
    if (r.verdict != AskVerdict::Holds) continue;
    ++holds;
    BuiltinStore ext = tell(s, C("Unrelated = g(1)"));
    EXPECT_EQ(ask(ext, theta, guard).verdict, AskVerdict::Holds);
  }
  EXPECT_GT(holds, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, StoreProperty, ::testing::Values(21u, 22u, 23u));

}  // namespace
}  // namespace chr

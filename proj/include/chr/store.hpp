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

#ifndef CHR_STORE_HPP_
#define CHR_STORE_HPP_

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "chr/lang.hpp"
#include "chr/term.hpp"

namespace chr {

// A built-in that needs ground arguments was told with unbound ones.
class InstantiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conjunction of built-ins over finite trees, kept in solved form.
//
// or/3 and merge/3 whose inputs are not yet ground are kept as residual
// constraints and re-examined after every binding.
class BuiltinStore {
 public:
  const Substitution& bindings() const { return bindings_; }
  const std::vector<Term>& suspended() const { return suspended_; }
  bool failed() const { return failed_; }
  bool consistent() const { return !failed_; }

  // Throws InstantiationError for `<` or nonvar/1 on unbound arguments.
  void tell(const ConstraintAtom& c);
  // Bindings-resolved term with ground arithmetic folded.
  Term normalize(const Term& t) const;

 private:
  bool run_builtin(const Term& c);
  bool unify_and_wake(const Term& a, const Term& b);
  // Returns false when the residual can't be decided yet.
  bool try_residual(const Term& c, bool& ok);

  Substitution bindings_;
  std::vector<Term> suspended_;
  bool failed_ = false;
};

BuiltinStore tell(BuiltinStore s, const ConstraintAtom& c);

enum class AskVerdict { Holds, Fails, Unknown };

struct AskResult {
  AskVerdict verdict = AskVerdict::Unknown;
  // New bindings of the local variables, fully resolved.
  Substitution locals;
};

// Decides a guard already instantiated by the matcher. Only the variables in
// `locals` may receive bindings; any other new binding makes the answer
// Unknown. The store is not modified.
AskResult ask(const BuiltinStore& s, const Atoms& guard, const std::set<std::string>& locals);

// Convenience form: applies θ and treats every guard variable outside
// dom(θ) as local. Local names are kept apart from store names.
AskResult ask(const BuiltinStore& s, const Substitution& theta, const Atoms& guard);

}  // namespace chr

#endif  // CHR_STORE_HPP_

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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "chr/coind.hpp"
#include "chr/engine.hpp"
#include "chr/fixpoint.hpp"
#include "chr/hybrid.hpp"
#include "chr/lang.hpp"

namespace chr::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Config {
  std::int64_t step_limit = 100000;
  std::size_t bound = kDefaultBound;
  bool trace = false;
  int scale = 3;
  std::string mode = "lfp";
  bool lenient = false;
  std::string program_path;
  std::string goal;
  std::vector<std::string> roots;
  std::string left;
  std::string right;
  std::string automaton_path;
};

int cmd_run(const Config& c, std::ostream& out, std::ostream& err) {
  Program p = parse_program(read_file(c.program_path));
  Query q = parse_query(c.goal);
  RunOptions options;
  options.step_limit = c.step_limit;
  if (c.trace) options.trace_stream = &err;
  DerivationResult r = run(q, p, options);
  out << "status: " << to_string(r.status) << "\n";
  out << "steps: " << r.steps << "\n";
  if (r.status == RunStatus::Error) err << "error: " << r.message << "\n";
  if (r.status != RunStatus::Failed) out << render_final(r.final);
  switch (r.status) {
    case RunStatus::Success:
      return kSuccess;
    case RunStatus::Failed:
      return kNegative;
    case RunStatus::StepLimit:
      return kBounded;
    case RunStatus::Error:
      return kUsage;
  }
  return kInternal;
}

int cmd_translate(const Config& c, std::ostream& out, std::ostream& err) {
  Program p = parse_program(read_file(c.program_path));
  auto violations = validate_hybrid(p);
  if (!violations.empty()) {
    for (const auto& v : violations) err << (c.lenient ? "warning: " : "error: ") << v.rule << ": " << v.reason << "\n";
    if (!c.lenient) return kUsage;
  }
  TranslatedProgram t = translate(p, TranslateOptions{false});
  out << to_string(t.program);
  return kSuccess;
}

int cmd_fixpoint(const Config& c, std::ostream& out, std::ostream& err) {
  if (c.roots.empty()) throw UsageError("fixpoint needs at least one --root");
  Program p = parse_program(read_file(c.program_path));
  bool hybrid = c.mode == "hybrid";
  if (hybrid) err << "warning: confluence of the simplification rules is assumed, not checked\n";

  bool any_negative = false;
  bool any_bounded = false;
  for (const auto& text : c.roots) {
    CanonState root = canonical_goal(parse_query(text).goal, p, hybrid);
    GroundTransitionSystem ts = enumerate(p, {root}, c.bound, hybrid);
    Membership m = Membership::Inconclusive;
    if (c.mode == "lfp") {
      m = lfp_membership(ts, root);
    } else if (c.mode == "gfp") {
      m = gfp_membership(ts, root);
    } else {
      m = hybrid_membership(ts, p, root);
    }
    out << to_string(m) << "\t" << to_string(root) << "\n";
    any_negative = any_negative || m == Membership::NonMember;
    any_bounded = any_bounded || m == Membership::NoInconsistencyWithinBound || m == Membership::Inconclusive;
  }
  if (any_negative) return kNegative;
  return any_bounded ? kBounded : kSuccess;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Equal:
      return kSuccess;
    case Verdict::NotEqual:
      return kNegative;
    case Verdict::Limit:
      return kBounded;
  }
  return kInternal;
}

int cmd_regex(const Config& c, std::ostream& out, std::ostream& err) {
  Term e1;
  Term e2;
  try {
    e1 = parse_regex(c.left);
    e2 = parse_regex(c.right);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  RunOptions options;
  if (c.trace) options.trace_stream = &err;
  CheckResult r = regex_equal(e1, e2, c.step_limit, options);
  out << (r.verdict == Verdict::Limit ? "STEP-LIMIT" : to_string(r.verdict)) << "\n";
  return verdict_code(r.verdict);
}

int cmd_bisim(const Config& c, std::ostream& out, std::ostream& err) {
  Automaton aut;
  try {
    aut = load_automaton(read_file(c.automaton_path));
    for (const auto& s : {c.left, c.right}) {
      if (aut.dest.count(s) == 0) throw UsageError("unknown automaton state '" + s + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  RunOptions options;
  if (c.trace) options.trace_stream = &err;
  CheckResult r = bisim_check(aut, c.left, c.right, c.scale, c.step_limit, options);
  out << to_string(r.verdict) << "\n";
  return verdict_code(r.verdict);
}

int cmd_logical(const Config& c, std::ostream& out) {
  out << logical_reading(parse_program(read_file(c.program_path)));
  return kSuccess;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Constraint Handling Rules engine with coinductive checkers", "chr"};
  app.require_subcommand(1);
  app.add_option("--step-limit", c.step_limit, "Maximum number of transitions")->check(CLI::PositiveNumber);
  app.add_option("--bound", c.bound, "Maximum number of abstract states")->check(CLI::PositiveNumber);
  app.add_flag("--trace", c.trace, "Stream transitions to standard error");
  app.add_option("--scale", c.scale, "Copies of each constraint for bisim")->check(CLI::PositiveNumber);

  auto* run_cmd = app.add_subcommand("run", "Execute a goal under the prioritized semantics");
  run_cmd->add_option("program", c.program_path)->required();
  run_cmd->add_option("goal", c.goal)->required();

  auto* translate_cmd = app.add_subcommand("translate", "Print the persistent-constraint translation");
  translate_cmd->add_option("program", c.program_path)->required();
  translate_cmd->add_flag("--lenient", c.lenient, "Translate even if kept heads are not all persistent");

  auto* fix_cmd = app.add_subcommand("fixpoint", "Membership in a fixpoint semantics");
  fix_cmd->add_option("program", c.program_path)->required();
  fix_cmd->add_option("--mode", c.mode)->check(CLI::IsMember({"lfp", "gfp", "hybrid"}));
  fix_cmd->add_option("--root", c.roots, "Ground goal (repeatable)");

  auto* regex_cmd = app.add_subcommand("regex-eq", "Regular expression equivalence");
  regex_cmd->add_option("left", c.left)->required();
  regex_cmd->add_option("right", c.right)->required();

  auto* bisim_cmd = app.add_subcommand("bisim", "Bisimilarity of two automaton states");
  bisim_cmd->add_option("automaton", c.automaton_path)->required();
  bisim_cmd->add_option("s1", c.left)->required();
  bisim_cmd->add_option("s2", c.right)->required();

  auto* logical_cmd = app.add_subcommand("logical", "Print the logical reading of a program");
  logical_cmd->add_option("program", c.program_path)->required();

  // Global flags are accepted after the subcommand too.
  for (auto* sub : {run_cmd, translate_cmd, fix_cmd, regex_cmd, bisim_cmd, logical_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(c, out, err);
    if (translate_cmd->parsed()) return cmd_translate(c, out, err);
    if (fix_cmd->parsed()) return cmd_fixpoint(c, out, err);
    if (regex_cmd->parsed()) return cmd_regex(c, out, err);
    if (bisim_cmd->parsed()) return cmd_bisim(c, out, err);
    if (logical_cmd->parsed()) return cmd_logical(c, out);
  } catch (const ParseError& e) {
    err << "parse error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GroundEnumerationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace chr::cli

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

// Lexer, parser and printer for terms, queries and program files.

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "chr/lang.hpp"

namespace chr {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Quoted, Var, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Longest first.
constexpr std::string_view kPunct[] = {"<=>", "==>", "::", ":-", "(", ")", "[", "]", ",", "|", ".",
                                       "@",   "\\",  "=",  "<",  "~", "+", "-", "/"};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '%') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (c >= 0x80) throw ParseError("non-ASCII character outside a comment", line, col);
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Tok::Int;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = (std::isupper(c) || c == '_') ? Tok::Var : Tok::Ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '\'') {
      std::string text;
      std::size_t j = i + 1;
      for (;;) {
        if (j >= src.size()) throw ParseError("unterminated quoted atom", line, col);
        if (src[j] == '\\' && j + 1 < src.size()) {
          text += src[j + 1];
          j += 2;
          continue;
        }
        if (src[j] == '\'') break;
        text += src[j++];
      }
      tok.kind = Tok::Quoted;
      tok.text = std::move(text);
      advance(j + 1 - i);
    } else {
      bool found = false;
      for (std::string_view p : kPunct) {
        if (src.substr(i, p.size()) == p) {
          tok.kind = Tok::Punct;
          tok.text = std::string(p);
          advance(p.size());
          found = true;
          break;
        }
      }
      if (!found) throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", line, col);
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

struct OpInfo {
  int prec;
  bool left_assoc;  // yfx; otherwise xfx
};

const std::map<std::string, OpInfo, std::less<>>& infix_ops() {
  static const std::map<std::string, OpInfo, std::less<>> ops = {
      {"=", {700, false}}, {"<", {700, false}}, {"~", {700, false}}, {"+", {500, true}}, {"-", {500, true}}};
  return ops;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::Punct && peek(k).text == p;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.column);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }
  void expect(std::string_view p) {
    if (!at_punct(p)) {
      fail("expected '" + std::string(p) + "'" + (at_end() ? " before end of input" : ", found '" + peek().text + "'"));
    }
    next();
  }

  Term parse_expr(int max_prec) {
    Term left = parse_primary();
    int left_prec = 0;
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::Punct) break;
      auto it = infix_ops().find(t.text);
      if (it == infix_ops().end()) break;
      const OpInfo& op = it->second;
      if (op.prec > max_prec) break;
      if (op.left_assoc ? left_prec > op.prec : left_prec >= op.prec) break;
      std::string name = next().text;
      Term right = parse_expr(op.prec - 1);
      left = Term::compound(name, {left, right});
      left_prec = op.prec;
    }
    return left;
  }

  Term parse_primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Int:
        next();
        return Term::integer(to_int(t));
      case Tok::Var:
        next();
        if (t.text == "_") return Term::var("_" + std::to_string(++anon_));
        return Term::var(t.text);
      case Tok::Ident:
      case Tok::Quoted: {
        next();
        if (at_punct("(")) {
          next();
          std::vector<Term> args = parse_arglist(")");
          return Term::compound(t.text, std::move(args));
        }
        return Term::atom(t.text);
      }
      case Tok::Punct:
        if (t.text == "-" && peek(1).kind == Tok::Int) {
          next();
          return Term::integer(-to_int(next()));
        }
        if (t.text == "(") {
          next();
          std::vector<Term> items = parse_arglist(")");
          return Term::tuple(items);
        }
        if (t.text == "[") {
          next();
          if (at_punct("]")) {
            next();
            return Term::nil();
          }
          std::vector<Term> items;
          items.push_back(parse_expr(999));
          while (at_punct(",")) {
            next();
            items.push_back(parse_expr(999));
          }
          Term tail = Term::nil();
          if (at_punct("|")) {
            next();
            tail = parse_expr(999);
          }
          expect("]");
          return Term::list(items, tail);
        }
        break;
      case Tok::End:
        fail("unexpected end of input");
    }
    fail("unexpected '" + t.text + "'");
  }

  std::vector<Term> parse_arglist(std::string_view close) {
    std::vector<Term> items;
    items.push_back(parse_expr(999));
    while (at_punct(",")) {
      next();
      items.push_back(parse_expr(999));
    }
    expect(close);
    return items;
  }

  // atoms = atom { "," atom }
  std::vector<std::pair<Term, Token>> parse_atoms() {
    std::vector<std::pair<Term, Token>> out;
    for (;;) {
      Token at = peek();
      Term t = parse_expr(999);
      if (!t.is_callable()) fail("constraint expected, found " + to_string(t), at);
      out.emplace_back(std::move(t), at);
      if (!at_punct(",")) break;
      next();
    }
    return out;
  }

  static std::int64_t to_int(const Token& t) {
    std::int64_t v = 0;
    auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (res.ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
    return v;
  }

  int anon_ = 0;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Atoms to_head(Parser& p, const std::vector<std::pair<Term, Token>>& raw) {
  Atoms out;
  for (const auto& [t, at] : raw) {
    ConstraintAtom a(t);
    if (a.is_builtin()) p.fail("built-in constraint " + to_string(t) + " in rule head", at);
    out.push_back(std::move(a));
  }
  return out;
}

Atoms to_guard(Parser& p, const std::vector<std::pair<Term, Token>>& raw) {
  Atoms out;
  for (const auto& [t, at] : raw) {
    ConstraintAtom a(t);
    if (a.is_user()) p.fail("user constraint " + to_string(t) + " in guard", at);
    out.push_back(std::move(a));
  }
  return out;
}

Atoms to_body(Parser& p, const std::vector<std::pair<Term, Token>>& raw) {
  Atoms out;
  for (const auto& [t, at] : raw) {
    ConstraintAtom a(t);
    if (a.is_builtin() && a.functor() == "nonvar") p.fail("nonvar/1 is only allowed in guards", at);
    out.push_back(std::move(a));
  }
  return out;
}

Symbol parse_directive_symbol(Parser& p) {
  bool paren = false;
  if (p.at_punct("(")) {
    p.next();
    paren = true;
  }
  Token t = p.next();
  bool ok = t.kind == Tok::Ident || t.kind == Tok::Quoted ||
            (t.kind == Tok::Punct && infix_ops().count(t.text) != 0);
  if (!ok) p.fail("symbol expected in directive", t);
  if (paren) p.expect(")");
  p.expect("/");
  Token n = p.next();
  if (n.kind != Tok::Int) p.fail("arity expected in directive", n);
  return Symbol{t.text, static_cast<std::size_t>(Parser::to_int(n))};
}

bool is_plain_ident(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string quote_atom(std::string_view s) {
  if (is_plain_ident(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

void print_term(std::ostream& os, const Term& t, int max_prec);

void print_tuple_items(std::ostream& os, const Term& t) {
  Term cur = t;
  bool first = true;
  while (cur.is_compound() && cur.arity() == 2 && cur.name() == Term::kComma) {
    if (!first) os << ',';
    print_term(os, cur.arg(0), 999);
    first = false;
    cur = cur.arg(1);
  }
  os << ',';
  print_term(os, cur, 999);
}

void print_term(std::ostream& os, const Term& t, int max_prec) {
  switch (t.kind()) {
    case Term::Kind::Int:
      os << t.int_value();
      return;
    case Term::Kind::Var:
      os << t.name();
      return;
    case Term::Kind::Atom:
      if (t.is_nil()) {
        os << Term::kNil;
      } else if (infix_ops().count(t.name()) != 0 || t.name() == Term::kComma) {
        os << '\'' << t.name() << '\'';
      } else {
        os << quote_atom(t.name());
      }
      return;
    case Term::Kind::Compound:
      break;
  }
  if (t.is_cons()) {
    os << '[';
    Term cur = t;
    bool first = true;
    while (cur.is_cons()) {
      if (!first) os << ',';
      print_term(os, cur.arg(0), 999);
      first = false;
      cur = cur.arg(1);
    }
    if (!cur.is_nil()) {
      os << '|';
      print_term(os, cur, 999);
    }
    os << ']';
    return;
  }
  if (t.arity() == 2 && t.name() == Term::kComma) {
    os << '(';
    print_tuple_items(os, t);
    os << ')';
    return;
  }
  if (t.arity() == 2) {
    auto it = infix_ops().find(t.name());
    if (it != infix_ops().end()) {
      const OpInfo& op = it->second;
      bool paren = op.prec > max_prec;
      if (paren) os << '(';
      print_term(os, t.arg(0), op.left_assoc ? op.prec : op.prec - 1);
      os << t.name();
      print_term(os, t.arg(1), op.prec - 1);
      if (paren) os << ')';
      return;
    }
  }
  if (infix_ops().count(t.name()) != 0 || t.name() == Term::kComma || t.name() == Term::kCons) {
    os << '\'' << t.name() << '\'';
  } else {
    os << quote_atom(t.name());
  }
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i > 0) os << ',';
    print_term(os, t.arg(i), 999);
  }
  os << ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 1200);
  return os.str();
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.parse_expr(1200);
  if (!p.at_end()) p.fail("trailing input after term");
  return t;
}

Query parse_query(std::string_view text) {
  Parser p(text);
  Query q;
  if (p.at_end()) return q;
  for (auto& [t, at] : p.parse_atoms()) {
    ConstraintAtom a(t);
    if (a.is_builtin() && a.functor() == "nonvar") p.fail("nonvar/1 is only allowed in guards", at);
    collect_vars(t, q.globals);
    q.goal.push_back(std::move(a));
  }
  if (p.at_punct(".")) p.next();
  if (!p.at_end()) p.fail("unexpected '" + p.peek().text + "' in query");
  return q;
}

Program parse_program(std::string_view text, const ParseOptions& options) {
  Parser p(text);
  Program prog;
  std::set<std::string> names;
  int anonymous = 0;
  while (!p.at_end()) {
    if (p.at_punct(":-")) {
      p.next();
      Token kind = p.next();
      if (kind.kind != Tok::Ident || (kind.text != "persistent" && kind.text != "linear"))
        p.fail("expected 'persistent' or 'linear'", kind);
      Symbol s = parse_directive_symbol(p);
      p.expect(".");
      (kind.text == "persistent" ? prog.persistent_symbols : prog.linear_symbols).insert(s);
      continue;
    }
    Token start = p.peek();
    Rule rule;
    std::optional<int> priority;
    auto try_priority = [&] {
      if (!priority && p.peek().kind == Tok::Int && p.at_punct("::", 1)) {
        priority = static_cast<int>(Parser::to_int(p.next()));
        p.next();
        if (*priority < 1) p.fail("priority must be positive", start);
      }
    };
    try_priority();
    if ((p.peek().kind == Tok::Ident || p.peek().kind == Tok::Quoted) && p.at_punct("@", 1)) {
      rule.name = p.next().text;
      p.next();
    }
    try_priority();
    if (p.at_punct("<=>") || p.at_punct("==>") || p.at_punct("\\")) p.fail("rule has empty heads");
    auto first = p.parse_atoms();
    bool simpagation = false;
    std::vector<std::pair<Term, Token>> second;
    if (p.at_punct("\\")) {
      p.next();
      simpagation = true;
      if (p.at_punct("<=>") || p.at_punct("==>")) p.fail("empty removed head after '\\'");
      second = p.parse_atoms();
    }
    Token arrow = p.next();
    if (arrow.kind != Tok::Punct || (arrow.text != "<=>" && arrow.text != "==>"))
      p.fail("expected '<=>' or '==>'", arrow);
    if (arrow.text == "==>") {
      if (simpagation) p.fail("propagation rule cannot have a removed head", arrow);
      rule.kept = to_head(p, first);
    } else if (simpagation) {
      rule.kept = to_head(p, first);
      rule.removed = to_head(p, second);
    } else {
      rule.removed = to_head(p, first);
    }
    auto rest = p.parse_atoms();
    if (p.at_punct("|")) {
      p.next();
      rule.guard = to_guard(p, rest);
      rule.body = to_body(p, p.parse_atoms());
    } else {
      rule.body = to_body(p, rest);
    }
    p.expect(".");
    if (rule.name.empty()) rule.name = "rule_" + std::to_string(++anonymous);
    if (!names.insert(rule.name).second) p.fail("duplicate rule name '" + rule.name + "'", start);
    rule.priority = priority.value_or(rule.is_propagation() ? kPropagationPriority : kSimplificationPriority);
    prog.rules.push_back(std::move(rule));
  }
  if (options.reject_reserved) {
    auto used = reserved_symbols_used(prog);
    if (!used.empty()) {
      const Symbol& s = *used.begin();
      throw ParseError("reserved symbol " + s.name + "/" + std::to_string(s.arity) + " used in hybrid program", 1, 1);
    }
  }
  return prog;
}

std::string to_string(const ConstraintAtom& atom) {
  std::ostringstream os;
  print_term(os, atom.term(), 999);
  return os.str();
}

std::string to_string(const Atoms& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(atoms[i]);
  }
  return out;
}

std::string to_string(const Rule& rule) {
  std::string out = quote_atom(rule.name) + " @ " + std::to_string(rule.priority) + " :: ";
  if (rule.is_propagation()) {
    out += to_string(rule.kept) + " ==> ";
  } else {
    if (!rule.kept.empty()) out += to_string(rule.kept) + " \\ ";
    out += to_string(rule.removed) + " <=> ";
  }
  if (!rule.guard.empty()) out += to_string(rule.guard) + " | ";
  out += to_string(rule.body) + ".";
  return out;
}

std::string to_string(const Program& program) {
  std::string out;
  auto directive = [&](const char* kind, const Symbol& s) {
    std::string name = infix_ops().count(s.name) != 0 ? s.name : quote_atom(s.name);
    out += std::string(":- ") + kind + " " + name + "/" + std::to_string(s.arity) + ".\n";
  };
  for (const Symbol& s : program.persistent_symbols) directive("persistent", s);
  for (const Symbol& s : program.linear_symbols) directive("linear", s);
  for (const Rule& r : program.rules) out += to_string(r) + "\n";
  return out;
}

}  // namespace chr

#pragma once

#include "semistar/claims.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semistar {

struct SourcePos {
  int line = 0, col = 0;
};

struct Expr {
  enum class Kind { Number, Ident, Call, Binary, Neg, List };
  Kind kind = Kind::Number;
  SourcePos pos;
  std::string text;  // digits, identifier, callee or operator
  std::vector<Expr> args;
  std::vector<std::pair<std::string, Expr>> kwargs;

  std::string str() const;
  // Structural equality, ignoring positions.
  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }
};

struct Statement {
  enum class Kind { Bind, Eval, Bracket, Compare, Check };
  Kind kind = Kind::Eval;
  SourcePos pos;
  std::string keyword;  // Bind: domain, ideal, prime, pool, op, poly or let
  std::string name;     // Bind target, or the claim id of a Check
  std::vector<Expr> exprs;
  std::optional<int> slice;
  std::vector<std::pair<std::string, Expr>> bindings;

  std::string str() const;
  bool operator==(const Statement& o) const;
  bool operator!=(const Statement& o) const { return !(*this == o); }
};

struct Script {
  std::vector<Statement> statements;

  // Throws ParseError with the line and column of the offending token.
  static Script parse(const std::string& text);
  std::string print() const;
  std::uint64_t hash() const;
  bool operator==(const Script& o) const { return statements == o.statements; }
  bool operator!=(const Script& o) const { return !(*this == o); }
};

// Rejects unknown names, arity and keyword mismatches before anything is evaluated.
void analyze(const Script& s);

// Evaluates statements in order, printing one block per command. Returns the results of check commands.
std::vector<ClaimResult> run_script(const Script& s, std::ostream& out, const SuiteConfig& cfg);

}  // namespace semistar

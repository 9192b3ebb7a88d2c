#include "doctest.h"
#include "semistar/script.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

using namespace semistar;

namespace {

SourcePos error_pos(const std::string& text, bool with_analysis = false) {
  try {
    Script s = Script::parse(text);
    if (with_analysis) analyze(s);
  } catch (const ParseError& e) {
    return {e.line, e.col};
  }
  return {0, 0};
}

std::string error_message(const std::string& text) {
  try {
    analyze(Script::parse(text));
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Random expression trees built directly, so the printer/parser pair is checked against a known tree.
Expr random_expr(std::mt19937_64& rng, int depth) {
  static const char* names[] = {"D", "E", "P2", "X", "w", "s", "A'"};
  static const char* funcs[] = {"idl", "pidl", "tri", "spectral", "meet", "stable"};
  static const char* ops[] = {"+", "-", "*", "/", "^"};
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 1), small(0, 2), num(0, 40);
  Expr e;
  switch (pick(rng)) {
    case 0:
      e.kind = Expr::Kind::Number;
      e.text = std::to_string(num(rng));
      return e;
    case 1:
      e.kind = Expr::Kind::Ident;
      e.text = names[std::uniform_int_distribution<int>(0, 6)(rng)];
      return e;
    case 2: {
      e.kind = Expr::Kind::Call;
      e.text = funcs[std::uniform_int_distribution<int>(0, 5)(rng)];
      const int n = small(rng);
      for (int i = 0; i < n; ++i) e.args.push_back(random_expr(rng, depth - 1));
      if (small(rng) == 0) e.kwargs.emplace_back("T", random_expr(rng, 0));
      return e;
    }
    case 3:
      e.kind = Expr::Kind::Neg;
      e.args.push_back(random_expr(rng, depth - 1));
      return e;
    case 4: {
      e.kind = Expr::Kind::List;
      const int n = small(rng);
      for (int i = 0; i < n; ++i) e.args.push_back(random_expr(rng, depth - 1));
      return e;
    }
    default:
      e.kind = Expr::Kind::Binary;
      e.text = ops[std::uniform_int_distribution<int>(0, 4)(rng)];
      e.args.push_back(random_expr(rng, depth - 1));
      e.args.push_back(random_expr(rng, depth - 1));
      return e;
  }
}

std::string run(const std::string& text) {
  std::ostringstream os;
  SuiteConfig cfg;
  run_script(Script::parse(text), os, cfg);
  return os.str();
}

nlohmann::json strip_ms(const std::string& json) {
  auto doc = nlohmann::json::parse(json);
  for (auto& r : doc) r.erase("ms");
  return doc;
}

}  // namespace

TEST_CASE("statement forms") {
  Script s = Script::parse("domain D = order(m=-3, f=2)\nop s = spectral(prime(D,2,[2, 1+w]))\n");
  REQUIRE(s.statements.size() == 2);
  CHECK(s.statements[0].kind == Statement::Kind::Bind);
  CHECK(s.statements[0].keyword == "domain");
  CHECK(s.statements[0].exprs[0].kwargs.size() == 2);
  CHECK(s.statements[1].keyword == "op");
  CHECK(s.statements[1].exprs[0].str() == "spectral(prime(D, 2, [2, 1 + w]))");
  CHECK(s.statements[1].pos.line == 2);

  Script c = Script::parse("check thm2.1-claim1 with slice=3, seed=11\n# comment\n\ncheck rem2.6c\n");
  REQUIRE(c.statements.size() == 2);
  CHECK(c.statements[0].name == "thm2.1-claim1");
  CHECK(c.statements[0].bindings.size() == 2);
  CHECK(c.statements[1].name == "rem2.6c");

  Script b = Script::parse("bracket tri(d, T=K, B=4) on pidl(2, X) slice 5\ncompare(s, v) on [E1, E2]\n");
  CHECK(b.statements[0].kind == Statement::Kind::Bracket);
  CHECK(b.statements[0].slice == 5);
  CHECK(b.statements[1].kind == Statement::Kind::Compare);
  CHECK(b.statements[1].exprs.size() == 3);
}

TEST_CASE("precedence and associativity") {
  auto e = [](const std::string& t) { return Script::parse("eval " + t).statements[0].exprs[0]; };
  Expr a = e("1 - 2 - 3");
  CHECK(a.args[0].kind == Expr::Kind::Binary);  // (1 - 2) - 3
  Expr p = e("X^2^3");
  CHECK(p.args[1].kind == Expr::Kind::Binary);  // X^(2^3)
  Expr n = e("-X^2");
  CHECK(n.kind == Expr::Kind::Neg);
  CHECK(n.args[0].text == "^");
  Expr m = e("2*w + 1");
  CHECK(m.text == "+");
  CHECK(e("(1 + w)*X").str() == "(1 + w)*X");
  CHECK(e("v^(t^E)").str() == "v^t^E");
}

TEST_CASE("print/parse round trip on random trees") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    Statement st;
    st.kind = Statement::Kind::Eval;
    st.exprs.push_back(random_expr(rng, 4));
    Script s;
    s.statements.push_back(st);
    const std::string text = s.print();
    Script t = Script::parse(text);
    REQUIRE_MESSAGE(t == s, text);
    CHECK(t.print() == text);
    CHECK(t.hash() == s.hash());
  }
  Script x = Script::parse("eval 1 + 2\n"), y = Script::parse("eval 1 + 3\n");
  CHECK(x.hash() != y.hash());
}

TEST_CASE("round trip keeps every statement kind") {
  const std::string text =
      "domain D = order(m=-3, f=2)\n"
      "prime P = prime(D, 2, [2, 1 + w])\n"
      "ideal E = idl(2, 1 + w)*P^2\n"
      "op s = stable(v, prime_norm=20)\n"
      "eval v^E slice 2\n"
      "bracket tri(d, T=K, B=4) on pidl(2, X) slice 5\n"
      "compare(s, v) on [E, P]\n"
      "check prop2.8 with samples=3, seed=7\n";
  Script s = Script::parse(text);
  CHECK(s.print() == text);
  CHECK(Script::parse(s.print()) == s);
}

TEST_CASE("syntax errors carry line and column") {
  SourcePos p = error_pos("domain D = Z\neval idl(\n");
  CHECK(p.line == 2);
  CHECK(p.col == 9);
  p = error_pos("eval idl(1, [2, 3\n");
  CHECK(p.col == 13);
  p = error_pos("eval 1 +\n");
  CHECK(p.col == 9);
  p = error_pos("domain D = Z $\n");
  CHECK(p.col == 14);
  p = error_pos("frobnicate D\n");
  CHECK(p.col == 1);
  p = error_pos("eval tri(d, T=K, 4)\n");
  CHECK(p.col == 18);
}

TEST_CASE("analysis rejects bad names before evaluation") {
  SourcePos p = error_pos("domain D = Z\neval v^F\n", true);
  CHECK(p.line == 2);
  CHECK(p.col == 8);
  CHECK(error_message("domain D = Z\neval spectral()\n").find("takes 1 or more arguments") != std::string::npos);
  CHECK(error_message("domain D = Z\neval meet(idl(1))\n").find("takes 2 arguments") != std::string::npos);
  CHECK(error_message("eval idl(w)\n").find("needs a declared domain") != std::string::npos);
  CHECK(error_message("domain D = Z\neval tri(d, T=Q)\n").find("T must be") != std::string::npos);
  CHECK(error_message("domain D = Z\neval stable(d, pool=3)\n").find("no argument 'pool'") != std::string::npos);
  CHECK(error_message("check thm9.9\n").find("unknown claim id") != std::string::npos);
  CHECK(error_message("check axioms with depth=3\n").find("unknown check binding") != std::string::npos);
  CHECK(error_message("domain D = Z\nideal v = idl(2)\n").find("builtin") != std::string::npos);
  // Analysis happens before evaluation: the first statement would be costly.
  CHECK(error_message("check all\neval nope\n").find("unknown identifier") != std::string::npos);
}

TEST_CASE("script evaluation") {
  const std::string out = run(
      "domain D = order(m=-3, f=2)\n"
      "prime P = prime(D, 2, [2, 1 + w])\n"
      "eval colon(unit(D), P)\n"
      "eval maximal(D)\n"
      "eval v^P\n"
      "eval P^2\n"
      "eval 2*P\n"
      "bracket tri(d) on pidl(2, X) slice 2\n");
  std::istringstream in(out);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 9);
  auto rhs = [](const std::string& l) { return l.substr(l.find(" = ") + 3); };
  CHECK(rhs(lines[0]) == rhs(lines[1]));
  CHECK(lines[2].find("[exact]") != std::string::npos);
  CHECK(rhs(lines[3]) == rhs(lines[4]));
  CHECK(lines[8] == "  slice 2: exact span{1, w, X, w*X, X^2, w*X^2}");

  CHECK_THROWS_AS(run("domain D = Z\nprime P = prime(D, 4)\n"), ParseError);
  CHECK_THROWS_AS(run("domain D = Z\nideal I = idl(0)\n"), ParseError);
  CHECK_THROWS_AS(run("domain D = Z\nop o = ring(D, idl(1/2))\n"), ParseError);
  const std::string cmp = run("domain D = order(m=-3, f=2)\ncompare(d, v) on [idl(2, 1 + w), idl(3)]\n");
  CHECK(cmp.find("compare(d, v) = ") == 0);
}

TEST_CASE("reports and exit codes") {
  ClaimResult ok{"a", "x", Status::Confirmed, std::nullopt, {{"slice", "5"}}, 1.25};
  ClaimResult bad{"b", "y", Status::Refuted, std::string("E=idl(2)"), {}, 0};
  ClaimResult unk{"c", "z", Status::Inconclusive, std::nullopt, {}, 0};
  CHECK(exit_code({ok}) == 0);
  CHECK(exit_code({ok, unk}) == 2);
  CHECK(exit_code({ok, unk, bad}) == 1);
  CHECK(exit_code({}) == 3);
  auto doc = nlohmann::json::parse(report_json({ok, bad}));
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["status"] == "confirmed");
  CHECK(doc[0]["witness"].is_null());
  CHECK(doc[0]["budgets"]["slice"] == "5");
  CHECK(doc[1]["witness"] == "E=idl(2)");
  std::vector<std::string> keys;
  for (auto it = doc[0].begin(); it != doc[0].end(); ++it) keys.push_back(it.key());
  CHECK(keys.size() == 6);
  CHECK(report_json({}) == "[]\n");
  CHECK(report_json({ok}, false).find("\"ms\"") == std::string::npos);
}

TEST_CASE("suite runner") {
  CHECK_THROWS_AS(run_suite("nope", {}), std::invalid_argument);
  SuiteConfig only_z;
  only_z.domains = {"Z"};
  auto none = run_suite("divisorial", only_z);
  CHECK(none.empty());
  CHECK(exit_code(none) == 3);

  auto r = run_suite("rem2.6c", {});
  REQUIRE(r.size() == 1);
  CHECK(r[0].status == Status::Confirmed);

  SuiteConfig cfg;
  cfg.samples = 10;
  auto a = run_suite("lem4.6", cfg), b = run_suite("lem4.6", cfg);
  CHECK(strip_ms(report_json(a)) == strip_ms(report_json(b)));
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].claim <= a[i].claim);

  cfg.budget.seed = 8;
  auto c = run_suite("lem4.6", cfg);
  CHECK(c.size() == a.size());

  for (const auto& id : claim_ids()) CHECK(is_claim_id(id));
  for (const char* l : {"Z", "Z[sqrt(-3)]", "Z[(1+sqrt(5))/2]"}) CHECK(domain_label(domain_from_label(l)) == l);
  CHECK(domain_label(domain_from_label("order(m=-1, f=3)")) == "order(m=-1, f=3)");
  CHECK_THROWS(domain_from_label("Q"));
  CHECK(budget_profile("quick").slice == 3);
  CHECK_THROWS(budget_profile("huge"));
}

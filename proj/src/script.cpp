#include "semistar/script.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <variant>

namespace semistar {

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
  enum class Kind { Ident, Number, Punct, Newline, End };
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, int c) { out.push_back({k, std::move(t), {line, c}}); };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      push(Token::Kind::Newline, "\n", col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    const int start = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string t;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) t += src[i++];
      col += static_cast<int>(t.size());
      push(Token::Kind::Number, t, start);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string t;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '\''))
        t += src[i++];
      col += static_cast<int>(t.size());
      push(Token::Kind::Ident, t, start);
      continue;
    }
    if (std::string("()[],=+-*/^.").find(c) != std::string::npos) {
      push(Token::Kind::Punct, std::string(1, c), start);
      ++i;
      ++col;
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  push(Token::Kind::Newline, "\n", col);
  out.push_back({Token::Kind::End, "", {line, col}});
  return out;
}

// ---------------------------------------------------------------- parser

const std::set<std::string> kBindKeywords{"domain", "ideal", "prime", "pool", "op", "poly", "let"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Script run() {
    Script s;
    while (peek().kind != Token::Kind::End) {
      if (peek().kind == Token::Kind::Newline) {
        ++p_;
        continue;
      }
      s.statements.push_back(statement());
      if (peek().kind != Token::Kind::Newline) fail(peek(), "expected end of line");
      ++p_;
    }
    return s;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;

  const Token& peek() const { return t_[p_]; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    const std::string what = t.kind == Token::Kind::Newline || t.kind == Token::Kind::End ? "end of line" : "'" + t.text + "'";
    throw ParseError(t.pos.line, t.pos.col, msg + ", found " + what);
  }
  bool is_punct(const char* p) const { return peek().kind == Token::Kind::Punct && peek().text == p; }
  bool is_word(const char* w) const { return peek().kind == Token::Kind::Ident && peek().text == w; }
  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "'");
    ++p_;
  }
  std::string ident(const char* what) {
    if (peek().kind != Token::Kind::Ident) fail(peek(), std::string("expected ") + what);
    return t_[p_++].text;
  }
  int integer(const char* what) {
    if (peek().kind != Token::Kind::Number) fail(peek(), std::string("expected ") + what);
    return std::stoi(t_[p_++].text);
  }

  Statement statement() {
    Statement st;
    st.pos = peek().pos;
    const std::string head = ident("a statement keyword");
    if (kBindKeywords.count(head)) {
      st.kind = Statement::Kind::Bind;
      st.keyword = head;
      st.name = ident("a name");
      expect_punct("=");
      st.exprs.push_back(expr());
    } else if (head == "eval") {
      st.kind = Statement::Kind::Eval;
      st.exprs.push_back(expr());
      slice_clause(st);
    } else if (head == "bracket") {
      st.kind = Statement::Kind::Bracket;
      st.exprs.push_back(expr());
      if (!is_word("on")) fail(peek(), "expected 'on'");
      ++p_;
      st.exprs.push_back(expr());
      slice_clause(st);
    } else if (head == "compare") {
      st.kind = Statement::Kind::Compare;
      const Token open = peek();
      expect_punct("(");
      st.exprs.push_back(expr());
      expect_punct(",");
      st.exprs.push_back(expr());
      if (!is_punct(")")) unclosed(open);
      ++p_;
      if (!is_word("on")) fail(peek(), "expected 'on'");
      ++p_;
      st.exprs.push_back(expr());
    } else if (head == "check") {
      st.kind = Statement::Kind::Check;
      st.name = claim_id();
      if (is_word("with")) ++p_;
      while (peek().kind == Token::Kind::Ident) {
        std::string k = ident("a binding name");
        expect_punct("=");
        st.bindings.emplace_back(std::move(k), expr());
        if (!is_punct(",")) break;
        ++p_;
      }
    } else {
      throw ParseError(st.pos.line, st.pos.col, "unknown statement '" + head + "'");
    }
    return st;
  }

  // Claim ids such as thm2.1-claim1 span several adjacent tokens.
  std::string claim_id() {
    if (peek().kind != Token::Kind::Ident) fail(peek(), "expected a claim id");
    std::string id = t_[p_].text;
    SourcePos end{t_[p_].pos.line, t_[p_].pos.col + static_cast<int>(t_[p_].text.size())};
    ++p_;
    while ((peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Number ||
            (peek().kind == Token::Kind::Punct && (peek().text == "." || peek().text == "-"))) &&
           peek().pos.line == end.line && peek().pos.col == end.col) {
      id += peek().text;
      end.col += static_cast<int>(peek().text.size());
      ++p_;
    }
    return id;
  }

  void slice_clause(Statement& st) {
    if (!is_word("slice")) return;
    ++p_;
    st.slice = integer("a slice degree");
  }

  bool at_eol() const { return peek().kind == Token::Kind::Newline || peek().kind == Token::Kind::End; }

  [[noreturn]] void unclosed(const Token& open) {
    if (peek().kind == Token::Kind::Newline || peek().kind == Token::Kind::End)
      throw ParseError(open.pos.line, open.pos.col, "unclosed '" + open.text + "'");
    fail(peek(), "expected ',' or closing bracket");
  }

  Expr expr() { return additive(); }

  Expr binary(const Token& op, Expr l, Expr r) {
    Expr e;
    e.kind = Expr::Kind::Binary;
    e.pos = op.pos;
    e.text = op.text;
    e.args = {std::move(l), std::move(r)};
    return e;
  }

  Expr additive() {
    Expr l = multiplicative();
    while (is_punct("+") || is_punct("-")) {
      const Token op = t_[p_++];
      l = binary(op, std::move(l), multiplicative());
    }
    return l;
  }
  Expr multiplicative() {
    Expr l = unary();
    while (is_punct("*") || is_punct("/")) {
      const Token op = t_[p_++];
      l = binary(op, std::move(l), unary());
    }
    return l;
  }
  Expr unary() {
    if (is_punct("-")) {
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.pos = t_[p_++].pos;
      e.args.push_back(unary());
      return e;
    }
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (is_punct("^")) {
      const Token op = t_[p_++];
      return binary(op, std::move(base), unary());
    }
    return base;
  }

  Expr primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Number) {
      ++p_;
      Expr e;
      e.kind = Expr::Kind::Number;
      e.pos = t.pos;
      e.text = t.text;
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      ++p_;
      Expr e;
      e.kind = Expr::Kind::Ident;
      e.pos = t.pos;
      e.text = t.text;
      if (is_punct("(")) {
        e.kind = Expr::Kind::Call;
        const Token open = t_[p_++];
        if (!is_punct(")")) {
          while (true) {
            if (at_eol()) unclosed(open);
            if (peek().kind == Token::Kind::Ident && p_ + 1 < t_.size() && t_[p_ + 1].kind == Token::Kind::Punct &&
                t_[p_ + 1].text == "=") {
              std::string k = t_[p_].text;
              p_ += 2;
              e.kwargs.emplace_back(std::move(k), expr());
            } else {
              if (!e.kwargs.empty()) fail(peek(), "positional argument after keyword argument");
              e.args.push_back(expr());
            }
            if (is_punct(",")) {
              ++p_;
              continue;
            }
            if (!is_punct(")")) unclosed(open);
            break;
          }
        }
        ++p_;
      }
      return e;
    }
    if (t.kind == Token::Kind::Punct && (t.text == "(" || t.text == "[")) {
      const Token open = t_[p_++];
      const char* close = open.text == "(" ? ")" : "]";
      if (open.text == "(") {
        if (at_eol()) unclosed(open);
        Expr inner = expr();
        if (!is_punct(close)) unclosed(open);
        ++p_;
        return inner;
      }
      Expr e;
      e.kind = Expr::Kind::List;
      e.pos = open.pos;
      if (!is_punct(close)) {
        while (true) {
          if (at_eol()) unclosed(open);
          e.args.push_back(expr());
          if (is_punct(",")) {
            ++p_;
            continue;
          }
          if (!is_punct(close)) unclosed(open);
          break;
        }
      }
      ++p_;
      return e;
    }
    fail(t, "expected an expression");
  }
};

// ---------------------------------------------------------------- printing

int precedence(const Expr& e) {
  if (e.kind == Expr::Kind::Binary) {
    if (e.text == "+" || e.text == "-") return 1;
    if (e.text == "*" || e.text == "/") return 2;
    return 4;
  }
  if (e.kind == Expr::Kind::Neg) return 3;
  return 5;
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + e.str() + ")" : e.str(); }

std::string print_bindings(const std::vector<std::pair<std::string, Expr>>& bs) {
  std::string s;
  for (std::size_t i = 0; i < bs.size(); ++i) s += (i ? ", " : "") + bs[i].first + "=" + bs[i].second.str();
  return s;
}

}  // namespace

std::string Expr::str() const {
  switch (kind) {
    case Kind::Number:
    case Kind::Ident: return text;
    case Kind::Call: {
      std::string s = text + "(";
      for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i].str();
      if (!kwargs.empty()) s += (args.empty() ? "" : ", ") + print_bindings(kwargs);
      return s + ")";
    }
    case Kind::List: {
      std::string s = "[";
      for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i].str();
      return s + "]";
    }
    case Kind::Neg: return "-" + wrap(args[0], precedence(args[0]) < 3 || args[0].kind == Kind::Neg);
    case Kind::Binary: {
      const int p = precedence(*this);
      if (text == "^") return wrap(args[0], precedence(args[0]) <= 4) + "^" + wrap(args[1], precedence(args[1]) < 3);
      const std::string op = p == 1 ? " " + text + " " : text;
      return wrap(args[0], precedence(args[0]) < p) + op + wrap(args[1], precedence(args[1]) <= p);
    }
  }
  return "";
}

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && text == o.text && args == o.args && kwargs == o.kwargs;
}

std::string Statement::str() const {
  const std::string sl = slice ? " slice " + std::to_string(*slice) : "";
  switch (kind) {
    case Kind::Bind: return keyword + " " + name + " = " + exprs[0].str();
    case Kind::Eval: return "eval " + exprs[0].str() + sl;
    case Kind::Bracket: return "bracket " + exprs[0].str() + " on " + exprs[1].str() + sl;
    case Kind::Compare: return "compare(" + exprs[0].str() + ", " + exprs[1].str() + ") on " + exprs[2].str();
    case Kind::Check: return "check " + name + (bindings.empty() ? "" : " with " + print_bindings(bindings));
  }
  return "";
}

bool Statement::operator==(const Statement& o) const {
  return kind == o.kind && keyword == o.keyword && name == o.name && exprs == o.exprs && slice == o.slice &&
         bindings == o.bindings;
}

Script Script::parse(const std::string& text) { return Parser(lex(text)).run(); }

std::string Script::print() const {
  std::string s;
  for (const auto& st : statements) s += st.str() + "\n";
  return s;
}

std::uint64_t Script::hash() const {
  // FNV-1a over the canonical print.
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : print()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// ---------------------------------------------------------------- analysis

namespace {

struct Signature {
  int min_args, max_args;  // max < 0: unbounded
  std::set<std::string> kwargs;
};

const std::map<std::string, Signature>& signatures() {
  static const std::map<std::string, Signature> s{
      {"order", {0, 2, {"m", "f"}}},   {"idl", {1, -1, {}}},        {"pidl", {1, -1, {}}},
      {"prime", {2, 3, {}}},           {"primes", {2, 2, {}}},      {"maximal", {0, 1, {}}},
      {"unit", {0, 1, {}}},            {"content", {1, 1, {}}},     {"meet", {2, 2, {}}},
      {"colon", {2, 2, {}}},           {"d", {0, 1, {}}},           {"e", {0, 1, {}}},
      {"v", {0, 1, {}}},               {"t", {0, 1, {}}},           {"w", {0, 1, {}}},
      {"b", {0, 1, {}}},               {"spectral", {1, -1, {}}},   {"stable", {1, 1, {"prime_norm"}}},
      {"eab", {1, 1, {"pool", "prime_norm"}}}, {"finite", {1, 1, {}}}, {"ring", {1, 2, {}}},
      {"wedge", {1, -1, {}}},          {"tri", {1, 1, {"T", "B"}}}, {"bracketop", {1, 1, {}}},
      {"nagata", {1, 1, {}}},          {"bext", {0, 1, {}}},        {"extend", {1, 1, {}}}};
  return s;
}

const std::set<std::string> kBareNames{"Z", "X", "w", "d", "e", "v", "t", "b"};
const std::set<std::string> kCheckKeys{"slice", "mult_cap", "witness_deg", "prime_norm", "seed", "samples", "domain"};

class Analyzer {
 public:
  void run(const Script& s) {
    for (const auto& st : s.statements) statement(st);
  }

 private:
  std::set<std::string> names_;
  bool have_domain_ = false;

  [[noreturn]] static void fail(SourcePos p, const std::string& msg) { throw ParseError(p.line, p.col, msg); }

  void statement(const Statement& st) {
    switch (st.kind) {
      case Statement::Kind::Bind:
        expr(st.exprs[0]);
        if (st.keyword == "domain") have_domain_ = true;
        if (kBareNames.count(st.name) || signatures().count(st.name))
          fail(st.pos, "'" + st.name + "' is a builtin name");
        names_.insert(st.name);
        return;
      case Statement::Kind::Eval:
      case Statement::Kind::Bracket:
      case Statement::Kind::Compare:
        for (const auto& e : st.exprs) expr(e);
        if (st.slice && (*st.slice < 0 || *st.slice > 12)) fail(st.pos, "slice out of range 0..12");
        return;
      case Statement::Kind::Check:
        if (st.name != "all" && !is_claim_id(st.name)) fail(st.pos, "unknown claim id '" + st.name + "'");
        for (const auto& [k, v] : st.bindings) {
          if (!kCheckKeys.count(k)) fail(v.pos, "unknown check binding '" + k + "'");
          if (k == "domain") {
            if (v.kind != Expr::Kind::Ident) fail(v.pos, "domain binding takes a domain name");
            if (v.text != "Z") expr(v);
          } else if (v.kind != Expr::Kind::Number) {
            fail(v.pos, "binding '" + k + "' takes an integer");
          }
        }
        return;
    }
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Number: return;
      case Expr::Kind::Ident:
        if (names_.count(e.text)) return;
        if (kBareNames.count(e.text)) {
          if (e.text != "Z" && !have_domain_) fail(e.pos, "'" + e.text + "' needs a declared domain");
          return;
        }
        fail(e.pos, "unknown identifier '" + e.text + "'");
      case Expr::Kind::Call: {
        auto it = signatures().find(e.text);
        if (it == signatures().end()) fail(e.pos, "unknown function '" + e.text + "'");
        const Signature& sig = it->second;
        const int n = static_cast<int>(e.args.size());
        if (n < sig.min_args || (sig.max_args >= 0 && n > sig.max_args)) {
          std::string want = std::to_string(sig.min_args);
          if (sig.max_args != sig.min_args) want += sig.max_args < 0 ? " or more" : ".." + std::to_string(sig.max_args);
          fail(e.pos, "'" + e.text + "' takes " + want + " arguments, got " + std::to_string(n));
        }
        if (e.text == "order" && n == 0 && e.kwargs.empty()) fail(e.pos, "'order' needs m");
        const bool needs_domain = e.text != "order" && e.text != "spectral" && e.text != "stable" && e.text != "eab" &&
                                  e.text != "finite" && e.text != "wedge" && e.text != "tri" && e.text != "bracketop" &&
                                  e.text != "nagata" && e.text != "extend" && n == 0;
        if (needs_domain && !have_domain_) fail(e.pos, "'" + e.text + "' needs a declared domain");
        for (const auto& a : e.args) expr(a);
        for (const auto& [k, v] : e.kwargs) {
          if (!sig.kwargs.count(k)) fail(v.pos, "'" + e.text + "' has no argument '" + k + "'");
          if (e.text == "tri" && k == "T") {
            if (v.kind != Expr::Kind::Ident || (v.text != "K" && v.text != "D" && v.text != "O"))
              fail(v.pos, "T must be K, D or O");
            continue;
          }
          expr(v);
        }
        return;
      }
      case Expr::Kind::Binary:
      case Expr::Kind::Neg:
      case Expr::Kind::List:
        for (const auto& a : e.args) expr(a);
        return;
    }
  }
};

}  // namespace

void analyze(const Script& s) { Analyzer().run(s); }

// ---------------------------------------------------------------- evaluation

namespace {

using List = std::vector<struct Value>;

struct Value {
  std::variant<std::monostate, BigInt, Poly, DomainPtr, FractionalIdeal, PolyIdeal, PrimeIdeal, SemistarOp,
               PolyOperation, Certified, PolyValue, List>
      v;
};

enum class Hint { Any, Elem, Op };

std::string kind_name(const Value& x) {
  static const char* names[] = {"nothing", "integer", "element", "domain", "ideal", "polynomial ideal", "prime",
                                "operation", "polynomial operation", "value", "sliced value", "list"};
  return names[x.v.index()];
}

std::string slice_str(const Module& m) {
  const Field& k = m.domain()->field();
  auto polys = [&](const RatMatrix& rows) {
    std::string s = "{";
    for (Index i = 0; i < rows.rows(); ++i) s += (i ? ", " : "") + Poly::from_coefficient_vector(k, rows.row(i)).str();
    return s + "}";
  };
  switch (m.kind()) {
    case Module::Kind::Lattice: return m.lat().is_zero() ? "0" : "span" + polys(m.lat().basis());
    case Module::Kind::Space: return m.is_all() ? "K[X]" : "Kspan" + polys(m.span().basis());
    case Module::Kind::Semilocal: {
      std::string s = "loc{";
      for (std::size_t i = 0; i < m.parts().size(); ++i)
        s += (i ? "; " : "") + m.parts()[i].first.label() + ": span" + polys(m.parts()[i].second.basis());
      return s + "}";
    }
  }
  return "";
}

std::string slice_certified_str(const Certified& c) {
  switch (c.mode()) {
    case Mode::Exact: return "exact " + slice_str(c.value());
    case Mode::LowerBound: return "lower " + slice_str(*c.lower());
    case Mode::UpperBound: return "upper " + slice_str(*c.upper());
    case Mode::Bracket: return "bracket " + slice_str(*c.lower()) + " .. " + slice_str(*c.upper());
  }
  return "";
}

class Evaluator {
 public:
  Evaluator(std::ostream& out, SuiteConfig cfg) : out_(out), cfg_(std::move(cfg)) {}

  std::vector<ClaimResult> run(const Script& s) {
    for (const auto& st : s.statements) statement(st);
    return checks_;
  }

 private:
  std::ostream& out_;
  SuiteConfig cfg_;
  std::map<std::string, Value> env_;
  DomainPtr dom_;
  std::vector<ClaimResult> checks_;

  [[noreturn]] static void fail(SourcePos p, const std::string& msg) { throw ParseError(p.line, p.col, msg); }

  const DomainPtr& domain(SourcePos p) const {
    if (!dom_) fail(p, "no domain declared");
    return dom_;
  }

  template <class T>
  const T& as(const Value& x, const Expr& e, const char* want) const {
    if (auto* p = std::get_if<T>(&x.v)) return *p;
    fail(e.pos, std::string("expected ") + want + ", got " + kind_name(x) + " in '" + e.str() + "'");
  }

  Poly elem(const Value& x, const Expr& e) {
    if (auto* n = std::get_if<BigInt>(&x.v)) return Poly::constant(FieldElement(domain(e.pos)->field(), Rational(*n)));
    return as<Poly>(x, e, "an element");
  }
  FieldElement scalar(const Value& x, const Expr& e) {
    Poly p = elem(x, e);
    if (p.degree() > 0) fail(e.pos, "expected an element of K, got a polynomial");
    return p.is_zero() ? FieldElement(domain(e.pos)->field()) : p.coeff(0);
  }
  int small_int(const Value& x, const Expr& e) {
    const BigInt& n = as<BigInt>(x, e, "an integer");
    if (n > 1000000) fail(e.pos, "integer too large");
    return static_cast<int>(n);
  }
  FractionalIdeal ideal(const Value& x, const Expr& e) {
    if (auto* p = std::get_if<PrimeIdeal>(&x.v)) return p->ideal();
    if (auto* c = std::get_if<Certified>(&x.v)) {
      if (c->is_exact())
        if (auto i = c->value().as_ideal()) return *i;
      fail(e.pos, "value of '" + e.str() + "' is not an exact fractional ideal");
    }
    return as<FractionalIdeal>(x, e, "an ideal");
  }
  SemistarOp op(const Expr& e) { return as<SemistarOp>(eval(e, Hint::Op), e, "an operation"); }
  std::vector<PrimeIdeal> primes_of(const Value& x, const Expr& e) {
    if (auto* p = std::get_if<PrimeIdeal>(&x.v)) return {*p};
    std::vector<PrimeIdeal> out;
    for (const auto& y : as<List>(x, e, "primes")) out.push_back(as<PrimeIdeal>(y, e, "a prime"));
    return out;
  }
  std::vector<FractionalIdeal> ideals_of(const Value& x, const Expr& e) {
    std::vector<FractionalIdeal> out;
    if (std::get_if<List>(&x.v)) {
      for (const auto& y : std::get<List>(x.v)) out.push_back(ideal(y, e));
    } else {
      out.push_back(ideal(x, e));
    }
    return out;
  }
  DomainPtr domain_arg(const Expr& call, std::size_t i) {
    if (call.args.size() > i) return as<DomainPtr>(eval(call.args[i]), call.args[i], "a domain");
    return domain(call.pos);
  }

  Value eval(const Expr& e, Hint hint = Hint::Any) {
    switch (e.kind) {
      case Expr::Kind::Number: return {BigInt(e.text)};
      case Expr::Kind::Ident: return ident(e, hint);
      case Expr::Kind::List: {
        List items;
        for (const auto& a : e.args) items.push_back(eval(a, hint));
        return {items};
      }
      case Expr::Kind::Neg: return {-elem(eval(e.args[0], Hint::Elem), e.args[0])};
      case Expr::Kind::Binary: return binary(e);
      case Expr::Kind::Call: return call(e);
    }
    return {};
  }

  Value ident(const Expr& e, Hint hint) {
    if (auto it = env_.find(e.text); it != env_.end()) return it->second;
    if (e.text == "Z") return {OrderDomain::integers()};
    const DomainPtr& d = domain(e.pos);
    if (e.text == "X") return {Poly::x(d->field())};
    if (e.text == "w" && hint != Hint::Op) return {Poly::constant(FieldElement::sqrt_m(d->field()))};
    return {SemistarOp::builtin(e.text, d)};
  }

  Value binary(const Expr& e) {
    const Expr& l = e.args[0];
    const Expr& r = e.args[1];
    if (e.text == "^") {
      const bool power = r.kind == Expr::Kind::Number;
      Value a = eval(l, power ? Hint::Any : Hint::Op);
      Value b = eval(r);
      if (power) {
        const int k = small_int(b, r);
        if (std::get_if<FractionalIdeal>(&a.v) || std::get_if<PrimeIdeal>(&a.v)) return {ideal_pow(ideal(a, l), k)};
        if (auto* p = std::get_if<PolyIdeal>(&a.v)) return {poly_ideal_pow(*p, k)};
        return {poly_pow(elem(a, l), k)};
      }
      if (auto* o = std::get_if<SemistarOp>(&a.v)) {
        if (auto* c = std::get_if<Certified>(&b.v)) {
          if (!c->is_exact()) fail(r.pos, "cannot apply an operation to a bracket");
          return {apply(*o, c->value())};
        }
        return {apply(*o, ideal(b, r))};
      }
      if (auto* o = std::get_if<PolyOperation>(&a.v)) {
        Budget bud = cfg_.budget;
        return {o->eval(as<PolyIdeal>(b, r, "a polynomial ideal"), bud)};
      }
      fail(l.pos, "left side of '^' is neither an operation nor raised to an integer");
    }
    Value a = eval(l), b = eval(r);
    const bool ia = std::get_if<FractionalIdeal>(&a.v) || std::get_if<PrimeIdeal>(&a.v);
    const bool ib = std::get_if<FractionalIdeal>(&b.v) || std::get_if<PrimeIdeal>(&b.v);
    const bool pa = std::get_if<PolyIdeal>(&a.v) != nullptr, pb = std::get_if<PolyIdeal>(&b.v) != nullptr;
    if (e.text == "+") {
      if (ia && ib) return {ideal(a, l) + ideal(b, r)};
      if (pa && pb) return {std::get<PolyIdeal>(a.v) + std::get<PolyIdeal>(b.v)};
      return {elem(a, l) + elem(b, r)};
    }
    if (e.text == "-") return {elem(a, l) - elem(b, r)};
    if (e.text == "*") {
      if (ia && ib) return {ideal(a, l) * ideal(b, r)};
      if (pa && pb) return {std::get<PolyIdeal>(a.v) * std::get<PolyIdeal>(b.v)};
      if (ia) return {ideal(a, l).scaled(scalar(b, r))};
      if (ib) return {ideal(b, r).scaled(scalar(a, l))};
      if (pa) return {std::get<PolyIdeal>(a.v).scaled(elem(b, r))};
      if (pb) return {std::get<PolyIdeal>(b.v).scaled(elem(a, l))};
      return {elem(a, l) * elem(b, r)};
    }
    // "/": only by nonzero constants.
    const FieldElement c = scalar(b, r);
    if (c.is_zero()) fail(r.pos, "division by zero");
    if (ia) return {ideal(a, l).scaled(c.inverse())};
    return {c.inverse() * elem(a, l)};
  }

  Value call(const Expr& e) {
    const std::string& f = e.text;
    auto kw = [&](const std::string& k) -> const Expr* {
      for (const auto& [n, v] : e.kwargs)
        if (n == k) return &v;
      return nullptr;
    };
    if (f == "order") {
      const Expr* m = kw("m");
      const Expr* fc = kw("f");
      const Expr& me = m ? *m : e.args.at(0);
      auto int_of = [&](const Expr& x) {
        const bool neg = x.kind == Expr::Kind::Neg;
        const Expr& lit = neg ? x.args[0] : x;
        if (lit.kind != Expr::Kind::Number) fail(x.pos, "expected an integer literal");
        const long long v = std::stoll(lit.text);
        return neg ? -v : v;
      };
      long long mv = int_of(me), fv = 1;
      if (fc) fv = int_of(*fc);
      else if (e.args.size() > 1) fv = int_of(e.args[1]);
      try {
        return {OrderDomain::order(mv, fv)};
      } catch (const std::exception& ex) {
        fail(e.pos, ex.what());
      }
    }
    if (f == "idl" || f == "pidl") {
      std::size_t first = 0;
      DomainPtr d;
      if (!e.args.empty() && e.args[0].kind == Expr::Kind::Ident) {
        auto it = env_.find(e.args[0].text);
        if (it != env_.end() && std::get_if<DomainPtr>(&it->second.v)) {
          d = std::get<DomainPtr>(it->second.v);
          first = 1;
        }
      }
      if (!d) d = domain(e.pos);
      const DomainPtr saved = dom_;
      dom_ = d;
      std::vector<Poly> gens;
      for (std::size_t i = first; i < e.args.size(); ++i) gens.push_back(elem(eval(e.args[i], Hint::Elem), e.args[i]));
      dom_ = saved;
      if (f == "pidl") return {PolyIdeal(d, gens)};
      std::vector<FieldElement> xs;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].degree() > 0) fail(e.args[first + i].pos, "ideal generators must be elements of K");
        if (!gens[i].is_zero()) xs.push_back(gens[i].coeff(0));
      }
      if (xs.empty()) fail(e.pos, "the zero ideal is not a fractional ideal");
      return {FractionalIdeal::generated(d, xs)};
    }
    if (f == "prime") {
      DomainPtr d = domain_arg(e, 0);
      const BigInt p = as<BigInt>(eval(e.args[1]), e.args[1], "a rational prime");
      if (!is_prime_int(p)) fail(e.args[1].pos, p.str() + " is not prime");
      auto ps = d->primes_above(p);
      if (e.args.size() == 2) return {ps.front()};
      const Expr& sel = e.args[2];
      if (sel.kind == Expr::Kind::Number) {
        const int i = small_int(eval(sel), sel);
        if (i < 1 || i > static_cast<int>(ps.size())) fail(sel.pos, "prime index out of range");
        return {ps[static_cast<std::size_t>(i - 1)]};
      }
      const DomainPtr saved = dom_;
      dom_ = d;
      Value gens = eval(sel, Hint::Elem);
      std::vector<FieldElement> xs;
      for (const auto& g : as<List>(gens, sel, "a generator list")) xs.push_back(scalar(g, sel));
      dom_ = saved;
      const auto target = FractionalIdeal::generated(d, xs);
      for (const auto& q : ps)
        if (q.ideal() == target) return {q};
      fail(sel.pos, target.str() + " is not a prime of " + d->name() + " above " + p.str());
    }
    if (f == "primes") {
      DomainPtr d = domain_arg(e, 0);
      List out;
      for (const auto& q : d->primes_up_to(small_int(eval(e.args[1]), e.args[1]))) out.push_back({q});
      return {out};
    }
    if (f == "maximal") return {FractionalIdeal::maximal_order(domain_arg(e, 0))};
    if (f == "unit") return {FractionalIdeal::unit(domain_arg(e, 0))};
    if (f == "content") return {content(as<PolyIdeal>(eval(e.args[0]), e.args[0], "a polynomial ideal"))};
    if (f == "meet") return {intersect(ideal(eval(e.args[0]), e.args[0]), ideal(eval(e.args[1]), e.args[1]))};
    if (f == "colon") return {colon(ideal(eval(e.args[0]), e.args[0]), ideal(eval(e.args[1]), e.args[1]))};
    if (f == "extend") return {PolyIdeal::extended(ideal(eval(e.args[0]), e.args[0]))};
    if (f.size() == 1) return {SemistarOp::builtin(f, domain_arg(e, 0))};
    if (f == "spectral") {
      std::vector<PrimeIdeal> delta;
      for (const auto& a : e.args)
        for (const auto& p : primes_of(eval(a), a)) delta.push_back(p);
      return {SemistarOp::spectral(delta.front().ideal().domain(), delta)};
    }
    if (f == "stable") {
      const Expr* pn = kw("prime_norm");
      return {SemistarOp::stable(op(e.args[0]), pn ? small_int(eval(*pn), *pn) : cfg_.budget.prime_norm)};
    }
    if (f == "eab") {
      SemistarOp s = op(e.args[0]);
      if (const Expr* pool = kw("pool")) {
        Value pv = eval(*pool);
        std::vector<FractionalIdeal> ideals = ideals_of(pv, *pool);
        return {SemistarOp::eab(s, ideals)};
      }
      const Expr* pn = kw("prime_norm");
      return {SemistarOp::eab(s, pn ? small_int(eval(*pn), *pn) : cfg_.budget.prime_norm)};
    }
    if (f == "finite") return {SemistarOp::finite_type(op(e.args[0]))};
    if (f == "ring") {
      const Expr& re = e.args.back();
      DomainPtr d = e.args.size() == 2 ? domain_arg(e, 0) : domain(e.pos);
      FractionalIdeal r = ideal(eval(re), re);
      const ZLattice& l = r.lattice();
      if (!l.contains(d->ring()) || !l.contains(product(l, l, d->field(), 1)))
        fail(re.pos, r.str() + " is not an overring of " + d->name());
      return {SemistarOp::overring(d, l, re.str())};
    }
    if (f == "wedge") {
      std::vector<SemistarOp> ops;
      for (const auto& a : e.args) ops.push_back(op(a));
      return {SemistarOp::wedge(ops)};
    }
    if (f == "tri") {
      SemistarOp s = op(e.args[0]);
      OverringTag t = OverringTag::K;
      if (const Expr* te = kw("T")) t = te->text == "D" ? OverringTag::D : te->text == "O" ? OverringTag::O : OverringTag::K;
      PolyOperation po = blacktriangle_op(s, t);
      if (const Expr* be = kw("B")) {
        const int cap = small_int(eval(*be), *be);
        auto inner = po.eval;
        po.eval = [inner, cap](const PolyIdeal& a, const Budget& b) {
          Budget bb = b;
          bb.mult_cap = cap;
          return inner(a, bb);
        };
        po.name = "tri(" + s.name() + ", T=" + to_string(t) + ", B=" + std::to_string(cap) + ")";
      }
      return {po};
    }
    if (f == "bracketop" || f == "nagata") {
      SemistarOp s = op(e.args[0]);
      if (s.kind() != SemistarOp::Kind::Spectral) fail(e.args[0].pos, "'" + f + "' takes a spectral operation");
      return {f == "nagata" ? nagata_op(s.delta()) : curly_op(s.delta())};
    }
    if (f == "bext") {
      if (!e.args.empty()) domain_arg(e, 0);
      return {b_extension_op()};
    }
    fail(e.pos, "unknown function '" + f + "'");
  }

  std::string value_str(const Value& x) const {
    return std::visit(
        [&](const auto& y) -> std::string {
          using T = std::decay_t<decltype(y)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            return "nothing";
          } else if constexpr (std::is_same_v<T, DomainPtr>) {
            return y->name();
          } else if constexpr (std::is_same_v<T, SemistarOp>) {
            return "operation " + y.name();
          } else if constexpr (std::is_same_v<T, PolyOperation>) {
            return "polynomial operation " + y.name;
          } else if constexpr (std::is_same_v<T, Certified>) {
            return y.str() + "  [" + to_string(y.mode()) + "]";
          } else if constexpr (std::is_same_v<T, PolyValue>) {
            return y.whole_field ? "K(X)" : "sliced value";
          } else if constexpr (std::is_same_v<T, List>) {
            std::string s = "[";
            for (std::size_t i = 0; i < y.size(); ++i) s += (i ? ", " : "") + value_str(y[i]);
            return s + "]";
          } else {
            return y.str();
          }
        },
        x.v);
  }

  void print_value(const std::string& label, const Value& x, std::optional<int> slice) {
    const auto* pv = std::get_if<PolyValue>(&x.v);
    if (!pv) {
      out_ << label << " = " << value_str(x) << "\n";
      return;
    }
    out_ << label << (pv->whole_field ? " = K(X)" : "") << "\n";
    const int top = std::min<int>(slice.value_or(cfg_.budget.slice), static_cast<int>(pv->slices.size()) - 1);
    for (int n = 0; n <= top; ++n)
      out_ << "  slice " << n << ": " << slice_certified_str(pv->slices[static_cast<std::size_t>(n)]) << "\n";
  }

  Value eval_sliced(const Expr& e, std::optional<int> slice) {
    const int saved = cfg_.budget.slice;
    if (slice) cfg_.budget.slice = *slice;
    Value v = eval(e);
    cfg_.budget.slice = saved;
    return v;
  }

  void statement(const Statement& st) {
    switch (st.kind) {
      case Statement::Kind::Bind: {
        Value v = eval(st.exprs[0], st.keyword == "op" ? Hint::Op : Hint::Any);
        if (std::holds_alternative<PolyValue>(v.v)) fail(st.exprs[0].pos, "cannot bind a sliced value");
        const std::map<std::string, std::size_t> want{{"domain", 3}, {"ideal", 4}, {"poly", 5}, {"prime", 6}, {"pool", 11}};
        if (auto it = want.find(st.keyword); it != want.end() && v.v.index() != it->second) {
          const bool ideal_ok = st.keyword == "ideal" && (std::get_if<PrimeIdeal>(&v.v) || std::get_if<Certified>(&v.v));
          if (ideal_ok)
            v = {ideal(v, st.exprs[0])};
          else
            fail(st.exprs[0].pos, "'" + st.keyword + "' binding got " + kind_name(v));
        }
        if (st.keyword == "op" && !std::get_if<SemistarOp>(&v.v) && !std::get_if<PolyOperation>(&v.v))
          fail(st.exprs[0].pos, "'op' binding got " + kind_name(v));
        if (st.keyword == "domain") dom_ = std::get<DomainPtr>(v.v);
        env_[st.name] = v;
        return;
      }
      case Statement::Kind::Eval: {
        Value v = eval_sliced(st.exprs[0], st.slice);
        print_value(st.exprs[0].str(), v, st.slice);
        return;
      }
      case Statement::Kind::Bracket: {
        Expr app;
        app.kind = Expr::Kind::Binary;
        app.pos = st.pos;
        app.text = "^";
        app.args = {st.exprs[0], st.exprs[1]};
        Value v = eval_sliced(app, st.slice);
        print_value(st.exprs[0].str() + " on " + st.exprs[1].str(), v, st.slice);
        return;
      }
      case Statement::Kind::Compare: {
        SemistarOp a = op(st.exprs[0]), b = op(st.exprs[1]);
        Value on = eval(st.exprs[2]);
        Comparison c = compare(a, b, ideals_of(on, st.exprs[2]));
        out_ << "compare(" << a.name() << ", " << b.name() << ") = " << to_string(c.relation);
        if (c.witness) out_ << "  witness " << c.witness->str();
        if (c.inconclusive) out_ << "  (" << c.inconclusive << " samples undecided)";
        out_ << "\n";
        return;
      }
      case Statement::Kind::Check: {
        SuiteConfig cfg = cfg_;
        for (const auto& [k, v] : st.bindings) {
          if (k == "domain") {
            Value dv = eval(v);
            cfg.domains.push_back(domain_label(as<DomainPtr>(dv, v, "a domain")));
            continue;
          }
          const BigInt n = as<BigInt>(eval(v), v, "an integer");
          if (k == "seed") {
            cfg.budget.seed = static_cast<std::uint64_t>(n);
            continue;
          }
          const int x = small_int({n}, v);
          if (k == "slice") cfg.budget.slice = x;
          else if (k == "mult_cap") cfg.budget.mult_cap = x;
          else if (k == "witness_deg") cfg.budget.witness_deg = x;
          else if (k == "prime_norm") cfg.budget.prime_norm = x;
          else if (k == "samples") cfg.samples = x;
        }
        auto rs = run_suite(st.name, cfg);
        out_ << report_table(rs);
        checks_.insert(checks_.end(), rs.begin(), rs.end());
        return;
      }
    }
  }
};

}  // namespace

std::vector<ClaimResult> run_script(const Script& s, std::ostream& out, const SuiteConfig& cfg) {
  analyze(s);
  return Evaluator(out, cfg).run(s);
}

}  // namespace semistar

#include "semistar/poly.hpp"

#include <cctype>

namespace semistar {

Poly::Poly(const Field& k, std::vector<FieldElement> coeffs) : field_(k), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != k) throw std::invalid_argument("mixed-field operands");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const FieldElement& c, int k) {
  std::vector<FieldElement> v(static_cast<std::size_t>(k) + 1, FieldElement(c.field()));
  v[static_cast<std::size_t>(k)] = c;
  return Poly(c.field(), std::move(v));
}

FieldElement Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElement(field_);
  return c_[static_cast<std::size_t>(i)];
}

FieldElement Poly::leading() const {
  if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

Poly Poly::shifted(int k) const {
  if (is_zero()) return *this;
  std::vector<FieldElement> v(static_cast<std::size_t>(k), FieldElement(field_));
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(field_, std::move(v));
}

Poly Poly::derivative() const {
  std::vector<FieldElement> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(FieldElement::from_int(field_, i) * c_[static_cast<std::size_t>(i)]);
  return Poly(field_, std::move(v));
}

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement acc(field_);
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[static_cast<std::size_t>(i)];
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly operator+(const Poly& f, const Poly& g) {
  if (f.field_ != g.field_) throw std::invalid_argument("mixed-field operands");
  std::vector<FieldElement> v(std::max(f.c_.size(), g.c_.size()), FieldElement(f.field_));
  for (std::size_t i = 0; i < f.c_.size(); ++i) v[i] = f.c_[i];
  for (std::size_t i = 0; i < g.c_.size(); ++i) v[i] += g.c_[i];
  return Poly(f.field_, std::move(v));
}

Poly operator-(const Poly& f, const Poly& g) { return f + (-g); }

Poly operator*(const Poly& f, const Poly& g) {
  if (f.field_ != g.field_) throw std::invalid_argument("mixed-field operands");
  if (f.is_zero() || g.is_zero()) return Poly(f.field_);
  std::vector<FieldElement> v(f.c_.size() + g.c_.size() - 1, FieldElement(f.field_));
  for (std::size_t i = 0; i < f.c_.size(); ++i)
    for (std::size_t j = 0; j < g.c_.size(); ++j) v[i + j] += f.c_[i] * g.c_[j];
  return Poly(f.field_, std::move(v));
}

Poly operator*(const FieldElement& c, const Poly& f) { return Poly::constant(c) * f; }

bool Poly::operator<(const Poly& g) const {
  if (degree() != g.degree()) return degree() < g.degree();
  for (int i = degree(); i >= 0; --i) {
    const auto& a = c_[static_cast<std::size_t>(i)];
    const auto& b = g.c_[static_cast<std::size_t>(i)];
    if (a != b) return a < b;
  }
  return false;
}

RatVector Poly::coefficient_vector(int n) const {
  const int r = field_.degree();
  RatVector v = RatVector::Zero(r * (n + 1));
  for (int i = 0; i <= std::min(n, degree()); ++i) {
    auto cs = c_[static_cast<std::size_t>(i)].coords();
    for (int j = 0; j < r; ++j) v(r * i + j) = cs[static_cast<std::size_t>(j)];
  }
  return v;
}

Poly Poly::from_coefficient_vector(const Field& k, const RatVector& v) {
  const int r = k.degree();
  std::vector<FieldElement> c;
  for (Index i = 0; i + r <= v.size(); i += r) c.push_back(FieldElement::from_coords(k, &v(i)));
  return Poly(k, std::move(c));
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    FieldElement c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    bool neg = (c.is_rational() && c.a() < 0) || (c.a() == 0 && c.b() < 0);
    if (neg) c = -c;
    std::string s = c.str();
    bool compound = !c.is_rational() && c.a() != 0;
    std::string mon = i == 0 ? "" : (i == 1 ? "X" : "X^" + std::to_string(i));
    std::string term;
    if (i == 0)
      term = compound && !first ? "(" + s + ")" : s;
    else if (s == "1")
      term = mon;
    else
      term = (compound ? "(" + s + ")" : s) + "*" + mon;
    if (first)
      out = (neg ? "-" : "") + term;
    else
      out += (neg ? " - " : " + ") + term;
    first = false;
  }
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly q(f.field()), r = f;
  FieldElement lc_inv = g.leading().inverse();
  while (!r.is_zero() && r.degree() >= g.degree()) {
    Poly t = Poly::monomial(r.leading() * lc_inv, r.degree() - g.degree());
    q += t;
    r = r - t * g;
  }
  return {q, r};
}

bool divides(const Poly& g, const Poly& f) { return divmod(f, g).second.is_zero(); }

Poly exact_div(const Poly& f, const Poly& g) {
  auto [q, r] = divmod(f, g);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly poly_gcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  Poly a = f.monic(), b = g.monic();
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_pow(const Poly& f, int k) {
  Poly r = Poly::constant(FieldElement::from_int(f.field(), 1));
  for (int i = 0; i < k; ++i) r = r * f;
  return r;
}

namespace {

class TextParser {
 public:
  TextParser(const Field& k, const std::string& s) : k_(k), s_(s) {}

  Poly run() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Poly expr() {
    Poly acc = term();
    while (true) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }
  Poly term() {
    Poly acc = factor();
    while (true) {
      if (eat('*')) {
        acc = acc * factor();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Poly d = factor();
        if (d.degree() != 0) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        acc = d.leading().inverse() * acc;
      } else {
        return acc;
      }
    }
  }
  Poly factor() {
    if (eat('-')) return -factor();
    Poly base = primary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = poly_pow(base, std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }
  Poly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(FieldElement(k_, Rational(BigInt(s_.substr(start, pos_ - start)))));
    }
    if (c == 'w') {
      ++pos_;
      if (k_.is_rational()) fail("w is undefined over Q");
      return Poly::constant(FieldElement::sqrt_m(k_));
    }
    if (c == 'X') {
      ++pos_;
      return Poly::x(k_);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Field k_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const Field& k, const std::string& text) { return TextParser(k, text).run(); }

FieldElement FieldElement::parse(const Field& k, const std::string& text) {
  Poly p = Poly::parse(k, text);
  if (p.degree() > 0) throw ParseError(1, 1, "expected a field element, got a polynomial");
  return p.is_zero() ? FieldElement(k) : p.leading();
}

}  // namespace semistar

#include "semistar/field.hpp"

#include <stdexcept>

namespace semistar {

bool is_squarefree(std::int64_t m) {
  std::int64_t a = m < 0 ? -m : m;
  if (a == 0) return false;
  for (std::int64_t d = 2; d * d <= a; ++d)
    if (a % (d * d) == 0) return false;
  return true;
}

Field Field::quadratic(std::int64_t m) {
  if (m == 0 || m == 1 || !is_squarefree(m))
    throw std::invalid_argument("field: m must be squarefree and different from 0, 1");
  return Field(m);
}

std::string Field::str() const {
  return is_rational() ? std::string("Q") : "Q(sqrt(" + std::to_string(m_) + "))";
}

FieldElement::FieldElement(const Field& k, const Rational& a, const Rational& b) : field_(k) {
  if (k.is_rational() && b != 0) throw std::invalid_argument("field element: sqrt part in Q");
  den_ = lcm_int(den(a), den(b));
  na_ = num(a) * (den_ / den(a));
  nb_ = num(b) * (den_ / den(b));
  normalize();
}

FieldElement FieldElement::sqrt_m(const Field& k) {
  if (k.is_rational()) throw std::invalid_argument("w is undefined over Q");
  return FieldElement(k, Rational(0), Rational(1));
}

void FieldElement::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    na_ = -na_;
    nb_ = -nb_;
  }
  BigInt g = mp::gcd(mp::gcd(na_, nb_), den_);
  if (g > 1) {
    na_ /= g;
    nb_ /= g;
    den_ /= g;
  }
  if (na_ == 0 && nb_ == 0) den_ = 1;
}

FieldElement FieldElement::conjugate() const {
  FieldElement r = *this;
  r.nb_ = -r.nb_;
  return r;
}

Rational FieldElement::norm() const {
  return Rational(na_ * na_ - BigInt(field_.m()) * nb_ * nb_ * (field_.is_rational() ? 0 : 1),
                  den_ * den_);
}

Rational FieldElement::trace() const { return Rational(BigInt(field_.degree()) * na_, den_); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (field_.is_rational()) return FieldElement(field_, Rational(1) / a());
  Rational n = norm();
  FieldElement c = conjugate();
  return FieldElement(field_, c.a() / n, c.b() / n);
}

std::vector<Rational> FieldElement::coords() const {
  if (field_.is_rational()) return {a()};
  return {a(), b()};
}

FieldElement FieldElement::from_coords(const Field& k, const Rational* c) {
  return k.is_rational() ? FieldElement(k, c[0]) : FieldElement(k, c[0], c[1]);
}

RatMatrix FieldElement::mult_matrix() const {
  if (field_.is_rational()) {
    RatMatrix m(1, 1);
    m(0, 0) = a();
    return m;
  }
  RatMatrix m(2, 2);
  Rational c = a(), d = b();
  m(0, 0) = c;
  m(0, 1) = d;
  m(1, 0) = Rational(field_.m()) * d;
  m(1, 1) = c;
  return m;
}

static void check_same(const FieldElement& x, const FieldElement& y) {
  if (x.field() != y.field()) throw std::invalid_argument("mixed-field operands");
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  r.na_ = -r.na_;
  r.nb_ = -r.nb_;
  return r;
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  check_same(x, y);
  FieldElement r(x.field_);
  r.den_ = x.den_ * y.den_;
  r.na_ = x.na_ * y.den_ + y.na_ * x.den_;
  r.nb_ = x.nb_ * y.den_ + y.nb_ * x.den_;
  r.normalize();
  return r;
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) { return x + (-y); }

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  check_same(x, y);
  FieldElement r(x.field_);
  r.den_ = x.den_ * y.den_;
  r.na_ = x.na_ * y.na_ + BigInt(x.field_.m()) * x.nb_ * y.nb_;
  r.nb_ = x.na_ * y.nb_ + x.nb_ * y.na_;
  r.normalize();
  return r;
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  check_same(x, y);
  return x * y.inverse();
}

bool FieldElement::operator<(const FieldElement& y) const {
  if (den_ != y.den_) return den_ < y.den_;
  if (na_ != y.na_) return na_ < y.na_;
  return nb_ < y.nb_;
}

std::string FieldElement::str() const {
  Rational ra = a(), rb = b();
  if (rb == 0) return ra.str();
  std::string wpart;
  Rational ab = rb < 0 ? Rational(-rb) : rb;
  wpart = ab == 1 ? std::string("w") : ab.str() + "*w";
  if (ra == 0) return rb < 0 ? "-" + wpart : wpart;
  return ra.str() + (rb < 0 ? " - " : " + ") + wpart;
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& x) {
  const Field& k = x.field();
  auto rat_sqrt = [](const Rational& q) -> std::optional<Rational> {
    if (q < 0) return std::nullopt;
    BigInt n = num(q), d = den(q);
    BigInt sn = mp::sqrt(n), sd = mp::sqrt(d);
    if (sn * sn != n || sd * sd != d) return std::nullopt;
    return Rational(sn, sd);
  };
  if (x.is_zero()) return x;
  if (x.is_rational()) {
    if (auto s = rat_sqrt(x.a())) return FieldElement(k, *s);
    if (!k.is_rational())
      if (auto s = rat_sqrt(x.a() / Rational(k.m()))) return FieldElement(k, Rational(0), *s);
    return std::nullopt;
  }
  // (u + v w)^2 = x  =>  u^2 = (a +- sqrt(N(x))) / 2.
  auto sn = rat_sqrt(x.norm());
  if (!sn) return std::nullopt;
  for (int sign : {1, -1}) {
    auto u = rat_sqrt((x.a() + Rational(sign) * *sn) / 2);
    if (!u || *u == 0) continue;
    FieldElement cand(k, *u, x.b() / (2 * *u));
    if (cand * cand == x) return cand;
  }
  return std::nullopt;
}

}  // namespace semistar

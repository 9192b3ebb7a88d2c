#include "doctest.h"
#include "semistar/poly.hpp"

#include <random>

using namespace semistar;

namespace {

FieldElement random_element(const Field& k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-6, 6), d(1, 4);
  Rational a(c(rng), d(rng));
  Rational b = k.is_rational() ? Rational(0) : Rational(c(rng), d(rng));
  return FieldElement(k, a, b);
}

Poly random_poly(const Field& k, int deg, std::mt19937_64& rng) {
  std::vector<FieldElement> cs;
  for (int i = 0; i <= deg; ++i) cs.push_back(random_element(k, rng));
  if (cs.back().is_zero()) cs.back() = FieldElement::from_int(k, 1);
  return Poly(k, cs);
}

}  // namespace

TEST_CASE("norm and products") {
  Field k = Field::quadratic(-3);
  auto x = FieldElement::parse(k, "1 + w");
  auto y = FieldElement::parse(k, "1 - w");
  CHECK((x * y) == FieldElement::from_int(k, 4));
  CHECK(FieldElement::parse(k, "2 + w").norm() == 7);
  Field k5 = Field::quadratic(5);
  auto z = FieldElement::parse(k5, "3/2 + w");
  CHECK((z / z).is_one());
  CHECK_THROWS(z / FieldElement(k5));
  CHECK_THROWS(x * z);
  CHECK_THROWS(Field::quadratic(12));
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(11);
  for (std::int64_t m : {1LL, -3LL, 5LL, -1LL}) {
    Field k = m == 1 ? Field::rationals() : Field::quadratic(m);
    for (int i = 0; i < 200; ++i) {
      auto a = random_element(k, rng), b = random_element(k, rng), c = random_element(k, rng);
      CHECK(((a * b) * c) == (a * (b * c)));
      CHECK((a * (b + c)) == (a * b + a * c));
      CHECK((a + b) - b == a);
      if (!b.is_zero()) CHECK(((a / b) * b) == a);
      CHECK((a.norm() == 0) == a.is_zero());
      CHECK((a * b).norm() == a.norm() * b.norm());
    }
  }
}

TEST_CASE("element round trip") {
  std::mt19937_64 rng(5);
  Field k = Field::quadratic(-3);
  for (int i = 0; i < 200; ++i) {
    auto a = random_element(k, rng);
    CHECK(FieldElement::parse(k, a.str()) == a);
  }
  CHECK(FieldElement::parse(k, "(1 + w)/2").str() == "1/2 + 1/2*w");
  CHECK_THROWS_AS(FieldElement::parse(k, "1 +"), ParseError);
}

TEST_CASE("sqrt in field") {
  Field k = Field::quadratic(-3);
  auto s = sqrt_in_field(FieldElement::from_int(k, -3));
  REQUIRE(s);
  CHECK((*s * *s) == FieldElement::from_int(k, -3));
  auto x = FieldElement::parse(k, "2 + 3*w");
  auto t = sqrt_in_field(x * x);
  REQUIRE(t);
  CHECK((*t * *t) == x * x);
  CHECK_FALSE(sqrt_in_field(FieldElement::from_int(k, 2)));
}

TEST_CASE("polynomial gcd") {
  Field q = Field::rationals();
  CHECK(poly_gcd(Poly::parse(q, "X^2 - 1"), Poly::parse(q, "X - 1")) == Poly::parse(q, "X - 1"));
  CHECK(poly_gcd(Poly::parse(q, "2*X + 2"), Poly::parse(q, "4")) == Poly::parse(q, "1"));
  CHECK(poly_gcd(Poly::parse(q, "3*X^2 + 3"), Poly(q)) == Poly::parse(q, "X^2 + 1"));
  CHECK_THROWS(poly_gcd(Poly(q), Poly(q)));

  std::mt19937_64 rng(3);
  for (std::int64_t m : {1LL, -3LL, 5LL}) {
    Field k = m == 1 ? Field::rationals() : Field::quadratic(m);
    for (int i = 0; i < 40; ++i) {
      Poly f = random_poly(k, 3, rng), g = random_poly(k, 2, rng), h = random_poly(k, 2, rng);
      Poly lhs = poly_gcd(f * h, g * h);
      CHECK(lhs == h.monic() * poly_gcd(f, g));
      CHECK(divides(lhs, f * h));
      CHECK(divides(lhs, g * h));
      CHECK(Poly::parse(k, f.str()) == f);
      CHECK((f * g).degree() == f.degree() + g.degree());
    }
  }
}

#include "doctest.h"
#include "semistar/module.hpp"

#include <random>

using namespace semistar;

namespace {

FieldElement el(const DomainPtr& d, const std::string& s) { return FieldElement::parse(d->field(), s); }

FractionalIdeal idl(const DomainPtr& d, std::initializer_list<const char*> gens) {
  std::vector<FieldElement> g;
  for (auto s : gens) g.push_back(el(d, s));
  return FractionalIdeal::generated(d, g);
}

FractionalIdeal random_ideal(const DomainPtr& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-6, 6), den(1, 3), cnt(1, 3);
  std::vector<FieldElement> g;
  int k = cnt(rng);
  while (static_cast<int>(g.size()) < k) {
    Rational a(c(rng), den(rng));
    Rational b = d->r() == 2 ? Rational(c(rng), den(rng)) : Rational(0);
    FieldElement x(d->field(), a, b);
    if (!x.is_zero()) g.push_back(x);
  }
  return FractionalIdeal::generated(d, g);
}

// Membership in Z[sqrt(-3)] read straight off coordinates.
bool in_zsqrt(const FieldElement& x) { return den(x.a()) == 1 && den(x.b()) == 1; }

}  // namespace

TEST_CASE("orders and conductors") {
  auto d = OrderDomain::order(-3, 2);
  CHECK(FractionalIdeal(d, d->conductor()) == idl(d, {"2", "1 + w"}));
  CHECK(FractionalIdeal::maximal_order(d) == idl(d, {"1", "(1 + w)/2"}));
  auto g = OrderDomain::order(5, 1);
  CHECK(g->ring() == g->maximal_order());
  CHECK(g->conductor() == g->ring());
  auto f = FractionalIdeal(d, d->conductor());
  CHECK(d->ring().contains(product(f.lattice(), d->maximal_order(), d->field(), 1)));
  CHECK_THROWS(OrderDomain::order(12, 1));
}

TEST_CASE("prime enumeration") {
  auto z = OrderDomain::integers();
  auto ps = z->primes_up_to(10);
  REQUIRE(ps.size() == 4);
  CHECK(ps[0].ideal() == idl(z, {"2"}));
  CHECK(ps[3].ideal() == idl(z, {"7"}));

  auto d = OrderDomain::order(-3, 2);
  auto small = d->primes_up_to(4);
  REQUIRE(!small.empty());
  CHECK(small[0].ideal() == idl(d, {"2", "1 + w"}));
  CHECK(small[0].norm() == 2);
  CHECK_FALSE(small[0].invertible());
  auto p5 = d->primes_above(5);
  REQUIRE(p5.size() == 1);
  CHECK(p5[0].norm() == 25);

  auto g = OrderDomain::order(5, 1);
  auto p2 = g->primes_above(2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].norm() == 4);

  for (const auto& p : d->primes_up_to(30)) {
    auto inv = colon(FractionalIdeal::unit(d), p.ideal());
    CHECK(d->ring().contains((p.ideal() * inv).lattice()));
  }
}

TEST_CASE("colon against bounded search") {
  auto d = OrderDomain::order(-3, 2);
  auto p = idl(d, {"2", "1 + w"});
  auto c = colon(FractionalIdeal::unit(d), p);
  CHECK(c == FractionalIdeal::maximal_order(d));
  auto gens = p.basis();
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int q = 1; q <= 4; ++q) {
        FieldElement x(d->field(), Rational(a, q), Rational(b, q));
        bool oracle = true;
        for (const auto& g : gens) oracle = oracle && in_zsqrt(x * g);
        CHECK(c.contains(x) == oracle);
      }
  auto z = OrderDomain::integers();
  CHECK(colon(FractionalIdeal::unit(z), idl(z, {"2"})) == idl(z, {"1/2"}));
}

TEST_CASE("lattice identities on random ideals") {
  std::mt19937_64 rng(41);
  for (auto d : {OrderDomain::integers(), OrderDomain::order(-3, 2), OrderDomain::order(5, 1)}) {
    for (int t = 0; t < 30; ++t) {
      auto e = random_ideal(d, rng), f = random_ideal(d, rng), g = random_ideal(d, rng);
      CHECK(e.contains(colon(e, f) * f));
      CHECK(colon(colon(e, f), g) == colon(e, f * g));
      CHECK(e * (f + g) == e * f + e * g);
      CHECK(colon(e, FractionalIdeal::unit(d)) == e);
    }
  }
}

TEST_CASE("localization membership") {
  auto z = OrderDomain::integers();
  auto ps = z->primes_up_to(5);
  auto one = FieldElement::from_int(z->field(), 1);
  CHECK(localization_membership(one, idl(z, {"2"}), ps[1]));
  CHECK_FALSE(localization_membership(one, idl(z, {"2"}), ps[0]));
  auto d = OrderDomain::order(-3, 2);
  auto p = d->primes_up_to(2)[0];
  CHECK_FALSE(localization_membership(d->one(), p.ideal(), p));
}

TEST_CASE("spectral consistency") {
  std::mt19937_64 rng(3);
  auto d = OrderDomain::order(-3, 2);
  auto pool = d->primes_up_to(30);
  for (int t = 0; t < 10; ++t) {
    auto e = random_ideal(d, rng);
    auto m = Module::of(e).localized(pool);
    CHECK(m.contains(Module::of(e)));
    CHECK(Module::lattice(d, 1, m.representative()).contains(Module::of(e)));
  }
  // Integral ideal whose index is below the pool bound is recovered exactly.
  auto e = idl(d, {"4", "2 + 2*w"});
  auto m = Module::of(e).localized(pool);
  CHECK(intersect(m, Module::of(FractionalIdeal::unit(d))) == Module::of(e));
}

TEST_CASE("valuations") {
  auto z = OrderDomain::integers();
  const Field& q = z->field();
  auto v2 = Valuation::p_adic(z, maximal_order_primes(z, 2)[0], 2);
  auto w = Valuation::gauss(v2, 1);
  CHECK(*w.eval(Poly::parse(q, "2*X")) == 2);
  CHECK(*w.eval(Poly::parse(q, "4")) == 2);
  CHECK(*w.eval(Poly::parse(q, "X^2")) == 2);
  auto t0 = Valuation::gauss(v2, 0);
  CHECK(*t0.eval(Poly::parse(q, "6*X + 4")) == 1);
  auto ord = Valuation::order_at(Poly::parse(q, "X^2 + 1"));
  CHECK(*ord.eval(Poly::parse(q, "X^2 + 1")) == 1);
  CHECK(*ord.eval(Poly::parse(q, "X")) == 0);
  CHECK_THROWS(Valuation::order_at(Poly::parse(q, "X^2 - 1")));
  CHECK_FALSE(w.eval(Poly(q)).has_value());

  auto d = OrderDomain::order(-3, 2);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-9, 9);
  for (const BigInt& p : {BigInt(2), BigInt(3), BigInt(7)})
    for (const auto& pr : maximal_order_primes(d, p)) {
      auto v = Valuation::p_adic(d, pr, p);
      for (int t = 0; t < 30; ++t) {
        FieldElement x(d->field(), Rational(c(rng), 1 + (t % 3)), Rational(c(rng))),
            y(d->field(), Rational(c(rng)), Rational(c(rng), 2));
        if (x.is_zero() || y.is_zero()) continue;
        CHECK(*v.eval(x * y) == *v.eval(x) + *v.eval(y));
        if (!(x + y).is_zero()) CHECK(*v.eval(x + y) >= std::min(*v.eval(x), *v.eval(y)));
      }
    }
}

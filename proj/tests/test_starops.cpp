#include "doctest.h"
#include "semistar/semistar.hpp"

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
    FieldElement x(d->field(), Rational(c(rng), den(rng)), d->r() == 2 ? Rational(c(rng), den(rng)) : Rational(0));
    if (!x.is_zero()) g.push_back(x);
  }
  return FractionalIdeal::generated(d, g);
}

Module mod(const FractionalIdeal& e) { return Module::of(e); }

}  // namespace

TEST_CASE("divisorial facts over Z[sqrt(-3)]") {
  auto d = OrderDomain::order(-3, 2);
  auto p = idl(d, {"2", "1 + w"});
  auto v = SemistarOp::builtin("v", d);
  CHECK(apply(v, p).value() == mod(p));
  CHECK(quasi_ideal_test(v, p) == Tri::True);
  auto b = SemistarOp::builtin("b", d);
  CHECK(apply(b, FractionalIdeal::unit(d)).value() == mod(FractionalIdeal::maximal_order(d)));
  auto dd = SemistarOp::identity(d);
  auto c = eab_approx(dd, FractionalIdeal::unit(d), {FractionalIdeal::unit(d), p});
  CHECK(c.is_exact());
  CHECK(c.value() == mod(FractionalIdeal::maximal_order(d)));
  auto c2 = eab_approx(dd, idl(d, {"2"}), {FractionalIdeal::unit(d), p});
  CHECK(c2.is_exact());
  CHECK(c2.value() == mod(idl(d, {"2", "1 + w"})));
  auto c3 = eab_approx(dd, idl(d, {"2"}), {FractionalIdeal::unit(d)});
  CHECK(c3.lower()->contains(mod(idl(d, {"2"}))));
  CHECK(mod(idl(d, {"2"})).contains(*c3.lower()));
}

TEST_CASE("w is exact and equals t on orders") {
  auto d = OrderDomain::order(-3, 2);
  auto w = SemistarOp::builtin("w", d), t = SemistarOp::builtin("t", d);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10; ++i) {
    auto e = random_ideal(d, rng);
    auto cw = apply(w, e);
    REQUIRE(cw.is_exact());
    CHECK(cw.value() == apply(t, e).value());
  }
  auto cmp = compare(w, t, {FractionalIdeal::unit(d), idl(d, {"2", "1 + w"})});
  CHECK((cmp.relation == Relation::Less || cmp.relation == Relation::Equal));
}

TEST_CASE("quasi-ideals and qmax") {
  auto d = OrderDomain::order(-3, 2);
  auto pool = d->primes_up_to(30);
  auto p2 = d->primes_above(2)[0];
  auto p5 = d->primes_above(5)[0];
  auto s = SemistarOp::spectral(d, {p2, p5});
  auto q = qmax(s, pool, 30);
  REQUIRE(q.members.size() == 2);
  CHECK(q.members[0] == p2);
  CHECK(q.members[1] == p5);
  CHECK(qmax(SemistarOp::trivial(d), pool, 30).members.empty());
  CHECK(qmax(SemistarOp::identity(d), pool, 30).members.size() == pool.size());
}

TEST_CASE("comparison verdicts") {
  auto d = OrderDomain::order(-3, 2);
  std::vector<FractionalIdeal> samples{FractionalIdeal::unit(d), idl(d, {"2", "1 + w"}), idl(d, {"3", "w"})};
  CHECK(compare(SemistarOp::identity(d), SemistarOp::trivial(d), samples).relation == Relation::Less);
  auto dv = compare(SemistarOp::identity(d), SemistarOp::builtin("v", d), samples);
  CHECK((dv.relation == Relation::Less || dv.relation == Relation::Equal));
  auto z = OrderDomain::integers();
  std::vector<FractionalIdeal> zs{FractionalIdeal::unit(z), idl(z, {"6"}), idl(z, {"1/4"})};
  CHECK(compare(SemistarOp::builtin("b", z), SemistarOp::identity(z), zs).relation == Relation::Equal);
  auto bo = compare(SemistarOp::identity(d), SemistarOp::builtin("b", d), samples);
  CHECK(bo.relation == Relation::Less);
  REQUIRE(bo.witness);
}

TEST_CASE("closure axioms and stability on random ideals") {
  std::mt19937_64 rng(8);
  for (auto d : {OrderDomain::integers(), OrderDomain::order(-3, 2)}) {
    auto ps = d->primes_up_to(5);
    std::vector<SemistarOp> ops{SemistarOp::builtin("d", d), SemistarOp::builtin("e", d),
                                SemistarOp::builtin("v", d), SemistarOp::builtin("t", d),
                                SemistarOp::builtin("w", d), SemistarOp::builtin("b", d),
                                SemistarOp::spectral(d, {ps[0]}),
                                SemistarOp::overring(d, d->maximal_order(), "O")};
    ops.push_back(SemistarOp::wedge({ops[6], ops[7]}));
    for (const auto& op : ops)
      for (int i = 0; i < 8; ++i) {
        auto e = random_ideal(d, rng), f = random_ideal(d, rng);
        auto x = random_ideal(d, rng).basis().front();
        auto ce = apply(op, e);
        REQUIRE(ce.is_exact());
        CHECK(apply(op, e.scaled(x)).value() == ce.value().scaled(x));
        CHECK(ce.value().contains(mod(e)));
        CHECK(apply(op, ce.value()).value() == ce.value());
        CHECK(apply(op, e + f).value().contains(ce.value()));
        if (op.flags().stable)
          CHECK(apply(op, intersect(e, f)).value() == intersect(ce.value(), apply(op, f).value()));
      }
  }
}

TEST_CASE("valuation overrings") {
  auto d = OrderDomain::order(-3, 2);
  std::vector<FractionalIdeal> samples{FractionalIdeal::unit(d), idl(d, {"2", "1 + w"}), idl(d, {"3", "1 + w"})};
  for (const BigInt& p : {BigInt(2), BigInt(3), BigInt(5), BigInt(7)})
    for (const auto& pr : maximal_order_primes(d, p))
      CHECK(is_star_valuation_overring(Valuation::p_adic(d, pr, p), SemistarOp::identity(d), samples) == Tri::True);
  CHECK(is_star_valuation_overring(Valuation::trivial(d->field()), SemistarOp::trivial(d), samples) == Tri::True);
  auto v2 = Valuation::p_adic(d, maximal_order_primes(d, 2)[0], 2);
  CHECK(is_star_valuation_overring(v2, SemistarOp::trivial(d), samples) == Tri::False);
}

#include "doctest.h"
#include "semistar/extension.hpp"

#include <random>

using namespace semistar;

namespace {

FieldElement el(const DomainPtr& d, const std::string& s) { return FieldElement::parse(d->field(), s); }
Poly pl(const DomainPtr& d, const std::string& s) { return Poly::parse(d->field(), s); }

FractionalIdeal idl(const DomainPtr& d, std::initializer_list<const char*> gens) {
  std::vector<FieldElement> g;
  for (auto s : gens) g.push_back(el(d, s));
  return FractionalIdeal::generated(d, g);
}

PolyIdeal pidl(const DomainPtr& d, std::initializer_list<const char*> gens) {
  std::vector<Poly> g;
  for (auto s : gens) g.push_back(pl(d, s));
  return PolyIdeal(d, g);
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

Poly random_poly(const DomainPtr& d, std::mt19937_64& rng, int maxdeg) {
  std::uniform_int_distribution<int> c(-4, 4), dg(0, maxdeg);
  std::vector<FieldElement> cs;
  int n = dg(rng);
  for (int i = 0; i <= n; ++i) {
    FieldElement x(d->field());
    for (const auto& t : d->basis()) x += FieldElement::from_int(d->field(), c(rng)) * t;
    cs.push_back(x);
  }
  Poly f(d->field(), cs);
  return f.is_zero() ? Poly::constant(d->one()) : f;
}

// All integral polynomials of degree <= n with basis coordinates in [-b, b].
std::vector<Poly> box(const DomainPtr& d, int n, int b) {
  const int r = d->r();
  const int slots = r * (n + 1);
  std::vector<Poly> out;
  std::vector<int> cur(static_cast<std::size_t>(slots), -b);
  while (true) {
    std::vector<FieldElement> cs;
    for (int i = 0; i <= n; ++i) {
      FieldElement x(d->field());
      for (int j = 0; j < r; ++j)
        x += FieldElement::from_int(d->field(), cur[static_cast<std::size_t>(r * i + j)]) * d->basis()[static_cast<std::size_t>(j)];
      cs.push_back(x);
    }
    out.emplace_back(d->field(), cs);
    int i = 0;
    while (i < slots && cur[static_cast<std::size_t>(i)] == b) cur[static_cast<std::size_t>(i++)] = -b;
    if (i == slots) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return out;
}

bool in_module(const Module& m, const Poly& f, int n) { return m.contains(f.coefficient_vector(n)); }

Budget small(int slice = 5) {
  Budget b;
  b.slice = slice;
  return b;
}

}  // namespace

TEST_CASE("content ideals") {
  auto d = OrderDomain::order(-3, 2);
  CHECK(content(d, pl(d, "2 + (1 + w)*X")) == idl(d, {"2", "1 + w"}));
  CHECK(content(d, pl(d, "X^2 - 1")) == FractionalIdeal::unit(d));
  auto z = OrderDomain::integers();
  CHECK(content(pidl(z, {"2", "X"})) == FractionalIdeal::unit(z));
}

TEST_CASE("slices against the evaluation-at-zero description") {
  // (2, X) D[X] is the set of integral polynomials with f(0) in 2D.
  for (auto d : {OrderDomain::integers(), OrderDomain::order(-3, 2)}) {
    auto a = pidl(d, {"2", "X"});
    auto two = FractionalIdeal::principal(d, el(d, "2"));
    const int n = d->r() == 1 ? 3 : 1;
    Module s = a.slice_module(n, 3);
    for (const auto& f : box(d, n, 2)) CHECK(in_module(s, f, n) == two.contains(f.coeff(0)));
  }
}

TEST_CASE("Dedekind-Mertens and content power sums") {
  std::mt19937_64 rng(11);
  for (auto d : {OrderDomain::integers(), OrderDomain::order(-3, 2)}) {
    for (int i = 0; i < 25; ++i) {
      Poly f = random_poly(d, rng, 4), g = random_poly(d, rng, 4);
      CHECK(dedekind_mertens_check(d, f, g));
    }
    for (int i = 0; i < 15; ++i) {
      PolyIdeal h(d, {random_poly(d, rng, 3), random_poly(d, rng, 3)});
      for (int r = 1; r <= 3; ++r) CHECK(content_power_sum_check(h, r));
    }
  }
  auto d = OrderDomain::order(-3, 2);
  CHECK(dedekind_mertens_check(d, pl(d, "2 + (1 + w)*X"), pl(d, "2")));
  // Unit content: c(fg) = c(g).
  Poly f = pl(d, "X^2 + w*X + 1"), g = pl(d, "2*X + 1 + w");
  CHECK(content(d, f * g) == content(d, g));
  // The interleaved polynomial carries the whole content.
  auto z = OrderDomain::integers();
  CHECK(content(z, interleave({pl(z, "2"), pl(z, "X")})) == FractionalIdeal::unit(z));
}

TEST_CASE("tri on extended ideals closes to E^op[X]") {
  auto d = OrderDomain::order(-3, 2);
  auto p2 = d->primes_above(2).front();
  std::vector<SemistarOp> ops{SemistarOp::identity(d), SemistarOp::builtin("v", d), SemistarOp::spectral(d, {p2})};
  std::mt19937_64 rng(5);
  for (const auto& op : ops)
    for (int i = 0; i < 4; ++i) {
      auto e = random_ideal(d, rng);
      auto v = blacktriangle(op, OverringTag::K, PolyIdeal::extended(e), small(3));
      Module es = apply(op, e).value();
      for (int n = 0; n <= 3; ++n) {
        REQUIRE(v.slices[static_cast<std::size_t>(n)].is_exact());
        CHECK(v.slices[static_cast<std::size_t>(n)].value() == es.power(n + 1));
      }
    }
}

TEST_CASE("(2, X) over Z[sqrt(-3)] has tri closure D[X]") {
  auto d = OrderDomain::order(-3, 2);
  auto a = pidl(d, {"2", "X"});
  auto v = blacktriangle(SemistarOp::identity(d), OverringTag::K, a, small(5));
  Module unit = Module::of(FractionalIdeal::unit(d));
  for (int n = 0; n <= 5; ++n) {
    REQUIRE(v.slices[static_cast<std::size_t>(n)].is_exact());
    CHECK(v.slices[static_cast<std::size_t>(n)].value() == unit.power(n + 1));
    CHECK(a.slice_module(n, 3) != unit.power(n + 1));
  }
}

TEST_CASE("scaling law") {
  auto d = OrderDomain::integers();
  auto a = pidl(d, {"2", "X"});
  Poly x = pl(d, "X + 1");
  auto v = blacktriangle(SemistarOp::identity(d), OverringTag::K, a, small(4));
  auto vx = blacktriangle(SemistarOp::identity(d), OverringTag::K, a.scaled(x), small(4));
  for (int n = 0; n <= 3; ++n) {
    REQUIRE(v.slices[static_cast<std::size_t>(n)].is_exact());
    REQUIRE(vx.slices[static_cast<std::size_t>(n + 1)].is_exact());
    CHECK(module_image(x, v.slices[static_cast<std::size_t>(n)].value()) ==
          vx.slices[static_cast<std::size_t>(n + 1)].value());
  }
  CHECK(vx.slices[0].value().is_zero());
}

TEST_CASE("stable extension against integral membership") {
  auto z = OrderDomain::integers();
  auto a = pidl(z, {"2", "X"});
  auto v = curly_stable(z->primes_up_to(30), a, small(2));
  Module s = a.slice_module(2, 3);
  for (const auto& f : box(z, 2, 3)) CHECK(in_module(v.slices[2].value(), f, 2) == in_module(s, f, 2));
  CHECK(in_module(v.slices[1].value(), pl(z, "X/31"), 1));
  CHECK_FALSE(in_module(v.slices[1].value(), pl(z, "X/3"), 1));

  auto d = OrderDomain::order(-3, 2);
  auto p2 = d->primes_above(2).front();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 3; ++i) {
    auto e = random_ideal(d, rng);
    auto c = curly_stable({p2}, PolyIdeal::extended(e), small(2));
    for (int n = 0; n <= 2; ++n) CHECK(c.slices[static_cast<std::size_t>(n)].value() == Module::of(e).localized({p2}).power(n + 1));
  }
}

TEST_CASE("stable, nagata and tri are ordered on slices") {
  for (auto d : {OrderDomain::integers(), OrderDomain::order(-3, 2)}) {
    auto delta = d->primes_above(2);
    for (const auto& a : {pidl(d, {"2", "X"}), pidl(d, {"4", "X^2"}), pidl(d, {"3", "X^2 + 1"}), pidl(d, {"X^2 - 2*X"})}) {
      auto c = curly_stable(delta, a, small(3));
      auto ng = nagata(delta, a, small(3));
      auto t = blacktriangle(SemistarOp::spectral(d, delta), OverringTag::K, a, small(3));
      CHECK(slices_included(c, ng) == Tri::True);
      CHECK(slices_included(ng, t) != Tri::False);
    }
    auto e = idl(d, {"2"});
    auto ng = nagata(delta, PolyIdeal::extended(e), small(3));
    for (int n = 0; n <= 3; ++n) {
      REQUIRE(ng.slices[static_cast<std::size_t>(n)].is_exact());
      CHECK(ng.slices[static_cast<std::size_t>(n)].value() == Module::of(e).localized(delta).power(n + 1));
    }
  }
}

TEST_CASE("overring wedges") {
  auto d = OrderDomain::order(-3, 2);
  auto e = idl(d, {"2", "w"});
  auto v = wedge_overring_poly({PolyOverring::of_ring("O", d->maximal_order())}, PolyIdeal::extended(e), small(2));
  for (int n = 0; n <= 2; ++n)
    CHECK(v.slices[static_cast<std::size_t>(n)].value() == Module::of(e).times_ring(d->maximal_order()).power(n + 1));

  auto z = OrderDomain::integers();
  std::vector<PolyOverring> ts;
  for (const auto& p : z->primes_up_to(30)) ts.push_back(PolyOverring::localization(z, p));
  ts.push_back(PolyOverring::whole(z));
  auto a = pidl(z, {"4", "X^2"});
  auto w = wedge_overring_poly(ts, a, small(2));
  CHECK_FALSE(in_module(w.slices[1].value(), pl(z, "2*X"), 1));
  CHECK(in_module(w.slices[2].value(), pl(z, "X^2"), 2));
  CHECK(in_module(w.slices[2].value(), pl(z, "4 + X^2"), 2));

  // [b_D] sits below tri^b.
  auto bb = b_extension(pidl(d, {"2", "X"}), small(3));
  auto tb = blacktriangle(SemistarOp::builtin("b", d), OverringTag::K, pidl(d, {"2", "X"}), small(3));
  CHECK(slices_included(bb, tb) == Tri::True);
}

TEST_CASE("b-membership certificates") {
  auto z = OrderDomain::integers();
  auto a = pidl(z, {"4", "X^2"});
  auto c = b_membership_certificate(a, pl(z, "2*X"), 3, Budget{});
  REQUIRE(c.kind == BCertificate::Kind::Integral);
  CHECK(c.equation.size() == 2);
  // Independent recheck: 2X satisfies the equation, with a_i in A^i.
  Poly f = pl(z, "2*X");
  CHECK((f * f + c.equation[0] * f + c.equation[1]).is_zero());
  CHECK(a.contains(c.equation[0], 3));
  CHECK(poly_ideal_pow(a, 2).contains(c.equation[1], 3));

  auto nc = b_membership_certificate(pidl(z, {"2", "X"}), pl(z, "1"), 3, Budget{});
  REQUIRE(nc.kind == BCertificate::Kind::NotIntegral);
  CHECK(ext_less(nc.valuation->eval(pl(z, "1")), nc.valuation->min_value(std::vector<Poly>{pl(z, "2"), pl(z, "X")})));
  auto p2 = maximal_order_primes(z, 2).front();
  auto g = Valuation::gauss(Valuation::p_adic(z, p2, 2), Rational(1));
  CHECK(ext_less(g.eval(pl(z, "1")), g.min_value(std::vector<Poly>{pl(z, "2"), pl(z, "X")})));

  auto t = b_membership_certificate(a, pl(z, "4 + X^2"), 3, Budget{});
  REQUIRE(t.kind == BCertificate::Kind::Integral);
  CHECK(t.equation.size() == 1);
}

TEST_CASE("contraction and strict extensions") {
  auto d = OrderDomain::order(-3, 2);
  auto v = SemistarOp::builtin("v", d);
  std::mt19937_64 rng(9);
  std::vector<FractionalIdeal> samples;
  for (int i = 0; i < 4; ++i) samples.push_back(random_ideal(d, rng));
  for (const auto& e : samples) {
    CHECK(contraction(blacktriangle_op(v), e, Budget{}).value() == apply(v, e).value());
    CHECK(contraction(b_extension_op(), e, Budget{}).value() == Module::of(e).times_ring(d->maximal_order()));
  }
  CHECK(strict_extension_check(blacktriangle_op(SemistarOp::identity(d)), SemistarOp::identity(d), samples, 2, Budget{}).verdict ==
        StrictVerdict::Strict);
  auto ov = SemistarOp::overring(d, d->maximal_order(), "O");
  CHECK(strict_extension_check(wedge_op({PolyOverring::of_ring("O", d->maximal_order())}), ov, samples, 2, Budget{}).verdict ==
        StrictVerdict::Strict);
  auto rep = strict_extension_check(trivial_poly_op(), SemistarOp::trivial(d), samples, 2, Budget{});
  CHECK(rep.verdict == StrictVerdict::ExtensionOnly);
  CHECK(rep.witness.has_value());
  CHECK(strict_extension_check(identity_poly_op(), SemistarOp::builtin("b", d), samples, 1, Budget{}).verdict ==
        StrictVerdict::Fails);
}

TEST_CASE("eab extension inclusion") {
  auto d = OrderDomain::order(-3, 2);
  auto pool = default_eab_pool(d, 10);
  auto dd = SemistarOp::identity(d);
  auto h = pidl(d, {"2", "X"});
  CHECK(eab_extension_check(dd, h, FractionalIdeal::unit(d), pool, small(2)) == Tri::True);
  CHECK(eab_extension_check(dd, h, idl(d, {"2", "1 + w"}), pool, small(2)) == Tri::True);
  CHECK(eab_extension_check(dd, pidl(d, {"X + 1"}), idl(d, {"2"}), pool, small(2)) == Tri::True);
}

TEST_CASE("quasi-maximal primes of Z[X]") {
  auto z = OrderDomain::integers();
  auto p2 = z->primes_above(2).front();
  std::vector<PolyPrime> pool{PolyPrime::upper(z, pl(z, "X^2 + 1")), PolyPrime::composite(p2, pl(z, "X")),
                              PolyPrime::extended(p2)};
  auto rep = classify_poly_qmax(SemistarOp::identity(z), z->primes_up_to(30), pool, small(3));
  CHECK(rep[0].member == Tri::True);
  CHECK(rep[1].member == Tri::False);
  CHECK(rep[1].certified);
  CHECK(rep[2].member == Tri::True);
  CHECK(pool[1].contains(pl(z, "X^3 + 2")));
  CHECK_FALSE(pool[1].contains(pl(z, "X^3 + 1")));
  CHECK(pool[0].contains(pl(z, "X^3 + X")));
}

TEST_CASE("strict family and probes") {
  auto z = OrderDomain::integers();
  auto s12 = strict_family_probe(z->field(), 1, 2, 4);
  CHECK(s12.separated);
  CHECK(s12.in_larger);
  CHECK_FALSE(s12.in_smaller);
  CHECK(strict_family_probe(z->field(), 2, 3, 4).separated);
  CHECK_THROWS(strict_family_probe(z->field(), 2, 2, 4));
  CHECK(family_chain_check(SemistarOp::identity(z), pidl(z, {"2", "X"}), 4, small(3)) == Tri::True);
  CHECK(family_chain_check(SemistarOp::identity(z), pidl(z, {"X^2 - X"}), 4, small(3)) == Tri::True);

  auto d = OrderDomain::order(-3, 2);
  Budget b = small(2);
  auto rep = finite_type_failure_probe(SemistarOp::builtin("v", d), 2, 6, b);
  CHECK(rep.probes == 6);
  CHECK(rep.escapes == 0);
}

#include "semistar/claims.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace semistar {

namespace {

using Clock = std::chrono::steady_clock;

struct Task {
  std::string claim;
  std::function<ClaimResult()> run;
};

// Tallies refutations and undecided checks for one instance.
struct Tally {
  int checks = 0, refuted = 0, unknown = 0;
  std::optional<std::string> witness;
  void ok() { ++checks; }
  void fail(const std::string& w) {
    ++checks;
    ++refuted;
    if (!witness) witness = w;
  }
  void unsure() {
    ++checks;
    ++unknown;
  }
  void tri(Tri t, const std::string& w) {
    if (t == Tri::True)
      ok();
    else if (t == Tri::False)
      fail(w);
    else
      unsure();
  }
  void expect(bool b, const std::string& w) { b ? ok() : fail(w); }
  Status status() const { return refuted ? Status::Refuted : unknown ? Status::Inconclusive : Status::Confirmed; }
};

ClaimResult finish(std::string claim, std::string instance, const Tally& t, BudgetRecord budgets) {
  ClaimResult r;
  r.claim = std::move(claim);
  r.instance = std::move(instance);
  r.status = t.status();
  if (t.refuted) r.witness = t.witness;
  budgets.emplace_back("checks", std::to_string(t.checks));
  if (t.unknown) budgets.emplace_back("undecided", std::to_string(t.unknown));
  r.budgets = std::move(budgets);
  return r;
}

BudgetRecord slice_budget(const Budget& b) {
  return {{"slice", std::to_string(b.slice)},
          {"mult_cap", std::to_string(b.mult_cap)},
          {"witness_deg", std::to_string(b.witness_deg)},
          {"prime_norm", std::to_string(b.prime_norm)}};
}

FractionalIdeal random_ideal(const DomainPtr& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-6, 6), den(1, 3), cnt(1, 3);
  std::vector<FieldElement> g;
  const int k = cnt(rng);
  while (static_cast<int>(g.size()) < k) {
    FieldElement x(d->field(), Rational(c(rng), den(rng)), d->r() == 2 ? Rational(c(rng), den(rng)) : Rational(0));
    if (!x.is_zero()) g.push_back(x);
  }
  return FractionalIdeal::generated(d, g);
}

FieldElement random_element(const DomainPtr& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-5, 5), den(1, 4);
  while (true) {
    FieldElement x(d->field(), Rational(c(rng), den(rng)), d->r() == 2 ? Rational(c(rng), den(rng)) : Rational(0));
    if (!x.is_zero()) return x;
  }
}

Poly random_poly(const DomainPtr& d, std::mt19937_64& rng, int maxdeg, int range = 4) {
  std::uniform_int_distribution<int> c(-range, range), dg(0, maxdeg);
  while (true) {
    std::vector<FieldElement> cs;
    const int n = dg(rng);
    for (int i = 0; i <= n; ++i) {
      FieldElement x(d->field());
      for (const auto& t : d->basis()) x += FieldElement::from_int(d->field(), c(rng)) * t;
      cs.push_back(x);
    }
    Poly f(d->field(), cs);
    if (!f.is_zero()) return f;
  }
}

PolyIdeal random_poly_ideal(const DomainPtr& d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cnt(1, 2);
  std::vector<Poly> gs;
  const int k = cnt(rng);
  for (int i = 0; i < k; ++i) gs.push_back(random_poly(d, rng, 2, 3));
  return PolyIdeal(d, gs);
}

std::vector<FractionalIdeal> random_ideals(const DomainPtr& d, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::vector<FractionalIdeal> out;
  for (int i = 0; i < n; ++i) out.push_back(random_ideal(d, rng));
  return out;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

std::vector<PrimeIdeal> primes_over(const DomainPtr& d, std::initializer_list<int> ps) {
  std::vector<PrimeIdeal> out;
  for (int p : ps)
    for (const auto& q : d->primes_above(BigInt(p))) out.push_back(q);
  return out;
}

std::string labels(const std::vector<PrimeIdeal>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].label();
  return s + "}";
}

class Suites {
 public:
  explicit Suites(const SuiteConfig& cfg) : cfg_(cfg) {}

  int samples(int def) const { return cfg_.samples >= 0 ? cfg_.samples : def; }
  const Budget& budget() const { return cfg_.budget; }

  std::vector<DomainPtr> domains(std::vector<DomainPtr> ds) const {
    if (cfg_.domains.empty()) return ds;
    std::vector<DomainPtr> out;
    for (const auto& d : ds)
      if (std::find(cfg_.domains.begin(), cfg_.domains.end(), domain_label(d)) != cfg_.domains.end()) out.push_back(d);
    return out;
  }

  void axioms(std::vector<Task>& ts) const;
  void divisorial(std::vector<Task>& ts) const;
  void claim1(std::vector<Task>& ts) const;
  void rem26c(std::vector<Task>& ts) const;
  void prop24(std::vector<Task>& ts) const;
  void thm35(std::vector<Task>& ts) const;
  void prop38(std::vector<Task>& ts) const;
  void lem46(std::vector<Task>& ts) const;
  void cor48(std::vector<Task>& ts) const;
  void prop28(std::vector<Task>& ts) const;
  void rem57a(std::vector<Task>& ts) const;
  void rem34(std::vector<Task>& ts) const;

 private:
  SuiteConfig cfg_;
};

std::vector<SemistarOp> axiom_ops(const DomainPtr& d) {
  std::vector<SemistarOp> ops;
  for (const char* n : {"d", "e", "v", "t", "w", "b"}) ops.push_back(SemistarOp::builtin(n, d));
  ops.push_back(SemistarOp::spectral(d, d->primes_above(2)));
  ops.push_back(SemistarOp::overring(d, d->maximal_order(), "O"));
  ops.push_back(SemistarOp::wedge({SemistarOp::spectral(d, d->primes_above(3)), SemistarOp::builtin("v", d)}));
  return ops;
}

void Suites::axioms(std::vector<Task>& ts) const {
  const int n = samples(200);
  const auto seed = budget().seed;
  for (const auto& d : domains({OrderDomain::integers(), OrderDomain::order(-3, 2), OrderDomain::order(5, 1)}))
    for (const auto& op : axiom_ops(d)) {
      ts.push_back({"axioms", [=] {
                      Tally t;
                      std::mt19937_64 rng(mix(seed, 1));
                      for (int i = 0; i < n; ++i) {
                        auto e = random_ideal(d, rng);
                        auto f = e + random_ideal(d, rng);
                        auto x = random_element(d, rng);
                        const std::string w = "E=" + e.str() + ", x=" + x.str();
                        Certified c = apply(op, e), cx = apply(op, e.scaled(x)), cf = apply(op, f);
                        if (!c.is_exact() || !cx.is_exact() || !cf.is_exact()) {
                          t.unsure();
                          continue;
                        }
                        t.expect(cx.value() == c.value().scaled(x), "scaling fails at " + w);
                        t.expect(cf.value().contains(c.value()), "monotonicity fails at " + w + ", F=" + f.str());
                        t.expect(c.value().contains(Module::of(e)), "extensivity fails at " + w);
                        Certified cc = apply(op, c.value());
                        if (!cc.is_exact())
                          t.unsure();
                        else
                          t.expect(cc.value() == c.value(), "idempotence fails at " + w);
                      }
                      return finish("axioms", op.name() + " on " + domain_label(d) + ", " + std::to_string(n) + " ideals", t,
                                    {{"samples", std::to_string(n)}, {"seed", std::to_string(seed)}});
                    }});
    }
}

bool is_int(const Rational& q) { return den(q) == 1; }

void Suites::divisorial(std::vector<Task>& ts) const {
  auto d = OrderDomain::order(-3, 2);
  if (domains({d}).empty()) return;
  ts.push_back({"divisorial", [d] {
                  Tally t;
                  const Field& k = d->field();
                  const FieldElement s = FieldElement::sqrt_m(k);
                  auto p = d->primes_above(2).front().ideal();
                  auto u = FractionalIdeal::unit(d);
                  auto o = FractionalIdeal::maximal_order(d);
                  auto pv = apply(SemistarOp::builtin("v", d), p);
                  auto db = apply(SemistarOp::builtin("b", d), u);
                  auto dp = colon(u, p);
                  auto p2 = ideal_pow(p, 2);
                  t.expect(dp == o, "(D:P) = " + dp.str());
                  t.expect(pv.is_exact() && pv.value() == Module::of(p), "P^v = " + pv.str());
                  t.expect(p2 == p.scaled(FieldElement::from_int(k, 2)), "P^2 = " + p2.str());
                  t.expect(db.is_exact() && db.value() == Module::of(o), "D^b = " + db.str());
                  // Bounded search with closed-form membership tests in the sqrt(-3) basis.
                  std::vector<FieldElement> box;
                  for (int dn = 1; dn <= 4; ++dn)
                    for (int a = -4; a <= 4; ++a)
                      for (int b = -4; b <= 4; ++b) box.push_back(FieldElement(k, Rational(a, dn)) + FieldElement(k, Rational(b, dn)) * s);
                  auto in_d = [&](const FieldElement& x) {
                    const Rational a = x.a(), b = x.b();
                    return is_int(a) && is_int(b);
                  };
                  auto in_p = [&](const FieldElement& x) {
                    const Rational a = x.a(), b = x.b();
                    return is_int(a) && is_int(b) && (num(a) - num(b)) % 2 == 0;
                  };
                  auto in_p2 = [&](const FieldElement& x) {
                    const Rational a = x.a(), b = x.b();
                    return is_int(a) && is_int(b) && num(a) % 2 == 0 && num(b) % 2 == 0 && (num(a) - num(b)) % 4 == 0;
                  };
                  auto in_o = [&](const FieldElement& x) { return is_int(x.trace()) && is_int(x.norm()); };
                  const std::vector<FieldElement> pg{FieldElement::from_int(k, 2), FieldElement::from_int(k, 1) + s};
                  std::vector<FieldElement> dual;
                  for (const auto& y : box)
                    if (in_d(y * pg[0]) && in_d(y * pg[1])) dual.push_back(y);
                  for (const auto& x : box) {
                    const bool colon_oracle = in_d(x * pg[0]) && in_d(x * pg[1]);
                    t.expect(dp.contains(x) == colon_oracle, "(D:P) disagrees with search at " + x.str());
                    bool v_oracle = true;
                    for (const auto& y : dual) v_oracle = v_oracle && in_d(x * y);
                    t.expect(v_oracle == in_p(x), "P^v search disagrees at " + x.str());
                    t.expect(p2.contains(x) == in_p2(x), "P^2 disagrees with 2P at " + x.str());
                    t.expect(db.value().contains(to_vec(x)) == in_o(x), "D^b disagrees with integrality at " + x.str());
                  }
                  return finish("divisorial", "(D:P)=O, P^v=P, P^2=2P, D^b=O over Z[sqrt(-3)]", t,
                                {{"search_den", "4"}, {"search_coord", "4"}});
                }});
}

void Suites::claim1(std::vector<Task>& ts) const {
  const int n = samples(20);
  const Budget b = budget();
  for (const auto& d : domains({OrderDomain::order(-3, 2), OrderDomain::integers()})) {
    std::vector<SemistarOp> ops{SemistarOp::identity(d), SemistarOp::builtin("v", d),
                                SemistarOp::spectral(d, primes_over(d, {2}))};
    for (const auto& op : ops)
      ts.push_back({"thm2.1-claim1", [=] {
                      Tally t;
                      for (const auto& e : random_ideals(d, mix(b.seed, 3), n)) {
                        PolyValue v = blacktriangle(op, OverringTag::K, PolyIdeal::extended(e), b);
                        Certified target = apply(op, e);
                        for (int s = 0; s <= b.slice; ++s) {
                          const Certified& c = v.slices[static_cast<std::size_t>(s)];
                          Certified ts_ = power(target, s + 1);
                          const std::string w = "E=" + e.str() + " slice " + std::to_string(s);
                          if (included(c, ts_) == Tri::False || included(ts_, c) == Tri::False) {
                            t.fail(w);
                            break;
                          }
                          if (c.is_exact() && ts_.is_exact())
                            t.expect(c.value() == ts_.value(), w);
                          else
                            t.unsure();
                        }
                      }
                      BudgetRecord rec = slice_budget(b);
                      rec.emplace_back("samples", std::to_string(n));
                      return finish("thm2.1-claim1", "tri(" + op.name() + ") on E[X] over " + domain_label(d), t, rec);
                    }});
  }
}

void Suites::rem26c(std::vector<Task>& ts) const {
  auto d = OrderDomain::order(-3, 2);
  if (domains({d}).empty()) return;
  const Budget b = budget();
  ts.push_back({"rem2.6c", [d, b] {
                  Tally t;
                  const Field& k = d->field();
                  PolyIdeal a(d, {Poly::constant(FieldElement::from_int(k, 2)), Poly::x(k)});
                  PolyValue v = blacktriangle(SemistarOp::identity(d), OverringTag::K, a, b);
                  Module unit = Module::of(FractionalIdeal::unit(d));
                  bool differs = false;
                  for (int s = 0; s <= b.slice; ++s) {
                    const Certified& c = v.slices[static_cast<std::size_t>(s)];
                    const std::string w = "slice " + std::to_string(s) + ": " + c.str();
                    if (!c.is_exact()) {
                      if (c.contained_in(unit.power(s + 1)) == Tri::False) t.fail(w);
                      else t.unsure();
                    } else {
                      t.expect(c.value() == unit.power(s + 1), w);
                    }
                    differs = differs || a.slice_module(s, b.mult_cap) != unit.power(s + 1);
                  }
                  t.expect(differs, "A equals D[X] on every slice");
                  BudgetRecord rec = v.budget;
                  rec.emplace_back("slice", std::to_string(b.slice));
                  return finish("rem2.6c", "(2, X) over Z[sqrt(-3)], d: tri closes to D[X] while d[X] keeps A", t, rec);
                }});
}

void Suites::prop24(std::vector<Task>& ts) const {
  const int n = samples(50);
  const Budget b = budget();
  for (const auto& d : domains({OrderDomain::order(-3, 2), OrderDomain::integers()})) {
    const SemistarOp op = d->is_maximal() ? SemistarOp::identity(d) : SemistarOp::builtin("v", d);
    ts.push_back({"prop2.4", [=] {
                    Tally t;
                    Budget bb = b;
                    bb.seed = mix(b.seed, 24);
                    ProbeReport rep = finite_type_failure_probe(op, 3, n, bb);
                    for (int i = 0; i < rep.probes - rep.escapes - rep.inconclusive; ++i) t.ok();
                    for (int i = 0; i < rep.inconclusive; ++i) t.unsure();
                    for (int i = 0; i < rep.escapes; ++i) t.fail("B' = " + rep.witness->str());
                    BudgetRecord rec = slice_budget(b);
                    rec.emplace_back("probes", std::to_string(rep.probes));
                    rec.emplace_back("m", "3");
                    return finish("prop2.4", "tri(" + op.name() + ") of B in X^-m D[X] over " + domain_label(d), t, rec);
                  }});
  }
}

void Suites::thm35(std::vector<Task>& ts) const {
  const Budget b = budget();
  const int ns = samples(20), np = samples(50);
  for (const auto& d : domains({OrderDomain::integers(), OrderDomain::order(-3, 2)}))
    for (const auto& delta : {primes_over(d, {2}), primes_over(d, {2, 5})}) {
      const std::string where = labels(delta) + " over " + domain_label(d);
      ts.push_back({"thm3.5", [=] {
                      Tally t;
                      auto rep = strict_extension_check(curly_op(delta), SemistarOp::spectral(d, delta),
                                                        random_ideals(d, mix(b.seed, 35), ns), b.slice, b);
                      const std::string w = rep.witness ? rep.witness->str() : "";
                      if (rep.verdict == StrictVerdict::Strict) t.ok();
                      else if (rep.verdict == StrictVerdict::Inconclusive) t.unsure();
                      else t.fail(to_string(rep.verdict) + " at E=" + w);
                      BudgetRecord rec = slice_budget(b);
                      rec.emplace_back("samples", std::to_string(ns));
                      return finish("thm3.5", "stable extension is strict, " + where, t, rec);
                    }});
      ts.push_back({"thm3.5", [=] {
                      Tally t;
                      std::mt19937_64 rng(mix(b.seed, 36));
                      for (int i = 0; i < np; ++i) {
                        PolyIdeal x = random_poly_ideal(d, rng), y = random_poly_ideal(d, rng);
                        for (int s = 0; s <= b.slice; ++s) {
                          Module xs = x.slice_module(s, b.mult_cap), ys = y.slice_module(s, b.mult_cap);
                          Module lhs = intersect(xs, ys).localized(delta);
                          Module rhs = intersect(xs.localized(delta), ys.localized(delta));
                          t.expect(lhs == rhs, x.str() + " and " + y.str() + " at slice " + std::to_string(s));
                        }
                      }
                      BudgetRecord rec = slice_budget(b);
                      rec.emplace_back("pairs", std::to_string(np));
                      return finish("thm3.5", "stable extension commutes with intersections, " + where, t, rec);
                    }});
      ts.push_back({"thm3.5", [=] {
                      Tally t;
                      std::mt19937_64 rng(mix(b.seed, 37));
                      for (int i = 0; i < ns; ++i) {
                        PolyIdeal a = random_poly_ideal(d, rng);
                        PolyValue c = curly_stable(delta, a, b);
                        // The nagata upper bound is the tri upper bound cut to multiples of gcd(A); building the
                        // bracket fails when the nagata lower bound leaves it.
                        std::optional<PolyValue> ng;
                        try {
                          ng = nagata(delta, a, b);
                        } catch (const std::logic_error& e) {
                          t.fail("nagata above tri: " + a.str() + " (" + e.what() + ")");
                          continue;
                        }
                        for (int s = 0; s <= b.slice; ++s) {
                          const auto& cs = c.slices[static_cast<std::size_t>(s)];
                          const auto& gs = ng->slices[static_cast<std::size_t>(s)];
                          const std::string w = a.str() + " at slice " + std::to_string(s);
                          t.expect(gs.lower()->contains(cs.value()), "stable above nagata: " + w);
                          t.expect(gs.upper()->contains(*gs.lower()), "nagata above tri: " + w);
                        }
                      }
                      BudgetRecord rec = slice_budget(b);
                      rec.emplace_back("instances", std::to_string(ns));
                      return finish("thm3.5", "stable <= nagata <= tri on slices, " + where, t, rec);
                    }});
    }
}

void Suites::prop38(std::vector<Task>& ts) const {
  const Budget b = budget();
  for (const auto& d : domains({OrderDomain::integers(), OrderDomain::order(-3, 2)}))
    ts.push_back({"prop3.8", [=] {
                    Tally t;
                    const Field& k = d->field();
                    auto p2 = d->primes_above(2).front();
                    const Poly x = Poly::x(k);
                    const Poly one = Poly::constant(FieldElement::from_int(k, 1));
                    std::vector<PolyPrime> pool{PolyPrime::upper(d, x * x + one), PolyPrime::composite(p2, x),
                                                PolyPrime::extended(p2)};
                    // Expected tags: in, out (certified), in.
                    auto rep = classify_poly_qmax(SemistarOp::identity(d), d->primes_up_to(b.prime_norm), pool, b);
                    t.tri(rep[0].member, rep[0].prime.str() + ": " + rep[0].note);
                    if (rep[1].member == Tri::False && rep[1].certified) t.ok();
                    else if (rep[1].member == Tri::True) t.fail(rep[1].prime.str() + " tagged quasi-maximal");
                    else t.unsure();
                    t.tri(rep[2].member, rep[2].prime.str() + ": " + rep[2].note);
                    BudgetRecord rec = slice_budget(b);
                    for (const auto& e : rep)
                      rec.emplace_back(e.prime.str(), (e.member == Tri::True ? "in" : e.member == Tri::False ? "out" : "unknown") +
                                                          std::string(e.certified ? " (certified)" : ""));
                    return finish("prop3.8", "quasi-maximal primes of D[X] for d over " + domain_label(d), t, rec);
                  }});
}

void Suites::lem46(std::vector<Task>& ts) const {
  const int n = samples(100);
  const Budget b = budget();
  for (const auto& d : domains({OrderDomain::integers(), OrderDomain::order(-3, 2)})) {
    ts.push_back({"lem4.6", [=] {
                    Tally t;
                    std::mt19937_64 rng(mix(b.seed, 46));
                    for (int i = 0; i < n; ++i) {
                      Poly f = random_poly(d, rng, 4), g = random_poly(d, rng, 4);
                      t.expect(dedekind_mertens_check(d, f, g), "f=" + f.str() + ", g=" + g.str());
                    }
                    return finish("lem4.6", "Dedekind-Mertens on random pairs over " + domain_label(d), t,
                                  {{"samples", std::to_string(n)}, {"max_degree", "4"}});
                  }});
    ts.push_back({"lem4.6", [=] {
                    Tally t;
                    std::mt19937_64 rng(mix(b.seed, 47));
                    std::uniform_int_distribution<int> cnt(1, 3);
                    for (int i = 0; i < n; ++i) {
                      std::vector<Poly> gs;
                      const int k = cnt(rng);
                      for (int j = 0; j < k; ++j) gs.push_back(random_poly(d, rng, 3));
                      PolyIdeal h(d, gs);
                      const int r = 1 + i % 3;
                      t.expect(content_power_sum_check(h, r), "H=" + h.str() + ", r=" + std::to_string(r));
                    }
                    return finish("lem4.6", "content power sums on random H over " + domain_label(d), t,
                                  {{"samples", std::to_string(n)}, {"max_r", "3"}});
                  }});
  }
  auto d = OrderDomain::order(-3, 2);
  if (domains({d}).empty()) return;
  ts.push_back({"lem4.6", [d, b] {
                  Tally t;
                  const Field& k = d->field();
                  auto dd = SemistarOp::identity(d);
                  auto pool = default_eab_pool(d, b.prime_norm);
                  PolyIdeal h(d, {Poly::constant(FieldElement::from_int(k, 2)), Poly::x(k)});
                  PolyIdeal lin(d, {Poly::x(k) + Poly::constant(FieldElement::from_int(k, 1))});
                  auto p = d->primes_above(2).front().ideal();
                  Budget bb = b;
                  bb.slice = std::min(b.slice, 3);
                  t.tri(eab_extension_check(dd, h, FractionalIdeal::unit(d), pool, bb), "E=D, H=" + h.str());
                  t.tri(eab_extension_check(dd, h, p, pool, bb), "E=P, H=" + h.str());
                  t.tri(eab_extension_check(dd, lin, FractionalIdeal::principal(d, FieldElement::from_int(k, 2)), pool, bb),
                        "E=(2), H=" + lin.str());
                  BudgetRecord rec = slice_budget(bb);
                  rec.emplace_back("eab_pool_size", std::to_string(pool.size()));
                  return finish("lem4.6", "colon inclusion into E^(d_a)[X] over Z[sqrt(-3)]", t, rec);
                }});
}

void Suites::cor48(std::vector<Task>& ts) const {
  const Budget b = budget();
  auto z = OrderDomain::integers();
  if (!domains({z}).empty()) {
    ts.push_back({"cor4.8", [z, b] {
                    Tally t;
                    const Field& k = z->field();
                    const Poly x = Poly::x(k);
                    auto c = [&](long v) { return Poly::constant(FieldElement::from_int(k, v)); };
                    PolyIdeal a(z, {c(2), x});
                    auto cert = b_membership_certificate(a, c(1), 3, b);
                    t.expect(cert.kind == BCertificate::Kind::NotIntegral, "1: " + cert.str());
                    PolyValue tri = blacktriangle(SemistarOp::identity(z), OverringTag::K, a, b);
                    Module unit = Module::of(FractionalIdeal::unit(z));
                    for (int s = 0; s <= b.slice; ++s) {
                      const auto& cs = tri.slices[static_cast<std::size_t>(s)];
                      if (cs.is_exact()) t.expect(cs.value() == unit.power(s + 1), "tri slice " + std::to_string(s));
                      else t.unsure();
                    }
                    BudgetRecord rec = slice_budget(b);
                    rec.emplace_back("certificate", cert.str());
                    return finish("cor4.8", "(2, X) over Z: 1 outside the b-closure, tri closes to Z[X]", t, rec);
                  }});
    ts.push_back({"cor4.8", [z, b] {
                    Tally t;
                    const Field& k = z->field();
                    const Poly x = Poly::x(k);
                    auto c = [&](long v) { return Poly::constant(FieldElement::from_int(k, v)); };
                    PolyIdeal a(z, {c(4), x * x});
                    const Poly f = c(2) * x;
                    auto cert = b_membership_certificate(a, f, 3, b);
                    t.expect(cert.kind == BCertificate::Kind::Integral, "2X: " + cert.str());
                    PolyValue bb = b_extension(a, b);
                    t.expect(!bb.slices[1].value().contains(f.coefficient_vector(1)), "2X in A Z[X]");
                    BudgetRecord rec = slice_budget(b);
                    rec.emplace_back("certificate", cert.str());
                    return finish("cor4.8", "(4, X^2) over Z: 2X integral over A but outside [b_D](A)", t, rec);
                  }});
  }
  auto d = OrderDomain::order(-3, 2);
  if (domains({d}).empty()) return;
  ts.push_back({"cor4.8", [d, b] {
                  Tally t;
                  const Field& k = d->field();
                  const Poly x = Poly::x(k);
                  auto c = [&](long v) { return Poly::constant(FieldElement::from_int(k, v)); };
                  auto bop = SemistarOp::builtin("b", d);
                  for (const auto& a : {PolyIdeal(d, {c(2), x}), PolyIdeal(d, {c(4), x * x}), PolyIdeal(d, {c(3), x * x + c(1)})}) {
                    PolyValue lo = b_extension(a, b), up = blacktriangle(bop, OverringTag::K, a, b);
                    t.tri(slices_included(lo, up), "[b_D] vs tri(b) on " + a.str());
                  }
                  return finish("cor4.8", "[b_D] <= tri(b) on slices over Z[sqrt(-3)]", t, slice_budget(b));
                }});
}

void Suites::prop28(std::vector<Task>& ts) const {
  const Budget b = budget();
  const int n = samples(20);
  auto z = OrderDomain::integers();
  if (domains({z}).empty()) return;
  for (auto [lo, hi] : {std::pair{1, 2}, std::pair{2, 3}})
    ts.push_back({"prop2.8", [z, lo = lo, hi = hi] {
                    Tally t;
                    auto s = strict_family_probe(z->field(), lo, hi, 4);
                    t.expect(s.separated, s.str());
                    return finish("prop2.8",
                                  "op_" + std::to_string(lo) + " < op_" + std::to_string(hi) + " over Z via " + s.str(), t,
                                  {{"family_size", "4"}});
                  }});
  ts.push_back({"prop2.8", [z, b, n] {
                  Tally t;
                  std::mt19937_64 rng(mix(b.seed, 28));
                  for (int i = 0; i < n; ++i) {
                    PolyIdeal a = random_poly_ideal(z, rng);
                    t.tri(family_chain_check(SemistarOp::identity(z), a, 4, b), a.str());
                  }
                  BudgetRecord rec = slice_budget(b);
                  rec.emplace_back("samples", std::to_string(n));
                  return finish("prop2.8", "op_1 <= op_2 <= ... <= tri on f.g. samples over Z", t, rec);
                }});
}

void Suites::rem57a(std::vector<Task>& ts) const {
  const Budget b = budget();
  const int n = samples(20);
  for (const auto& d : domains({OrderDomain::order(-3, 2), OrderDomain::integers()}))
    ts.push_back({"rem5.7a", [=] {
                    Tally t;
                    auto pool = default_eab_pool(d, b.prime_norm);
                    auto dd = SemistarOp::identity(d);
                    for (const auto& e : random_ideals(d, mix(b.seed, 57), n)) {
                      Certified c = eab_approx(dd, e, pool);
                      Module closed = Module::of(e).times_ring(d->maximal_order());
                      if (c.is_exact()) t.expect(c.value() == closed, "E=" + e.str() + ": " + c.str());
                      else t.unsure();
                    }
                    BudgetRecord rec{{"samples", std::to_string(n)}, {"eab_pool_size", std::to_string(pool.size())},
                                     {"prime_norm", std::to_string(b.prime_norm)}};
                    return finish("rem5.7a",
                                  std::string(d->is_maximal() ? "eab(d) is the identity" : "eab(d) reaches E*O") + " over " +
                                      domain_label(d),
                                  t, rec);
                  }});
}

void Suites::rem34(std::vector<Task>& ts) const {
  const Budget b = budget();
  auto d = OrderDomain::order(-3, 2);
  if (domains({d}).empty()) return;
  ts.push_back({"rem3.4", [d, b] {
                  Tally t;
                  // A spectral op with finite prime set is of finite type, so both sides share one closed form; this is a consistency check.
                  auto delta = d->primes_above(2);
                  auto s = SemistarOp::spectral(d, delta), sf = SemistarOp::finite_type(s);
                  std::mt19937_64 rng(mix(b.seed, 34));
                  Budget bb = b;
                  bb.slice = std::min(b.slice, 3);
                  for (int i = 0; i < 5; ++i) {
                    PolyIdeal a = random_poly_ideal(d, rng);
                    auto x = curly_stable(s.delta(), a, bb), y = curly_stable(sf.children().front().delta(), a, bb);
                    t.tri(slices_included(x, y) == Tri::True && slices_included(y, x) == Tri::True ? Tri::True : Tri::Unknown,
                          a.str());
                  }
                  ClaimResult r = finish("rem3.4", "open question, consistency only: stable extensions of spectral({P2}) and of its finite-type part agree",
                                         t, slice_budget(bb));
                  r.status = Status::Informational;
                  r.witness.reset();
                  return r;
                }});
}

const std::vector<std::pair<std::string, void (Suites::*)(std::vector<Task>&) const>>& registry() {
  static const std::vector<std::pair<std::string, void (Suites::*)(std::vector<Task>&) const>> r{
      {"axioms", &Suites::axioms},   {"cor4.8", &Suites::cor48},       {"divisorial", &Suites::divisorial},
      {"lem4.6", &Suites::lem46},    {"prop2.4", &Suites::prop24},     {"prop2.8", &Suites::prop28},
      {"prop3.8", &Suites::prop38},  {"rem2.6c", &Suites::rem26c},     {"rem3.4", &Suites::rem34},
      {"rem5.7a", &Suites::rem57a},  {"thm2.1-claim1", &Suites::claim1}, {"thm3.5", &Suites::thm35}};
  return r;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Confirmed: return "confirmed";
    case Status::Inconclusive: return "bracket-inconclusive";
    case Status::Refuted: return "refuted";
    case Status::Informational: return "informational";
  }
  return "";
}

std::vector<std::string> claim_ids() {
  std::vector<std::string> out;
  for (const auto& [id, fn] : registry()) out.push_back(id);
  return out;
}

bool is_claim_id(const std::string& id) {
  auto ids = claim_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<ClaimResult> run_suite(const std::string& id, const SuiteConfig& cfg) {
  if (id != "all" && !is_claim_id(id)) throw std::invalid_argument("unknown claim id '" + id + "'");
  Suites suites(cfg);
  std::vector<Task> tasks;
  for (const auto& [name, fn] : registry())
    if (id == "all" || id == name) (suites.*fn)(tasks);
  std::vector<ClaimResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      auto start = Clock::now();
      try {
        results[i] = tasks[i].run();
      } catch (const std::exception& e) {
        results[i].claim = tasks[i].claim;
        results[i].instance = "evaluation error";
        results[i].status = Status::Inconclusive;
        results[i].budgets = {{"error", e.what()}};
      }
      results[i].ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    }
  };
  unsigned n = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::stable_sort(results.begin(), results.end(), [](const ClaimResult& a, const ClaimResult& b) { return a.claim < b.claim; });
  return results;
}

std::string domain_label(const DomainPtr& d) {
  if (d->r() == 1) return "Z";
  const auto m = d->field().m();
  const auto f = d->conductor_index();
  if (m == -3 && f == 2) return "Z[sqrt(-3)]";
  if (m == 5 && f == 1) return "Z[(1+sqrt(5))/2]";
  return d->name();
}

DomainPtr domain_from_label(const std::string& label) {
  std::string s;
  for (char c : label)
    if (c != ' ') s += c;
  if (s == "Z") return OrderDomain::integers();
  if (s == "Z[sqrt(-3)]") return OrderDomain::order(-3, 2);
  if (s == "Z[(1+sqrt(5))/2]") return OrderDomain::order(5, 1);
  long long m = 0, f = 1;
  if (std::sscanf(s.c_str(), "order(m=%lld,f=%lld)", &m, &f) == 2) return OrderDomain::order(m, f);
  throw std::invalid_argument("unknown domain '" + label + "'");
}

std::string report_json(const std::vector<ClaimResult>& results, bool with_timing) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json o;
    o["claim"] = r.claim;
    o["instance"] = r.instance;
    o["status"] = to_string(r.status);
    o["witness"] = r.witness ? nlohmann::ordered_json(*r.witness) : nlohmann::ordered_json(nullptr);
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.budgets) b[k] = v;
    o["budgets"] = b;
    if (with_timing) o["ms"] = std::round(r.ms * 10) / 10;
    doc.push_back(o);
  }
  return doc.dump(2) + "\n";
}

std::string report_table(const std::vector<ClaimResult>& results) {
  std::ostringstream os;
  std::size_t wc = 5, ws = 6;
  for (const auto& r : results) {
    wc = std::max(wc, r.claim.size());
    ws = std::max(ws, to_string(r.status).size());
  }
  os << std::left << std::setw(static_cast<int>(wc)) << "claim" << "  " << std::setw(static_cast<int>(ws)) << "status"
     << "  " << std::right << std::setw(9) << "ms" << "  instance\n";
  for (const auto& r : results) {
    os << std::left << std::setw(static_cast<int>(wc)) << r.claim << "  " << std::setw(static_cast<int>(ws))
       << to_string(r.status) << "  " << std::right << std::setw(9) << std::fixed << std::setprecision(1) << r.ms << "  "
       << r.instance << "\n";
    if (r.witness) os << std::string(wc + ws + 15, ' ') << "witness: " << *r.witness << "\n";
  }
  return os.str();
}

int exit_code(const std::vector<ClaimResult>& results) {
  if (results.empty()) return 3;
  bool inconclusive = false;
  for (const auto& r : results) {
    if (r.status == Status::Refuted) return 1;
    if (r.status == Status::Inconclusive) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

Budget budget_profile(const std::string& name) {
  Budget b;
  if (name.empty() || name == "default") return b;
  if (name == "quick") {
    b.slice = 3;
    b.mult_cap = 2;
    b.witness_deg = 3;
    b.prime_norm = 20;
    return b;
  }
  if (name == "thorough") {
    b.slice = 6;
    b.mult_cap = 4;
    b.witness_deg = 5;
    b.prime_norm = 40;
    return b;
  }
  throw std::invalid_argument("unknown budget profile '" + name + "'");
}

}  // namespace semistar

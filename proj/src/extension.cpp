#include "semistar/extension.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace semistar {

namespace {

Poly one_poly(const Field& k) { return Poly::constant(FieldElement::from_int(k, 1)); }

// Witness numerators X^j for j <= w.
std::vector<Poly> numerator_pool(const Field& k, int w) {
  std::vector<Poly> out;
  for (int j = 0; j <= w; ++j) out.push_back(poly_pow(Poly::x(k), j));
  return out;
}

// Monic multipliers X^j, (X+1)^j, (X-1)^j for j <= w.
std::vector<Poly> monic_pool(const Field& k, int w) {
  const Poly x = Poly::x(k), one = one_poly(k);
  std::vector<Poly> out;
  for (int j = 0; j <= w; ++j)
    for (const Poly& base : {x, x + one, x - one}) out.push_back(poly_pow(base, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool coefficients_in(const ZLattice& l, const Poly& g) {
  for (const auto& c : g.coeffs())
    if (!l.contains(to_vec(c))) return false;
  return true;
}

std::vector<FieldElement> coefficients(const std::vector<Poly>& gs) {
  std::vector<FieldElement> cs;
  for (const auto& g : gs)
    for (const auto& c : g.coeffs())
      if (!c.is_zero()) cs.push_back(c);
  return cs;
}

void add_lower(std::optional<Module>& lo, const Module& m) {
  if (!lo) {
    lo = m;
    return;
  }
  if (auto s = try_sum(*lo, m)) lo = *s;
}

Certified make_certified(const std::optional<Module>& lo, const std::optional<Module>& up, BudgetRecord rec) {
  if (lo && up) return Certified::bracket(*lo, *up, std::move(rec));
  if (lo) return Certified::lower_bound(*lo, std::move(rec));
  return Certified::upper_bound(*up, std::move(rec));
}

void note_slices(const PolyIdeal& a, int top, int cap, BudgetRecord& rec) {
  int used = cap;
  bool stable = true;
  for (int n = 0; n <= top; ++n) {
    auto s = a.stable_slice(n, cap);
    used = std::max(used, s.mult_cap);
    stable = stable && s.stabilized;
  }
  rec.emplace_back("mult_cap", std::to_string(used));
  rec.emplace_back("slices_stabilized", stable ? "yes" : "no");
}

// A witness z = p/q together with an upper bound of c(zA)^op.
struct Witness {
  Poly p, q;
  Module content_star;
};

// {f of degree <= n : p f in q C[X]}.
Module witness_slice(const Witness& w, int n) {
  const auto& d = w.content_star.domain();
  const int top = n + w.p.degree();
  const int e = top - w.q.degree();
  if (e < 0) return Module::zero(d, n + 1);
  Module target = module_image(w.q, w.content_star.power(e + 1));
  return module_preimage(w.p, n, target);
}

}  // namespace

std::string to_string(OverringTag t) {
  switch (t) {
    case OverringTag::K: return "K";
    case OverringTag::D: return "D";
    case OverringTag::O: return "O";
  }
  return "";
}

std::string to_string(StrictVerdict v) {
  switch (v) {
    case StrictVerdict::Strict: return "strict";
    case StrictVerdict::ExtensionOnly: return "extension-only";
    case StrictVerdict::Fails: return "fails";
    case StrictVerdict::Inconclusive: return "inconclusive";
  }
  return "";
}

PolyOverring PolyOverring::of_ring(std::string name, ZLattice ring) {
  PolyOverring t;
  t.name = std::move(name);
  t.ring = std::move(ring);
  return t;
}

PolyOverring PolyOverring::localization(const DomainPtr& d, const PrimeIdeal& p) {
  PolyOverring t;
  t.name = "D_" + p.label();
  t.ring = d->ring();
  t.local = p;
  return t;
}

PolyOverring PolyOverring::whole(const DomainPtr& d) {
  PolyOverring t;
  t.name = "K";
  t.ring = d->ring();
  t.field = true;
  return t;
}

Certified power(const Certified& c, int k) {
  std::optional<Module> lo, up;
  if (c.lower()) lo = c.lower()->power(k);
  if (c.upper()) up = c.upper()->power(k);
  return make_certified(lo, up, c.budget());
}

PolyValue blacktriangle(const SemistarOp& op, OverringTag t, const PolyIdeal& a, const Budget& b) {
  const auto& d = a.domain();
  const Field& k = d->field();
  PolyValue out;
  out.budget = {{"operation", "tri(" + op.name() + ", T=" + to_string(t) + ")"},
                {"witness_deg", std::to_string(b.witness_deg)}};
  Certified dstar = apply(op, FractionalIdeal::unit(d));
  ZLattice tring = t == OverringTag::O ? d->maximal_order() : d->ring();
  if (t != OverringTag::K) {
    Certified tv = apply(op, FractionalIdeal(d, tring));
    if (!tv.is_exact() || tv.value() != Module::lattice(d, 1, tring))
      throw std::invalid_argument("overring " + to_string(t) + " is not closed under " + op.name());
  }
  const Poly& g = a.gcd();
  if (g.degree() > 0) {
    // (g A')^▲ = g A'^▲.
    std::vector<Poly> gs;
    for (const auto& x : a.generators()) gs.push_back(exact_div(x, g));
    PolyValue inner = blacktriangle(op, t, PolyIdeal(d, gs), b);
    out.budget = inner.budget;
    out.budget.emplace_back("scaled_by", g.str());
    for (int n = 0; n <= b.slice; ++n) {
      const int m = n - g.degree();
      if (m < 0) {
        out.slices.push_back(Certified::exact(Module::zero(d, n + 1), out.budget));
        continue;
      }
      const Certified& c = inner.slices[static_cast<std::size_t>(m)];
      std::optional<Module> lo, up;
      if (c.lower()) lo = module_image(g, *c.lower());
      if (c.upper()) up = module_image(g, *c.upper());
      out.slices.push_back(make_certified(lo, up, out.budget));
    }
    return out;
  }
  note_slices(a, b.slice, b.mult_cap, out.budget);
  if (t == OverringTag::K && dstar.is_exact() && dstar.value().is_all()) {
    out.budget.emplace_back("closed_form", "A K[X]");
    for (int n = 0; n <= b.slice; ++n) out.slices.push_back(Certified::exact(multiples_space(d, g, n), out.budget));
    return out;
  }

  // Witnesses z = s h / q with q in {1, g}.
  FractionalIdeal ca = content(a);
  std::vector<FieldElement> scalars{FieldElement::from_int(k, 1)};
  if (t != OverringTag::K) {
    for (const auto& x : ca.basis()) scalars.push_back(x);
    for (const auto& x : colon(FractionalIdeal::unit(d), ca).basis()) scalars.push_back(x);
    for (const auto& x : elements_of(k, colon_k(tring, ca.lattice(), k, 1))) scalars.push_back(x);
    std::sort(scalars.begin(), scalars.end());
    scalars.erase(std::unique(scalars.begin(), scalars.end()), scalars.end());
  }
  std::vector<Poly> dens{one_poly(k)};
  if (g.degree() > 0) dens.push_back(g);
  std::vector<Witness> ws;
  int unbounded = 0, tried = 0;
  for (const auto& q : dens)
    for (const auto& h : numerator_pool(k, b.witness_deg))
      for (const auto& s : scalars) {
        Poly p = s * h;
        std::vector<Poly> zg;
        bool ok = true;
        for (const auto& gl : a.generators()) {
          Poly m = p * gl;
          if (!divides(q, m)) {
            ok = false;
            break;
          }
          Poly zgl = exact_div(m, q);
          if (t != OverringTag::K && !coefficients_in(tring, zgl)) {
            ok = false;
            break;
          }
          zg.push_back(zgl);
        }
        if (!ok) continue;
        ++tried;
        Certified cs = apply(op, FractionalIdeal::generated(d, coefficients(zg)));
        if (!cs.upper()) {
          ++unbounded;
          continue;
        }
        if (cs.upper()->is_all()) continue;
        ws.push_back({p, q, *cs.upper()});
      }
  out.budget.emplace_back("witnesses", std::to_string(tried));
  if (unbounded) out.budget.emplace_back("witnesses_without_upper_bound", std::to_string(unbounded));

  // Slice-independent lower-bound data.
  const ZLattice e0 = a.stable_slice(0, b.mult_cap).lattice;
  std::optional<Module> e0_star;
  if (!e0.is_zero()) {
    Certified c = apply(op, FractionalIdeal(d, e0));
    if (c.lower()) e0_star = *c.lower();
  }
  // beta D^op[X] ⊆ A^▲ whenever a/beta in D, g'/beta in D[X] and c(g'/beta)^op = D^op.
  std::vector<FieldElement> betas;
  if (dstar.lower() && !e0.is_zero()) {
    std::vector<Poly> cands = a.generators();
    const int top = a.max_degree();
    const ZLattice st = a.stable_slice(top, b.mult_cap).lattice;
    for (Index i = 0; i < st.rank(); ++i) cands.push_back(Poly::from_coefficient_vector(k, st.basis_row(i)));
    for (const auto& a0 : elements_of(k, e0))
      for (const auto& gp : cands) {
        if (gp.degree() < 1) continue;
        std::vector<FieldElement> bs{FieldElement::from_int(k, 1), a0};
        for (const auto& c : gp.coeffs())
          if (!c.is_zero()) bs.push_back(c);
        for (const auto& beta : bs) {
          if (std::find(betas.begin(), betas.end(), beta) != betas.end()) continue;
          if (!d->contains(a0 / beta)) continue;
          Poly gq = beta.inverse() * gp;
          if (!coefficients_in(d->ring(), gq)) continue;
          if (included(dstar, apply(op, content(d, gq))) == Tri::True) betas.push_back(beta);
        }
      }
  }
  if (!betas.empty()) out.budget.emplace_back("unit_content_multipliers", std::to_string(betas.size()));

  for (int n = 0; n <= b.slice; ++n) {
    const Module an = a.slice_module(n, b.mult_cap);
    std::optional<Module> lo = an;
    if (e0_star) add_lower(lo, e0_star->power(n + 1));
    for (const auto& beta : betas) add_lower(lo, dstar.lower()->scaled(beta).power(n + 1));
    switch (op.kind()) {
      case SemistarOp::Kind::Spectral:
        if (!op.delta().empty()) add_lower(lo, an.localized(op.delta()));
        break;
      case SemistarOp::Kind::Overring:
        add_lower(lo, an.times_ring(op.ring()));
        break;
      case SemistarOp::Kind::B:
        add_lower(lo, an.times_ring(d->maximal_order()));
        break;
      default:
        break;
    }
    Module up = Module::all(d, n + 1);
    for (const auto& w : ws) up = intersect(up, witness_slice(w, n));
    out.slices.push_back(Certified::bracket(*lo, up, out.budget));
  }
  return out;
}

PolyValue curly_stable(const std::vector<PrimeIdeal>& delta, const PolyIdeal& a, const Budget& b) {
  if (delta.empty()) throw std::invalid_argument("curly_stable: empty prime set");
  PolyValue out;
  out.budget = {{"operation", "stable extension"}};
  note_slices(a, b.slice, b.mult_cap, out.budget);
  for (int n = 0; n <= b.slice; ++n)
    out.slices.push_back(Certified::exact(a.slice_module(n, b.mult_cap).localized(delta), out.budget));
  return out;
}

PolyValue nagata(const std::vector<PrimeIdeal>& delta, const PolyIdeal& a, const Budget& b) {
  if (delta.empty()) throw std::invalid_argument("nagata: empty prime set");
  const auto& d = a.domain();
  const Field& k = d->field();
  PolyValue tri = blacktriangle(SemistarOp::spectral(d, delta), OverringTag::K, a, b);
  PolyValue out;
  out.budget = {{"operation", "nagata extension"}, {"multiplier_deg", std::to_string(b.witness_deg)}};
  note_slices(a, b.slice, b.mult_cap, out.budget);
  const auto hs = monic_pool(k, b.witness_deg);
  for (int n = 0; n <= b.slice; ++n) {
    // f h in A for a monic h puts f in A D_Q(X) for every Q.
    ZLattice sum(static_cast<Index>(d->r()) * (n + 1));
    for (const auto& h : hs) {
      ZLattice big = a.stable_slice(n + h.degree(), b.mult_cap).lattice;
      sum = sum + preimage(multiplication_matrix(h, n), big);
    }
    const Module span = multiples_space(d, a.gcd(), n);
    Module lo = intersect(Module::lattice(d, n + 1, sum).localized(delta), span);
    std::optional<Module> up;
    if (tri.slices[static_cast<std::size_t>(n)].upper()) up = intersect(*tri.slices[static_cast<std::size_t>(n)].upper(), span);
    else
      up = span;
    out.slices.push_back(Certified::bracket(lo, *up, out.budget));
  }
  return out;
}

PolyValue wedge_overring_poly(const std::vector<PolyOverring>& ts, const PolyIdeal& a, const Budget& b) {
  if (ts.empty()) throw std::invalid_argument("wedge of no overrings");
  const auto& d = a.domain();
  PolyValue out;
  std::string names;
  for (const auto& t : ts) names += (names.empty() ? "" : ",") + t.name;
  out.budget = {{"operation", "wedge(" + names + ")"}};
  if (ts.size() == 1) out.budget.emplace_back("finite_type", "yes");
  note_slices(a, b.slice, b.mult_cap, out.budget);
  std::vector<std::optional<PolyIdeal>> extended;
  for (const auto& t : ts)
    if (t.field || t.ring == d->ring())
      extended.emplace_back(a);
    else
      extended.emplace_back(a.times_ring(t.ring));
  for (int n = 0; n <= b.slice; ++n) {
    Module v = Module::all(d, n + 1);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto& t = ts[i];
      Module m = t.field ? multiples_space(d, a.gcd(), n) : extended[i]->slice_module(n, b.mult_cap);
      if (t.local) m = m.localized({*t.local});
      v = intersect(v, m);
    }
    out.slices.push_back(Certified::exact(v, out.budget));
  }
  return out;
}

PolyValue b_extension(const PolyIdeal& a, const Budget& b) {
  const auto& d = a.domain();
  return wedge_overring_poly({PolyOverring::of_ring("O", d->maximal_order())}, a, b);
}

PolyOperation identity_poly_op() {
  return {"d[X]",
          [](const PolyIdeal& a, const Budget& b) {
            PolyValue out;
            out.budget = {{"operation", "identity"}};
            for (int n = 0; n <= b.slice; ++n) out.slices.push_back(Certified::exact(a.slice_module(n, b.mult_cap)));
            return out;
          },
          true};
}

PolyOperation trivial_poly_op() {
  return {"e[X]",
          [](const PolyIdeal& a, const Budget& b) {
            PolyValue out;
            out.whole_field = true;
            out.budget = {{"operation", "trivial"}};
            for (int n = 0; n <= b.slice; ++n) out.slices.push_back(Certified::exact(Module::all(a.domain(), n + 1)));
            return out;
          },
          true};
}

PolyOperation blacktriangle_op(const SemistarOp& op, OverringTag t) {
  return {"tri(" + op.name() + ", T=" + to_string(t) + ")",
          [op, t](const PolyIdeal& a, const Budget& b) { return blacktriangle(op, t, a, b); }, false};
}

PolyOperation curly_op(std::vector<PrimeIdeal> delta) {
  return {"stable_ext", [delta](const PolyIdeal& a, const Budget& b) { return curly_stable(delta, a, b); }, true};
}

PolyOperation nagata_op(std::vector<PrimeIdeal> delta) {
  return {"nagata", [delta](const PolyIdeal& a, const Budget& b) { return nagata(delta, a, b); }, true};
}

PolyOperation wedge_op(std::vector<PolyOverring> ts) {
  const bool single = ts.size() == 1;
  return {"wedge", [ts](const PolyIdeal& a, const Budget& b) { return wedge_overring_poly(ts, a, b); }, single};
}

PolyOperation b_extension_op() {
  return {"b[X]", [](const PolyIdeal& a, const Budget& b) { return b_extension(a, b); }, true};
}

Certified contraction(const PolyOperation& op, const FractionalIdeal& e, const Budget& b) {
  Budget b0 = b;
  b0.slice = 0;
  PolyValue v = op.eval(PolyIdeal::extended(e), b0);
  if (v.whole_field) return Certified::exact(Module::all(e.domain(), 1), v.budget);
  return v.slices.front();
}

Tri slices_included(const PolyValue& a, const PolyValue& b) {
  if (b.whole_field) return Tri::True;
  if (a.whole_field) return Tri::False;
  Tri out = Tri::True;
  const std::size_t n = std::min(a.slices.size(), b.slices.size());
  for (std::size_t i = 0; i < n; ++i) {
    Tri t = included(a.slices[i], b.slices[i]);
    if (t == Tri::False) return Tri::False;
    if (t == Tri::Unknown) out = Tri::Unknown;
  }
  return out;
}

StrictReport strict_extension_check(const PolyOperation& op, const SemistarOp& star,
                                    const std::vector<FractionalIdeal>& samples, int slice_cap, const Budget& b) {
  Budget bb = b;
  bb.slice = slice_cap;
  auto rank = [](StrictVerdict v) {
    switch (v) {
      case StrictVerdict::Strict: return 0;
      case StrictVerdict::Inconclusive: return 1;
      case StrictVerdict::ExtensionOnly: return 2;
      case StrictVerdict::Fails: return 3;
    }
    return 0;
  };
  StrictReport rep;
  for (const auto& e : samples) {
    PolyValue v = op.eval(PolyIdeal::extended(e), bb);
    Certified target = apply(star, e);
    StrictVerdict verdict = StrictVerdict::Strict;
    int where = -1;
    for (int n = 0; n <= slice_cap; ++n) {
      Certified tn = power(target, n + 1);
      const Certified& cn = v.slices[static_cast<std::size_t>(n)];
      Tri lt = included(cn, tn), gt = included(tn, cn);
      Tri eq = (lt == Tri::False || gt == Tri::False) ? Tri::False
               : (lt == Tri::True && gt == Tri::True) ? Tri::True
                                                       : Tri::Unknown;
      if (eq == Tri::True) continue;
      if (n == 0) {
        verdict = eq == Tri::False ? StrictVerdict::Fails : StrictVerdict::Inconclusive;
        where = 0;
        break;
      }
      if (eq == Tri::False) {
        verdict = StrictVerdict::ExtensionOnly;
        where = n;
        break;
      }
      if (verdict == StrictVerdict::Strict) {
        verdict = StrictVerdict::Inconclusive;
        where = n;
      }
    }
    // K(X) never equals E^op[X], though every slice agrees with K[X].
    if (v.whole_field && verdict != StrictVerdict::Fails) {
      verdict = StrictVerdict::ExtensionOnly;
      where = slice_cap + 1;
    }
    if (rank(verdict) > rank(rep.verdict)) {
      rep.verdict = verdict;
      rep.witness = e;
      rep.witness_slice = where;
    }
  }
  return rep;
}

namespace {

// Integer combination c with c * rows = target, if one exists.
std::optional<std::vector<BigInt>> integer_solve(const RatMatrix& rows, const RatVector& target) {
  const Index m = rows.rows(), w = rows.cols();
  RatMatrix all(m + 1, w);
  all.topRows(m) = rows;
  all.row(m) = target;
  auto [dn, im] = clear_denominators(all);
  IntMatrix aug = IntMatrix::Zero(m, w + m);
  aug.leftCols(w) = im.topRows(m);
  for (Index i = 0; i < m; ++i) aug(i, w + i) = 1;
  std::vector<Index> pivots;
  const Index rank = hnf_in_place(aug, w, &pivots);
  IntVector t = im.row(m).transpose();
  IntVector y = IntVector::Zero(rank);
  for (Index i = 0; i < rank; ++i) {
    const Index c = pivots[static_cast<std::size_t>(i)];
    if (t(c) % aug(i, c) != 0) return std::nullopt;
    y(i) = t(c) / aug(i, c);
    for (Index j = 0; j < w; ++j) t(j) -= y(i) * aug(i, j);
  }
  for (Index j = 0; j < w; ++j)
    if (t(j) != 0) return std::nullopt;
  std::vector<BigInt> c(static_cast<std::size_t>(m), BigInt(0));
  for (Index i = 0; i < rank; ++i)
    for (Index j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] += y(i) * aug(i, w + j);
  return c;
}

std::vector<Poly> generator_powers(const PolyIdeal& a, int i) {
  if (i == 0) return {one_poly(a.domain()->field())};
  return poly_ideal_pow(a, i).generators();
}

std::optional<std::vector<Poly>> integral_equation(const PolyIdeal& a, const Poly& f, int k, int cap) {
  const auto& d = a.domain();
  const Field& fld = d->field();
  const Poly fk = poly_pow(f, k);
  int top = fk.degree();
  std::vector<std::vector<Poly>> groups(static_cast<std::size_t>(k) + 1);
  for (int i = 1; i <= k; ++i) {
    Poly fi = poly_pow(f, k - i);
    for (const auto& g : generator_powers(a, i)) {
      groups[static_cast<std::size_t>(i)].push_back(g);
      top = std::max(top, (g * fi).degree());
    }
  }
  top += cap;
  std::vector<RatVector> rows;
  std::vector<std::pair<int, Poly>> labels;
  for (int i = 1; i <= k; ++i) {
    Poly fi = poly_pow(f, k - i);
    for (const auto& g : groups[static_cast<std::size_t>(i)]) {
      Poly gf = g * fi;
      for (int s = 0; s + gf.degree() <= top; ++s)
        for (const auto& th : d->basis()) {
          Poly term = (th * g).shifted(s);
          rows.push_back((term * fi).coefficient_vector(top));
          labels.emplace_back(i, term);
        }
    }
  }
  if (rows.empty()) return std::nullopt;
  RatMatrix m(static_cast<Index>(rows.size()), rows.front().size());
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = rows[static_cast<std::size_t>(i)];
  auto c = integer_solve(m, (-fk).coefficient_vector(top));
  if (!c) return std::nullopt;
  std::vector<Poly> as(static_cast<std::size_t>(k), Poly(fld));
  for (std::size_t r = 0; r < labels.size(); ++r)
    if ((*c)[r] != 0)
      as[static_cast<std::size_t>(labels[r].first - 1)] += FieldElement(fld, Rational((*c)[r])) * labels[r].second;
  Poly check = fk;
  for (int i = 1; i <= k; ++i) check += as[static_cast<std::size_t>(i - 1)] * poly_pow(f, k - i);
  if (!check.is_zero()) throw std::logic_error("integral equation failed to verify");
  return as;
}

std::vector<Valuation> separating_pool(const DomainPtr& d, const Budget& b) {
  const Field& k = d->field();
  std::vector<Valuation> out;
  out.push_back(Valuation::gauss(Valuation::trivial(k), Rational(1)));
  for (int p = 2; p <= b.prime_norm; ++p) {
    if (!is_prime_int(BigInt(p))) continue;
    for (const auto& lat : maximal_order_primes(d, BigInt(p))) {
      Valuation base = Valuation::p_adic(d, lat, BigInt(p));
      for (const Rational& t : {Rational(1), Rational(0), Rational(1, 2), Rational(2)})
        out.push_back(Valuation::gauss(base, t));
    }
  }
  for (const auto& f : family_polys(k, 6)) out.push_back(Valuation::order_at(f));
  return out;
}

}  // namespace

std::string BCertificate::str() const {
  switch (kind) {
    case Kind::Integral: {
      std::string s = "t^" + std::to_string(equation.size());
      for (std::size_t i = 0; i < equation.size(); ++i) {
        if (equation[i].is_zero()) continue;
        s += " + (" + equation[i].str() + ")";
        const std::size_t e = equation.size() - i - 1;
        if (e > 0) s += "*t" + (e > 1 ? "^" + std::to_string(e) : std::string());
      }
      return "integral: " + s;
    }
    case Kind::NotIntegral:
      return "not integral: " + valuation->str();
    case Kind::Unknown:
      return "unknown";
  }
  return "";
}

BCertificate b_membership_certificate(const PolyIdeal& a, const Poly& f, int max_deg, const Budget& b) {
  BCertificate cert;
  for (int k = 1; k <= max_deg; ++k)
    if (auto eq = integral_equation(a, f, k, b.mult_cap)) {
      cert.kind = BCertificate::Kind::Integral;
      cert.equation = *eq;
      return cert;
    }
  for (const auto& w : separating_pool(a.domain(), b)) {
    if (ext_less(w.eval(f), w.min_value(a.generators()))) {
      cert.kind = BCertificate::Kind::NotIntegral;
      cert.valuation = w;
      return cert;
    }
  }
  return cert;
}

Tri eab_extension_check(const SemistarOp& op, const PolyIdeal& h, const FractionalIdeal& e,
                        const std::vector<FractionalIdeal>& pool, const Budget& b) {
  const auto& d = h.domain();
  Certified ea = eab_approx(op, e, pool);
  if (!ea.lower()) return Tri::Unknown;
  const int extra = h.max_degree();
  Budget bb = b;
  bb.slice = b.slice + extra;
  PolyValue left = blacktriangle(op, OverringTag::K, PolyIdeal::extended(e) * h, bb);
  Tri out = Tri::True;
  for (int n = 0; n <= b.slice; ++n) {
    // ((E[X]H)^▲ : H^▲) ⊆ ((E[X]H)^▲ : H).
    Module col = Module::all(d, n + 1);
    bool bounded = true;
    for (const auto& g : h.generators()) {
      const auto& s = left.slices[static_cast<std::size_t>(n + g.degree())];
      if (!s.upper()) {
        bounded = false;
        break;
      }
      col = intersect(col, module_preimage(g, n, *s.upper()));
    }
    if (!bounded || !ea.lower()->power(n + 1).contains(col)) out = Tri::Unknown;
  }
  return out;
}

std::vector<PolyQMaxEntry> classify_poly_qmax(const SemistarOp& op, const std::vector<PrimeIdeal>& pool_d,
                                              const std::vector<PolyPrime>& pool_poly, const Budget& b) {
  const auto& d = op.domain();
  const Field& k = d->field();
  QMaxResult qm = qmax(op, pool_d, b.prime_norm);
  Certified dstar = apply(op, FractionalIdeal::unit(d));
  std::vector<PolyQMaxEntry> out;
  for (const auto& q : pool_poly) {
    PolyQMaxEntry ent{q, Tri::Unknown, false, ""};
    switch (q.kind()) {
      case PolyPrime::Kind::Extended: {
        const auto& p = q.prime();
        if (std::find(qm.members.begin(), qm.members.end(), p) != qm.members.end()) {
          ent.member = Tri::True;
          ent.note = p.label() + " is quasi-maximal in D";
        } else if (std::find(qm.unknown.begin(), qm.unknown.end(), p) != qm.unknown.end()) {
          ent.note = "quasi-maximality of " + p.label() + " undecided";
        } else {
          ent.member = Tri::False;
          ent.note = p.label() + " is not quasi-maximal in D";
        }
        break;
      }
      case PolyPrime::Kind::Upper: {
        // c(Q) contains (D : c(f)) c(f).
        FractionalIdeal cf = content(d, q.poly());
        FractionalIdeal j = colon(FractionalIdeal::unit(d), cf) * cf;
        if (included(dstar, apply(op, j)) == Tri::True) {
          ent.member = Tri::True;
          ent.note = "content of the upper is " + op.name() + "-unit";
        } else {
          ent.note = "content closure not certified";
        }
        break;
      }
      case PolyPrime::Kind::Composite: {
        const auto& p = q.prime();
        FieldElement a(k, Rational(p.characteristic()));
        Poly g = q.poly();
        if (!coefficients_in(d->ring(), g) || included(dstar, apply(op, content(d, g))) != Tri::True) {
          ent.note = "no unit-content generator";
          break;
        }
        PolyValue v = blacktriangle(op, OverringTag::K, PolyIdeal(d, {Poly::constant(a), g}), b);
        bool closed = dstar.is_exact();
        for (int n = 0; closed && n <= b.slice; ++n) {
          const auto& s = v.slices[static_cast<std::size_t>(n)];
          closed = s.is_exact() && s.value() == dstar.value().power(n + 1);
        }
        if (closed) {
          ent.member = Tri::False;
          ent.certified = true;
          ent.note = "(" + a.str() + ", " + g.str() + ") closes to D^op[X] on slices 0.." + std::to_string(b.slice);
        } else {
          ent.note = "unit computation did not close";
        }
        break;
      }
    }
    out.push_back(std::move(ent));
  }
  return out;
}

std::vector<Poly> family_polys(const Field& k, int count) {
  const Poly x = Poly::x(k);
  auto c = [&](long v) { return Poly::constant(FieldElement::from_int(k, v)); };
  std::vector<Poly> out;
  for (long i = 0; static_cast<int>(out.size()) < count; ++i) {
    long v = (i % 2 == 0) ? i / 2 : -(i + 1) / 2;
    out.push_back(x - c(v));
    if (static_cast<int>(out.size()) < count && i % 3 == 2) {
      long s = i / 3 + 1;
      if (!sqrt_in_field(FieldElement::from_int(k, -s))) out.push_back(x * x + c(s));
    }
  }
  return out;
}

std::string FamilySeparation::str() const {
  return "1/(" + witness_den.str() + "): in larger " + (in_larger ? "yes" : "no") + ", in smaller " +
         (in_smaller ? "yes" : "no");
}

FamilySeparation strict_family_probe(const Field& k, int n, int m, int cap) {
  if (n >= m) throw std::invalid_argument("strict_family_probe needs n < m");
  if (m > cap) throw std::invalid_argument("strict_family_probe needs m <= N");
  const auto fs = family_polys(k, cap);
  const Poly& fn = fs[static_cast<std::size_t>(n - 1)];
  const Valuation vn = Valuation::order_at(fn);
  const Poly one = one_poly(k);
  // B = K[X]_(f_n); B K[X]_(f_i) is B for i = n and K(X) otherwise.
  // (K[X] : B) = 0 since B contains 1/f_i for every i != n, so B^▲ = K(X).
  auto member = [&](int j, const Poly& num, const Poly& den) {
    for (int i = j; i <= cap; ++i)
      if (i == n && ext_less(vn.eval(num, den), ExtRational(Rational(0)))) return false;
    return true;
  };
  FamilySeparation s;
  s.witness_den = fn;
  s.in_larger = member(m, one, fn);
  s.in_smaller = member(n, one, fn);
  s.separated = s.in_larger && !s.in_smaller;
  return s;
}

Tri family_chain_check(const SemistarOp& op, const PolyIdeal& a, int cap, const Budget& b) {
  const auto& d = a.domain();
  const Field& k = d->field();
  const auto fs = family_polys(k, cap);
  PolyValue tri = blacktriangle(op, OverringTag::K, a, b);
  // A K[X]_(f_i) meets degree <= n in the multiples of f_i^{v_i(g)}.
  std::vector<Poly> locals;
  for (const auto& f : fs) {
    Poly q = one_poly(k), g = a.gcd();
    while (divides(f, g)) {
      g = exact_div(g, f);
      q = q * f;
    }
    locals.push_back(q);
  }
  std::vector<PolyValue> family;
  for (int j = 1; j <= cap; ++j) {
    PolyValue v;
    for (int n = 0; n <= b.slice; ++n) {
      Module cut = Module::all(d, n + 1);
      for (int i = j; i <= cap; ++i) cut = intersect(cut, multiples_space(d, locals[static_cast<std::size_t>(i - 1)], n));
      const auto& s = tri.slices[static_cast<std::size_t>(n)];
      std::optional<Module> lo, up;
      if (s.lower()) lo = intersect(*s.lower(), cut);
      if (s.upper()) up = intersect(*s.upper(), cut);
      v.slices.push_back(make_certified(lo, up, {}));
    }
    family.push_back(std::move(v));
  }
  Tri out = Tri::True;
  auto fold = [&](Tri t) {
    if (t == Tri::False) out = Tri::False;
    if (t == Tri::Unknown && out == Tri::True) out = Tri::Unknown;
  };
  for (std::size_t j = 0; j + 1 < family.size(); ++j) fold(slices_included(family[j], family[j + 1]));
  fold(slices_included(family.back(), tri));
  return out;
}

ProbeReport finite_type_failure_probe(const SemistarOp& op, int m, int count, const Budget& b) {
  const auto& d = op.domain();
  const Field& k = d->field();
  std::mt19937_64 rng(b.seed);
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), ngen(1, 3), shift(0, m);
  Certified dstar = apply(op, FractionalIdeal::unit(d));
  ProbeReport rep;
  for (int t = 0; t < count; ++t) {
    const int mm = shift(rng);
    std::uniform_int_distribution<int> sh(0, mm);
    std::vector<Poly> gens;
    while (gens.empty()) {
      const int ng = ngen(rng);
      for (int j = 0; j < ng; ++j) {
        std::vector<FieldElement> cs;
        const int dg = deg(rng);
        for (int i = 0; i <= dg; ++i) {
          FieldElement c(k);
          for (const auto& th : d->basis()) c += FieldElement::from_int(k, coef(rng)) * th;
          cs.push_back(c);
        }
        Poly h(k, cs);
        // B contains h / X^s; B' = X^mm B.
        if (!h.is_zero()) gens.push_back(h.shifted(mm - sh(rng)));
      }
    }
    PolyIdeal bp(d, gens);
    PolyValue v = blacktriangle(op, OverringTag::K, bp, b);
    PolyValue bound;
    for (int n = 0; n <= b.slice; ++n) bound.slices.push_back(power(dstar, n + 1));
    ++rep.probes;
    Tri tr = slices_included(v, bound);
    if (tr == Tri::False) {
      ++rep.escapes;
      if (!rep.witness) rep.witness = bp;
    } else if (tr == Tri::Unknown) {
      ++rep.inconclusive;
    }
  }
  return rep;
}

}  // namespace semistar

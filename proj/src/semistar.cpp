#include "semistar/semistar.hpp"

#include <algorithm>

namespace semistar {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Exact: return "exact";
    case Mode::LowerBound: return "lower-bound";
    case Mode::UpperBound: return "upper-bound";
    case Mode::Bracket: return "bracket";
  }
  return "";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "";
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<=";
    case Relation::Greater: return ">=";
    case Relation::Equal: return "=";
    case Relation::Incomparable: return "incomparable";
    case Relation::Unknown: return "unknown";
  }
  return "";
}

Certified Certified::exact(Module m, BudgetRecord rec) {
  Certified c;
  c.mode_ = Mode::Exact;
  c.lo_ = m;
  c.up_ = std::move(m);
  c.rec_ = std::move(rec);
  return c;
}

Certified Certified::lower_bound(Module lo, BudgetRecord rec) {
  Certified c;
  c.mode_ = Mode::LowerBound;
  c.lo_ = std::move(lo);
  c.rec_ = std::move(rec);
  return c;
}

Certified Certified::upper_bound(Module up, BudgetRecord rec) {
  Certified c;
  c.mode_ = Mode::UpperBound;
  c.up_ = std::move(up);
  c.rec_ = std::move(rec);
  return c;
}

Certified Certified::bracket(Module lo, Module up, BudgetRecord rec) {
  if (!up.contains(lo)) throw std::logic_error("bracket with lower bound outside upper bound");
  if (lo.contains(up)) return exact(std::move(lo), std::move(rec));
  Certified c;
  c.mode_ = Mode::Bracket;
  c.lo_ = std::move(lo);
  c.up_ = std::move(up);
  c.rec_ = std::move(rec);
  return c;
}

const Module& Certified::value() const {
  if (!is_exact()) throw std::logic_error("value of an inexact result");
  return *lo_;
}

Tri Certified::contained_in(const Module& m) const {
  if (up_ && m.contains(*up_)) return Tri::True;
  if (lo_ && !m.contains(*lo_)) return Tri::False;
  return Tri::Unknown;
}

Tri Certified::contains(const Module& m) const {
  if (lo_ && lo_->contains(m)) return Tri::True;
  if (up_ && !up_->contains(m)) return Tri::False;
  return Tri::Unknown;
}

std::string Certified::str() const {
  switch (mode_) {
    case Mode::Exact: return lo_->str();
    case Mode::LowerBound: return ">= " + lo_->str();
    case Mode::UpperBound: return "<= " + up_->str();
    case Mode::Bracket: return "[" + lo_->str() + " .. " + up_->str() + "]";
  }
  return "";
}

Tri included(const Certified& a, const Certified& b) {
  if (a.upper() && b.lower() && b.lower()->contains(*a.upper())) return Tri::True;
  if (a.lower() && b.upper() && !b.upper()->contains(*a.lower())) return Tri::False;
  return Tri::Unknown;
}

SemistarOp SemistarOp::make(Node n) { return SemistarOp(std::make_shared<const Node>(std::move(n))); }

SemistarOp SemistarOp::identity(DomainPtr d) {
  Node n;
  n.kind = Kind::Identity;
  n.flags = {true, true, d->is_maximal(), true};
  n.dom = std::move(d);
  n.name = "d";
  return make(std::move(n));
}

SemistarOp SemistarOp::trivial(DomainPtr d) {
  Node n;
  n.kind = Kind::Trivial;
  n.flags = {true, true, true, false};
  n.dom = std::move(d);
  n.name = "e";
  return make(std::move(n));
}

SemistarOp SemistarOp::divisorial(DomainPtr d) {
  Node n;
  n.kind = Kind::Divisorial;
  n.flags = {false, false, false, true};
  n.dom = std::move(d);
  n.name = "v";
  return make(std::move(n));
}

SemistarOp SemistarOp::finite_type(const SemistarOp& s) {
  Node n;
  n.kind = Kind::FiniteType;
  n.dom = s.domain();
  n.flags = s.flags();
  n.flags.finite_type = true;
  n.children = {s};
  n.name = s.name() == "v" ? "t" : "ft(" + s.name() + ")";
  return make(std::move(n));
}

SemistarOp SemistarOp::overring(DomainPtr d, ZLattice ring, std::string name) {
  Node n;
  n.kind = Kind::Overring;
  bool is_d = ring == d->ring();
  n.flags = {true, is_d, false, is_d};
  n.ring = std::move(ring);
  n.dom = std::move(d);
  n.name = "ring(" + name + ")";
  return make(std::move(n));
}

SemistarOp SemistarOp::spectral(DomainPtr d, std::vector<PrimeIdeal> delta) {
  std::sort(delta.begin(), delta.end());
  delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
  Node n;
  n.kind = Kind::Spectral;
  n.flags = {true, true, false, false};
  n.dom = std::move(d);
  n.name = "spectral(";
  for (std::size_t i = 0; i < delta.size(); ++i) n.name += (i ? ", " : "") + delta[i].label();
  n.name += ")";
  n.delta = std::move(delta);
  return make(std::move(n));
}

SemistarOp SemistarOp::wedge(std::vector<SemistarOp> ops) {
  if (ops.empty()) throw std::invalid_argument("wedge of an empty family");
  Node n;
  n.kind = Kind::Wedge;
  n.dom = ops.front().domain();
  n.flags = {true, true, false, false};
  n.name = "wedge(";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    n.flags.finite_type = n.flags.finite_type && ops[i].flags().finite_type;
    n.flags.stable = n.flags.stable && ops[i].flags().stable;
    n.name += (i ? ", " : "") + ops[i].name();
  }
  n.name += ")";
  n.children = std::move(ops);
  SemistarOp w = make(n);
  Certified du = apply(w, FractionalIdeal::unit(n.dom));
  n.flags.star = du.is_exact() && du.value() == Module::of(FractionalIdeal::unit(n.dom));
  return make(std::move(n));
}

SemistarOp SemistarOp::stable(const SemistarOp& s, int prime_norm) {
  Node n;
  n.kind = Kind::Stable;
  n.dom = s.domain();
  n.flags = {true, true, false, s.flags().star};
  n.children = {s};
  n.prime_norm = prime_norm;
  n.name = s.name() == "v" ? "w" : "stable(" + s.name() + ")";
  return make(std::move(n));
}

SemistarOp SemistarOp::eab(const SemistarOp& s, int prime_norm) {
  return eab(s, default_eab_pool(s.domain(), prime_norm));
}

SemistarOp SemistarOp::eab(const SemistarOp& s, std::vector<FractionalIdeal> pool) {
  Node n;
  n.kind = Kind::Eab;
  n.dom = s.domain();
  n.flags = {true, false, true, false};
  n.children = {s};
  n.pool = std::move(pool);
  n.name = "eab(" + s.name() + ")";
  return make(std::move(n));
}

SemistarOp SemistarOp::b(DomainPtr d) {
  Node n;
  n.kind = Kind::B;
  n.flags = {true, d->is_maximal(), true, d->is_maximal()};
  n.dom = std::move(d);
  n.name = "b";
  return make(std::move(n));
}

SemistarOp SemistarOp::imported(DomainPtr d, std::string name, OpFlags flags, ImportedEval eval) {
  Node n;
  n.kind = Kind::Imported;
  n.dom = std::move(d);
  n.name = std::move(name);
  n.flags = flags;
  n.imported = std::move(eval);
  return make(std::move(n));
}

SemistarOp SemistarOp::builtin(const std::string& name, DomainPtr d) {
  if (name == "d") return identity(d);
  if (name == "e") return trivial(d);
  if (name == "v") return divisorial(d);
  if (name == "t") return finite_type(divisorial(d));
  if (name == "w") return stable(divisorial(d));
  if (name == "b") return b(d);
  throw std::invalid_argument("unknown builtin operation '" + name + "'");
}

namespace {

Module unit_module(const DomainPtr& d) { return Module::of(FractionalIdeal::unit(d)); }

Certified combine_wedge(const std::vector<Certified>& parts, BudgetRecord rec) {
  std::optional<Module> lo, up;
  bool all_lower = true;
  for (const auto& c : parts) {
    if (c.lower())
      lo = lo ? intersect(*lo, *c.lower()) : *c.lower();
    else
      all_lower = false;
    if (c.upper()) up = up ? intersect(*up, *c.upper()) : *c.upper();
  }
  if (!all_lower) lo.reset();
  if (lo && up) return Certified::bracket(*lo, *up, rec);
  if (lo) return Certified::lower_bound(*lo, rec);
  return Certified::upper_bound(*up, rec);
}

Certified localize_certified(const Certified& c, const std::vector<PrimeIdeal>& delta) {
  BudgetRecord rec = c.budget();
  rec.emplace_back("route", "finite-type");
  if (c.is_exact()) return Certified::exact(c.value().localized(delta), rec);
  if (c.lower() && c.upper()) return Certified::bracket(c.lower()->localized(delta), c.upper()->localized(delta), rec);
  if (c.lower()) return Certified::lower_bound(c.lower()->localized(delta), rec);
  return Certified::upper_bound(c.upper()->localized(delta), rec);
}

// Colon of certified values (A : B) bounded from below: (lower A : upper B).
std::optional<Module> colon_lower(const Certified& a, const Certified& b) {
  if (!a.lower() || !b.upper()) return std::nullopt;
  const Module& x = *a.lower();
  const Module& y = *b.upper();
  const auto& d = x.domain();
  if (x.is_all()) return x;
  if (y.is_space()) return std::nullopt;
  if (x.is_lattice() && y.is_lattice())
    return Module::lattice(d, 1, colon_k(x.lat(), y.lat(), d->field(), 1));
  if (x.is_semilocal() && y.is_semilocal() && x.parts().size() == y.parts().size()) {
    std::vector<std::pair<PrimeIdeal, ZLattice>> ps;
    for (std::size_t i = 0; i < x.parts().size(); ++i) {
      if (x.parts()[i].first != y.parts()[i].first) return std::nullopt;
      ps.emplace_back(x.parts()[i].first, colon_k(x.parts()[i].second, y.parts()[i].second, d->field(), 1));
    }
    return Module::semilocal(d, 1, ps);
  }
  return std::nullopt;
}

Certified apply_stable(const SemistarOp& op, const FractionalIdeal& e) {
  const SemistarOp& child = op.children().front();
  const auto& d = op.domain();
  BudgetRecord rec{{"prime_pool_norm", std::to_string(op.prime_norm())}};
  if (child.flags().stable && child.flags().finite_type) {
    Certified c = apply(child, e);
    c.note("stable", "inner operation is stable of finite type");
    return c;
  }
  Certified dstar = apply(child, FractionalIdeal::unit(d));
  if (dstar.is_exact() && dstar.value().is_all()) return Certified::exact(Module::all(d, 1), rec);
  auto pool = d->primes_up_to(op.prime_norm());
  std::vector<FractionalIdeal> js{FractionalIdeal::unit(d)};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    js.push_back(pool[i].ideal());
    for (std::size_t j = i; j < pool.size(); ++j) js.push_back(pool[i].ideal() * pool[j].ideal());
  }
  ZLattice lower = e.lattice();
  int used = 0;
  if (dstar.is_exact())
    for (const auto& j : js) {
      Certified jv = apply(child, j);
      if (!jv.is_exact() || jv.value() != dstar.value()) continue;
      lower = lower + colon(e, j).lattice();
      ++used;
    }
  rec.emplace_back("j_pool_used", std::to_string(used));
  QMaxResult qm = qmax(child, pool, op.prime_norm());
  Module lo = Module::lattice(d, 1, lower);
  bool d_star = dstar.is_exact() && dstar.value() == unit_module(d);
  if (d_star) {
    bool all_quasi = true;
    for (const auto& p : d->conductor_primes()) {
      bool in_pool = std::find(pool.begin(), pool.end(), p) != pool.end();
      bool quasi = std::find(qm.members.begin(), qm.members.end(), p) != qm.members.end();
      all_quasi = all_quasi && in_pool && quasi;
    }
    if (all_quasi) {
      rec.emplace_back("certificate", "every prime is quasi-maximal");
      return Certified::exact(Module::of(e), rec);
    }
  }
  if (qm.members.empty()) return Certified::bracket(lo, Module::all(d, 1), rec);
  return Certified::bracket(lo, Module::of(e).localized(qm.members), rec);
}

Certified apply_lattice(const SemistarOp& op, const FractionalIdeal& e) {
  const auto& d = op.domain();
  switch (op.kind()) {
    case SemistarOp::Kind::Identity:
      return Certified::exact(Module::of(e));
    case SemistarOp::Kind::Trivial:
      return Certified::exact(Module::all(d, 1));
    case SemistarOp::Kind::Divisorial: {
      auto u = FractionalIdeal::unit(d);
      return Certified::exact(Module::of(colon(u, colon(u, e))));
    }
    case SemistarOp::Kind::FiniteType:
      return apply(op.children().front(), e);
    case SemistarOp::Kind::Overring:
      return Certified::exact(Module::of(e).times_ring(op.ring()));
    case SemistarOp::Kind::Spectral:
      if (op.delta().empty()) return Certified::exact(Module::all(d, 1));
      return Certified::exact(Module::of(e).localized(op.delta()));
    case SemistarOp::Kind::Wedge: {
      std::vector<Certified> parts;
      for (const auto& c : op.children()) parts.push_back(apply(c, e));
      return combine_wedge(parts, {});
    }
    case SemistarOp::Kind::Stable:
      return apply_stable(op, e);
    case SemistarOp::Kind::Eab:
      return eab_approx(op.children().front(), e, op.pool());
    case SemistarOp::Kind::B:
      return Certified::exact(Module::of(e).times_ring(d->maximal_order()));
    case SemistarOp::Kind::Imported:
      return op.imported_eval()(e);
  }
  throw std::logic_error("unhandled operation kind");
}

}  // namespace

Certified apply(const SemistarOp& op, const FractionalIdeal& e) { return apply_lattice(op, e); }

Certified apply(const SemistarOp& op, const Module& m) {
  if (m.n() != 1) throw std::invalid_argument("semistar operation applied outside K");
  if (m.is_zero()) throw std::invalid_argument("semistar operation applied to the zero module");
  const auto& d = op.domain();
  if (m.is_space()) return Certified::exact(Module::all(d, 1));
  if (m.is_lattice()) return apply_lattice(op, FractionalIdeal(d, m.lat()));
  std::vector<PrimeIdeal> delta;
  for (const auto& pr : m.parts()) delta.push_back(pr.first);
  switch (op.kind()) {
    case SemistarOp::Kind::Identity:
      return Certified::exact(m);
    case SemistarOp::Kind::Trivial:
    case SemistarOp::Kind::Divisorial:
      // (D : M) = 0 for a module with infinitely many inverted denominators.
      return Certified::exact(Module::all(d, 1));
    case SemistarOp::Kind::Overring:
      return Certified::exact(m.times_ring(op.ring()));
    case SemistarOp::Kind::Spectral:
      if (op.delta().empty()) return Certified::exact(Module::all(d, 1));
      return Certified::exact(m.localized(op.delta()));
    case SemistarOp::Kind::B:
      return Certified::exact(m.times_ring(d->maximal_order()));
    case SemistarOp::Kind::Wedge: {
      std::vector<Certified> parts;
      for (const auto& c : op.children()) parts.push_back(apply(c, m));
      return combine_wedge(parts, {});
    }
    case SemistarOp::Kind::FiniteType: {
      FractionalIdeal n(d, m.representative());
      return localize_certified(apply(op.children().front(), n), delta);
    }
    case SemistarOp::Kind::Stable:
    case SemistarOp::Kind::Eab:
    case SemistarOp::Kind::Imported: {
      FractionalIdeal n(d, m.representative());
      return localize_certified(apply_lattice(op, n), delta);
    }
  }
  throw std::logic_error("unhandled operation kind");
}

std::vector<FractionalIdeal> default_eab_pool(const DomainPtr& d, int prime_norm) {
  auto ps = d->primes_up_to(prime_norm);
  std::vector<FractionalIdeal> pool{FractionalIdeal::unit(d)};
  for (std::size_t i = 0; i < ps.size(); ++i) pool.push_back(ps[i].ideal());
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i; j < ps.size(); ++j) pool.push_back(ps[i].ideal() * ps[j].ideal());
  return pool;
}

Certified eab_approx(const SemistarOp& op, const FractionalIdeal& f, const std::vector<FractionalIdeal>& pool) {
  const auto& d = op.domain();
  BudgetRecord rec{{"eab_pool_size", std::to_string(pool.size())}};
  std::optional<Module> lo;
  for (const auto& h : pool) {
    auto term = colon_lower(apply(op, f * h), apply(op, h));
    if (!term) continue;
    if (!lo) {
      lo = term;
      continue;
    }
    if (auto s = try_sum(*lo, *term)) lo = *s;
  }
  if (!lo) lo = Module::of(f);
  if (op.kind() == SemistarOp::Kind::Identity) {
    Module closed = Module::of(f).times_ring(d->maximal_order());
    rec.emplace_back("closed_form", "E*O");
    return Certified::bracket(*lo, closed, rec);
  }
  return Certified::lower_bound(*lo, rec);
}

Tri quasi_ideal_test(const SemistarOp& op, const FractionalIdeal& i) {
  if (!i.is_integral()) throw std::invalid_argument("quasi-ideal test needs an integral ideal");
  const auto& d = op.domain();
  Module dm = unit_module(d), im = Module::of(i);
  Certified c = apply(op, i);
  if (c.upper() && intersect(*c.upper(), dm) == im) return Tri::True;
  if (c.lower() && intersect(*c.lower(), dm) != im) return Tri::False;
  return Tri::Unknown;
}

QMaxResult qmax(const SemistarOp& op, const std::vector<PrimeIdeal>& pool, int pool_bound) {
  QMaxResult r;
  r.pool_bound = pool_bound;
  for (const auto& p : pool) {
    Tri t = quasi_ideal_test(op, p.ideal());
    if (t == Tri::True) r.members.push_back(p);
    if (t == Tri::Unknown) r.unknown.push_back(p);
  }
  return r;
}

Comparison compare(const SemistarOp& a, const SemistarOp& b, const std::vector<FractionalIdeal>& samples) {
  Comparison out;
  bool le_all = true, ge_all = true;
  std::optional<FractionalIdeal> le_fail, ge_fail;
  for (const auto& e : samples) {
    Certified ca = apply(a, e), cb = apply(b, e);
    Tri le = included(ca, cb), ge = included(cb, ca);
    if (le != Tri::True) le_all = false;
    if (ge != Tri::True) ge_all = false;
    if (le == Tri::False && !le_fail) le_fail = e;
    if (ge == Tri::False && !ge_fail) ge_fail = e;
    if (le == Tri::Unknown || ge == Tri::Unknown) ++out.inconclusive;
  }
  if (le_fail && ge_fail) {
    out.relation = Relation::Incomparable;
    out.witness = le_fail;
  } else if (le_all && ge_all) {
    out.relation = Relation::Equal;
  } else if (le_all) {
    out.relation = Relation::Less;
    out.witness = ge_fail;
  } else if (ge_all) {
    out.relation = Relation::Greater;
    out.witness = le_fail;
  }
  return out;
}

namespace {

// M ⊆ F V for a module M in K.
bool inside_fv(const Module& m, const Valuation& w, const ExtRational& floor_value) {
  if (w.kind() == Valuation::Kind::Trivial) return true;
  auto test = [&](const ZLattice& l) {
    for (const auto& x : elements_of(m.domain()->field(), l))
      if (ext_less(w.eval(x), floor_value)) return false;
    return true;
  };
  if (m.is_lattice()) return test(m.lat());
  if (m.is_space()) return m.is_zero();
  if (w.kind() != Valuation::Kind::PAdic) return false;
  ZLattice center = intersect(w.prime(), m.domain()->ring());
  for (const auto& [p, l] : m.parts())
    if (p.lattice() == center) return test(l);
  return false;
}

}  // namespace

Tri is_star_valuation_overring(const Valuation& w, const SemistarOp& op, const std::vector<FractionalIdeal>& samples) {
  bool all_true = true;
  for (const auto& f : samples) {
    ExtRational floor_value = w.min_value(f.basis());
    Certified c = apply(op, f);
    if (c.upper() && inside_fv(*c.upper(), w, floor_value)) continue;
    if (c.lower() && !inside_fv(*c.lower(), w, floor_value)) return Tri::False;
    all_true = false;
  }
  return all_true ? Tri::True : Tri::Unknown;
}

}  // namespace semistar

#include "semistar/domain.hpp"

#include <algorithm>
#include <sstream>

namespace semistar {

RatVector to_vec(const FieldElement& x) {
  auto c = x.coords();
  RatVector v(static_cast<Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) v(static_cast<Index>(i)) = c[i];
  return v;
}

FieldElement to_elem(const Field& k, const RatVector& v, Index block) {
  return FieldElement::from_coords(k, &v(block * k.degree()));
}

RatMatrix scalar_matrix(const FieldElement& x, int n) {
  const int r = x.field().degree();
  RatMatrix m = RatMatrix::Zero(r * n, r * n);
  RatMatrix b = x.mult_matrix();
  for (int i = 0; i < n; ++i) m.block(r * i, r * i, r, r) = b;
  return m;
}

ZLattice scale(const ZLattice& l, const FieldElement& x, int n) {
  if (x.is_zero()) return ZLattice(l.dim());
  return l.image(scalar_matrix(x, n));
}

ZLattice lattice_of(const Field& k, const std::vector<FieldElement>& gens) {
  std::vector<RatVector> rows;
  for (const auto& g : gens) rows.push_back(to_vec(g));
  return ZLattice::from_vectors(k.degree(), rows);
}

std::vector<FieldElement> elements_of(const Field& k, const ZLattice& l) {
  std::vector<FieldElement> out;
  for (Index i = 0; i < l.rank(); ++i) out.push_back(to_elem(k, l.basis_row(i)));
  return out;
}

ZLattice product(const ZLattice& t, const ZLattice& l, const Field& k, int n) {
  std::vector<RatVector> rows;
  for (const auto& x : elements_of(k, t)) {
    RatMatrix m = scalar_matrix(x, n);
    for (Index i = 0; i < l.rank(); ++i) rows.push_back(l.basis_row(i) * m);
  }
  return ZLattice::from_vectors(l.dim(), rows);
}

ZLattice colon_k(const ZLattice& b, const ZLattice& a, const Field& k, int n) {
  if (a.is_zero()) throw std::invalid_argument("colon by the zero module");
  const int r = k.degree();
  std::vector<FieldElement> units{FieldElement::from_int(k, 1)};
  if (r == 2) units.push_back(FieldElement::sqrt_m(k));
  std::optional<ZLattice> acc;
  for (Index i = 0; i < a.rank(); ++i) {
    RatVector row = a.basis_row(i);
    RatMatrix phi(r, r * n);
    for (int j = 0; j < r; ++j) phi.row(j) = row * scalar_matrix(units[static_cast<std::size_t>(j)], n);
    ZLattice pre = preimage(phi, b);
    acc = acc ? intersect(*acc, pre) : pre;
    if (acc->is_zero()) break;
  }
  return *acc;
}

QSubspace k_span(const ZLattice& l, const Field& k, int n) {
  if (l.is_zero()) return QSubspace(l.dim());
  if (k.is_rational()) return span_of(l);
  RatMatrix b = l.basis();
  RatMatrix m(2 * b.rows(), b.cols());
  m << b, b * scalar_matrix(FieldElement::sqrt_m(k), n);
  return QSubspace::span(m);
}

QSubspace k_span(const QSubspace& v, const Field& k, int n) {
  if (k.is_rational() || v.rank() == 0) return v;
  RatMatrix b = v.basis();
  RatMatrix m(2 * b.rows(), b.cols());
  m << b, b * scalar_matrix(FieldElement::sqrt_m(k), n);
  return QSubspace::span(m);
}

DomainPtr OrderDomain::integers() {
  auto d = std::shared_ptr<OrderDomain>(new OrderDomain());
  d->field_ = Field::rationals();
  d->basis_ = {FieldElement::from_int(d->field_, 1)};
  d->ring_ = lattice_of(d->field_, d->basis_);
  d->maximal_ = d->ring_;
  d->conductor_ = d->ring_;
  d->name_ = "Z";
  return d;
}

DomainPtr OrderDomain::order(std::int64_t m, std::int64_t f) {
  if (f < 1) throw std::invalid_argument("order: conductor index must be positive");
  auto d = std::shared_ptr<OrderDomain>(new OrderDomain());
  d->field_ = Field::quadratic(m);
  d->f_ = f;
  const Field& k = d->field_;
  std::int64_t mod4 = ((m % 4) + 4) % 4;
  FieldElement omega = mod4 == 1 ? FieldElement(k, Rational(1, 2), Rational(1, 2)) : FieldElement::sqrt_m(k);
  FieldElement one = FieldElement::from_int(k, 1);
  d->basis_ = {one, FieldElement::from_int(k, static_cast<long>(f)) * omega};
  d->ring_ = lattice_of(k, d->basis_);
  d->maximal_ = lattice_of(k, {one, omega});
  d->conductor_ = colon_k(d->ring_, d->maximal_, k, 1);
  d->name_ = "order(m=" + std::to_string(m) + ", f=" + std::to_string(f) + ")";
  return d;
}

ZLattice OrderDomain::transporter(const ZLattice& b, const ZLattice& a, int n) const {
  return intersect(colon_k(b, a, field_, n), ring_);
}

ZLattice OrderDomain::d_span(const ZLattice& l, int n) const { return product(ring_, l, field_, n); }

bool OrderDomain::is_d_module(const ZLattice& l, int n) const {
  for (std::size_t j = 1; j < basis_.size(); ++j)
    if (!l.contains(scale(l, basis_[j], n))) return false;
  return true;
}

bool is_prime_ideal(const OrderDomain& d, const ZLattice& p) {
  const Field& k = d.field();
  if (!d.ring().contains(p) || p.rank() != d.r() || p == d.ring()) return false;
  if (!d.is_d_module(p, 1)) return false;
  // Coordinates of P in the D-basis, HNF is upper triangular.
  RatMatrix bd(d.r(), d.r());
  for (int j = 0; j < d.r(); ++j) bd.row(j) = to_vec(d.basis()[static_cast<std::size_t>(j)]);
  IntMatrix h = hnf(clear_denominators(solve_left(bd, p.basis())).second);
  std::vector<FieldElement> reps;
  if (d.r() == 1) {
    for (BigInt a = 1; a < h(0, 0); ++a) reps.push_back(FieldElement(k, Rational(a)));
  } else {
    for (BigInt a = 0; a < h(0, 0); ++a)
      for (BigInt b = 0; b < h(1, 1); ++b) {
        FieldElement x = FieldElement(k, Rational(a)) * d.basis()[0] + FieldElement(k, Rational(b)) * d.basis()[1];
        if (!p.contains(to_vec(x))) reps.push_back(x);
      }
  }
  for (const auto& x : reps)
    for (const auto& y : reps)
      if (p.contains(to_vec(x * y))) return false;
  return true;
}

namespace {

// Ideals of index p (else pR) of the ring lattice R that are prime, as lattices in K.
std::vector<ZLattice> ring_primes(const Field& k, const ZLattice& ring, const BigInt& p) {
  std::vector<ZLattice> out;
  auto rb = elements_of(k, ring);
  auto is_ideal = [&](const ZLattice& l) {
    for (const auto& t : rb)
      if (!l.contains(scale(l, t, 1))) return false;
    return true;
  };
  if (rb.size() == 1) {
    out.push_back(ring.scaled(Rational(p)));
    return out;
  }
  std::vector<std::vector<FieldElement>> cands;
  cands.push_back({FieldElement(k, Rational(p)) * rb[0], rb[1]});
  for (BigInt a = 0; a < p; ++a)
    cands.push_back({rb[0] + FieldElement(k, Rational(a)) * rb[1], FieldElement(k, Rational(p)) * rb[1]});
  for (const auto& c : cands) {
    ZLattice l = lattice_of(k, c);
    if (is_ideal(l)) out.push_back(l);
  }
  if (out.empty()) out.push_back(ring.scaled(Rational(p)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<PrimeIdeal> OrderDomain::primes_above(const BigInt& p) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = prime_cache_.find(p);
    if (it != prime_cache_.end()) return it->second;
  }
  std::vector<PrimeIdeal> out;
  DomainPtr self = shared_from_this();
  int ord = 0;
  for (const auto& l : ring_primes(field_, ring_, p)) {
    // Index p forces a residue field; index p^2 occurs only when no index-p ideal exists.
    // Small residue rings are also checked by brute force.
    if (l.index_in(ring_) <= 50 && !is_prime_ideal(*this, l))
      throw std::logic_error("prime enumeration produced a non-prime");
    PrimeIdeal pi(FractionalIdeal(self, l), p);
    pi.ordinal_ = ord++;
    out.push_back(pi);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  prime_cache_.emplace(p, out);
  return out;
}

std::vector<PrimeIdeal> OrderDomain::primes_up_to(int bound) const {
  std::vector<PrimeIdeal> out;
  for (int p = 2; p <= bound; ++p) {
    if (!is_prime_int(BigInt(p))) continue;
    for (const auto& q : primes_above(BigInt(p)))
      if (q.norm() <= bound) out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimeIdeal> OrderDomain::conductor_primes() const {
  std::vector<PrimeIdeal> out;
  BigInt idx = conductor_.index_in(ring_);
  for (BigInt p = 2; p <= idx; ++p) {
    if (idx % p != 0 || !is_prime_int(p)) continue;
    for (const auto& q : primes_above(p))
      if (q.lattice().contains(conductor_)) out.push_back(q);
  }
  return out;
}

FractionalIdeal::FractionalIdeal(DomainPtr d, ZLattice l) : dom_(std::move(d)), lat_(std::move(l)) {
  if (lat_.dim() != dom_->r()) throw std::invalid_argument("fractional ideal: ambient mismatch");
  if (lat_.is_zero()) throw std::invalid_argument("fractional ideal: zero ideal");
  if (lat_.rank() != dom_->r() || !dom_->is_d_module(lat_, 1))
    throw std::invalid_argument("fractional ideal: not a D-module");
}

FractionalIdeal FractionalIdeal::generated(DomainPtr d, const std::vector<FieldElement>& gens) {
  ZLattice l = d->d_span(lattice_of(d->field(), gens), 1);
  return FractionalIdeal(d, l);
}

FractionalIdeal FractionalIdeal::scaled(const FieldElement& x) const {
  return FractionalIdeal(dom_, scale(lat_, x, 1));
}

std::string FractionalIdeal::str() const {
  std::string s = "idl(";
  auto b = basis();
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + b[i].str();
  return s + ")";
}

FractionalIdeal operator+(const FractionalIdeal& a, const FractionalIdeal& b) {
  return FractionalIdeal(a.domain(), a.lattice() + b.lattice());
}

FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b) {
  return FractionalIdeal(a.domain(), product(a.lattice(), b.lattice(), a.domain()->field(), 1));
}

FractionalIdeal intersect(const FractionalIdeal& a, const FractionalIdeal& b) {
  return FractionalIdeal(a.domain(), intersect(a.lattice(), b.lattice()));
}

FractionalIdeal colon(const FractionalIdeal& a, const FractionalIdeal& b) {
  return FractionalIdeal(a.domain(), colon_k(a.lattice(), b.lattice(), a.domain()->field(), 1));
}

FractionalIdeal ideal_pow(const FractionalIdeal& a, int k) {
  FractionalIdeal r = FractionalIdeal::unit(a.domain());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

bool localization_membership(const FieldElement& x, const FractionalIdeal& a, const PrimeIdeal& p) {
  if (x.is_zero()) return true;
  ZLattice t = a.domain()->transporter(a.lattice(), lattice_of(x.field(), {x}), 1);
  return !p.lattice().contains(t);
}

PrimeIdeal::PrimeIdeal(FractionalIdeal ideal, BigInt p) : ideal_(std::move(ideal)), p_(std::move(p)) {
  const auto& d = ideal_.domain();
  norm_ = ideal_.lattice().index_in(d->ring());
  if (!(norm_ == p_ || norm_ == p_ * p_)) throw std::invalid_argument("prime ideal: bad index");
  FractionalIdeal inv = colon(FractionalIdeal::unit(d), ideal_);
  invertible_ = (ideal_ * inv) == FractionalIdeal::unit(d);
}

bool PrimeIdeal::operator<(const PrimeIdeal& o) const {
  if (norm_ != o.norm_) return norm_ < o.norm_;
  if (p_ != o.p_) return p_ < o.p_;
  return ideal_ < o.ideal_;
}

std::string PrimeIdeal::str() const { return label() + "=" + ideal_.str(); }

std::string PrimeIdeal::label() const { return "P" + p_.str() + std::string(static_cast<std::size_t>(ordinal_), '\''); }

std::vector<ZLattice> maximal_order_primes(DomainPtr d, const BigInt& p) {
  return ring_primes(d->field(), d->maximal_order(), p);
}

bool ext_less(const ExtRational& a, const ExtRational& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

Valuation Valuation::trivial(const Field& k) {
  Valuation v;
  v.field_ = k;
  return v;
}

Valuation Valuation::p_adic(DomainPtr d, const ZLattice& maximal_prime, const BigInt& p) {
  Valuation v;
  v.kind_ = Kind::PAdic;
  v.field_ = d->field();
  v.dom_ = std::move(d);
  v.prime_ = maximal_prime;
  v.p_ = p;
  return v;
}

Valuation Valuation::gauss(const Valuation& base, const Rational& t) {
  if (t < 0) throw std::invalid_argument("gauss valuation: negative weight");
  if (base.kind_ != Kind::Trivial && base.kind_ != Kind::PAdic)
    throw std::invalid_argument("gauss valuation: base must live on K");
  Valuation v;
  v.kind_ = Kind::Gauss;
  v.field_ = base.field_;
  v.t_ = t;
  v.base_ = std::make_shared<Valuation>(base);
  return v;
}

Valuation Valuation::degree_at_infinity(const Field& k) {
  Valuation v;
  v.kind_ = Kind::DegreeAtInfinity;
  v.field_ = k;
  return v;
}

Valuation Valuation::order_at(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("order valuation: f must be non-constant");
  if (f.degree() == 1 || f.degree() == 2) {
    // Irreducible iff no root in K.
    bool reducible = f.degree() == 1 ? false : [&] {
      FieldElement a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
      return sqrt_in_field(b * b - FieldElement::from_int(f.field(), 4) * a * c).has_value();
    }();
    if (reducible) throw std::invalid_argument("order valuation: f is reducible");
  }
  Valuation v;
  v.kind_ = Kind::OrderAt;
  v.field_ = f.field();
  v.f_ = f.monic();
  return v;
}

int Valuation::prime_order_in_maximal(const FieldElement& y) const {
  // y nonzero in O.
  ZLattice power = dom_->maximal_order();
  ZLattice py = lattice_of(field_, {y});
  int k = 0;
  while (true) {
    power = product(power, prime_, field_, 1);
    if (!power.contains(py)) return k;
    ++k;
  }
}

ExtRational Valuation::eval(const FieldElement& x) const {
  if (x.is_zero()) return std::nullopt;
  switch (kind_) {
    case Kind::Trivial:
    case Kind::DegreeAtInfinity:
    case Kind::OrderAt:
      return Rational(0);
    case Kind::Gauss:
      return base_->eval(x);
    case Kind::PAdic: {
      if (field_.is_rational())
        return Rational(valuation_int(num(x.a()), p_) - valuation_int(den(x.a()), p_));
      BigInt c = x.denominator();
      FieldElement z = FieldElement(field_, Rational(c)) * x;
      return Rational(prime_order_in_maximal(z) - prime_order_in_maximal(FieldElement(field_, Rational(c))));
    }
  }
  return std::nullopt;
}

ExtRational Valuation::eval(const Poly& f) const {
  if (f.is_zero()) return std::nullopt;
  switch (kind_) {
    case Kind::Trivial:
      return Rational(0);
    case Kind::PAdic:
      if (f.degree() > 0) throw std::invalid_argument("p-adic valuation on a polynomial");
      return eval(f.leading());
    case Kind::DegreeAtInfinity:
      return Rational(-f.degree());
    case Kind::OrderAt: {
      int k = 0;
      Poly g = f;
      while (divides(f_, g)) {
        g = exact_div(g, f_);
        ++k;
      }
      return Rational(k);
    }
    case Kind::Gauss: {
      ExtRational best;
      for (int i = 0; i <= f.degree(); ++i) {
        ExtRational a = base_->eval(f.coeff(i));
        if (!a) continue;
        Rational v = *a + t_ * i;
        if (!best || v < *best) best = v;
      }
      return best;
    }
  }
  return std::nullopt;
}

ExtRational Valuation::eval(const Poly& num, const Poly& den) const {
  if (den.is_zero()) throw std::domain_error("valuation of x/0");
  auto a = eval(num);
  if (!a) return a;
  return *a - *eval(den);
}

ExtRational Valuation::min_value(const std::vector<FieldElement>& gens) const {
  ExtRational best;
  for (const auto& g : gens) {
    auto v = eval(g);
    if (ext_less(v, best)) best = v;
  }
  return best;
}

ExtRational Valuation::min_value(const std::vector<Poly>& gens) const {
  ExtRational best;
  for (const auto& g : gens) {
    auto v = eval(g);
    if (ext_less(v, best)) best = v;
  }
  return best;
}

std::string Valuation::str() const {
  switch (kind_) {
    case Kind::Trivial:
      return "trivial";
    case Kind::PAdic:
      return "p-adic(p=" + p_.str() + ", prime=" + prime_.str() + ")";
    case Kind::Gauss:
      return "gauss(" + base_->str() + ", t=" + t_.str() + ")";
    case Kind::DegreeAtInfinity:
      return "degree-at-infinity";
    case Kind::OrderAt:
      return "order-at(" + f_.str() + ")";
  }
  return "";
}

}  // namespace semistar

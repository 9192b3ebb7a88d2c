#include "semistar/poly_ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace semistar {

namespace {

Poly times_scalar(const FieldElement& c, const Poly& f) { return c * f; }

std::vector<Poly> nonzero(std::vector<Poly> gs) {
  gs.erase(std::remove_if(gs.begin(), gs.end(), [](const Poly& g) { return g.is_zero(); }), gs.end());
  return gs;
}

}  // namespace

PolyIdeal::PolyIdeal(DomainPtr d, std::vector<Poly> gens)
    : dom_(std::move(d)), gens_(nonzero(std::move(gens))), cache_(std::make_shared<Cache>()) {
  if (gens_.empty()) throw std::invalid_argument("polynomial ideal needs a nonzero generator");
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  gcd_ = gens_.front().monic();
  for (const auto& g : gens_) gcd_ = poly_gcd(gcd_, g);
}

PolyIdeal PolyIdeal::extended(const FractionalIdeal& e) {
  std::vector<Poly> gs;
  for (const auto& x : e.basis()) gs.push_back(Poly::constant(x));
  return PolyIdeal(e.domain(), gs);
}

PolyIdeal PolyIdeal::unit(DomainPtr d) { return extended(FractionalIdeal::unit(std::move(d))); }

int PolyIdeal::max_degree() const {
  int m = 0;
  for (const auto& g : gens_) m = std::max(m, g.degree());
  return m;
}

ZLattice PolyIdeal::slice(int n, int mult_cap) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->slices.find({n, mult_cap});
    if (it != cache_->slices.end()) return it->second;
  }
  const int r = dom_->r();
  const int top = n + mult_cap;
  const Index width = static_cast<Index>(r) * (top + 1);
  std::vector<RatVector> rows;
  for (const auto& g : gens_)
    for (int i = 0; i + g.degree() <= top; ++i)
      for (const auto& t : dom_->basis()) rows.push_back(times_scalar(t, g).shifted(i).coefficient_vector(top));
  ZLattice out(static_cast<Index>(r) * (n + 1));
  if (!rows.empty()) {
    // Columns ordered from the top degree down, so the echelon rows that start
    // past the high-degree block span exactly the degree <= n part.
    RatMatrix m(static_cast<Index>(rows.size()), width);
    for (Index i = 0; i < m.rows(); ++i)
      for (int k = 0; k <= top; ++k)
        for (int j = 0; j < r; ++j) m(i, static_cast<Index>(r) * (top - k) + j) = rows[i](r * k + j);
    auto [dn, im] = clear_denominators(m);
    std::vector<Index> pivots;
    const Index rank = hnf_in_place(im, width, &pivots);
    const Index cut = static_cast<Index>(r) * mult_cap;
    std::vector<RatVector> low;
    for (Index i = 0; i < rank; ++i) {
      if (pivots[i] < cut) continue;
      RatVector v = RatVector::Zero(static_cast<Index>(r) * (n + 1));
      for (int k = 0; k <= n; ++k)
        for (int j = 0; j < r; ++j) v(r * k + j) = Rational(im(i, static_cast<Index>(r) * (top - k) + j)) / Rational(dn);
      low.push_back(v);
    }
    out = ZLattice::from_vectors(static_cast<Index>(r) * (n + 1), low);
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->slices.emplace(std::make_pair(n, mult_cap), out);
  return out;
}

PolyIdeal::Slice PolyIdeal::stable_slice(int n, int mult_cap) const {
  constexpr int kEscalation = 4;
  ZLattice cur = slice(n, mult_cap);
  for (int b = mult_cap; b < mult_cap + kEscalation; ++b) {
    ZLattice next = slice(n, b + 1);
    if (next == cur) return {cur, b, true};
    cur = next;
  }
  return {cur, mult_cap + kEscalation, false};
}

Module PolyIdeal::slice_module(int n, int mult_cap) const {
  return Module::lattice(dom_, n + 1, stable_slice(n, mult_cap).lattice);
}

bool PolyIdeal::contains(const Poly& f, int mult_cap) const {
  if (f.is_zero()) return true;
  return stable_slice(f.degree(), mult_cap).lattice.contains(f.coefficient_vector(f.degree()));
}

PolyIdeal PolyIdeal::scaled(const Poly& x) const {
  std::vector<Poly> gs;
  for (const auto& g : gens_) gs.push_back(x * g);
  return PolyIdeal(dom_, gs);
}

PolyIdeal PolyIdeal::times_ring(const ZLattice& t) const {
  std::vector<Poly> gs;
  for (const auto& th : elements_of(dom_->field(), t))
    for (const auto& g : gens_) gs.push_back(th * g);
  return PolyIdeal(dom_, gs);
}

std::string PolyIdeal::str() const {
  std::string s = "pidl(";
  for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].str();
  return s + ")";
}

PolyIdeal operator*(const PolyIdeal& a, const PolyIdeal& b) {
  std::vector<Poly> gs;
  for (const auto& f : a.generators())
    for (const auto& g : b.generators()) gs.push_back(f * g);
  return PolyIdeal(a.domain(), gs);
}

PolyIdeal operator+(const PolyIdeal& a, const PolyIdeal& b) {
  std::vector<Poly> gs = a.generators();
  gs.insert(gs.end(), b.generators().begin(), b.generators().end());
  return PolyIdeal(a.domain(), gs);
}

PolyIdeal poly_ideal_pow(const PolyIdeal& a, int k) {
  if (k < 0) throw std::invalid_argument("negative ideal power");
  PolyIdeal out = PolyIdeal::unit(a.domain());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

FractionalIdeal content(const DomainPtr& d, const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("content of the zero polynomial");
  std::vector<FieldElement> cs;
  for (const auto& c : f.coeffs())
    if (!c.is_zero()) cs.push_back(c);
  return FractionalIdeal::generated(d, cs);
}

FractionalIdeal content(const PolyIdeal& a) {
  std::vector<FieldElement> cs;
  for (const auto& g : a.generators())
    for (const auto& c : g.coeffs())
      if (!c.is_zero()) cs.push_back(c);
  return FractionalIdeal::generated(a.domain(), cs);
}

bool dedekind_mertens_check(const DomainPtr& d, const Poly& f, const Poly& g) {
  const int m = f.degree();
  FractionalIdeal cg = content(d, g);
  FractionalIdeal lhs = content(d, f) * ideal_pow(cg, m + 1);
  FractionalIdeal rhs = content(d, f * g) * ideal_pow(cg, m);
  return lhs == rhs;
}

Poly interleave(const std::vector<Poly>& gs) {
  if (gs.empty()) throw std::invalid_argument("interleave of nothing");
  Poly out = gs.front();
  int shift = 0;
  for (std::size_t i = 1; i < gs.size(); ++i) {
    shift += gs[i - 1].degree() + 1;
    out += gs[i].shifted(shift);
  }
  return out;
}

bool content_power_sum_check(const PolyIdeal& h, int r) {
  const auto& d = h.domain();
  std::vector<Poly> pool = h.generators();
  pool.push_back(interleave(h.generators()));
  std::vector<Poly> rev(h.generators().rbegin(), h.generators().rend());
  pool.push_back(interleave(rev));
  std::optional<FractionalIdeal> lhs;
  for (const auto& g : pool) {
    FractionalIdeal t = ideal_pow(content(d, g), r);
    lhs = lhs ? *lhs + t : t;
  }
  return *lhs == ideal_pow(content(h), r);
}

RatMatrix multiplication_matrix(const Poly& p, int n) {
  const Field& k = p.field();
  const int r = k.degree();
  const int out = n + p.degree();
  RatMatrix m(static_cast<Index>(r) * (n + 1), static_cast<Index>(r) * (out + 1));
  Index row = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < r; ++j) {
      std::vector<Rational> e(static_cast<std::size_t>(r), Rational(0));
      e[static_cast<std::size_t>(j)] = 1;
      Poly basis = Poly::monomial(FieldElement::from_coords(k, e.data()), i);
      m.row(row++) = (p * basis).coefficient_vector(out);
    }
  return m;
}

Module module_preimage(const Poly& p, int n, const Module& m) {
  const auto& d = m.domain();
  if (m.n() != n + p.degree() + 1) throw std::invalid_argument("preimage: ambient mismatch");
  RatMatrix phi = multiplication_matrix(p, n);
  switch (m.kind()) {
    case Module::Kind::Lattice:
      return Module::lattice(d, n + 1, preimage(phi, m.lat()));
    case Module::Kind::Space:
      return Module::space(d, n + 1, preimage(phi, m.span()));
    case Module::Kind::Semilocal: {
      std::vector<std::pair<PrimeIdeal, ZLattice>> ps;
      for (const auto& [q, l] : m.parts()) ps.emplace_back(q, preimage(phi, l));
      return Module::semilocal(d, n + 1, ps);
    }
  }
  throw std::logic_error("unhandled module kind");
}

Module module_image(const Poly& p, const Module& m) {
  const auto& d = m.domain();
  const int n = m.n() - 1;
  RatMatrix phi = multiplication_matrix(p, n);
  const int out = m.n() + p.degree();
  switch (m.kind()) {
    case Module::Kind::Lattice:
      return Module::lattice(d, out, m.lat().image(phi));
    case Module::Kind::Space:
      return Module::space(d, out, QSubspace::span(m.span().basis() * phi));
    case Module::Kind::Semilocal: {
      std::vector<std::pair<PrimeIdeal, ZLattice>> ps;
      for (const auto& [q, l] : m.parts()) ps.emplace_back(q, l.image(phi));
      return Module::semilocal(d, out, ps);
    }
  }
  throw std::logic_error("unhandled module kind");
}

Module multiples_space(const DomainPtr& d, const Poly& h, int n) {
  const int k = n - h.degree();
  if (k < 0) return Module::zero(d, n + 1);
  return module_image(h, Module::all(d, k + 1));
}

PolyPrime PolyPrime::extended(PrimeIdeal p) {
  PolyPrime q;
  q.kind_ = Kind::Extended;
  q.dom_ = p.ideal().domain();
  q.p_ = std::move(p);
  return q;
}

PolyPrime PolyPrime::upper(DomainPtr d, Poly f) {
  if (f.degree() < 1) throw std::invalid_argument("upper to zero needs a nonconstant polynomial");
  PolyPrime q;
  q.kind_ = Kind::Upper;
  q.dom_ = std::move(d);
  q.f_ = f.monic();
  return q;
}

PolyPrime PolyPrime::composite(PrimeIdeal p, Poly f) {
  PolyPrime q;
  q.kind_ = Kind::Composite;
  q.dom_ = p.ideal().domain();
  q.p_ = std::move(p);
  q.f_ = std::move(f);
  return q;
}

namespace {

bool coefficients_in(const ZLattice& l, const Poly& g) {
  for (const auto& c : g.coeffs())
    if (!l.contains(to_vec(c))) return false;
  return true;
}

// Residue map D -> F_p for a prime of norm p, as integer images of the basis.
std::optional<std::vector<BigInt>> residues(const PrimeIdeal& p) {
  if (p.norm() != p.characteristic()) return std::nullopt;
  const auto& d = p.ideal().domain();
  std::vector<BigInt> out;
  for (const auto& t : elements_of(d->field(), d->ring())) {
    bool found = false;
    for (BigInt c = 0; c < p.characteristic(); ++c)
      if (p.ideal().contains(t - FieldElement(d->field(), Rational(c)))) {
        out.push_back(c);
        found = true;
        break;
      }
    if (!found) return std::nullopt;
  }
  return out;
}

std::vector<BigInt> reduce(const Poly& g, const PrimeIdeal& p, const std::vector<BigInt>& res) {
  const auto& d = p.ideal().domain();
  const BigInt& ch = p.characteristic();
  std::vector<BigInt> out;
  for (const auto& c : g.coeffs()) {
    auto coords = d->ring().coordinates(to_vec(c));
    if (!coords) throw std::invalid_argument("reduction of a non-integral polynomial");
    BigInt s = 0;
    for (std::size_t i = 0; i < res.size(); ++i) s += (*coords)(static_cast<Index>(i)) * res[i];
    out.push_back(((s % ch) + ch) % ch);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt inverse_mod(const BigInt& a, const BigInt& p) {
  BigInt r = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e % 2 == 1) r = r * base % p;
    base = base * base % p;
    e /= 2;
  }
  return r;
}

// Remainder of a modulo b over F_p (b nonzero).
std::vector<BigInt> mod_remainder(std::vector<BigInt> a, const std::vector<BigInt>& b, const BigInt& p) {
  const BigInt inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    BigInt q = a.back() * inv % p;
    const std::size_t off = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = ((a[off + i] - q * b[i]) % p + p) % p;
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

bool PolyPrime::contains(const Poly& g) const {
  switch (kind_) {
    case Kind::Extended:
      return coefficients_in(p_.lattice(), g);
    case Kind::Upper:
      return coefficients_in(dom_->ring(), g) && divides(f_, g);
    case Kind::Composite: {
      if (!coefficients_in(dom_->ring(), g)) return false;
      if (auto res = residues(p_)) {
        auto gb = reduce(g, p_, *res);
        auto fb = reduce(f_, p_, *res);
        if (gb.empty()) return true;
        if (fb.empty()) return false;
        return mod_remainder(gb, fb, p_.characteristic()).empty();
      }
      return ideal().contains(g, 3);
    }
  }
  return false;
}

PolyIdeal PolyPrime::ideal() const {
  switch (kind_) {
    case Kind::Extended:
      return PolyIdeal::extended(p_.ideal());
    case Kind::Upper: {
      FractionalIdeal c = content(dom_, f_);
      std::vector<Poly> gs;
      for (const auto& a : colon(FractionalIdeal::unit(dom_), c).basis()) gs.push_back(a * f_);
      return PolyIdeal(dom_, gs);
    }
    case Kind::Composite: {
      std::vector<Poly> gs{f_};
      for (const auto& a : p_.ideal().basis()) gs.push_back(Poly::constant(a));
      return PolyIdeal(dom_, gs);
    }
  }
  throw std::logic_error("unhandled prime kind");
}

std::string PolyPrime::str() const {
  switch (kind_) {
    case Kind::Extended:
      return p_.label() + "[X]";
    case Kind::Upper:
      return "upper(" + f_.str() + ")";
    case Kind::Composite:
      return "(" + p_.label() + ", " + f_.str() + ")";
  }
  return "";
}

}  // namespace semistar

#include "semistar/module.hpp"

#include <algorithm>

namespace semistar {

namespace {

using Parts = std::vector<std::pair<PrimeIdeal, ZLattice>>;

ZLattice block_power(const ZLattice& l, int k) {
  std::vector<RatVector> rows;
  const Index w = l.dim();
  for (int b = 0; b < k; ++b)
    for (Index i = 0; i < l.rank(); ++i) {
      RatVector v = RatVector::Zero(w * k);
      v.segment(b * w, w) = l.basis_row(i);
      rows.push_back(v);
    }
  return ZLattice::from_vectors(w * k, rows);
}

QSubspace block_power(const QSubspace& s, int k) {
  const Index w = s.dim();
  RatMatrix m = RatMatrix::Zero(s.rank() * k, w * k);
  for (int b = 0; b < k; ++b) m.block(b * s.rank(), b * w, s.rank(), w) = s.basis();
  return QSubspace::span(m);
}

}  // namespace

Module Module::lattice(DomainPtr d, int n, ZLattice l) {
  Module m;
  m.kind_ = Kind::Lattice;
  m.dom_ = std::move(d);
  m.n_ = n;
  m.lat_ = std::move(l);
  return m;
}

Module Module::space(DomainPtr d, int n, QSubspace v) {
  Module m;
  m.kind_ = Kind::Space;
  m.n_ = n;
  m.span_ = k_span(v, d->field(), n);
  m.dom_ = std::move(d);
  return m;
}

Module Module::semilocal(DomainPtr d, int n, Parts parts) {
  if (parts.empty()) throw std::invalid_argument("semilocal module: empty prime set");
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Parts merged;
  for (auto& [p, l] : parts) {
    ZLattice dl = d->d_span(l, n);
    if (!merged.empty() && merged.back().first == p)
      merged.back().second = intersect(merged.back().second, dl);
    else
      merged.emplace_back(p, dl);
  }
  for (const auto& pr : merged)
    if (pr.second.is_zero()) return zero(d, n);
  QSubspace v = k_span(merged.front().second, d->field(), n);
  for (const auto& pr : merged)
    if (k_span(pr.second, d->field(), n) != v)
      throw std::invalid_argument("semilocal module: local pieces span different spaces");
  Module m;
  m.kind_ = Kind::Semilocal;
  m.dom_ = std::move(d);
  m.n_ = n;
  m.span_ = v;
  m.parts_ = std::move(merged);
  return m;
}

bool Module::is_zero() const {
  switch (kind_) {
    case Kind::Lattice:
      return lat_.is_zero();
    case Kind::Space:
      return span_.rank() == 0;
    case Kind::Semilocal:
      return false;
  }
  return false;
}

std::optional<FractionalIdeal> Module::as_ideal() const {
  if (!is_lattice() || n_ != 1 || lat_.is_zero()) return std::nullopt;
  return FractionalIdeal(dom_, lat_);
}

bool locally_contained(const OrderDomain& d, int n, const ZLattice& l, const ZLattice& m, const PrimeIdeal& p) {
  if (l.is_zero()) return true;
  if (m.is_zero()) return false;
  ZLattice t = d.transporter(m, l, n);
  return !p.lattice().contains(t);
}

ZLattice globalize(const OrderDomain& d, int n, const ZLattice& g, const PrimeIdeal& p, const ZLattice& l) {
  if (g.is_zero()) return g;
  ZLattice h = intersect(g, l);
  BigInt idx = h.index_in(g);
  const BigInt& ch = p.characteristic();
  int a = valuation_int(idx, ch);
  if (a == 0) return g;
  BigInt rest = idx;
  for (int i = 0; i < a; ++i) rest /= ch;
  const Field& k = d.field();
  FieldElement c = FieldElement(k, Rational(rest));
  for (const auto& q : d.primes_above(ch)) {
    if (q == p) continue;
    for (const auto& u : q.ideal().basis())
      if (!p.ideal().contains(u)) {
        FieldElement ua = FieldElement::from_int(k, 1);
        for (int i = 0; i < a; ++i) ua *= u;
        c *= ua;
        break;
      }
  }
  return intersect(g, scale(h, c.inverse(), n));
}

bool Module::contains(const RatVector& x) const {
  switch (kind_) {
    case Kind::Lattice:
      return lat_.contains(x);
    case Kind::Space:
      return span_.contains(x);
    case Kind::Semilocal: {
      if (!span_.contains(x)) return false;
      ZLattice line = ZLattice::from_vectors(x.size(), {x});
      for (const auto& [p, l] : parts_)
        if (!locally_contained(*dom_, n_, line, l, p)) return false;
      return true;
    }
  }
  return false;
}

bool Module::contains(const Module& o) const {
  if (o.is_zero()) return true;
  const Field& k = dom_->field();
  switch (kind_) {
    case Kind::Space:
      return span_.contains(o.is_lattice() ? k_span(o.lat_, k, n_) : o.span_);
    case Kind::Lattice:
      return o.is_lattice() && lat_.contains(o.lat_);
    case Kind::Semilocal:
      if (o.is_space()) return false;
      if (o.is_lattice()) {
        if (!span_.contains(span_of(o.lat_))) return false;
        for (const auto& [p, l] : parts_)
          if (!locally_contained(*dom_, n_, o.lat_, l, p)) return false;
        return true;
      }
      if (!span_.contains(o.span_)) return false;
      for (const auto& [p, l] : parts_) {
        auto it = std::find_if(o.parts_.begin(), o.parts_.end(), [&](const auto& q) { return q.first == p; });
        if (it == o.parts_.end()) return false;
        if (!locally_contained(*dom_, n_, it->second, l, p)) return false;
      }
      return true;
  }
  return false;
}

Module Module::scaled(const FieldElement& x) const {
  if (x.is_zero()) return zero(dom_, n_);
  Module m = *this;
  switch (kind_) {
    case Kind::Lattice:
      m.lat_ = scale(lat_, x, n_);
      break;
    case Kind::Semilocal:
      for (auto& pr : m.parts_) pr.second = scale(pr.second, x, n_);
      break;
    case Kind::Space:
      break;
  }
  return m;
}

Module Module::times_ring(const ZLattice& t) const {
  const Field& k = dom_->field();
  Module m = *this;
  switch (kind_) {
    case Kind::Lattice:
      m.lat_ = product(t, lat_, k, n_);
      break;
    case Kind::Semilocal:
      for (auto& pr : m.parts_) pr.second = product(t, pr.second, k, n_);
      break;
    case Kind::Space:
      break;
  }
  return m;
}

Module Module::power(int k) const {
  switch (kind_) {
    case Kind::Lattice:
      return lattice(dom_, n_ * k, block_power(lat_, k));
    case Kind::Space:
      return space(dom_, n_ * k, block_power(span_, k));
    case Kind::Semilocal: {
      Parts ps;
      for (const auto& [p, l] : parts_) ps.emplace_back(p, block_power(l, k));
      return semilocal(dom_, n_ * k, ps);
    }
  }
  return *this;
}

Module Module::localized(const std::vector<PrimeIdeal>& delta) const {
  if (is_zero() || is_space()) return *this;
  if (is_lattice()) {
    if (delta.empty()) return space(dom_, n_, k_span(lat_, dom_->field(), n_));
    Parts ps;
    for (const auto& p : delta) ps.emplace_back(p, lat_);
    return semilocal(dom_, n_, ps);
  }
  Parts ps;
  for (const auto& pr : parts_)
    if (std::find(delta.begin(), delta.end(), pr.first) != delta.end()) ps.push_back(pr);
  if (ps.empty()) return space(dom_, n_, span_);
  return semilocal(dom_, n_, ps);
}

ZLattice Module::representative() const {
  if (is_lattice()) return lat_;
  if (is_space()) throw std::invalid_argument("representative of a K-space");
  ZLattice g = parts_.front().second;
  for (std::size_t i = 1; i < parts_.size(); ++i) g = g + parts_[i].second;
  for (const auto& [p, l] : parts_) g = globalize(*dom_, n_, g, p, l);
  return g;
}

std::string Module::str() const {
  switch (kind_) {
    case Kind::Lattice:
      if (n_ == 1 && !lat_.is_zero()) return FractionalIdeal(dom_, lat_).str();
      return "lattice" + lat_.str();
    case Kind::Space:
      if (is_all()) return n_ == 1 ? "K" : "K^" + std::to_string(n_);
      return "space(rank " + std::to_string(span_.rank()) + ")";
    case Kind::Semilocal: {
      std::string s = "loc{";
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        s += (i ? ", " : "") + parts_[i].first.label() + ": ";
        s += n_ == 1 ? FractionalIdeal(dom_, parts_[i].second).str() : parts_[i].second.str();
      }
      return s + "}";
    }
  }
  return "";
}

Module intersect(const Module& a, const Module& b) {
  if (a.n() != b.n()) throw std::invalid_argument("module ambient mismatch");
  const auto& d = a.domain();
  const int n = a.n();
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.is_space() && b.is_space()) return Module::space(d, n, intersect(a.span(), b.span()));
  if (b.is_space()) return intersect(b, a);
  if (a.is_space()) {
    if (b.is_lattice()) return Module::lattice(d, n, intersect(b.lat(), a.span()));
    Parts ps;
    for (const auto& [p, l] : b.parts()) ps.emplace_back(p, intersect(l, a.span()));
    return Module::semilocal(d, n, ps);
  }
  if (a.is_lattice() && b.is_lattice()) return Module::lattice(d, n, intersect(a.lat(), b.lat()));
  if (b.is_lattice()) return intersect(b, a);
  if (a.is_lattice()) {
    ZLattice g = intersect(a.lat(), b.span());
    for (const auto& [p, l] : b.parts()) g = globalize(*d, n, g, p, l);
    return Module::lattice(d, n, g);
  }
  QSubspace v = intersect(a.span(), b.span());
  if (v.rank() == 0) return Module::zero(d, n);
  Parts ps;
  for (const auto& [p, l] : a.parts()) ps.emplace_back(p, intersect(l, v));
  for (const auto& [p, l] : b.parts()) ps.emplace_back(p, intersect(l, v));
  return Module::semilocal(d, n, ps);
}

std::optional<Module> try_sum(const Module& a, const Module& b) {
  if (a.n() != b.n()) throw std::invalid_argument("module ambient mismatch");
  const auto& d = a.domain();
  const int n = a.n();
  const Field& k = d->field();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  auto span_any = [&](const Module& m) { return m.is_lattice() ? k_span(m.lat(), k, n) : m.span(); };
  if (a.is_space() || b.is_space()) return Module::space(d, n, span_any(a) + span_any(b));
  if (a.is_lattice() && b.is_lattice()) return Module::lattice(d, n, a.lat() + b.lat());
  if (a.is_semilocal() && b.is_lattice()) return try_sum(b, a);
  if (a.is_lattice()) {
    if (!b.span().contains(span_of(a.lat()))) return std::nullopt;
    Parts ps;
    for (const auto& [p, l] : b.parts()) ps.emplace_back(p, l + a.lat());
    return Module::semilocal(d, n, ps);
  }
  if (a.contains(b)) return a;
  if (b.contains(a)) return b;
  if (a.span() != b.span() || a.parts().size() != b.parts().size()) return std::nullopt;
  Parts ps;
  for (std::size_t i = 0; i < a.parts().size(); ++i) {
    if (a.parts()[i].first != b.parts()[i].first) return std::nullopt;
    ps.emplace_back(a.parts()[i].first, a.parts()[i].second + b.parts()[i].second);
  }
  return Module::semilocal(d, n, ps);
}

}  // namespace semistar

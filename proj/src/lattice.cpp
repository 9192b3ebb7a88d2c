#include "semistar/lattice.hpp"

#include <sstream>

namespace semistar {

void ZLattice::set_from_integer(const BigInt& d, IntMatrix m) {
  dim_ = m.cols();
  IntMatrix h = hnf(std::move(m));
  BigInt g = d;
  for (Index i = 0; i < h.rows(); ++i)
    for (Index j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) g = mp::gcd(g, h(i, j));
  if (g > 1) {
    for (Index i = 0; i < h.rows(); ++i)
      for (Index j = 0; j < h.cols(); ++j) h(i, j) /= g;
  }
  den_ = h.rows() == 0 ? BigInt(1) : d / g;
  hnf_ = std::move(h);
}

ZLattice ZLattice::from_rows(const RatMatrix& gens) {
  ZLattice l(gens.cols());
  if (gens.rows() == 0) return l;
  auto [d, m] = clear_denominators(gens);
  l.set_from_integer(d, std::move(m));
  return l;
}

ZLattice ZLattice::from_vectors(Index dim, const std::vector<RatVector>& gens) {
  RatMatrix m(static_cast<Index>(gens.size()), dim);
  for (std::size_t i = 0; i < gens.size(); ++i) m.row(static_cast<Index>(i)) = gens[i];
  return from_rows(m);
}

ZLattice ZLattice::standard(Index dim) {
  ZLattice l(dim);
  l.hnf_ = IntMatrix::Identity(dim, dim);
  return l;
}

RatMatrix ZLattice::basis() const {
  RatMatrix b = to_rational(hnf_);
  if (den_ != 1) b /= Rational(den_);
  return b;
}

RatVector ZLattice::basis_row(Index i) const {
  RatVector r(dim_);
  for (Index j = 0; j < dim_; ++j) r(j) = Rational(hnf_(i, j), den_);
  return r;
}

std::optional<IntVector> ZLattice::coordinates(const RatVector& x) const {
  IntVector y(dim_);
  for (Index j = 0; j < dim_; ++j) {
    Rational v = x(j) * Rational(den_);
    if (den(v) != 1) return std::nullopt;
    y(j) = num(v);
  }
  IntVector c = IntVector::Zero(rank());
  Index col = 0;
  for (Index i = 0; i < rank(); ++i) {
    while (hnf_(i, col) == 0) {
      if (y(col) != 0) return std::nullopt;
      ++col;
    }
    if (y(col) % hnf_(i, col) != 0) return std::nullopt;
    BigInt q = y(col) / hnf_(i, col);
    c(i) = q;
    if (q != 0)
      for (Index j = col; j < dim_; ++j) y(j) -= q * hnf_(i, j);
  }
  for (Index j = 0; j < dim_; ++j)
    if (y(j) != 0) return std::nullopt;
  return c;
}

bool ZLattice::contains(const RatVector& x) const { return coordinates(x).has_value(); }

bool ZLattice::contains(const ZLattice& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("lattice ambient mismatch");
  for (Index i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_row(i))) return false;
  return true;
}

bool ZLattice::operator<(const ZLattice& o) const {
  if (dim_ != o.dim_) return dim_ < o.dim_;
  if (rank() != o.rank()) return rank() < o.rank();
  if (den_ != o.den_) return den_ < o.den_;
  for (Index i = 0; i < rank(); ++i)
    for (Index j = 0; j < dim_; ++j)
      if (hnf_(i, j) != o.hnf_(i, j)) return hnf_(i, j) < o.hnf_(i, j);
  return false;
}

ZLattice ZLattice::scaled(const Rational& q) const {
  if (q == 0) return ZLattice(dim_);
  RatMatrix b = basis() * q;
  return from_rows(b);
}

ZLattice ZLattice::image(const RatMatrix& map) const {
  if (is_zero()) return ZLattice(map.cols());
  return from_rows((basis() * map).eval());
}

BigInt ZLattice::index_in(const ZLattice& other) const {
  if (rank() != other.rank()) throw std::invalid_argument("index of lattices of different rank");
  IntMatrix c(rank(), rank());
  for (Index i = 0; i < rank(); ++i) {
    auto co = other.coordinates(basis_row(i));
    if (!co) throw std::invalid_argument("index: not a sublattice");
    c.row(i) = *co;
  }
  IntMatrix h = hnf(c);
  BigInt det = 1;
  for (Index i = 0; i < h.rows(); ++i) det *= h(i, i);
  return det;
}

std::string ZLattice::str() const {
  std::ostringstream os;
  os << "[";
  for (Index i = 0; i < rank(); ++i) {
    if (i) os << "; ";
    for (Index j = 0; j < dim_; ++j) os << (j ? " " : "") << Rational(hnf_(i, j), den_).str();
  }
  os << "]";
  return os.str();
}

ZLattice operator+(const ZLattice& a, const ZLattice& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("lattice ambient mismatch");
  RatMatrix m(a.rank() + b.rank(), a.dim());
  m << a.basis(), b.basis();
  return ZLattice::from_rows(m);
}

ZLattice intersect(const ZLattice& a, const ZLattice& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("lattice ambient mismatch");
  if (a.is_zero() || b.is_zero()) return ZLattice(a.dim());
  BigInt d = lcm_int(a.denominator(), b.denominator());
  IntMatrix m(a.rank() + b.rank(), a.dim());
  m.topRows(a.rank()) = a.hnf_basis() * BigInt(d / a.denominator());
  m.bottomRows(b.rank()) = b.hnf_basis() * BigInt(d / b.denominator());
  IntMatrix k = integer_left_kernel(m);
  if (k.rows() == 0) return ZLattice(a.dim());
  IntMatrix rows = k.leftCols(a.rank()) * m.topRows(a.rank());
  RatMatrix r = to_rational(rows) / Rational(d);
  return ZLattice::from_rows(r);
}

QSubspace QSubspace::span(const RatMatrix& rows) {
  QSubspace v(rows.cols());
  v.basis_ = row_space(rows);
  return v;
}

QSubspace QSubspace::full(Index dim) { return span(RatMatrix::Identity(dim, dim)); }

RatMatrix QSubspace::annihilator() const { return right_nullspace(basis_); }

bool QSubspace::contains(const RatVector& x) const {
  if (rank() == dim_) return true;
  RatVector r = x * annihilator();
  for (Index j = 0; j < r.size(); ++j)
    if (r(j) != 0) return false;
  return true;
}

bool QSubspace::contains(const QSubspace& o) const {
  for (Index i = 0; i < o.rank(); ++i)
    if (!contains(RatVector(o.basis().row(i)))) return false;
  return true;
}

QSubspace operator+(const QSubspace& a, const QSubspace& b) {
  RatMatrix m(a.rank() + b.rank(), a.dim());
  m << a.basis(), b.basis();
  return QSubspace::span(m);
}

QSubspace intersect(const QSubspace& a, const QSubspace& b) {
  if (a.rank() == 0 || b.rank() == 0) return QSubspace(a.dim());
  RatMatrix m(a.rank() + b.rank(), a.dim());
  m << a.basis(), b.basis();
  RatMatrix k = left_nullspace(m);
  if (k.rows() == 0) return QSubspace(a.dim());
  return QSubspace::span((k.leftCols(a.rank()) * a.basis()).eval());
}

QSubspace span_of(const ZLattice& l) {
  if (l.is_zero()) return QSubspace(l.dim());
  return QSubspace::span(l.basis());
}

ZLattice intersect(const ZLattice& l, const QSubspace& v) {
  if (v.rank() == v.dim() || l.is_zero()) return l;
  RatMatrix w = v.annihilator();
  RatMatrix lb = to_rational(l.hnf_basis());
  auto [d, m] = clear_denominators((lb * w).eval());
  (void)d;
  IntMatrix k = integer_left_kernel(m);
  if (k.rows() == 0) return ZLattice(l.dim());
  return ZLattice::from_rows((to_rational(k) * l.basis()).eval());
}

ZLattice preimage(const RatMatrix& phi, const ZLattice& l) {
  const Index k = phi.rows();
  if (l.is_zero() || k == 0) return ZLattice(k);
  RatMatrix w = right_nullspace(phi);
  RatMatrix x;
  if (w.cols() == 0) {
    x = l.basis();
  } else {
    RatMatrix lb = to_rational(l.hnf_basis());
    auto [d, m] = clear_denominators((lb * w).eval());
    (void)d;
    IntMatrix c = integer_left_kernel(m);
    if (c.rows() == 0) return ZLattice(k);
    x = to_rational(c) * l.basis();
  }
  return ZLattice::from_rows(solve_left(phi, x));
}

QSubspace preimage(const RatMatrix& phi, const QSubspace& v) {
  const Index k = phi.rows();
  QSubspace img = intersect(v, QSubspace::span(phi));
  if (img.rank() == 0) return QSubspace(k);
  return QSubspace::span(solve_left(phi, img.basis()));
}

}  // namespace semistar

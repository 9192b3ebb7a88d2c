#pragma once

#include "semistar/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace semistar {

// Finitely generated Z-module in Q^dim, stored as (1/d) * HNF.
class ZLattice {
 public:
  ZLattice() = default;
  explicit ZLattice(Index dim) : dim_(dim), hnf_(0, dim) {}
  static ZLattice from_rows(const RatMatrix& gens);
  static ZLattice from_vectors(Index dim, const std::vector<RatVector>& gens);
  static ZLattice standard(Index dim);  // Z^dim

  Index dim() const { return dim_; }
  Index rank() const { return hnf_.rows(); }
  bool is_zero() const { return hnf_.rows() == 0; }
  const BigInt& denominator() const { return den_; }
  const IntMatrix& hnf_basis() const { return hnf_; }
  RatMatrix basis() const;
  RatVector basis_row(Index i) const;

  bool contains(const RatVector& x) const;
  bool contains(const ZLattice& other) const;
  bool operator==(const ZLattice& o) const { return dim_ == o.dim_ && den_ == o.den_ && hnf_ == o.hnf_; }
  bool operator!=(const ZLattice& o) const { return !(*this == o); }
  bool operator<(const ZLattice& o) const;

  // Integer coordinates w.r.t. the HNF basis, if x lies in the lattice.
  std::optional<IntVector> coordinates(const RatVector& x) const;

  ZLattice scaled(const Rational& q) const;
  ZLattice image(const RatMatrix& map) const;  // rows * map

  // [other : this] for this a full-rank sublattice of other (same span).
  BigInt index_in(const ZLattice& other) const;

  std::string str() const;

 private:
  void set_from_integer(const BigInt& d, IntMatrix m);
  Index dim_ = 0;
  BigInt den_ = 1;
  IntMatrix hnf_;
};

ZLattice operator+(const ZLattice& a, const ZLattice& b);
ZLattice intersect(const ZLattice& a, const ZLattice& b);

// Q-subspace of Q^dim, stored by its RREF basis.
class QSubspace {
 public:
  QSubspace() = default;
  explicit QSubspace(Index dim) : dim_(dim), basis_(0, dim) {}
  static QSubspace span(const RatMatrix& rows);
  static QSubspace full(Index dim);

  Index dim() const { return dim_; }
  Index rank() const { return basis_.rows(); }
  const RatMatrix& basis() const { return basis_; }
  bool contains(const RatVector& x) const;
  bool contains(const QSubspace& o) const;
  bool operator==(const QSubspace& o) const { return dim_ == o.dim_ && basis_ == o.basis_; }
  bool operator!=(const QSubspace& o) const { return !(*this == o); }
  // Columns W with x in this iff x * W == 0.
  RatMatrix annihilator() const;

 private:
  Index dim_ = 0;
  RatMatrix basis_;
};

QSubspace operator+(const QSubspace& a, const QSubspace& b);
QSubspace intersect(const QSubspace& a, const QSubspace& b);
QSubspace span_of(const ZLattice& l);
ZLattice intersect(const ZLattice& l, const QSubspace& v);

// {y in Q^k : y * phi in L} for an injective phi (k x dim L).
ZLattice preimage(const RatMatrix& phi, const ZLattice& l);
QSubspace preimage(const RatMatrix& phi, const QSubspace& v);

}  // namespace semistar

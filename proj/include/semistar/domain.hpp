#pragma once

#include "semistar/lattice.hpp"
#include "semistar/poly.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace semistar {

class OrderDomain;
using DomainPtr = std::shared_ptr<const OrderDomain>;
class PrimeIdeal;

// Z-lattices in K^n: coordinates are n consecutive blocks of the field basis.
RatVector to_vec(const FieldElement& x);
FieldElement to_elem(const Field& k, const RatVector& v, Index block = 0);
RatMatrix scalar_matrix(const FieldElement& x, int n);
ZLattice scale(const ZLattice& l, const FieldElement& x, int n);
ZLattice lattice_of(const Field& k, const std::vector<FieldElement>& gens);
std::vector<FieldElement> elements_of(const Field& k, const ZLattice& l);
// Z-span of t * x for t in T (a lattice in K) and x in L (a lattice in K^n).
ZLattice product(const ZLattice& t, const ZLattice& l, const Field& k, int n);
// {x in K : x A subset B} for lattices A, B in K^n.
ZLattice colon_k(const ZLattice& b, const ZLattice& a, const Field& k, int n);
QSubspace k_span(const ZLattice& l, const Field& k, int n);
QSubspace k_span(const QSubspace& v, const Field& k, int n);

// D = Z + f*omega*Z inside K, or Z inside Q.
class OrderDomain : public std::enable_shared_from_this<OrderDomain> {
 public:
  static DomainPtr integers();
  static DomainPtr order(std::int64_t m, std::int64_t f);

  const Field& field() const { return field_; }
  int r() const { return field_.degree(); }
  std::int64_t conductor_index() const { return f_; }
  bool is_maximal() const { return f_ == 1; }
  const std::vector<FieldElement>& basis() const { return basis_; }
  const ZLattice& ring() const { return ring_; }
  const ZLattice& maximal_order() const { return maximal_; }
  const ZLattice& conductor() const { return conductor_; }
  const std::string& name() const { return name_; }

  bool contains(const FieldElement& x) const { return ring_.contains(to_vec(x)); }
  FieldElement one() const { return FieldElement::from_int(field_, 1); }

  // {s in D : s A subset B}.
  ZLattice transporter(const ZLattice& b, const ZLattice& a, int n) const;
  // D-span of a lattice in K^n.
  ZLattice d_span(const ZLattice& l, int n) const;
  bool is_d_module(const ZLattice& l, int n) const;

  std::vector<PrimeIdeal> primes_above(const BigInt& p) const;
  std::vector<PrimeIdeal> primes_up_to(int bound) const;
  // Primes of D containing the conductor.
  std::vector<PrimeIdeal> conductor_primes() const;

 private:
  OrderDomain() = default;
  Field field_;
  std::int64_t f_ = 1;
  std::vector<FieldElement> basis_;
  ZLattice ring_, maximal_, conductor_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::map<BigInt, std::vector<PrimeIdeal>> prime_cache_;
};

// Nonzero finitely generated D-submodule of K.
class FractionalIdeal {
 public:
  FractionalIdeal() = default;
  FractionalIdeal(DomainPtr d, ZLattice l);
  static FractionalIdeal generated(DomainPtr d, const std::vector<FieldElement>& gens);
  static FractionalIdeal principal(DomainPtr d, const FieldElement& x) { return generated(d, {x}); }
  static FractionalIdeal unit(DomainPtr d) { return FractionalIdeal(d, d->ring()); }
  static FractionalIdeal maximal_order(DomainPtr d) { return FractionalIdeal(d, d->maximal_order()); }

  const DomainPtr& domain() const { return dom_; }
  const ZLattice& lattice() const { return lat_; }
  std::vector<FieldElement> basis() const { return elements_of(dom_->field(), lat_); }
  bool is_integral() const { return dom_->ring().contains(lat_); }
  bool contains(const FieldElement& x) const { return lat_.contains(to_vec(x)); }
  bool contains(const FractionalIdeal& o) const { return lat_.contains(o.lat_); }
  bool operator==(const FractionalIdeal& o) const { return lat_ == o.lat_; }
  bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }
  bool operator<(const FractionalIdeal& o) const { return lat_ < o.lat_; }

  FractionalIdeal scaled(const FieldElement& x) const;
  std::string str() const;

 private:
  DomainPtr dom_;
  ZLattice lat_;
};

FractionalIdeal operator+(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal operator*(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal intersect(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal colon(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_pow(const FractionalIdeal& a, int k);
// x in A D_P, decided by the transporter test.
bool localization_membership(const FieldElement& x, const FractionalIdeal& a, const PrimeIdeal& p);

class PrimeIdeal {
 public:
  PrimeIdeal() = default;
  PrimeIdeal(FractionalIdeal ideal, BigInt p);

  const FractionalIdeal& ideal() const { return ideal_; }
  const ZLattice& lattice() const { return ideal_.lattice(); }
  const BigInt& characteristic() const { return p_; }
  const BigInt& norm() const { return norm_; }
  bool invertible() const { return invertible_; }
  bool operator==(const PrimeIdeal& o) const { return ideal_ == o.ideal_; }
  bool operator!=(const PrimeIdeal& o) const { return !(*this == o); }
  bool operator<(const PrimeIdeal& o) const;
  std::string str() const;
  // Label like "P2" or "P2'" used in reports.
  std::string label() const;

 private:
  FractionalIdeal ideal_;
  BigInt p_ = 0, norm_ = 0;
  bool invertible_ = true;
  int ordinal_ = 0;
  friend class OrderDomain;
};

// Brute-force primality check of an integral ideal of finite index.
bool is_prime_ideal(const OrderDomain& d, const ZLattice& p);

// Extended rational: nullopt encodes +infinity.
using ExtRational = std::optional<Rational>;

class Valuation {
 public:
  enum class Kind { Trivial, PAdic, Gauss, DegreeAtInfinity, OrderAt };

  static Valuation trivial(const Field& k);
  // Valuation of the prime of the maximal order given by its lattice.
  static Valuation p_adic(DomainPtr d, const ZLattice& maximal_prime, const BigInt& p);
  // Gauss extension of `base` (trivial or p-adic) with weight t on X.
  static Valuation gauss(const Valuation& base, const Rational& t);
  static Valuation degree_at_infinity(const Field& k);
  static Valuation order_at(const Poly& f);

  Kind kind() const { return kind_; }
  // Prime of the maximal order for p-adic kinds.
  const ZLattice& prime() const { return prime_; }
  ExtRational eval(const FieldElement& x) const;
  ExtRational eval(const Poly& f) const;
  ExtRational eval(const Poly& num, const Poly& den) const;
  // Minimum over generators; FV membership is eval(x) >= min_value.
  ExtRational min_value(const std::vector<FieldElement>& gens) const;
  ExtRational min_value(const std::vector<Poly>& gens) const;
  std::string str() const;

 private:
  Kind kind_ = Kind::Trivial;
  Field field_;
  DomainPtr dom_;
  ZLattice prime_;
  BigInt p_ = 0;
  Rational t_ = 0;
  std::shared_ptr<const Valuation> base_;
  Poly f_;
  int prime_order_in_maximal(const FieldElement& y) const;
};

bool ext_less(const ExtRational& a, const ExtRational& b);

// Primes of the maximal order above p, as lattices in K.
std::vector<ZLattice> maximal_order_primes(DomainPtr d, const BigInt& p);

}  // namespace semistar

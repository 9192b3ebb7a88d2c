#pragma once

#include "semistar/domain.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semistar {

// A D-submodule of K^n: a lattice, a semilocal module  ∩_P L_P D_P  (all L_P
// spanning the same K-space V), or a K-subspace (the K / K[X] marker when full).
class Module {
 public:
  enum class Kind { Lattice, Semilocal, Space };

  Module() = default;
  static Module lattice(DomainPtr d, int n, ZLattice l);
  static Module semilocal(DomainPtr d, int n, std::vector<std::pair<PrimeIdeal, ZLattice>> parts);
  static Module space(DomainPtr d, int n, QSubspace v);
  static Module all(DomainPtr d, int n) { return space(d, n, QSubspace::full(static_cast<Index>(d->r()) * n)); }
  static Module zero(DomainPtr d, int n) { return lattice(d, n, ZLattice(static_cast<Index>(d->r()) * n)); }
  static Module of(const FractionalIdeal& e) { return lattice(e.domain(), 1, e.lattice()); }

  Kind kind() const { return kind_; }
  const DomainPtr& domain() const { return dom_; }
  int n() const { return n_; }
  bool is_lattice() const { return kind_ == Kind::Lattice; }
  bool is_semilocal() const { return kind_ == Kind::Semilocal; }
  bool is_space() const { return kind_ == Kind::Space; }
  bool is_all() const { return is_space() && span_.rank() == span_.dim(); }
  bool is_zero() const;
  const ZLattice& lat() const { return lat_; }
  const QSubspace& span() const { return span_; }
  const std::vector<std::pair<PrimeIdeal, ZLattice>>& parts() const { return parts_; }

  std::optional<FractionalIdeal> as_ideal() const;

  bool contains(const RatVector& x) const;
  bool contains(const Module& o) const;
  bool operator==(const Module& o) const { return contains(o) && o.contains(*this); }
  bool operator!=(const Module& o) const { return !(*this == o); }

  Module scaled(const FieldElement& x) const;
  // Product with a ring lattice T in K (T-submodule generated).
  Module times_ring(const ZLattice& t) const;
  // M^k inside (K^n)^k.
  Module power(int k) const;
  // ∩_{P in delta} M D_P.
  Module localized(const std::vector<PrimeIdeal>& delta) const;
  // A lattice N with N D_P = M D_P for every P in the semilocal description.
  ZLattice representative() const;

  std::string str() const;

 private:
  Kind kind_ = Kind::Lattice;
  DomainPtr dom_;
  int n_ = 1;
  ZLattice lat_;
  QSubspace span_;
  std::vector<std::pair<PrimeIdeal, ZLattice>> parts_;
};

Module intersect(const Module& a, const Module& b);
// Exact sum when representable in the three kinds, else nullopt.
std::optional<Module> try_sum(const Module& a, const Module& b);

// G ∩ L D_P for lattices G, L in K^n with span(G) ⊆ span(L) = K-span.
ZLattice globalize(const OrderDomain& d, int n, const ZLattice& g, const PrimeIdeal& p, const ZLattice& l);
// L D_P ⊆ M D_P for lattices.
bool locally_contained(const OrderDomain& d, int n, const ZLattice& l, const ZLattice& m, const PrimeIdeal& p);

}  // namespace semistar

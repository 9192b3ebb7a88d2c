#pragma once

#include "semistar/module.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace semistar {

// Finitely generated D[X]-submodule of K[X].
//
// Degree-n slices are Z-lattices in K^{n+1} (coefficients of degrees 0..n).
// slice(n, B) spans X^i * theta * g with i + deg g <= n + B and keeps the
// degree <= n part; B is escalated until two consecutive values agree.
class PolyIdeal {
 public:
  PolyIdeal() = default;
  PolyIdeal(DomainPtr d, std::vector<Poly> gens);
  // E[X] for a fractional ideal E.
  static PolyIdeal extended(const FractionalIdeal& e);
  static PolyIdeal unit(DomainPtr d);

  const DomainPtr& domain() const { return dom_; }
  const std::vector<Poly>& generators() const { return gens_; }
  const Poly& gcd() const { return gcd_; }
  int max_degree() const;

  ZLattice slice(int n, int mult_cap) const;
  struct Slice {
    ZLattice lattice;
    int mult_cap = 0;
    bool stabilized = false;
  };
  Slice stable_slice(int n, int mult_cap) const;
  Module slice_module(int n, int mult_cap) const;
  bool contains(const Poly& f, int mult_cap) const;

  PolyIdeal scaled(const Poly& x) const;
  // Module generated over T[X] for a ring lattice T in K.
  PolyIdeal times_ring(const ZLattice& t) const;

  std::string str() const;

 private:
  DomainPtr dom_;
  std::vector<Poly> gens_;
  Poly gcd_;
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<int, int>, ZLattice> slices;
  };
  std::shared_ptr<Cache> cache_;
};

PolyIdeal operator*(const PolyIdeal& a, const PolyIdeal& b);
PolyIdeal operator+(const PolyIdeal& a, const PolyIdeal& b);
PolyIdeal poly_ideal_pow(const PolyIdeal& a, int k);

FractionalIdeal content(const DomainPtr& d, const Poly& f);
FractionalIdeal content(const PolyIdeal& a);

// c(f) c(g)^{m+1} == c(fg) c(g)^m with m = deg f.
bool dedekind_mertens_check(const DomainPtr& d, const Poly& f, const Poly& g);
// g1 + X^{deg g1 + 1} g2 + ...; its content is the sum of the contents.
Poly interleave(const std::vector<Poly>& gs);
// Sum over the generators and their interleavings of c(g)^r against (sum c(g))^r.
bool content_power_sum_check(const PolyIdeal& h, int r);

// Matrix of f -> p*f from degree <= n to degree <= n + deg p coordinates.
RatMatrix multiplication_matrix(const Poly& p, int n);
// {f in K^{n+1} : p f in M} for M in K^{n + deg p + 1}.
Module module_preimage(const Poly& p, int n, const Module& m);
// Image of M (in K^{n+1}) under multiplication by p.
Module module_image(const Poly& p, const Module& m);
// The K-subspace h*K[X] of degree <= n polynomials.
Module multiples_space(const DomainPtr& d, const Poly& h, int n);

class PolyPrime {
 public:
  enum class Kind { Extended, Upper, Composite };
  static PolyPrime extended(PrimeIdeal p);
  static PolyPrime upper(DomainPtr d, Poly f);
  static PolyPrime composite(PrimeIdeal p, Poly f);

  Kind kind() const { return kind_; }
  const DomainPtr& domain() const { return dom_; }
  const PrimeIdeal& prime() const { return p_; }
  const Poly& poly() const { return f_; }
  bool contains(const Poly& g) const;
  // Generators of a finitely generated D[X]-ideal with the same members where available.
  PolyIdeal ideal() const;
  std::string str() const;

 private:
  Kind kind_ = Kind::Extended;
  DomainPtr dom_;
  PrimeIdeal p_;
  Poly f_;
};

}  // namespace semistar

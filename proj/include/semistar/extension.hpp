#pragma once

#include "semistar/poly_ideal.hpp"
#include "semistar/semistar.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace semistar {

// Per-slice value of a D[X]-operation: slices[n] lives in K^{n+1}.
// `whole_field` marks the value K(X), which no slice can tell apart from K[X].
struct PolyValue {
  std::vector<Certified> slices;
  bool whole_field = false;
  BudgetRecord budget;
};

using PolyEval = std::function<PolyValue(const PolyIdeal&, const Budget&)>;
struct PolyOperation {
  std::string name;
  PolyEval eval;
  bool finite_type = false;
};

enum class OverringTag { K, D, O };
std::string to_string(OverringTag t);

// An overring of D[X] of the form R[X], R_P[X] or K[X].
struct PolyOverring {
  std::string name;
  ZLattice ring;
  std::optional<PrimeIdeal> local;
  bool field = false;
  static PolyOverring of_ring(std::string name, ZLattice ring);
  static PolyOverring localization(const DomainPtr& d, const PrimeIdeal& p);
  static PolyOverring whole(const DomainPtr& d);
};

// Certified value in K^n raised to (K^n)^k.
Certified power(const Certified& c, int k);

PolyValue blacktriangle(const SemistarOp& op, OverringTag t, const PolyIdeal& a, const Budget& b);
PolyValue curly_stable(const std::vector<PrimeIdeal>& delta, const PolyIdeal& a, const Budget& b);
PolyValue nagata(const std::vector<PrimeIdeal>& delta, const PolyIdeal& a, const Budget& b);
PolyValue wedge_overring_poly(const std::vector<PolyOverring>& ts, const PolyIdeal& a, const Budget& b);
// A O[X].
PolyValue b_extension(const PolyIdeal& a, const Budget& b);

PolyOperation identity_poly_op();
PolyOperation trivial_poly_op();
PolyOperation blacktriangle_op(const SemistarOp& op, OverringTag t = OverringTag::K);
PolyOperation curly_op(std::vector<PrimeIdeal> delta);
PolyOperation nagata_op(std::vector<PrimeIdeal> delta);
PolyOperation wedge_op(std::vector<PolyOverring> ts);
PolyOperation b_extension_op();

// (E[X])^op ∩ K from slice 0.
Certified contraction(const PolyOperation& op, const FractionalIdeal& e, const Budget& b);

enum class StrictVerdict { Strict, ExtensionOnly, Fails, Inconclusive };
std::string to_string(StrictVerdict v);
struct StrictReport {
  StrictVerdict verdict = StrictVerdict::Strict;
  std::optional<FractionalIdeal> witness;
  int witness_slice = -1;
};
StrictReport strict_extension_check(const PolyOperation& op, const SemistarOp& star,
                                    const std::vector<FractionalIdeal>& samples, int slice_cap, const Budget& b);

// Slice-wise inclusion a ⊆ b over all common slices.
Tri slices_included(const PolyValue& a, const PolyValue& b);

struct BCertificate {
  enum class Kind { Integral, NotIntegral, Unknown };
  Kind kind = Kind::Unknown;
  // f^k + a_1 f^{k-1} + ... + a_k = 0 with a_i in A^i.
  std::vector<Poly> equation;
  std::optional<Valuation> valuation;
  std::string str() const;
};
BCertificate b_membership_certificate(const PolyIdeal& a, const Poly& f, int max_deg, const Budget& b);

// ((E[X]H)^▲ : H^▲) ⊆ E^{op_a}[X] on slices.
Tri eab_extension_check(const SemistarOp& op, const PolyIdeal& h, const FractionalIdeal& e,
                        const std::vector<FractionalIdeal>& pool, const Budget& b);

struct PolyQMaxEntry {
  PolyPrime prime;
  Tri member = Tri::Unknown;
  bool certified = false;  // exclusion reproduced by a closed bracket
  std::string note;
};
std::vector<PolyQMaxEntry> classify_poly_qmax(const SemistarOp& op, const std::vector<PrimeIdeal>& pool_d,
                                              const std::vector<PolyPrime>& pool_poly, const Budget& b);

// Irreducible polynomials f_1, f_2, ... used by the strict family.
std::vector<Poly> family_polys(const Field& k, int count);
struct FamilySeparation {
  bool separated = false;
  Poly witness_den;  // the witness is 1/f_n
  bool in_larger = false, in_smaller = false;
  std::string str() const;
};
FamilySeparation strict_family_probe(const Field& k, int n, int m, int cap);
// op_1 <= op_2 <= ... <= ▲ on slices of a.
Tri family_chain_check(const SemistarOp& op, const PolyIdeal& a, int cap, const Budget& b);

struct ProbeReport {
  int probes = 0, escapes = 0, inconclusive = 0;
  std::optional<PolyIdeal> witness;
};
ProbeReport finite_type_failure_probe(const SemistarOp& op, int m, int count, const Budget& b);

}  // namespace semistar

#pragma once

#include "semistar/module.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace semistar {

struct Budget {
  int slice = 5;        // highest degree slice evaluated
  int mult_cap = 3;     // multiplier degree cap for slices
  int witness_deg = 4;  // numerator degree of witnesses
  int prime_norm = 30;  // prime pool bound
  std::uint64_t seed = 7;
};

// Ordered key/value notes describing what produced a value.
using BudgetRecord = std::vector<std::pair<std::string, std::string>>;

enum class Mode { Exact, LowerBound, UpperBound, Bracket };
enum class Tri { True, False, Unknown };
std::string to_string(Mode m);
std::string to_string(Tri t);

// Exact value or certified bounds; `lower` / `upper` absent means unknown.
class Certified {
 public:
  static Certified exact(Module m, BudgetRecord rec = {});
  static Certified lower_bound(Module lo, BudgetRecord rec = {});
  static Certified upper_bound(Module up, BudgetRecord rec = {});
  // Collapses to Exact when the bounds meet.
  static Certified bracket(Module lo, Module up, BudgetRecord rec = {});

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::Exact; }
  const std::optional<Module>& lower() const { return lo_; }
  const std::optional<Module>& upper() const { return up_; }
  const Module& value() const;
  const BudgetRecord& budget() const { return rec_; }
  void note(const std::string& k, const std::string& v) { rec_.emplace_back(k, v); }

  // Three-valued inclusion tests against an exact module.
  Tri contained_in(const Module& m) const;
  Tri contains(const Module& m) const;
  std::string str() const;

 private:
  Mode mode_ = Mode::Exact;
  std::optional<Module> lo_, up_;
  BudgetRecord rec_;
};

// Tri-valued "a ⊆ b" between certified values.
Tri included(const Certified& a, const Certified& b);

struct OpFlags {
  bool finite_type = true;
  bool stable = false;
  bool eab = false;
  bool star = false;  // D^op = D
};

class SemistarOp;
using ImportedEval = std::function<Certified(const FractionalIdeal&)>;

class SemistarOp {
 public:
  enum class Kind { Identity, Trivial, Divisorial, FiniteType, Overring, Spectral, Wedge, Stable, Eab, B, Imported };

  static SemistarOp identity(DomainPtr d);
  static SemistarOp trivial(DomainPtr d);
  static SemistarOp divisorial(DomainPtr d);
  static SemistarOp finite_type(const SemistarOp& s);
  static SemistarOp overring(DomainPtr d, ZLattice ring, std::string name);
  static SemistarOp spectral(DomainPtr d, std::vector<PrimeIdeal> delta);
  static SemistarOp wedge(std::vector<SemistarOp> ops);
  static SemistarOp stable(const SemistarOp& s, int prime_norm = 30);
  static SemistarOp eab(const SemistarOp& s, int prime_norm = 30);
  static SemistarOp eab(const SemistarOp& s, std::vector<FractionalIdeal> pool);
  static SemistarOp b(DomainPtr d);
  static SemistarOp imported(DomainPtr d, std::string name, OpFlags flags, ImportedEval eval);
  // d, e, v, t, w, b.
  static SemistarOp builtin(const std::string& name, DomainPtr d);

  Kind kind() const { return node_->kind; }
  const DomainPtr& domain() const { return node_->dom; }
  const std::string& name() const { return node_->name; }
  const OpFlags& flags() const { return node_->flags; }
  const std::vector<SemistarOp>& children() const { return node_->children; }
  const std::vector<PrimeIdeal>& delta() const { return node_->delta; }
  const ZLattice& ring() const { return node_->ring; }
  int prime_norm() const { return node_->prime_norm; }
  const std::vector<FractionalIdeal>& pool() const { return node_->pool; }
  const ImportedEval& imported_eval() const { return node_->imported; }

 private:
  struct Node {
    Kind kind = Kind::Identity;
    DomainPtr dom;
    std::string name;
    OpFlags flags;
    std::vector<SemistarOp> children;
    std::vector<PrimeIdeal> delta;
    ZLattice ring;
    int prime_norm = 30;
    std::vector<FractionalIdeal> pool;
    ImportedEval imported;
  };
  explicit SemistarOp(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static SemistarOp make(Node n);
  std::shared_ptr<const Node> node_;
};

Certified apply(const SemistarOp& op, const Module& e);
Certified apply(const SemistarOp& op, const FractionalIdeal& e);

// Default eab pool: D, primes up to the bound, and pairwise products.
std::vector<FractionalIdeal> default_eab_pool(const DomainPtr& d, int prime_norm);
Certified eab_approx(const SemistarOp& op, const FractionalIdeal& f, const std::vector<FractionalIdeal>& pool);

Tri quasi_ideal_test(const SemistarOp& op, const FractionalIdeal& i);

struct QMaxResult {
  std::vector<PrimeIdeal> members;
  std::vector<PrimeIdeal> unknown;
  int pool_bound = 0;
};
QMaxResult qmax(const SemistarOp& op, const std::vector<PrimeIdeal>& pool, int pool_bound);

enum class Relation { Less, Greater, Equal, Incomparable, Unknown };
std::string to_string(Relation r);
struct Comparison {
  Relation relation = Relation::Unknown;
  std::optional<FractionalIdeal> witness;  // sample separating the two
  int inconclusive = 0;
};
Comparison compare(const SemistarOp& a, const SemistarOp& b, const std::vector<FractionalIdeal>& samples);

// F^op ⊆ F V on every sample (V on K).
Tri is_star_valuation_overring(const Valuation& w, const SemistarOp& op, const std::vector<FractionalIdeal>& samples);

}  // namespace semistar

#include "doctest.h"
#include "semistar/lattice.hpp"

#include <algorithm>
#include <random>

using namespace semistar;

namespace {

RatVector vec(std::initializer_list<long> xs) {
  RatVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = Rational(x);
  return v;
}

RatMatrix random_gens(std::mt19937_64& rng, Index rows, Index dim) {
  std::uniform_int_distribution<int> c(-5, 5), d(1, 3);
  RatMatrix m(rows, dim);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < dim; ++j) m(i, j) = Rational(c(rng), d(rng));
  return m;
}

}  // namespace

TEST_CASE("sum of principal lattices in Z") {
  auto a = ZLattice::from_vectors(1, {vec({4})});
  auto b = ZLattice::from_vectors(1, {vec({6})});
  CHECK((a + b) == ZLattice::from_vectors(1, {vec({2})}));
  CHECK(intersect(a, b) == ZLattice::from_vectors(1, {vec({12})}));
  CHECK((a + a) == a);
  CHECK(intersect(a, a) == a);
}

TEST_CASE("HNF is independent of presentation") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    RatMatrix g = random_gens(rng, 3, 2);
    auto l = ZLattice::from_rows(g);
    RatMatrix shuffled = g;
    shuffled.row(0).swap(shuffled.row(2));
    RatMatrix aug(4, 2);
    aug << shuffled, (g.row(0) * Rational(3) - g.row(1)).eval();
    CHECK(ZLattice::from_rows(aug) == l);
    for (Index i = 0; i < g.rows(); ++i) CHECK(l.contains(RatVector(g.row(i))));
  }
}

TEST_CASE("intersection against a bounded search") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    auto a = ZLattice::from_rows(random_gens(rng, 2, 2));
    auto b = ZLattice::from_rows(random_gens(rng, 2, 2));
    auto c = intersect(a, b);
    for (int x = -12; x <= 12; ++x)
      for (int y = -12; y <= 12; ++y) {
        RatVector v(2);
        v << Rational(x, 2), Rational(y, 3);
        CHECK(c.contains(v) == (a.contains(v) && b.contains(v)));
      }
  }
}

TEST_CASE("preimage and subspace intersection") {
  RatMatrix phi(1, 2);
  phi << Rational(2), Rational(0);
  auto l = ZLattice::from_vectors(2, {vec({1, 0}), vec({0, 1})});
  auto p = preimage(phi, l);
  CHECK(p == ZLattice::from_vectors(1, {RatVector::Constant(1, Rational(1, 2))}));
  auto v = QSubspace::span(vec({1, 1}));
  auto m = ZLattice::from_vectors(2, {vec({2, 0}), vec({0, 3})});
  CHECK(intersect(m, v) == ZLattice::from_vectors(2, {vec({6, 6})}));
  auto big = ZLattice::from_vectors(2, {vec({1, 0}), vec({0, 1})});
  CHECK(m.index_in(big) == 6);
}

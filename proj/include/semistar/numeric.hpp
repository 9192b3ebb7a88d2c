#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>

namespace semistar {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Mat<BigInt>;
using RatMatrix = Mat<Rational>;
using IntVector = RowVec<BigInt>;
using RatVector = RowVec<Rational>;
using Index = Eigen::Index;

inline BigInt num(const Rational& q) { return mp::numerator(q); }
inline BigInt den(const Rational& q) { return mp::denominator(q); }

inline BigInt lcm_int(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return BigInt(0);
  return mp::abs(a / mp::gcd(a, b) * b);
}

// Floor division with a positive divisor.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Largest k with p^k | n, n != 0.
inline int valuation_int(BigInt n, const BigInt& p) {
  int k = 0;
  if (n == 0) return 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

inline bool is_prime_int(const BigInt& n) {
  if (n < 2) return false;
  for (BigInt d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const BigInt& z) { return z.str(); }

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Clears denominators of a rational matrix: returns (d, d*m) with d > 0 minimal.
inline std::pair<BigInt, IntMatrix> clear_denominators(const RatMatrix& m) {
  BigInt d = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) d = lcm_int(d, den(m(i, j)));
  IntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = num(m(i, j)) * (d / den(m(i, j)));
  return {d, out};
}

}  // namespace semistar

#pragma once

#include "semistar/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semistar {

// Q (m == 1) or Q(sqrt m) with m squarefree, m != 0, 1.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field quadratic(std::int64_t m);

  bool is_rational() const { return m_ == 1; }
  std::int64_t m() const { return m_; }
  int degree() const { return is_rational() ? 1 : 2; }
  bool operator==(const Field& o) const { return m_ == o.m_; }
  bool operator!=(const Field& o) const { return m_ != o.m_; }
  std::string str() const;

 private:
  explicit Field(std::int64_t m) : m_(m) {}
  std::int64_t m_ = 1;
};

bool is_squarefree(std::int64_t m);

// (a + b*sqrt m) / den with gcd(a, b, den) = 1 and den > 0.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(const Field& k) : field_(k) {}
  FieldElement(const Field& k, const Rational& a, const Rational& b = Rational(0));
  static FieldElement from_int(const Field& k, long v) { return FieldElement(k, Rational(v)); }
  static FieldElement sqrt_m(const Field& k);

  const Field& field() const { return field_; }
  Rational a() const { return Rational(na_, den_); }
  Rational b() const { return Rational(nb_, den_); }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return na_ == 0 && nb_ == 0; }
  bool is_one() const { return na_ == 1 && nb_ == 0 && den_ == 1; }
  bool is_rational() const { return nb_ == 0; }

  FieldElement conjugate() const;
  Rational norm() const;
  Rational trace() const;
  FieldElement inverse() const;

  // Coordinates w.r.t. {1} or {1, sqrt m}.
  std::vector<Rational> coords() const;
  static FieldElement from_coords(const Field& k, const Rational* c);

  // Matrix of y -> y * this on row coordinates.
  RatMatrix mult_matrix() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
  bool operator==(const FieldElement& y) const {
    return field_ == y.field_ && na_ == y.na_ && nb_ == y.nb_ && den_ == y.den_;
  }
  bool operator!=(const FieldElement& y) const { return !(*this == y); }
  bool operator<(const FieldElement& y) const;

  std::string str() const;
  static FieldElement parse(const Field& k, const std::string& text);

 private:
  void normalize();
  Field field_;
  BigInt na_ = 0, nb_ = 0, den_ = 1;
};

// Square root in K if it exists.
std::optional<FieldElement> sqrt_in_field(const FieldElement& x);

}  // namespace semistar

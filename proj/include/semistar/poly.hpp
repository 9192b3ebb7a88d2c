#pragma once

#include "semistar/field.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semistar {

// Univariate polynomial over K, coefficients indexed by degree, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field& k) : field_(k) {}
  Poly(const Field& k, std::vector<FieldElement> coeffs);
  static Poly constant(const FieldElement& c);
  static Poly monomial(const FieldElement& c, int k);
  static Poly x(const Field& k) { return monomial(FieldElement::from_int(k, 1), 1); }

  const Field& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(int i) const;
  FieldElement leading() const;

  Poly monic() const;
  Poly shifted(int k) const;  // times X^k
  Poly derivative() const;
  FieldElement eval(const FieldElement& x) const;

  Poly operator-() const;
  friend Poly operator+(const Poly& f, const Poly& g);
  friend Poly operator-(const Poly& f, const Poly& g);
  friend Poly operator*(const Poly& f, const Poly& g);
  friend Poly operator*(const FieldElement& c, const Poly& f);
  Poly& operator+=(const Poly& g) { return *this = *this + g; }
  bool operator==(const Poly& g) const { return field_ == g.field_ && c_ == g.c_; }
  bool operator!=(const Poly& g) const { return !(*this == g); }
  bool operator<(const Poly& g) const;

  // Row of length r*(n+1): coefficient coordinates of degrees 0..n.
  RatVector coefficient_vector(int n) const;
  static Poly from_coefficient_vector(const Field& k, const RatVector& v);

  std::string str() const;
  static Poly parse(const Field& k, const std::string& text);

 private:
  void trim();
  Field field_;
  std::vector<FieldElement> c_;
};

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);
bool divides(const Poly& g, const Poly& f);
Poly exact_div(const Poly& f, const Poly& g);
Poly poly_gcd(const Poly& f, const Poly& g);
Poly poly_pow(const Poly& f, int k);

// Text parser shared by elements and polynomials.
struct ParseError : std::runtime_error {
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
  int line, col;
};

}  // namespace semistar

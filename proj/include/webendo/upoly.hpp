#pragma once

// Exact univariate and bivariate polynomials over Q, used for gcd and
// square-free computations. Coefficients ascending; zero is the empty vector.

#include <vector>

#include "webendo/field.hpp"

namespace webendo {

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UPoly constant(const Rational& c) { return UPoly(std::vector<Rational>{c}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : Rational(0); }
  const Rational& lead() const { return c_.back(); }

  UPoly monic() const;
  Rational eval(const Rational& t) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

struct UDivRem {
  UPoly q, r;
};
UDivRem divrem(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

// Polynomials in x whose coefficients are polynomials in y.
using BPoly = std::vector<UPoly>;

void trim(BPoly& p);
// Monic gcd over Q[x, y] (leading coefficient in x, then y, equal to 1).
BPoly gcd(BPoly a, BPoly b);
// Exact quotient; returns false if b does not divide a.
bool divide_exact(const BPoly& a, const BPoly& b, BPoly& q);

}  // namespace webendo

#pragma once

// Binary forms in (a0, a1) and rational self-maps of P^1 built from them.
// Coefficient c[i] multiplies a0^(n-i) a1^i, so the affine parameter is
// a = a1/a0 and [0:1] is the point at infinity.

#include <array>
#include <string>
#include <vector>

#include "webendo/error.hpp"
#include "webendo/field.hpp"

namespace webendo {

template <Field F>
using P1Point = std::array<F, 2>;

template <Field F>
class BinForm {
 public:
  BinForm() : c_{F(0)} {}
  explicit BinForm(std::vector<F> c) : c_(std::move(c)) {
    if (c_.empty()) c_.push_back(F(0));
  }
  static BinForm zero(int n) { return BinForm(std::vector<F>(static_cast<std::size_t>(n + 1), F(0))); }
  static BinForm monomial(int n, int i, const F& c = F(1)) {
    BinForm b = zero(n);
    b.c_[static_cast<std::size_t>(i)] = c;
    return b;
  }
  // Affine polynomial sum p[i] t^i, homogenized to degree n (default deg p).
  static BinForm from_affine(const std::vector<F>& p, int n = -1) {
    if (n < 0) n = static_cast<int>(p.size()) - 1;
    BinForm b = zero(n);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (static_cast<int>(i) > n) {
        if (!FieldTraits<F>::is_zero(p[i], 0.0)) throw Error(ErrorKind::DegreeMismatch, "polynomial exceeds form degree");
        continue;
      }
      b.c_[i] = p[i];
    }
    return b;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<F>& coeffs() const { return c_; }
  F& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const F& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero(double tol = 0.0) const {
    for (const auto& x : c_)
      if (!FieldTraits<F>::is_zero(x, tol)) return false;
    return true;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& x : c_) s += magnitude(x) * magnitude(x);
    return std::sqrt(s);
  }

  F eval(const F& a0, const F& a1) const {
    const int n = degree();
    F s(0), p1(1);
    std::vector<F> p0(static_cast<std::size_t>(n + 1));
    p0[0] = F(1);
    for (int e = 1; e <= n; ++e) p0[static_cast<std::size_t>(e)] = p0[static_cast<std::size_t>(e - 1)] * a0;
    for (int i = 0; i <= n; ++i) {
      s += c_[static_cast<std::size_t>(i)] * p0[static_cast<std::size_t>(n - i)] * p1;
      p1 *= a1;
    }
    return s;
  }
  F eval(const P1Point<F>& a) const { return eval(a[0], a[1]); }

  // Partial derivatives in a0 and a1.
  BinForm d0() const {
    const int n = degree();
    if (n == 0) return zero(0);
    BinForm out = zero(n - 1);
    for (int i = 0; i < n; ++i) out.c_[static_cast<std::size_t>(i)] = FieldTraits<F>::from_int(n - i) * c_[static_cast<std::size_t>(i)];
    return out;
  }
  BinForm d1() const {
    const int n = degree();
    if (n == 0) return zero(0);
    BinForm out = zero(n - 1);
    for (int i = 1; i <= n; ++i) out.c_[static_cast<std::size_t>(i - 1)] = FieldTraits<F>::from_int(i) * c_[static_cast<std::size_t>(i)];
    return out;
  }

  BinForm& operator+=(const BinForm& o) {
    if (o.degree() != degree()) throw Error(ErrorKind::DegreeMismatch, "binary forms of unequal degree");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BinForm& operator-=(const BinForm& o) {
    if (o.degree() != degree()) throw Error(ErrorKind::DegreeMismatch, "binary forms of unequal degree");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BinForm& operator*=(const F& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend BinForm operator+(BinForm a, const BinForm& b) { return a += b; }
  friend BinForm operator-(BinForm a, const BinForm& b) { return a -= b; }
  friend BinForm operator*(BinForm a, const F& s) { return a *= s; }
  friend BinForm operator*(const F& s, BinForm a) { return a *= s; }
  friend BinForm operator*(const BinForm& a, const BinForm& b) {
    BinForm out = zero(a.degree() + b.degree());
    for (int i = 0; i <= a.degree(); ++i)
      for (int j = 0; j <= b.degree(); ++j) out.c_[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    return out;
  }
  friend bool operator==(const BinForm& a, const BinForm& b) { return a.c_ == b.c_; }

  BinForm<Complex> to_complex() const {
    std::vector<Complex> c;
    for (const auto& x : c_) c.push_back(webendo::to_complex(x));
    return BinForm<Complex>(std::move(c));
  }

 private:
  std::vector<F> c_;
};

// A root of a binary form. `point` is always filled in (unit norm); exact
// roots additionally carry their rational representative.
struct P1Root {
  P1Point<Complex> point;
  int multiplicity = 1;
  bool exact = false;
  P1Point<Rational> exact_point{Rational(0), Rational(0)};

  bool at_infinity(double tol = 1e-12) const { return std::abs(point[0]) <= tol; }
  Complex affine() const { return point[1] / point[0]; }
};

using Divisor1 = std::vector<P1Root>;

int divisor_degree(const Divisor1& d);

// Chordal distance on P^1.
double chordal_distance(const P1Point<Complex>& a, const P1Point<Complex>& b);

template <Field F>
P1Point<Complex> to_complex(const P1Point<F>& a) {
  return {webendo::to_complex(a[0]), webendo::to_complex(a[1])};
}

// Relative tolerance for grouping numerically coincident roots.
inline constexpr double kRootClusterTol = 1e-4;

std::vector<P1Root> binary_roots(const BinForm<Complex>& b, double cluster_tol = kRootClusterTol);
std::vector<P1Root> binary_roots(const BinForm<Rational>& b, double cluster_tol = kRootClusterTol);

// Greatest common divisor (exact), up to a constant factor.
BinForm<Rational> gcd(const BinForm<Rational>& a, const BinForm<Rational>& b);
// Exact quotient a / b; throws InvalidArgument when b does not divide a.
BinForm<Rational> divide_exact(const BinForm<Rational>& a, const BinForm<Rational>& b);

Rational resultant(const BinForm<Rational>& a, const BinForm<Rational>& b);
Complex resultant(const BinForm<Complex>& a, const BinForm<Complex>& b);

// phi sends [a0:a1] to [den(a) : num(a)], i.e. t -> num(t)/den(t).
template <Field F>
class RatMapP1 {
 public:
  RatMapP1(BinForm<F> num, BinForm<F> den);

  const BinForm<F>& num() const { return num_; }
  const BinForm<F>& den() const { return den_; }
  int degree() const { return num_.degree(); }

  P1Point<F> operator()(const P1Point<F>& a) const { return {den_.eval(a), num_.eval(a)}; }

  // N_{a0} D_{a1} - N_{a1} D_{a0}; its roots are the critical points.
  BinForm<F> wronskian() const { return num_.d0() * den_.d1() - num_.d1() * den_.d0(); }

  RatMapP1<Complex> to_complex() const { return RatMapP1<Complex>(num_.to_complex(), den_.to_complex()); }

  std::string to_string() const;

 private:
  BinForm<F> num_, den_;
};

// t -> c t^e with e = +-d.
RatMapP1<Rational> power_map(int e, const Rational& c = Rational(1));
// t -> p(t), coefficients ascending.
RatMapP1<Rational> polynomial_map(const std::vector<Rational>& p);

template <Field F>
Divisor1 crit_divisor(const RatMapP1<F>& phi) {
  return binary_roots(phi.wronskian());
}

std::string to_string(const P1Point<Complex>& a);

}  // namespace webendo

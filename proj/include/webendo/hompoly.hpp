#pragma once

// Dense homogeneous polynomials in three variables (x, y, z), or (u, v, w)
// when living in the dual plane. Coefficients are stored in graded-lex
// order with x > y > z: index 0 is x^n and increasing index means
// lexicographically smaller monomial.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "webendo/error.hpp"
#include "webendo/field.hpp"
#include "webendo/projgeom.hpp"

namespace webendo {

struct Exponent {
  int i, j, k;
};

inline int num_monomials(int n) { return n < 0 ? 0 : (n + 1) * (n + 2) / 2; }

// Position of x^i y^j z^(n-i-j).
inline int monomial_index(int n, int i, int j) {
  const int a = n - i;
  return a * (a + 1) / 2 + (a - j);
}

inline Exponent monomial_exponent(int n, int idx) {
  int a = 0;
  while ((a + 1) * (a + 2) / 2 <= idx) ++a;
  const int j = a - (idx - a * (a + 1) / 2);
  const int i = n - a;
  return {i, j, n - i - j};
}

template <Field F>
F ipow(const F& base, int e) {
  F r(1);
  for (int t = 0; t < e; ++t) r *= base;
  return r;
}

template <Field F>
class HomPoly3 {
 public:
  explicit HomPoly3(int degree = 0) : n_(degree), c_(static_cast<std::size_t>(num_monomials(degree)), F(0)) {
    if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
  }

  static HomPoly3 constant(const F& c) {
    HomPoly3 p(0);
    p.c_[0] = c;
    return p;
  }
  static HomPoly3 monomial(int i, int j, int k, const F& c = F(1)) {
    HomPoly3 p(i + j + k);
    p.at(i, j) = c;
    return p;
  }
  static HomPoly3 variable(int v) { return monomial(v == 0, v == 1, v == 2); }
  static HomPoly3 linear(const Coords<F>& l) {
    HomPoly3 p(1);
    p.at(1, 0) = l[0];
    p.at(0, 1) = l[1];
    p.at(0, 0) = l[2];
    return p;
  }

  int degree() const { return n_; }
  int size() const { return static_cast<int>(c_.size()); }
  const std::vector<F>& coeffs() const { return c_; }
  F& operator[](int idx) { return c_[static_cast<std::size_t>(idx)]; }
  const F& operator[](int idx) const { return c_[static_cast<std::size_t>(idx)]; }

  F& at(int i, int j) { return c_[static_cast<std::size_t>(monomial_index(n_, i, j))]; }
  F coeff(int i, int j, int k) const {
    if (i < 0 || j < 0 || k < 0 || i + j + k != n_) return F(0);
    return c_[static_cast<std::size_t>(monomial_index(n_, i, j))];
  }

  bool is_zero(double tol = 0.0) const {
    for (const auto& x : c_)
      if (!FieldTraits<F>::is_zero(x, tol)) return false;
    return true;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& x : c_) {
      const double m = magnitude(x);
      s += m * m;
    }
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : c_) m = std::max(m, magnitude(x));
    return m;
  }

  // Index of the lex-largest nonzero monomial, or -1.
  int leading_index(double tol = 0.0) const {
    for (int t = 0; t < size(); ++t)
      if (!FieldTraits<F>::is_zero(c_[static_cast<std::size_t>(t)], tol)) return t;
    return -1;
  }

  F eval(const Coords<F>& p) const {
    // Powers are small; a direct sum keeps the code obvious.
    std::vector<F> px(n_ + 1), py(n_ + 1), pz(n_ + 1);
    px[0] = py[0] = pz[0] = F(1);
    for (int e = 1; e <= n_; ++e) {
      px[e] = px[e - 1] * p[0];
      py[e] = py[e - 1] * p[1];
      pz[e] = pz[e - 1] * p[2];
    }
    F s(0);
    for (int t = 0; t < size(); ++t) {
      const auto& c = c_[static_cast<std::size_t>(t)];
      if (FieldTraits<F>::is_zero(c, 0.0)) continue;
      const Exponent e = monomial_exponent(n_, t);
      s += c * px[e.i] * py[e.j] * pz[e.k];
    }
    return s;
  }

  F eval(const ProjPoint<F>& p) const { return eval(canonical_coords(p.coords())); }

  HomPoly3 derivative(int var) const {
    if (n_ == 0) return HomPoly3(0);
    HomPoly3 out(n_ - 1);
    for (int t = 0; t < size(); ++t) {
      const Exponent e = monomial_exponent(n_, t);
      int ex[3] = {e.i, e.j, e.k};
      if (ex[var] == 0) continue;
      const F factor = FieldTraits<F>::from_int(ex[var]);
      --ex[var];
      out.at(ex[0], ex[1]) += factor * c_[static_cast<std::size_t>(t)];
    }
    return out;
  }

  HomPoly3& operator+=(const HomPoly3& o) {
    check_same_degree(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] += o.c_[t];
    return *this;
  }
  HomPoly3& operator-=(const HomPoly3& o) {
    check_same_degree(o);
    for (std::size_t t = 0; t < c_.size(); ++t) c_[t] -= o.c_[t];
    return *this;
  }
  HomPoly3& operator*=(const F& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend HomPoly3 operator+(HomPoly3 a, const HomPoly3& b) { return a += b; }
  friend HomPoly3 operator-(HomPoly3 a, const HomPoly3& b) { return a -= b; }
  friend HomPoly3 operator-(HomPoly3 a) { return a *= F(-1); }
  friend HomPoly3 operator*(HomPoly3 a, const F& s) { return a *= s; }
  friend HomPoly3 operator*(const F& s, HomPoly3 a) { return a *= s; }

  friend HomPoly3 operator*(const HomPoly3& a, const HomPoly3& b) {
    HomPoly3 out(a.n_ + b.n_);
    for (int s = 0; s < a.size(); ++s) {
      const F& ca = a.c_[static_cast<std::size_t>(s)];
      if (FieldTraits<F>::is_zero(ca, 0.0)) continue;
      const Exponent ea = monomial_exponent(a.n_, s);
      for (int t = 0; t < b.size(); ++t) {
        const F& cb = b.c_[static_cast<std::size_t>(t)];
        if (FieldTraits<F>::is_zero(cb, 0.0)) continue;
        const Exponent eb = monomial_exponent(b.n_, t);
        out.at(ea.i + eb.i, ea.j + eb.j) += ca * cb;
      }
    }
    return out;
  }

  friend bool operator==(const HomPoly3& a, const HomPoly3& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  HomPoly3 pow(int e) const {
    HomPoly3 r = constant(F(1));
    for (int t = 0; t < e; ++t) r = r * *this;
    return r;
  }

  // Substitute x -> p[0], y -> p[1], z -> p[2]; the p's share a degree.
  HomPoly3 compose(const std::array<HomPoly3, 3>& p) const {
    const int m = p[0].degree();
    if (p[1].degree() != m || p[2].degree() != m) throw Error(ErrorKind::DegreeMismatch, "compose: components of unequal degree");
    std::array<std::vector<HomPoly3>, 3> pw;
    for (int v = 0; v < 3; ++v) {
      pw[v].push_back(constant(F(1)));
      for (int e = 1; e <= n_; ++e) pw[v].push_back(pw[v].back() * p[v]);
    }
    HomPoly3 out(n_ * m);
    for (int t = 0; t < size(); ++t) {
      const F& c = c_[static_cast<std::size_t>(t)];
      if (FieldTraits<F>::is_zero(c, 0.0)) continue;
      const Exponent e = monomial_exponent(n_, t);
      out += c * (pw[0][e.i] * pw[1][e.j] * pw[2][e.k]);
    }
    return out;
  }

  // Scaled copy: exact polys get integer coprime coefficients with a
  // positive leading term; floating ones unit norm with a real positive
  // leading coefficient.
  HomPoly3 normalized() const;

  HomPoly3<Complex> to_complex() const {
    HomPoly3<Complex> out(n_);
    for (int t = 0; t < size(); ++t) out[t] = webendo::to_complex(c_[static_cast<std::size_t>(t)]);
    return out;
  }

  std::string to_string(const char* vars = "xyz") const;

 private:
  void check_same_degree(const HomPoly3& o) const {
    if (o.n_ != n_) throw Error(ErrorKind::DegreeMismatch, "degree mismatch in polynomial arithmetic");
  }

  int n_;
  std::vector<F> c_;
};

template <>
HomPoly3<Rational> HomPoly3<Rational>::normalized() const;
template <>
HomPoly3<Complex> HomPoly3<Complex>::normalized() const;

template <Field F>
bool proportional(const HomPoly3<F>& a, const HomPoly3<F>& b, double tol = kDefaultTol) {
  if (a.degree() != b.degree()) return false;
  const int la = a.leading_index(), lb = b.leading_index();
  if (la < 0 || lb < 0) return la == lb;
  if constexpr (is_exact_v<F>) {
    if (la != lb) return false;
    const Rational r = b[lb] / a[la];
    for (int t = 0; t < a.size(); ++t)
      if (a[t] * r != b[t]) return false;
    return true;
  } else {
    // Sine of the angle between the coefficient vectors.
    Complex inner = 0.0;
    for (int t = 0; t < a.size(); ++t) inner += std::conj(a[t]) * b[t];
    const double na = a.norm(), nb = b.norm();
    const double c = std::min(1.0, std::abs(inner) / (na * nb));
    return std::sqrt(std::max(0.0, 1.0 - c * c)) <= tol;
  }
}

// Relative residual of F at p: |F(p)| / (|F| |p|^deg) using unit p.
template <Field F>
double relative_value(const HomPoly3<F>& poly, const Coords<Complex>& p) {
  const HomPoly3<Complex> c = poly.to_complex();
  const double n = norm(p);
  Coords<Complex> u{p[0] / n, p[1] / n, p[2] / n};
  double l1 = 0.0;
  for (int t = 0; t < c.size(); ++t) l1 += std::abs(c[t]);
  if (l1 == 0.0) return 0.0;
  return std::abs(c.eval(u)) / l1;
}

}  // namespace webendo

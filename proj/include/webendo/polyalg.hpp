#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "webendo/binform.hpp"
#include "webendo/hompoly.hpp"
#include "webendo/linalg.hpp"
#include "webendo/projgeom.hpp"

namespace webendo {

// ---------------------------------------------------------------------------
// Plane endomorphisms

template <Field F>
class EndoP2 {
 public:
  // Throws DegreeMismatch for unequal degrees and CommonZero when the
  // components have a common projective zero (skipped if check_base_points
  // is false, e.g. when the caller has just verified it).
  EndoP2(std::array<HomPoly3<F>, 3> comps, bool check_base_points = true);

  int degree() const { return c_[0].degree(); }
  const std::array<HomPoly3<F>, 3>& components() const { return c_; }
  const HomPoly3<F>& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  Coords<F> operator()(const Coords<F>& p) const { return {c_[0].eval(p), c_[1].eval(p), c_[2].eval(p)}; }

  EndoP2<Complex> to_complex() const {
    return EndoP2<Complex>({c_[0].to_complex(), c_[1].to_complex(), c_[2].to_complex()}, false);
  }

  // Pullback of a curve: G o f.
  HomPoly3<F> pullback(const HomPoly3<F>& g) const { return g.compose(c_); }

  friend bool operator==(const EndoP2& a, const EndoP2& b) { return a.c_ == b.c_; }

 private:
  std::array<HomPoly3<F>, 3> c_;
};

// Variable scalings x_i -> s_i x_i fitted on log magnitudes so that the
// significant coefficients of all the polys come out of comparable size.
std::array<double, 3> balancing_scales(const std::vector<HomPoly3<Complex>>& polys);
HomPoly3<Complex> scale_variables(const HomPoly3<Complex>& p, const std::array<double, 3>& s);
// relative_value after balancing the variables of poly.
double balanced_value(const HomPoly3<Complex>& poly, const Coords<Complex>& p);

// True iff P, Q, R have no common zero in P^2: the multiplication map
// S_{2d-2}^3 -> S_{3d-2}, (A,B,C) -> AP + BQ + CR, is onto exactly then.
template <Field F>
bool base_point_free(const std::array<HomPoly3<F>, 3>& comps, double rel_tol = 1e-10);

template <Field F>
HomPoly3<F> jacobian_determinant(const EndoP2<F>& f);

// ---------------------------------------------------------------------------
// Restrictions and roots

template <Field F>
struct LineRestriction {
  BinForm<F> form;
  std::array<Coords<F>, 2> basis;  // parameter [a0:a1] -> a0*basis[0] + a1*basis[1]
  bool identically_zero = false;

  Coords<F> point(const F& a0, const F& a1) const {
    return {F(a0 * basis[0][0] + a1 * basis[1][0]), F(a0 * basis[0][1] + a1 * basis[1][1]), F(a0 * basis[0][2] + a1 * basis[1][2])};
  }
};

// Composition of a ternary form with a parameterization by binary forms.
template <Field F>
BinForm<F> substitute(const HomPoly3<F>& poly, const std::array<BinForm<F>, 3>& param);

template <Field F>
LineRestriction<F> restrict_to_line(const HomPoly3<F>& poly, const ProjLine<F>& l, double tol = 0.0);

// ---------------------------------------------------------------------------
// Division

template <Field F>
struct DivisionResult {
  HomPoly3<F> quotient;
  bool divides = false;
  double residual = 0.0;  // relative remainder norm (floating); 0 or 1 (exact)
};

inline constexpr double kDivisibilityTol = 1e-8;

DivisionResult<Rational> divide(const HomPoly3<Rational>& a, const HomPoly3<Rational>& b, double tol = 0.0);
DivisionResult<Complex> divide(const HomPoly3<Complex>& a, const HomPoly3<Complex>& b, double tol = kDivisibilityTol);

template <Field F>
struct LinearFactor {
  int multiplicity = 0;
  HomPoly3<F> quotient;
};

template <Field F>
LinearFactor<F> linear_factor_multiplicity(const HomPoly3<F>& poly, const ProjLine<F>& l, double tol = kDivisibilityTol);

HomPoly3<Rational> gcd(const HomPoly3<Rational>& a, const HomPoly3<Rational>& b);
// Product of the distinct irreducible factors, normalized. In the floating
// regime the input is assumed reduced and returned normalized.
HomPoly3<Rational> radical(const HomPoly3<Rational>& poly);
HomPoly3<Complex> radical(const HomPoly3<Complex>& poly);

// ---------------------------------------------------------------------------
// Power sums and symmetric reduction

// Polynomial in the elementary symmetric functions (e1, e2, e3), keyed by
// exponent triples. Weighted homogeneous with weights (1, 2, 3).
using SymPoly = std::map<std::array<int, 3>, Rational>;

SymPoly newton_power_sum(int d);
std::string to_string(const SymPoly& p);
// Substitutes e1 = x+y+z, e2 = xy+yz+zx, e3 = xyz; result has degree d.
HomPoly3<Rational> expand_elementary(const SymPoly& p, int d);
HomPoly3<Rational> power_sum(int d);

// Bihomogeneous form of bidegree (d, d): s(i, j) multiplies
// a0^(d-i) a1^i b0^(d-j) b1^j.
template <Field F>
class BiForm {
 public:
  explicit BiForm(int d) : d_(d), s_(static_cast<std::size_t>((d + 1) * (d + 1)), F(0)) {}
  int degree() const { return d_; }
  F& operator()(int i, int j) { return s_[static_cast<std::size_t>(i * (d_ + 1) + j)]; }
  const F& operator()(int i, int j) const { return s_[static_cast<std::size_t>(i * (d_ + 1) + j)]; }

  // A(a) B(b) + (optionally) A(b) B(a).
  static BiForm product(const BinForm<F>& a, const BinForm<F>& b) {
    BiForm out(a.degree());
    for (int i = 0; i <= a.degree(); ++i)
      for (int j = 0; j <= b.degree(); ++j) out(i, j) = a[i] * b[j];
    return out;
  }
  static BiForm symmetric_product(const BinForm<F>& a, const BinForm<F>& b) {
    BiForm out = product(a, b);
    BiForm sw = product(b, a);
    for (std::size_t t = 0; t < out.s_.size(); ++t) out.s_[t] += sw.s_[t];
    return out;
  }

  friend BiForm operator*(const BiForm& a, const BiForm& b) {
    BiForm out(a.d_ + b.d_);
    for (int i = 0; i <= a.d_; ++i)
      for (int j = 0; j <= a.d_; ++j) {
        if (FieldTraits<F>::is_zero(a(i, j), 0.0)) continue;
        for (int k = 0; k <= b.d_; ++k)
          for (int l = 0; l <= b.d_; ++l) out(i + k, j + l) += a(i, j) * b(k, l);
      }
    return out;
  }
  BiForm& operator-=(const BiForm& o) {
    for (std::size_t t = 0; t < s_.size(); ++t) s_[t] -= o.s_[t];
    return *this;
  }
  BiForm& operator*=(const F& c) {
    for (auto& x : s_) x *= c;
    return *this;
  }
  friend bool operator==(const BiForm& a, const BiForm& b) { return a.d_ == b.d_ && a.s_ == b.s_; }

  bool is_zero(double tol = 0.0) const {
    for (const auto& x : s_)
      if (!FieldTraits<F>::is_zero(x, tol)) return false;
    return true;
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : s_) m = std::max(m, magnitude(x));
    return m;
  }

 private:
  int d_;
  std::vector<F> s_;
};

// T(a0 b0, a0 b1 + a1 b0, a1 b1) as a bihomogeneous form.
template <Field F>
BiForm<F> expand_pi(const HomPoly3<F>& t);

// Inverse of expand_pi on symmetric forms. Throws NotSymmetric.
template <Field F>
HomPoly3<F> symmetric_reduce(const BiForm<F>& s, double tol = 0.0);

// ---------------------------------------------------------------------------
// Implicitization and interpolation

template <Field F>
struct Implicitization {
  HomPoly3<F> equation;
  int samples = 0;
  std::uint64_t seed = 0;
  double sigma_ratio = 0.0;       // sigma_min / sigma_max at the accepted degree (floating)
  double previous_ratio = 1.0;    // same at the degree below
  double heldout_residual = 0.0;  // max relative value at 50 fresh parameters, balanced coordinates
  bool exact = false;             // coefficients are exact and verified by substitution
  std::optional<HomPoly3<Rational>> rational = std::nullopt;
};

inline constexpr double kRankDropTol = 1e-10;

// Exact parameterizations are handled with exact linear algebra.
Implicitization<Rational> implicitize(const std::array<BinForm<Rational>, 3>& param, int dmax, std::uint64_t seed = 0);
// Floating: SVD rank drop, then an attempt to rationalize and verify.
Implicitization<Complex> implicitize(const std::array<BinForm<Complex>, 3>& param, int dmax, std::uint64_t seed = 0);
// Any sampler of points on the curve.
using CurveSampler = std::function<Coords<Complex>(std::mt19937_64&)>;
Implicitization<Complex> implicitize_sampled(const CurveSampler& sample, int dmax, std::uint64_t seed = 0);

struct Interpolation {
  EndoP2<Complex> map;
  double residual = 0.0;
  std::vector<double> singular_values;  // the three smallest, relative
};

inline constexpr double kInterpolationTol = 1e-6;

// Fits f of degree d with f(p_i) proportional to q_i.
Interpolation interpolate_endo(const std::vector<std::pair<Coords<Complex>, Coords<Complex>>>& samples, int d,
                               double tol = kInterpolationTol);

// Deterministic parameter draws shared by samplers: complex numbers of
// modulus in [0.5, 2] with uniform phase.
Complex random_parameter(std::mt19937_64& rng);
Coords<Complex> random_point(std::mt19937_64& rng);

}  // namespace webendo

#include "webendo/binform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "webendo/linalg.hpp"
#include "webendo/upoly.hpp"

namespace webendo {

int divisor_degree(const Divisor1& d) {
  int s = 0;
  for (const auto& r : d) s += r.multiplicity;
  return s;
}

double chordal_distance(const P1Point<Complex>& a, const P1Point<Complex>& b) {
  const double na = std::hypot(std::abs(a[0]), std::abs(a[1]));
  const double nb = std::hypot(std::abs(b[0]), std::abs(b[1]));
  return std::abs(a[0] * b[1] - a[1] * b[0]) / (na * nb);
}

std::string to_string(const P1Point<Complex>& a) {
  std::ostringstream os;
  if (std::abs(a[0]) < 1e-14 * std::abs(a[1])) return "inf";
  const Complex t = a[1] / a[0];
  os << t.real();
  if (t.imag() != 0.0) os << (t.imag() < 0 ? "" : "+") << t.imag() << "i";
  return os.str();
}

namespace {

P1Point<Complex> unit(Complex a0, Complex a1) {
  const double n = std::hypot(std::abs(a0), std::abs(a1));
  return {a0 / n, a1 / n};
}

// Evaluates p(t) = sum c[i] t^i and its first derivative.
void horner(const std::vector<Complex>& c, Complex t, Complex& p, Complex& dp) {
  p = 0.0;
  dp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * t + p;
    p = p * t + *it;
  }
}

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

// Newton polish of a root of multiplicity m, using the (m-1)-th derivative.
Complex polish(const std::vector<Complex>& c, Complex t, int m) {
  std::vector<Complex> q = c;
  for (int k = 1; k < m; ++k) q = derivative(q);
  const bool reversed = std::abs(t) > 1.0;
  std::vector<Complex> r = q;
  if (reversed) std::reverse(r.begin(), r.end());
  Complex s = reversed ? 1.0 / t : t;
  for (int it = 0; it < 8; ++it) {
    Complex p, dp;
    horner(r, s, p, dp);
    if (dp == 0.0) break;
    const Complex step = p / dp;
    if (!is_finite(step)) break;
    s -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(s))) break;
  }
  return reversed ? 1.0 / s : s;
}

std::vector<Complex> companion_roots(const std::vector<Complex>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace

std::vector<P1Root> binary_roots(const BinForm<Complex>& b, double cluster_tol) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroForm, "roots of the zero form");
  const int n = b.degree();
  int lo = 0, hi = n;
  while (b[lo] == 0.0) ++lo;
  while (b[hi] == 0.0) --hi;
  std::vector<P1Root> out;
  if (lo > 0) out.push_back({{1.0, 0.0}, lo, false, {}});
  if (hi < n) out.push_back({{0.0, 1.0}, n - hi, false, {}});
  std::vector<Complex> c(b.coeffs().begin() + lo, b.coeffs().begin() + hi + 1);
  std::vector<Complex> raw = companion_roots(c);
  for (auto& t : raw) t = polish(c, t, 1);

  // Greedy clustering by chordal distance.
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<Complex> members{raw[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      if (chordal_distance(unit(1.0, raw[i]), unit(1.0, raw[j])) < cluster_tol) {
        members.push_back(raw[j]);
        used[j] = true;
      }
    }
    Complex mean = 0.0;
    for (auto& m : members) mean += m;
    mean /= static_cast<double>(members.size());
    const int mult = static_cast<int>(members.size());
    const Complex t = polish(c, mean, mult);
    out.push_back({unit(1.0, is_finite(t) ? t : mean), mult, false, {}});
  }
  return out;
}

namespace {

UPoly affine_part(const BinForm<Rational>& b) { return UPoly(b.coeffs()); }

// Multiplicity of [0:1] as a root, i.e. the number of vanishing top coefficients.
int infinity_order(const BinForm<Rational>& b) {
  int k = 0;
  for (int i = b.degree(); i >= 0 && sgn(b[i]) == 0; --i) ++k;
  return k;
}

BinForm<Rational> homogenize(const UPoly& p, int n) {
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p.coeff(i);
  return BinForm<Rational>(std::move(c));
}

}  // namespace

std::vector<P1Root> binary_roots(const BinForm<Rational>& b, double cluster_tol) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroForm, "roots of the zero form");
  std::vector<P1Root> out;
  const int inf = infinity_order(b);
  if (inf > 0) out.push_back({{0.0, 1.0}, inf, true, {Rational(0), Rational(1)}});
  UPoly p = affine_part(b);
  int zero_mult = 0;
  while (p.degree() > 0 && sgn(p.coeff(0)) == 0) {
    p = divrem(p, UPoly({Rational(0), Rational(1)})).q;
    ++zero_mult;
  }
  if (zero_mult > 0) out.push_back({{1.0, 0.0}, zero_mult, true, {Rational(1), Rational(0)}});

  // Candidate rational roots come from the floating roots; each is confirmed
  // by exact evaluation before being divided out.
  if (p.degree() > 0) {
    const auto approx = binary_roots(homogenize(p, p.degree()).to_complex(), cluster_tol);
    for (const auto& r : approx) {
      const Complex t = r.affine();
      if (std::abs(t.imag()) > 1e-6 * std::max(1.0, std::abs(t))) continue;
      const auto q = rationalize(t.real(), 1000000, 1e-6 * std::max(1.0, std::abs(t)));
      if (!q) continue;
      int mult = 0;
      const UPoly lin({-*q, Rational(1)});
      while (p.degree() > 0 && sgn(p.eval(*q)) == 0) {
        p = divrem(p, lin).q;
        ++mult;
      }
      if (mult > 0) out.push_back({unit(1.0, q->get_d()), mult, true, {Rational(1), *q}});
    }
  }
  if (p.degree() > 0) {
    for (auto r : binary_roots(homogenize(p, p.degree()).to_complex(), cluster_tol)) {
      r.exact = false;
      out.push_back(r);
    }
  }
  return out;
}

BinForm<Rational> gcd(const BinForm<Rational>& a, const BinForm<Rational>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int inf = std::min(infinity_order(a), infinity_order(b));
  const UPoly g = gcd(affine_part(a), affine_part(b));
  return homogenize(g, g.degree() + inf);
}

BinForm<Rational> divide_exact(const BinForm<Rational>& a, const BinForm<Rational>& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroForm, "division by the zero form");
  const int ia = infinity_order(a), ib = infinity_order(b);
  const int n = a.degree() - b.degree();
  if (a.is_zero()) return BinForm<Rational>::zero(std::max(n, 0));
  if (n < 0 || ia < ib) throw Error(ErrorKind::InvalidArgument, "binary form does not divide");
  const UDivRem qr = divrem(affine_part(a), affine_part(b));
  if (!qr.r.is_zero()) throw Error(ErrorKind::InvalidArgument, "binary form does not divide");
  return homogenize(qr.q, n);
}

namespace {

template <Field F>
Matrix<F> sylvester(const BinForm<F>& a, const BinForm<F>& b) {
  const int m = a.degree(), n = b.degree();
  Matrix<F> s(static_cast<std::size_t>(m + n), static_cast<std::size_t>(m + n));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + i)) = a[i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s(static_cast<std::size_t>(n + r), static_cast<std::size_t>(r + i)) = b[i];
  return s;
}

}  // namespace

Rational resultant(const BinForm<Rational>& a, const BinForm<Rational>& b) { return determinant(sylvester(a, b)); }
Complex resultant(const BinForm<Complex>& a, const BinForm<Complex>& b) { return determinant(sylvester(a, b)); }

template <Field F>
RatMapP1<F>::RatMapP1(BinForm<F> num, BinForm<F> den) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.degree() != den_.degree()) throw Error(ErrorKind::DegreeMismatch, "numerator and denominator of unequal degree");
  if (num_.degree() < 1) throw Error(ErrorKind::InvalidArgument, "rational map of degree 0");
  const F res = resultant(num_, den_);
  if constexpr (is_exact_v<F>) {
    if (sgn(res) == 0) throw Error(ErrorKind::InvalidArgument, "numerator and denominator share a root");
  } else {
    const int d = degree();
    const double scale = std::pow(num_.norm(), d) * std::pow(den_.norm(), d);
    if (!(std::abs(res) > 1e-12 * scale)) throw Error(ErrorKind::InvalidArgument, "numerator and denominator (nearly) share a root");
  }
}

namespace {

template <Field F>
std::string affine_string(const BinForm<F>& b) {
  std::ostringstream os;
  bool first = true;
  for (int i = b.degree(); i >= 0; --i) {
    if (FieldTraits<F>::is_zero(b[i], 0.0)) continue;
    if (!first) os << " + ";
    first = false;
    if constexpr (is_exact_v<F>) {
      os << to_string(b[i]);
    } else {
      os << "(" << b[i].real() << (b[i].imag() < 0 ? "" : "+") << b[i].imag() << "i)";
    }
    if (i > 0) os << "*t";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

template <Field F>
std::string RatMapP1<F>::to_string() const {
  return "(" + affine_string(num_) + ") / (" + affine_string(den_) + ")";
}

template class RatMapP1<Rational>;
template class RatMapP1<Complex>;

RatMapP1<Rational> power_map(int e, const Rational& c) {
  if (e == 0) throw Error(ErrorKind::InvalidArgument, "power map with exponent 0");
  const int d = std::abs(e);
  if (e > 0) return RatMapP1<Rational>(BinForm<Rational>::monomial(d, d, c), BinForm<Rational>::monomial(d, 0));
  return RatMapP1<Rational>(BinForm<Rational>::monomial(d, 0, c), BinForm<Rational>::monomial(d, d));
}

RatMapP1<Rational> polynomial_map(const std::vector<Rational>& p) {
  std::vector<Rational> c = p;
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  if (c.size() < 2) throw Error(ErrorKind::InvalidArgument, "polynomial map of degree < 1");
  const int d = static_cast<int>(c.size()) - 1;
  return RatMapP1<Rational>(BinForm<Rational>::from_affine(c), BinForm<Rational>::monomial(d, 0));
}

}  // namespace webendo

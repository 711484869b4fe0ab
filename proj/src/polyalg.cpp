#include "webendo/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "webendo/upoly.hpp"

namespace webendo {

// ---------------------------------------------------------------------------
// EndoP2

template <Field F>
EndoP2<F>::EndoP2(std::array<HomPoly3<F>, 3> comps, bool check_base_points) : c_(std::move(comps)) {
  const int d = c_[0].degree();
  if (c_[1].degree() != d || c_[2].degree() != d) throw Error(ErrorKind::DegreeMismatch, "map components of unequal degree");
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "map of degree 0");
  if (check_base_points && !base_point_free(c_)) throw Error(ErrorKind::CommonZero, "components have a common zero");
}

std::array<double, 3> balancing_scales(const std::vector<HomPoly3<Complex>>& polys) {
  double big = 0.0;
  for (const auto& c : polys) big = std::max(big, c.max_abs());
  const std::size_t np = polys.size();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::size_t v = 0; v < np; ++v) {
    const int d = polys[v].degree();
    for (int t = 0; t < polys[v].size(); ++t) {
      const double a = std::abs(polys[v][t]);
      if (a <= 1e-13 * big) continue;
      const Exponent e = monomial_exponent(d, t);
      std::vector<double> r(3 + np, 0.0);
      r[0] = e.i;
      r[1] = e.j;
      r[2] = e.k;
      r[3 + v] = 1.0;
      rows.push_back(r);
      rhs.push_back(-std::log(a));
    }
  }
  if (rows.empty()) return {1.0, 1.0, 1.0};
  Matrix<Complex> m(rows.size(), 3 + np);
  std::vector<Complex> b(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < 3 + np; ++j) m(i, j) = rows[i][j];
  const auto x = least_squares(m, b);
  // only ratios matter; pin the geometric mean to one
  const double mean = (x[0].real() + x[1].real() + x[2].real()) / 3.0;
  return {std::exp(x[0].real() - mean), std::exp(x[1].real() - mean), std::exp(x[2].real() - mean)};
}

HomPoly3<Complex> scale_variables(const HomPoly3<Complex>& p, const std::array<double, 3>& s) {
  HomPoly3<Complex> out = p;
  const int d = p.degree();
  for (int t = 0; t < out.size(); ++t) {
    const Exponent e = monomial_exponent(d, t);
    out[t] *= std::pow(s[0], e.i) * std::pow(s[1], e.j) * std::pow(s[2], e.k);
  }
  return out;
}

double balanced_value(const HomPoly3<Complex>& poly, const Coords<Complex>& p) {
  const auto s = balancing_scales({poly});
  return relative_value(scale_variables(poly, s), Coords<Complex>{p[0] / s[0], p[1] / s[1], p[2] / s[2]});
}

namespace {

// Diagonal rescaling of the variables so that the significant coefficients
// are all of order one. It does not move base points but keeps the Macaulay
// test well conditioned.
std::array<HomPoly3<Complex>, 3> equilibrate(std::array<HomPoly3<Complex>, 3> comps) {
  const auto s = balancing_scales({comps[0], comps[1], comps[2]});
  for (auto& c : comps) c = scale_variables(c, s);
  return comps;
}

}  // namespace

template <Field F>
bool base_point_free(const std::array<HomPoly3<F>, 3>& input, double rel_tol) {
  const int d = input[0].degree();
  for (const auto& c : input)
    if (c.is_zero()) return false;
  std::array<HomPoly3<F>, 3> comps = input;
  if constexpr (!is_exact_v<F>) comps = equilibrate(input);
  const int src = 2 * d - 2, dst = 3 * d - 2;
  const int ns = num_monomials(src), nd = num_monomials(dst);
  Matrix<F> m(static_cast<std::size_t>(nd), static_cast<std::size_t>(3 * ns));
  for (int v = 0; v < 3; ++v) {
    HomPoly3<F> p = comps[static_cast<std::size_t>(v)];
    if constexpr (!is_exact_v<F>) p *= Complex(1.0 / p.norm());
    for (int s = 0; s < ns; ++s) {
      const Exponent e = monomial_exponent(src, s);
      for (int t = 0; t < p.size(); ++t) {
        if (FieldTraits<F>::is_zero(p[t], 0.0)) continue;
        const Exponent f = monomial_exponent(d, t);
        m(static_cast<std::size_t>(monomial_index(dst, e.i + f.i, e.j + f.j)), static_cast<std::size_t>(v * ns + s)) += p[t];
      }
    }
  }
  return kernel(m, rel_tol).rank == static_cast<std::size_t>(nd);
}

template <Field F>
HomPoly3<F> jacobian_determinant(const EndoP2<F>& f) {
  std::array<std::array<HomPoly3<F>, 3>, 3> a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a[r][c] = f[r].derivative(c);
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

// ---------------------------------------------------------------------------
// Restriction

template <Field F>
BinForm<F> substitute(const HomPoly3<F>& poly, const std::array<BinForm<F>, 3>& param) {
  const int n = poly.degree();
  const int m = param[0].degree();
  std::array<std::vector<BinForm<F>>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    pw[v].push_back(BinForm<F>(std::vector<F>{F(1)}));
    for (int e = 1; e <= n; ++e) pw[v].push_back(pw[v].back() * param[static_cast<std::size_t>(v)]);
  }
  BinForm<F> out = BinForm<F>::zero(n * m);
  for (int t = 0; t < poly.size(); ++t) {
    if (FieldTraits<F>::is_zero(poly[t], 0.0)) continue;
    const Exponent e = monomial_exponent(n, t);
    out += poly[t] * (pw[0][e.i] * pw[1][e.j] * pw[2][e.k]);
  }
  return out;
}

template <Field F>
LineRestriction<F> restrict_to_line(const HomPoly3<F>& poly, const ProjLine<F>& l, double tol) {
  LineRestriction<F> out;
  out.basis = line_basis(l.coords());
  std::array<BinForm<F>, 3> param;
  for (int v = 0; v < 3; ++v)
    param[static_cast<std::size_t>(v)] = BinForm<F>(std::vector<F>{out.basis[0][static_cast<std::size_t>(v)], out.basis[1][static_cast<std::size_t>(v)]});
  out.form = substitute(poly, param);
  out.identically_zero = out.form.is_zero(tol * std::max(1.0, poly.norm()));
  return out;
}

// ---------------------------------------------------------------------------
// Division

DivisionResult<Rational> divide(const HomPoly3<Rational>& a, const HomPoly3<Rational>& b, double) {
  const int lb = b.leading_index();
  if (lb < 0) throw Error(ErrorKind::ZeroForm, "division by the zero polynomial");
  const int dq = a.degree() - b.degree();
  DivisionResult<Rational> out{HomPoly3<Rational>(std::max(dq, 0)), false, 1.0};
  if (dq < 0) {
    out.divides = a.is_zero();
    out.residual = out.divides ? 0.0 : 1.0;
    return out;
  }
  const Exponent eb = monomial_exponent(b.degree(), lb);
  const Rational inv = 1 / b[lb];
  HomPoly3<Rational> r = a;
  // Lex-leading terms strictly decrease, so this terminates.
  for (int lr = r.leading_index(); lr >= 0; lr = r.leading_index()) {
    const Exponent er = monomial_exponent(r.degree(), lr);
    if (er.i < eb.i || er.j < eb.j || er.k < eb.k) return out;
    const Rational c = r[lr] * inv;
    const HomPoly3<Rational> mono = HomPoly3<Rational>::monomial(er.i - eb.i, er.j - eb.j, er.k - eb.k, c);
    out.quotient += mono;
    r -= mono * b;
  }
  out.divides = true;
  out.residual = 0.0;
  return out;
}

DivisionResult<Complex> divide(const HomPoly3<Complex>& a, const HomPoly3<Complex>& b, double tol) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroForm, "division by the zero polynomial");
  const int dq = a.degree() - b.degree();
  if (dq < 0) {
    const bool z = a.is_zero();
    return {HomPoly3<Complex>(0), z, z ? 0.0 : 1.0};
  }
  const int nq = num_monomials(dq);
  Matrix<Complex> m(static_cast<std::size_t>(a.size()), static_cast<std::size_t>(nq));
  for (int q = 0; q < nq; ++q) {
    const Exponent eq = monomial_exponent(dq, q);
    for (int t = 0; t < b.size(); ++t) {
      if (b[t] == 0.0) continue;
      const Exponent et = monomial_exponent(b.degree(), t);
      m(static_cast<std::size_t>(monomial_index(a.degree(), eq.i + et.i, eq.j + et.j)), static_cast<std::size_t>(q)) += b[t];
    }
  }
  const std::vector<Complex> x = least_squares(m, a.coeffs());
  HomPoly3<Complex> quot(dq);
  for (int q = 0; q < nq; ++q) quot[q] = x[static_cast<std::size_t>(q)];
  const HomPoly3<Complex> rem = a - quot * b;
  const double an = a.norm();
  const double res = an == 0.0 ? 0.0 : rem.norm() / an;
  return {quot, res < tol, res};
}

template <Field F>
LinearFactor<F> linear_factor_multiplicity(const HomPoly3<F>& poly, const ProjLine<F>& l, double tol) {
  if (poly.is_zero()) throw Error(ErrorKind::ZeroForm, "linear factors of the zero polynomial");
  const HomPoly3<F> lin = HomPoly3<F>::linear(l.coords());
  LinearFactor<F> out{0, poly};
  while (out.quotient.degree() > 0) {
    auto r = divide(out.quotient, lin, tol);
    if (!r.divides) break;
    ++out.multiplicity;
    out.quotient = std::move(r.quotient);
  }
  return out;
}

namespace {

int z_order(const HomPoly3<Rational>& p) {
  int order = p.degree();
  for (int t = 0; t < p.size(); ++t)
    if (sgn(p[t]) != 0) order = std::min(order, monomial_exponent(p.degree(), t).k);
  return order;
}

BPoly dehomogenize(const HomPoly3<Rational>& p) {
  const int n = p.degree();
  BPoly out(static_cast<std::size_t>(n + 1));
  std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(n + 1));
  for (int t = 0; t < p.size(); ++t) {
    if (sgn(p[t]) == 0) continue;
    const Exponent e = monomial_exponent(n, t);
    auto& row = rows[static_cast<std::size_t>(e.i)];
    if (static_cast<int>(row.size()) <= e.j) row.resize(static_cast<std::size_t>(e.j + 1), Rational(0));
    row[static_cast<std::size_t>(e.j)] = p[t];
  }
  for (int i = 0; i <= n; ++i) out[static_cast<std::size_t>(i)] = UPoly(rows[static_cast<std::size_t>(i)]);
  trim(out);
  return out;
}

HomPoly3<Rational> homogenize(const BPoly& p, int zpow) {
  int deg = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p[i].is_zero()) deg = std::max(deg, static_cast<int>(i) + p[i].degree());
  HomPoly3<Rational> out(deg + zpow);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j <= p[i].degree(); ++j) out.at(static_cast<int>(i), j) = p[i].coeff(j);
  return out;
}

}  // namespace

HomPoly3<Rational> gcd(const HomPoly3<Rational>& a, const HomPoly3<Rational>& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const int za = z_order(a), zb = z_order(b);
  // Dividing out z^k keeps the dehomogenization faithful.
  const auto strip = [](const HomPoly3<Rational>& p, int k) {
    HomPoly3<Rational> out(p.degree() - k);
    for (int t = 0; t < p.size(); ++t) {
      if (sgn(p[t]) == 0) continue;
      const Exponent e = monomial_exponent(p.degree(), t);
      out.at(e.i, e.j) = p[t];
    }
    return out;
  };
  const BPoly g = gcd(dehomogenize(strip(a, za)), dehomogenize(strip(b, zb)));
  return homogenize(g, std::min(za, zb)).normalized();
}

HomPoly3<Rational> radical(const HomPoly3<Rational>& poly) {
  if (poly.is_zero()) throw Error(ErrorKind::ZeroForm, "radical of the zero polynomial");
  if (poly.degree() == 0) return HomPoly3<Rational>::constant(Rational(1));
  // By Euler's relation gcd(F_x, F_y, F_z) already divides F, and in
  // characteristic 0 it is the product of p^(e-1) over factors p^e of F.
  HomPoly3<Rational> g = gcd(gcd(poly.derivative(0), poly.derivative(1)), poly.derivative(2));
  const auto r = divide(poly, g);
  if (!r.divides) throw Error(ErrorKind::InvalidArgument, "radical: internal division failure");
  return r.quotient.normalized();
}

HomPoly3<Complex> radical(const HomPoly3<Complex>& poly) {
  if (poly.is_zero()) throw Error(ErrorKind::ZeroForm, "radical of the zero polynomial");
  return poly.normalized();
}

// ---------------------------------------------------------------------------
// Power sums

namespace {

SymPoly times_elementary(const SymPoly& p, int k, const Rational& c) {
  SymPoly out;
  for (const auto& [e, v] : p) {
    auto f = e;
    ++f[static_cast<std::size_t>(k)];
    out[f] += c * v;
  }
  return out;
}

void accumulate(SymPoly& acc, const SymPoly& p) {
  for (const auto& [e, v] : p) {
    acc[e] += v;
    if (sgn(acc[e]) == 0) acc.erase(e);
  }
}

}  // namespace

SymPoly newton_power_sum(int d) {
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "negative power sum index");
  std::vector<SymPoly> a(static_cast<std::size_t>(std::max(d, 2) + 1));
  a[0] = {{{0, 0, 0}, Rational(3)}};
  a[1] = {{{1, 0, 0}, Rational(1)}};
  a[2] = {{{2, 0, 0}, Rational(1)}, {{0, 1, 0}, Rational(-2)}};
  for (int k = 3; k <= d; ++k) {
    SymPoly s;
    accumulate(s, times_elementary(a[static_cast<std::size_t>(k - 1)], 0, Rational(1)));
    accumulate(s, times_elementary(a[static_cast<std::size_t>(k - 2)], 1, Rational(-1)));
    accumulate(s, times_elementary(a[static_cast<std::size_t>(k - 3)], 2, Rational(1)));
    a[static_cast<std::size_t>(k)] = std::move(s);
  }
  return a[static_cast<std::size_t>(d)];
}

std::string to_string(const SymPoly& p) {
  std::ostringstream os;
  bool first = true;
  // Highest power of e1 first.
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [e, v] = *it;
    const bool neg = sgn(v) < 0;
    const Rational mag = neg ? Rational(-v) : v;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono;
    for (int k = 0; k < 3; ++k) {
      if (e[static_cast<std::size_t>(k)] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "e" + std::to_string(k + 1);
      if (e[static_cast<std::size_t>(k)] > 1) mono += "^" + std::to_string(e[static_cast<std::size_t>(k)]);
    }
    if (mono.empty()) {
      os << to_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << to_string(mag) << "*" << mono;
    }
  }
  if (first) os << "0";
  return os.str();
}

HomPoly3<Rational> expand_elementary(const SymPoly& p, int d) {
  using P = HomPoly3<Rational>;
  const P x = P::variable(0), y = P::variable(1), z = P::variable(2);
  const std::array<P, 3> e{x + y + z, x * y + y * z + z * x, x * y * z};
  P out(d);
  for (const auto& [ex, v] : p) {
    if (ex[0] + 2 * ex[1] + 3 * ex[2] != d) throw Error(ErrorKind::DegreeMismatch, "term of wrong weight");
    out += v * (e[0].pow(ex[0]) * e[1].pow(ex[1]) * e[2].pow(ex[2]));
  }
  return out;
}

HomPoly3<Rational> power_sum(int d) {
  using P = HomPoly3<Rational>;
  return P::monomial(d, 0, 0) + P::monomial(0, d, 0) + P::monomial(0, 0, d);
}

// ---------------------------------------------------------------------------
// Symmetric reduction

namespace {

template <Field F>
class PiPowers {
 public:
  explicit PiPowers(int d) {
    BiForm<F> s0(1), s1(1), s2(1);
    s0(0, 0) = F(1);
    s1(0, 1) = F(1);
    s1(1, 0) = F(1);
    s2(1, 1) = F(1);
    const BiForm<F> base[3] = {s0, s1, s2};
    for (int v = 0; v < 3; ++v) {
      BiForm<F> one(0);
      one(0, 0) = F(1);
      pw_[v].push_back(one);
      for (int e = 1; e <= d; ++e) pw_[v].push_back(pw_[v].back() * base[v]);
    }
  }
  BiForm<F> monomial(int a, int b, int c) const { return pw_[0][static_cast<std::size_t>(a)] * pw_[1][static_cast<std::size_t>(b)] * pw_[2][static_cast<std::size_t>(c)]; }

 private:
  std::array<std::vector<BiForm<F>>, 3> pw_;
};

}  // namespace

template <Field F>
BiForm<F> expand_pi(const HomPoly3<F>& t) {
  const int d = t.degree();
  const PiPowers<F> pw(d);
  BiForm<F> out(d);
  for (int m = 0; m < t.size(); ++m) {
    if (FieldTraits<F>::is_zero(t[m], 0.0)) continue;
    const Exponent e = monomial_exponent(d, m);
    BiForm<F> term = pw.monomial(e.i, e.j, e.k);
    term *= F(-t[m]);
    out -= term;
  }
  return out;
}

template <Field F>
HomPoly3<F> symmetric_reduce(const BiForm<F>& s, double tol) {
  const int d = s.degree();
  const double scale = std::max(1.0, s.max_abs());
  for (int i = 0; i <= d; ++i)
    for (int j = 0; j < i; ++j)
      if (!FieldTraits<F>::is_zero(F(s(i, j) - s(j, i)), tol * scale)) throw Error(ErrorKind::NotSymmetric, "bihomogeneous form is not symmetric");
  const PiPowers<F> pw(d);
  BiForm<F> r = s;
  HomPoly3<F> out(d);
  // The expansion of s0^(d-i) s1^(i-j) s2^j has leading entries (i, j) and
  // (j, i) with coefficient 1; all its other entries have both indices
  // strictly between j and i, so sweeping i downwards eliminates everything.
  for (int i = d; i >= 0; --i) {
    for (int j = i; j >= 0; --j) {
      const F c = r(i, j);
      if (FieldTraits<F>::is_zero(c, 0.0)) continue;
      out.at(d - i, i - j) += c;
      BiForm<F> term = pw.monomial(d - i, i - j, j);
      term *= c;
      r -= term;
    }
  }
  if (!r.is_zero(tol * scale)) throw Error(ErrorKind::NotSymmetric, "symmetric reduction left a remainder");
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

Complex random_parameter(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::exp((2.0 * u(rng) - 1.0) * std::log(2.0));
  const double th = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, th);
}

Coords<Complex> random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Coords<Complex> p;
  for (auto& x : p) x = Complex(g(rng), g(rng));
  const double n = norm(p);
  for (auto& x : p) x /= n;
  return p;
}

// ---------------------------------------------------------------------------
// Implicitization

namespace {

template <Field F>
std::vector<F> monomial_values(int deg, const Coords<F>& p) {
  std::vector<F> out(static_cast<std::size_t>(num_monomials(deg)));
  for (int t = 0; t < num_monomials(deg); ++t) {
    const Exponent e = monomial_exponent(deg, t);
    out[static_cast<std::size_t>(t)] = ipow(p[0], e.i) * ipow(p[1], e.j) * ipow(p[2], e.k);
  }
  return out;
}

template <Field F>
Coords<F> eval_param(const std::array<BinForm<F>, 3>& param, const F& a0, const F& a1) {
  return {param[0].eval(a0, a1), param[1].eval(a0, a1), param[2].eval(a0, a1)};
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-60, 60), den(1, 13);
  return make_rational(num(rng), den(rng));
}

// Divide by the largest coefficient and round each to a nearby fraction.
std::optional<HomPoly3<Rational>> rationalize_poly(const HomPoly3<Complex>& p) {
  int big = 0;
  for (int t = 1; t < p.size(); ++t)
    if (std::abs(p[t]) > std::abs(p[big])) big = t;
  if (std::abs(p[big]) == 0.0) return std::nullopt;
  HomPoly3<Rational> out(p.degree());
  for (int t = 0; t < p.size(); ++t) {
    const Complex c = p[t] / p[big];
    if (std::abs(c.imag()) > 1e-8) return std::nullopt;
    const auto q = rationalize(c.real(), 1000000, 1e-8);
    if (!q) return std::nullopt;
    out[t] = *q;
  }
  return out.normalized();
}

std::optional<std::array<BinForm<Rational>, 3>> rationalize_param(const std::array<BinForm<Complex>, 3>& param) {
  std::array<BinForm<Rational>, 3> out;
  for (int v = 0; v < 3; ++v) {
    std::vector<Rational> c;
    for (const auto& x : param[static_cast<std::size_t>(v)].coeffs()) {
      if (x.imag() != 0.0) return std::nullopt;
      const auto q = rationalize(x.real(), 1000000, 1e-14 * std::max(1.0, std::abs(x.real())));
      if (!q) return std::nullopt;
      c.push_back(*q);
    }
    out[static_cast<std::size_t>(v)] = BinForm<Rational>(std::move(c));
  }
  return out;
}

}  // namespace

Implicitization<Rational> implicitize(const std::array<BinForm<Rational>, 3>& param, int dmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int deg = 1; deg <= dmax; ++deg) {
    const int n = num_monomials(deg);
    const int samples = 2 * n + 10;
    Matrix<Rational> m(static_cast<std::size_t>(samples), static_cast<std::size_t>(n));
    for (int s = 0; s < samples; ++s) {
      const auto row = monomial_values(deg, eval_param(param, Rational(1), random_rational(rng)));
      for (int t = 0; t < n; ++t) m(static_cast<std::size_t>(s), static_cast<std::size_t>(t)) = row[static_cast<std::size_t>(t)];
    }
    const Kernel<Rational> k = kernel(m);
    if (k.basis.empty()) continue;
    HomPoly3<Rational> eq(deg);
    for (int t = 0; t < n; ++t) eq[t] = k.basis[0][static_cast<std::size_t>(t)];
    eq = eq.normalized();
    Implicitization<Rational> out{.equation = eq, .samples = samples, .seed = seed};
    out.sigma_ratio = 0.0;
    out.exact = substitute(eq, param).is_zero();
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const Coords<Rational> p = eval_param(param, Rational(1), random_rational(rng));
      Coords<Complex> pc{to_complex(p[0]), to_complex(p[1]), to_complex(p[2])};
      if (norm(pc) == 0.0) continue;
      worst = std::max(worst, sgn(eq.eval(p)) == 0 ? 0.0 : relative_value(eq, pc));
    }
    out.heldout_residual = worst;
    out.rational = eq;
    return out;
  }
  throw Error(ErrorKind::NoCurveFound, "no curve of degree <= " + std::to_string(dmax) + " through the parameterization");
}

Implicitization<Complex> implicitize_sampled(const CurveSampler& sample, int dmax, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double prev = 1.0;
  for (int deg = 1; deg <= dmax; ++deg) {
    const int n = num_monomials(deg);
    const int samples = 2 * n + 10;
    Matrix<Complex> m(static_cast<std::size_t>(samples), static_cast<std::size_t>(n));
    for (int s = 0; s < samples; ++s) {
      Coords<Complex> p = sample(rng);
      const double pn = norm(p);
      for (auto& x : p) x /= pn;
      const auto row = monomial_values(deg, p);
      for (int t = 0; t < n; ++t) m(static_cast<std::size_t>(s), static_cast<std::size_t>(t)) = row[static_cast<std::size_t>(t)];
    }
    const Kernel<Complex> k = kernel(m, kRankDropTol);
    const double ratio = k.singular_values[static_cast<std::size_t>(n - 1)] / k.singular_values[0];
    if (ratio >= kRankDropTol) {
      prev = ratio;
      continue;
    }
    HomPoly3<Complex> eq(deg);
    const auto& v = k.basis.back();
    for (int t = 0; t < n; ++t) eq[t] = v[static_cast<std::size_t>(t)];
    // Refit with the variables rescaled so that the coefficients are
    // comparable; small coefficients are otherwise lost in the SVD.
    const auto sc = balancing_scales({eq});
    const auto into = [&sc](Coords<Complex> p) {
      for (std::size_t i = 0; i < 3; ++i) p[i] /= sc[i];
      const double pn = norm(p);
      for (auto& x : p) x /= pn;
      return p;
    };
    Matrix<Complex> mb(static_cast<std::size_t>(samples), static_cast<std::size_t>(n));
    for (int s = 0; s < samples; ++s) {
      const auto row = monomial_values(deg, into(sample(rng)));
      for (int t = 0; t < n; ++t) mb(static_cast<std::size_t>(s), static_cast<std::size_t>(t)) = row[static_cast<std::size_t>(t)];
    }
    const Kernel<Complex> kb = kernel(mb, kRankDropTol);
    HomPoly3<Complex> balanced(deg);
    for (int t = 0; t < n; ++t) balanced[t] = kb.basis.back()[static_cast<std::size_t>(t)];
    eq = scale_variables(balanced, {1.0 / sc[0], 1.0 / sc[1], 1.0 / sc[2]}).normalized();
    Implicitization<Complex> out{.equation = eq, .samples = samples, .seed = seed};
    out.sigma_ratio = ratio;
    out.previous_ratio = prev;
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) worst = std::max(worst, relative_value(balanced, into(sample(rng))));
    out.heldout_residual = worst;
    return out;
  }
  throw Error(ErrorKind::NoCurveFound, "no curve of degree <= " + std::to_string(dmax) + " fits the samples");
}

Implicitization<Complex> implicitize(const std::array<BinForm<Complex>, 3>& param, int dmax, std::uint64_t seed) {
  const CurveSampler sampler = [&param](std::mt19937_64& rng) {
    return eval_param(param, Complex(1.0), random_parameter(rng));
  };
  Implicitization<Complex> out = implicitize_sampled(sampler, dmax, seed);
  // Exactness is only claimed after substituting an exact parameterization.
  const auto q = rationalize_poly(out.equation);
  const auto qp = rationalize_param(param);
  if (q && qp && substitute(*q, *qp).is_zero()) {
    out.rational = q;
    out.exact = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interpolation

Interpolation interpolate_endo(const std::vector<std::pair<Coords<Complex>, Coords<Complex>>>& samples, int d, double tol) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "interpolation degree must be >= 1");
  const int n = num_monomials(d);
  if (static_cast<int>(samples.size()) * 2 < 3 * n - 1)
    throw Error(ErrorKind::RankDeficient, "too few samples for degree " + std::to_string(d));
  Matrix<Complex> m(3 * samples.size(), static_cast<std::size_t>(3 * n));
  std::vector<std::vector<Complex>> mons;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Coords<Complex> p = samples[s].first, q = samples[s].second;
    const double pn = norm(p), qn = norm(q);
    for (auto& x : p) x /= pn;
    for (auto& x : q) x /= qn;
    const auto mv = monomial_values(d, p);
    mons.push_back(mv);
    // Row r of q x f(p): q[r+1] f[r+2](p) - q[r+2] f[r+1](p).
    for (int r = 0; r < 3; ++r) {
      const int a = (r + 1) % 3, b = (r + 2) % 3;
      for (int t = 0; t < n; ++t) {
        m(3 * s + static_cast<std::size_t>(r), static_cast<std::size_t>(b * n + t)) += q[static_cast<std::size_t>(a)] * mv[static_cast<std::size_t>(t)];
        m(3 * s + static_cast<std::size_t>(r), static_cast<std::size_t>(a * n + t)) -= q[static_cast<std::size_t>(b)] * mv[static_cast<std::size_t>(t)];
      }
    }
  }
  const Kernel<Complex> k = kernel(m, kRankDropTol);
  if (k.basis.size() > 1) throw Error(ErrorKind::RankDeficient, "samples do not determine a unique map (nullity " + std::to_string(k.basis.size()) + ")");
  // With no numerical kernel the smallest singular vector is the best fit.
  const std::vector<Complex> v = k.basis.empty() ? kernel(m, 2.0).basis.back() : k.basis.back();
  std::array<HomPoly3<Complex>, 3> comps{HomPoly3<Complex>(d), HomPoly3<Complex>(d), HomPoly3<Complex>(d)};
  double big = 0.0;
  Complex phase = 1.0;
  for (int c = 0; c < 3 * n; ++c)
    if (std::abs(v[static_cast<std::size_t>(c)]) > big) {
      big = std::abs(v[static_cast<std::size_t>(c)]);
      phase = v[static_cast<std::size_t>(c)];
    }
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < n; ++t) {
      Complex x = v[static_cast<std::size_t>(c * n + t)] / phase;
      if (std::abs(x) < 1e-14) x = 0.0;
      comps[static_cast<std::size_t>(c)][t] = x;
    }
  double residual = 0.0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Coords<Complex> fp;
    for (int c = 0; c < 3; ++c) {
      Complex acc = 0.0;
      for (int t = 0; t < n; ++t) acc += comps[static_cast<std::size_t>(c)][t] * mons[s][static_cast<std::size_t>(t)];
      fp[static_cast<std::size_t>(c)] = acc;
    }
    const double fn = norm(fp);
    residual = std::max(residual, fn == 0.0 ? 1.0 : chordal_distance(fp, samples[s].second));
  }
  if (!(residual < tol)) throw Error(ErrorKind::ResidualTooLarge, "interpolation residual " + std::to_string(residual));
  for (auto& c : comps)
    if (c.is_zero()) throw Error(ErrorKind::RankDeficient, "interpolated component vanishes");
  std::vector<double> tail;
  const auto& sv = k.singular_values;
  for (std::size_t i = sv.size() >= 3 ? sv.size() - 3 : 0; i < sv.size(); ++i) tail.push_back(sv[i] / sv[0]);
  return {EndoP2<Complex>(comps), residual, tail};
}

// ---------------------------------------------------------------------------
// Instantiations

template class EndoP2<Rational>;
template class EndoP2<Complex>;
template bool base_point_free(const std::array<HomPoly3<Rational>, 3>&, double);
template bool base_point_free(const std::array<HomPoly3<Complex>, 3>&, double);
template HomPoly3<Rational> jacobian_determinant(const EndoP2<Rational>&);
template HomPoly3<Complex> jacobian_determinant(const EndoP2<Complex>&);
template BinForm<Rational> substitute(const HomPoly3<Rational>&, const std::array<BinForm<Rational>, 3>&);
template BinForm<Complex> substitute(const HomPoly3<Complex>&, const std::array<BinForm<Complex>, 3>&);
template LineRestriction<Rational> restrict_to_line(const HomPoly3<Rational>&, const ProjLine<Rational>&, double);
template LineRestriction<Complex> restrict_to_line(const HomPoly3<Complex>&, const ProjLine<Complex>&, double);
template LinearFactor<Rational> linear_factor_multiplicity(const HomPoly3<Rational>&, const ProjLine<Rational>&, double);
template LinearFactor<Complex> linear_factor_multiplicity(const HomPoly3<Complex>&, const ProjLine<Complex>&, double);
template BiForm<Rational> expand_pi(const HomPoly3<Rational>&);
template BiForm<Complex> expand_pi(const HomPoly3<Complex>&);
template HomPoly3<Rational> symmetric_reduce(const BiForm<Rational>&, double);
template HomPoly3<Complex> symmetric_reduce(const BiForm<Complex>&, double);

}  // namespace webendo

#include "webendo/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace webendo {

namespace {

constexpr double kPi = std::numbers::pi;

long divisor_power_sum(long n, int k) {
  long s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      long p = 1;
      for (int e = 0; e < k; ++e) p *= d;
      s += p;
    }
  return s;
}

Complex inv_sin2(Complex w) {
  const Complex s = std::sin(kPi * w);
  return kPi * kPi / (s * s);
}

}  // namespace

Lattice::Lattice(Complex tau) : tau_(tau) {
  if (!(tau.imag() > 0.0) || !is_finite(tau)) throw Error(ErrorKind::InvalidArgument, "lattice parameter must have positive imaginary part");
  // Rows z + n tau contribute ~ exp(-2 pi |n| Im tau).
  rows_ = std::min(2000, static_cast<int>(std::ceil(6.5 / tau.imag())) + 2);

  const Complex q = std::exp(Complex(0.0, 2.0 * kPi) * tau);
  Complex s3 = 0.0, s5 = 0.0, qn = 1.0;
  for (long n = 1; n < 400; ++n) {
    qn *= q;
    if (std::abs(qn) * static_cast<double>(n * n * n * n * n * n) < 1e-20) break;
    s3 += static_cast<double>(divisor_power_sum(n, 3)) * qn;
    s5 += static_cast<double>(divisor_power_sum(n, 5)) * qn;
  }
  const double pi4 = std::pow(kPi, 4), pi6 = std::pow(kPi, 6);
  g2_ = (4.0 * pi4 / 3.0) * (1.0 + 240.0 * s3);
  g3_ = (8.0 * pi6 / 27.0) * (1.0 - 504.0 * s5);
  const Complex disc = g2_ * g2_ * g2_ - 27.0 * g3_ * g3_;
  if (!(std::abs(disc) > 1e-10 * (std::pow(std::abs(g2_), 3) + 27.0 * std::norm(g3_))))
    throw Error(ErrorKind::InvalidArgument, "degenerate lattice");

  // wp(z) = sum_n pi^2 / sin^2(pi (z + n tau)) - G2.
  g2_row_constant_ = kPi * kPi / 3.0;
  for (int n = 1; n <= rows_; ++n) g2_row_constant_ += 2.0 * inv_sin2(static_cast<double>(n) * tau_);

  using P = HomPoly3<Complex>;
  cubic_ = P::monomial(0, 2, 1) - P::monomial(3, 0, 0, 4.0) + P::monomial(1, 0, 2, g2_) + P::monomial(0, 0, 3, g3_);

  constexpr int kGrid = 64;
  grid_.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const Complex z = (i + 0.5) / kGrid + (j + 0.5) / kGrid * tau_;
      grid_.emplace_back(z, embed(z));
    }
}

std::array<double, 2> Lattice::coords(Complex z) const {
  const double b = z.imag() / tau_.imag();
  return {z.real() - b * tau_.real(), b};
}

TorusPoint Lattice::reduce(Complex z) const {
  auto [a, b] = coords(z);
  a -= std::floor(a);
  b -= std::floor(b);
  if (a >= 1.0) a = 0.0;
  if (b >= 1.0) b = 0.0;
  return {a + b * tau_};
}

double Lattice::lattice_distance(Complex z) const {
  auto [a, b] = coords(z);
  a -= std::round(a);
  b -= std::round(b);
  return std::max(std::fabs(a), std::fabs(b));
}

WpValue Lattice::wp(Complex z) const {
  if (in_lattice(z, 1e-14)) throw Error(ErrorKind::AtOrigin, "wp evaluated at a lattice point");
  // Centre z in the period parallelogram for fast row convergence.
  auto [a, b] = coords(z);
  a -= std::round(a);
  b -= std::round(b);
  const Complex w = a + b * tau_;
  Complex p = -g2_row_constant_, dp = 0.0;
  for (int n = -rows_; n <= rows_; ++n) {
    const Complex arg = kPi * (w + static_cast<double>(n) * tau_);
    const Complex s = std::sin(arg), c = std::cos(arg);
    p += kPi * kPi / (s * s);
    dp += -2.0 * kPi * kPi * kPi * c / (s * s * s);
  }
  return {p, dp};
}

Complex Lattice::wp2(Complex z) const {
  const Complex p = wp(z).p;
  return 6.0 * p * p - g2_ / 2.0;
}

Coords<Complex> Lattice::embed(Complex z) const {
  if (in_lattice(z, 1e-13)) return {0.0, 1.0, 0.0};
  const WpValue v = wp(z);
  Coords<Complex> c{v.p, v.dp, 1.0};
  const double n = norm(c);
  for (auto& x : c) x /= n;
  return c;
}

Coords<Complex> Lattice::tangent_dual(Complex z) const {
  const Coords<Complex> c = embed(z);
  Coords<Complex> g{cubic_.derivative(0).eval(c), cubic_.derivative(1).eval(c), cubic_.derivative(2).eval(c)};
  const double n = norm(g);
  for (auto& x : g) x /= n;
  return g;
}

TorusPoint Lattice::log(const Coords<Complex>& input) const {
  const double cn = norm(input);
  if (cn == 0.0) throw Error(ErrorKind::InvalidArgument, "zero coordinates");
  Coords<Complex> c{input[0] / cn, input[1] / cn, input[2] / cn};
  if (relative_value(cubic_, c) > 1e-6) throw Error(ErrorKind::NotOnCurve, "point is not on the Weierstrass cubic");
  if (std::abs(c[0]) < 1e-14 && std::abs(c[2]) < 1e-14) return {0.0};

  std::vector<std::pair<double, Complex>> starts;
  starts.reserve(grid_.size());
  for (const auto& [z, e] : grid_) starts.emplace_back(chordal_distance(e, c), z);
  std::partial_sort(starts.begin(), starts.begin() + 6, starts.end(),
                    [](const auto& x, const auto& y) { return x.first < y.first; });

  double best_res = 1e300;
  Complex best = 0.0;
  for (int s = 0; s < 6; ++s) {
    Complex z = starts[static_cast<std::size_t>(s)].second;
    for (int it = 0; it < 80; ++it) {
      if (in_lattice(z, 1e-12)) break;
      const WpValue v = wp(z);
      const Complex ddp = 6.0 * v.p * v.p - g2_ / 2.0;
      Complex h, dh, target;
      // Near the flex at infinity solve wp/wp' = u/v; otherwise use whichever
      // of wp, wp' is better conditioned at this point.
      if (std::abs(c[2]) < 1e-3 * std::abs(c[1])) {
        target = c[0] / c[1];
        h = v.p / v.dp;
        dh = (v.dp * v.dp - v.p * ddp) / (v.dp * v.dp);
      } else {
        const Complex u = c[0] / c[2], w = c[1] / c[2];
        if (std::abs(v.dp) / std::max(1.0, std::abs(u)) >= std::abs(ddp) / std::max(1.0, std::abs(w))) {
          h = v.p;
          dh = v.dp;
          target = u;
        } else {
          h = v.dp;
          dh = ddp;
          target = w;
        }
      }
      Complex dz = (h - target) / dh;
      if (!is_finite(dz)) break;
      if (std::abs(dz) > 0.1) dz *= 0.1 / std::abs(dz);
      z = reduce(z - dz).z;
      if (std::abs(dz) < 1e-15) break;
    }
    for (const Complex zz : {z, reduce(-z).z}) {
      const double r = chordal_distance(embed(zz), c);
      if (r < best_res) {
        best_res = r;
        best = zz;
      }
    }
    if (best_res < 1e-11) break;
  }
  if (best_res > 1e-8) throw Error(ErrorKind::NotOnCurve, "elliptic logarithm did not converge");
  return reduce(best);
}

std::vector<TorusPoint> Lattice::flexes() const {
  std::vector<TorusPoint> out;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) out.push_back(reduce((static_cast<double>(j) + static_cast<double>(k) * tau_) / 3.0));
  return out;
}

std::array<Complex, 2> eisenstein_disk_sum(Complex tau, double radius) {
  Complex g4 = 0.0, g6 = 0.0;
  const int r = static_cast<int>(std::ceil(radius / std::min(1.0, tau.imag()))) + 1;
  for (int m = -r; m <= r; ++m)
    for (int n = -r; n <= r; ++n) {
      if (m == 0 && n == 0) continue;
      const Complex w = static_cast<double>(m) + static_cast<double>(n) * tau;
      if (std::abs(w) > radius) continue;
      const Complex w2 = w * w;
      g4 += 1.0 / (w2 * w2);
      g6 += 1.0 / (w2 * w2 * w2);
    }
  return {60.0 * g4, 140.0 * g6};
}

CollinearSum collinear_sum_check(const Lattice& lattice, Complex z1, Complex z2, Complex z3) {
  const auto e1 = lattice.embed(z1), e2 = lattice.embed(z2), e3 = lattice.embed(z3);
  if (chordal_distance(e1, e2) < 1e-9 || chordal_distance(e1, e3) < 1e-9 || chordal_distance(e2, e3) < 1e-9)
    throw Error(ErrorKind::DegenerateTriple, "embedded points are not pairwise distinct");
  return {lattice.in_lattice(z1 + z2 + z3), std::abs(det3(e1, e2, e3))};
}

EllipticEndo make_elliptic_endo(const Lattice& lattice, int m, int flex_index) {
  if (std::abs(m) < 2) throw Error(ErrorKind::InvalidArgument, "multiplier must satisfy |m| >= 2");
  if (flex_index < 0 || flex_index > 8) throw Error(ErrorKind::InvalidArgument, "flex index must be in 0..8");
  return {m, lattice.flexes()[static_cast<std::size_t>(flex_index)].z, flex_index};
}

TorusPoint endo_apply(const Lattice& lattice, const EllipticEndo& g, Complex z) {
  return lattice.reduce(static_cast<double>(g.m) * z + g.t);
}

std::vector<TorusPoint> endo_preimages(const Lattice& lattice, const EllipticEndo& g, Complex w) {
  std::vector<TorusPoint> out;
  const int m = std::abs(g.m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      out.push_back(lattice.reduce((w - g.t + static_cast<double>(j) + static_cast<double>(k) * lattice.tau()) / static_cast<double>(g.m)));
  return out;
}

}  // namespace webendo

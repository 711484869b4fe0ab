#include "doctest.h"

#include <random>

#include "webendo/polyalg.hpp"

using namespace webendo;
using P = HomPoly3<Rational>;

static Rational q(long n, long d = 1) { return make_rational(n, d); }
static const P X = P::variable(0), Y = P::variable(1), Z = P::variable(2);

TEST_CASE("monomial indexing is graded lex") {
  for (int n = 0; n < 7; ++n)
    for (int t = 0; t < num_monomials(n); ++t) {
      const Exponent e = monomial_exponent(n, t);
      CHECK(e.i + e.j + e.k == n);
      CHECK(monomial_index(n, e.i, e.j) == t);
    }
  CHECK(monomial_exponent(3, 0).i == 3);
  CHECK(monomial_exponent(3, 1).j == 1);
}

TEST_CASE("evaluate") {
  CHECK(P(X + Y + Z).eval(ProjPoint<Rational>(q(1), q(1), q(1))) == 3);
  const P cubic = X.pow(3) + Y.pow(3) - X * Y * Z;
  for (long a = -4; a <= 4; ++a) {
    const Rational t = q(a, 3);
    CHECK(cubic.eval(Coords<Rational>{Rational(-t * t), t, Rational(t * t * t - 1)}) == 0);
  }
}

TEST_CASE("restriction to lines") {
  const P conic = X * Y - Z * Z;
  auto r = restrict_to_line(conic, ProjLine<Rational>(q(0), q(1), q(0)));
  const auto roots = binary_roots(r.form);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].multiplicity == 2);
  const auto p = r.point(roots[0].exact_point[0], roots[0].exact_point[1]);
  CHECK(ProjPoint<Rational>(p) == ProjPoint<Rational>(q(1), q(0), q(0)));

  // Generic line through the node [0:0:1] of u^3 + v^3 - uvw.
  const P nodal = X.pow(3) + Y.pow(3) - X * Y * Z;
  r = restrict_to_line(nodal, ProjLine<Rational>(q(2), q(-3), q(0)));
  const auto rr = binary_roots(r.form);
  int distinct = static_cast<int>(rr.size());
  int node_mult = 0;
  for (const auto& root : rr) {
    const auto pt = r.point(root.exact_point[0], root.exact_point[1]);
    if (root.exact && ProjPoint<Rational>(pt) == ProjPoint<Rational>(q(0), q(0), q(1))) node_mult = root.multiplicity;
  }
  CHECK(distinct == 2);
  CHECK(node_mult == 2);

  r = restrict_to_line(X * Y, ProjLine<Rational>(q(1), q(0), q(0)));
  CHECK(r.identically_zero);
}

TEST_CASE("binary roots") {
  // t^2 - 1
  auto roots = binary_roots(BinForm<Rational>({q(-1), q(0), q(1)}));
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(r.exact);
    CHECK(abs(r.exact_point[1] / r.exact_point[0]) == 1);
  }
  roots = binary_roots(BinForm<Rational>({q(0), q(0), q(0), q(5)}));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].multiplicity == 3);
  CHECK(roots[0].exact_point[1] == 0);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> planted;
    BinForm<Complex> b(std::vector<Complex>{1.0});
    for (int k = 0; k < 6; ++k) {
      planted.emplace_back(g(rng), g(rng));
      b = b * BinForm<Complex>({-planted.back(), 1.0});
    }
    const auto found = binary_roots(b);
    CHECK(divisor_degree(found) == 6);
    for (const auto& t : planted) {
      double best = 1e9;
      for (const auto& r : found) best = std::min(best, std::abs(r.affine() - t));
      CHECK(best < 1e-8);
    }
  }
  CHECK_THROWS(binary_roots(BinForm<Complex>({0.0, 0.0})));
}

TEST_CASE("linear factor multiplicity") {
  auto r = linear_factor_multiplicity(P(Z * (X * Y - Z * Z)), ProjLine<Rational>(q(0), q(0), q(1)));
  CHECK(r.multiplicity == 1);
  CHECK(r.quotient == X * Y - Z * Z);
  r = linear_factor_multiplicity(P((X + Y).pow(3)), ProjLine<Rational>(q(1), q(1), q(0)));
  CHECK(r.multiplicity == 3);
  CHECK(r.quotient == P::constant(q(1)));
  r = linear_factor_multiplicity(P(X * Y - Z * Z), ProjLine<Rational>(q(1), q(0), q(0)));
  CHECK(r.multiplicity == 0);

  const auto c = linear_factor_multiplicity(P(Z * Z * (X * Y - Z * Z)).to_complex(), ProjLine<Complex>(0.0, 0.0, 1.0));
  CHECK(c.multiplicity == 2);
}

TEST_CASE("jacobians") {
  const EndoP2<Rational> f2({X * X - q(2) * Y * Z, Y * Y - q(2) * X * Z, Z * Z});
  const P j = jacobian_determinant(f2);
  CHECK(j.degree() == 3);
  CHECK(j == q(8) * Z * (X * Y - Z * Z));
  for (int d = 2; d <= 4; ++d) {
    const EndoP2<Rational> m({X.pow(d), Y.pow(d), Z.pow(d)});
    CHECK(proportional(jacobian_determinant(m), P((X * Y * Z).pow(d - 1))));
  }
  const EndoP2<Rational> ueda({X * X, Y * Y - q(2) * X * Z, Z * Z});
  const P ju = jacobian_determinant(ueda);
  CHECK(ju.degree() == 3);
  CHECK(ju == q(8) * X * Y * Z);
  CHECK(linear_factor_multiplicity(ju, ProjLine<Rational>(q(0), q(1), q(0))).multiplicity == 1);
}

TEST_CASE("base point freeness") {
  CHECK(base_point_free(std::array<P, 3>{X * X, Y * Y, Z * Z}));
  CHECK_FALSE(base_point_free(std::array<P, 3>{X * X, X * X, Z * Z}));
  CHECK_FALSE(base_point_free(std::array<P, 3>{X * X, X * Y, Z * Z + X * Y}));
  CHECK(base_point_free(std::array<P, 3>{X * X, Y * Y, Z * Z + X * Y}));
  CHECK_THROWS_AS(EndoP2<Rational>({X * X, X * X, Z * Z}), Error);
  CHECK(base_point_free(std::array<HomPoly3<Complex>, 3>{X.to_complex(), Y.to_complex(), Z.to_complex()}));
}

TEST_CASE("critical divisors") {
  for (int d = 2; d <= 5; ++d) {
    const auto div = crit_divisor(power_map(d));
    CHECK(divisor_degree(div) == 2 * d - 2);
    REQUIRE(div.size() == 2);
    for (const auto& r : div) {
      CHECK(r.multiplicity == d - 1);
      CHECK((sgn(r.exact_point[0]) == 0 || sgn(r.exact_point[1]) == 0));
    }
  }
  const auto quad = crit_divisor(polynomial_map({q(-3), q(0), q(1)}));
  CHECK(divisor_degree(quad) == 2);
  CHECK(quad.size() == 2);

  // Random cubic: compare against zeros of a finite-difference derivative.
  const RatMapP1<Rational> phi(BinForm<Rational>({q(1), q(-2), q(0), q(3)}), BinForm<Rational>({q(2), q(1), q(1), q(-1)}));
  const auto div = crit_divisor(phi);
  CHECK(divisor_degree(div) == 4);
  for (const auto& r : div) {
    if (r.at_infinity()) continue;
    const Complex t = r.affine();
    auto val = [&](Complex s) {
      const auto c = phi.to_complex();
      return c.num().eval(1.0, s) / c.den().eval(1.0, s);
    };
    const double h = 1e-5;
    const Complex deriv = (val(t + h) - val(t - h)) / (2 * h);
    CHECK(std::abs(deriv) < 1e-5 * std::max(1.0, std::abs(val(t + 1e-2) - val(t)) / 1e-2));
  }
}

TEST_CASE("newton power sums") {
  CHECK(to_string(newton_power_sum(1)) == "e1");
  CHECK(to_string(newton_power_sum(2)) == "e1^2 - 2*e2");
  const SymPoly a3 = newton_power_sum(3);
  CHECK(a3.at({3, 0, 0}) == 1);
  CHECK(a3.at({1, 1, 0}) == -3);
  CHECK(a3.at({0, 0, 1}) == 3);
  CHECK(a3.size() == 3);
  for (int d = 1; d <= 10; ++d) CHECK(expand_elementary(newton_power_sum(d), d) == power_sum(d));
}

TEST_CASE("symmetric reduction") {
  using B = BinForm<Rational>;
  BiForm<Rational> s(2);
  s(0, 0) = 1;
  CHECK(symmetric_reduce(s) == X * X);
  BiForm<Rational> t(2);
  t(0, 2) = 1;
  t(2, 0) = 1;
  CHECK(symmetric_reduce(t) == Y * Y - q(2) * X * Z);
  // (a0 b1 + a1 b0) a0 b0
  const BiForm<Rational> u = BiForm<Rational>::symmetric_product(B({q(1), q(0)}), B({q(0), q(1)})) *
                             BiForm<Rational>::product(B({q(1), q(0)}), B({q(1), q(0)}));
  CHECK(symmetric_reduce(u) == X * Y);
  BiForm<Rational> bad(1);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(symmetric_reduce(bad), Error);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int d = 1; d <= 5; ++d)
    for (int trial = 0; trial < 3; ++trial) {
      P t3(d);
      for (int k = 0; k < t3.size(); ++k) t3[k] = q(c(rng), 1 + (k % 3));
      CHECK(symmetric_reduce(expand_pi(t3)) == t3);
    }
}

TEST_CASE("implicitization") {
  using B = BinForm<Rational>;
  // [-a^2 : a : a^3 - 1] homogenized with a = a1/a0.
  const std::array<B, 3> psi{B({q(0), q(0), q(-1), q(0)}), B({q(0), q(1), q(0), q(0)}), B({q(-1), q(0), q(0), q(1)})};
  auto r = implicitize(psi, 4);
  CHECK(r.equation.degree() == 3);
  CHECK(proportional(r.equation, P(X.pow(3) + Y.pow(3) - X * Y * Z)));
  CHECK(r.exact);

  const std::array<B, 3> dual{B({q(1), q(0), q(0), q(2), q(0)}), B({q(0), q(2), q(0), q(0), q(1)}), B({q(0), q(0), q(1), q(0), q(0)})};
  r = implicitize(dual, 6);
  CHECK(r.equation.degree() == 4);
  CHECK(r.exact);
  CHECK(r.heldout_residual == 0.0);
  CHECK(proportional(r.equation, P(q(4) * X.pow(3) * Z - X * X * Y * Y - q(18) * X * Y * Z * Z + q(4) * Y.pow(3) * Z + q(27) * Z.pow(4))));

  const std::array<B, 3> line{B({q(1), q(0)}), B({q(0), q(1)}), B({q(1), q(1)})};
  CHECK(proportional(implicitize(line, 3).equation, P(X + Y - Z)));

  // Floating path, rationalized and verified.
  const std::array<BinForm<Complex>, 3> cpsi{psi[0].to_complex(), psi[1].to_complex(), psi[2].to_complex()};
  const auto rc = implicitize(cpsi, 4);
  CHECK(rc.equation.degree() == 3);
  CHECK(rc.heldout_residual < 1e-8);
  REQUIRE(rc.rational.has_value());
  CHECK(proportional(*rc.rational, P(X.pow(3) + Y.pow(3) - X * Y * Z)));
  CHECK(rc.exact);
}

TEST_CASE("exact gcd and radical") {
  const P a = (X * Y - Z * Z) * (X + Y) * Z;
  const P b = (X * Y - Z * Z) * (X - Y) * Z * Z;
  CHECK(proportional(gcd(a, b), P((X * Y - Z * Z) * Z)));
  CHECK(proportional(radical(P(Y * Y * (Y * Y - q(4) * X * Z))), P(Y * (Y * Y - q(4) * X * Z))));
  CHECK(proportional(radical(P((X * Y - Z * Z).pow(2) * Z.pow(3))), P((X * Y - Z * Z) * Z)));
  CHECK(proportional(radical(P(X * Y - Z * Z)), P(X * Y - Z * Z)));
}

TEST_CASE("interpolation") {
  const EndoP2<Rational> f2({X * X - q(2) * Y * Z, Y * Y - q(2) * X * Z, Z * Z});
  const auto fc = f2.to_complex();
  std::mt19937_64 rng(1);
  std::vector<std::pair<Coords<Complex>, Coords<Complex>>> samples;
  for (int i = 0; i < 30; ++i) {
    const auto p = random_point(rng);
    samples.emplace_back(p, fc(p));
  }
  const auto r = interpolate_endo(samples, 2);
  CHECK(r.residual < 1e-10);
  for (int c = 0; c < 3; ++c) CHECK(proportional(r.map[c], fc[c], 1e-9));

  std::vector<std::pair<Coords<Complex>, Coords<Complex>>> id;
  for (int i = 0; i < 12; ++i) {
    const auto p = random_point(rng);
    id.emplace_back(p, p);
  }
  const auto ri = interpolate_endo(id, 1);
  CHECK(proportional(ri.map[0], X.to_complex(), 1e-9));
  CHECK(proportional(ri.map[1], Y.to_complex(), 1e-9));
  CHECK(proportional(ri.map[2], Z.to_complex(), 1e-9));

  std::vector<std::pair<Coords<Complex>, Coords<Complex>>> junk;
  for (int i = 0; i < 30; ++i) junk.emplace_back(random_point(rng), random_point(rng));
  try {
    interpolate_endo(junk, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResidualTooLarge);
  }
}

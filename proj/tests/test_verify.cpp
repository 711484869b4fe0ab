#include "doctest.h"

#include <random>

#include "webendo/verify.hpp"

using namespace webendo;
using P = HomPoly3<Rational>;

static Rational q(long n, long d = 1) { return make_rational(n, d); }
static const P X = P::variable(0), Y = P::variable(1), Z = P::variable(2);

static std::vector<FamilyMember> members(int d) {
  return {make_pencil(X.pow(d), Y.pow(d), Z.pow(d) + X.pow(d - 1) * Y),
          make_ueda(power_map(d)),
          make_ueda(polynomial_map(d == 2 ? std::vector<Rational>{q(-2), q(0), q(1)} : std::vector<Rational>{q(-2), q(0), q(0), q(1)})),
          make_nodal(d, +1),
          make_nodal(d, -1),
          make_two_lines(d == 2 ? std::vector<Rational>{q(-1), q(0), q(1)} : std::vector<Rational>{q(-1), q(0), q(0), q(1)},
                         d == 2 ? std::vector<Rational>{q(0), q(1), q(1)} : std::vector<Rational>{q(0), q(1), q(0), q(1)}),
          make_three_lines(d),
          make_conic_line(q(1), d),
          make_conic_line(q(2), -d)};
}

TEST_CASE("induced map on the nodal cubic") {
  const auto m = make_nodal(2, 1);
  const AnyMap f(m.map);
  const auto psi = m.web.components[0].param->to_complex();
  std::mt19937_64 rng(1);
  for (int s = 0; s < 20; ++s) {
    const Complex a = random_parameter(rng);
    const auto img = induced_map_on_C(f, m.web, psi(P1Point<Complex>{1.0, a}));
    CHECK(chordal_distance(img.point, psi(P1Point<Complex>{1.0, a * a})) < 1e-9);
    CHECK(img.curve_residual < 1e-12);
  }
  const auto node = induced_map_on_C(f, m.web, Coords<Complex>{0.0, 0.0, 1.0});
  CHECK(chordal_distance(node.point, Coords<Complex>{0.0, 0.0, 1.0}) < 1e-12);

  // A perturbation of f_2 no longer maps web lines to web lines.
  const EndoP2<Rational> g({m.map[0] + X * Y, m.map[1], m.map[2]});
  const auto c = psi(P1Point<Complex>{1.0, Complex(0.4, 0.9)});
  bool rejected = false;
  try {
    rejected = induced_map_on_C(AnyMap(g), m.web, c).curve_residual > 1e-6;
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::InconsistentImage;
  }
  CHECK(rejected);
  CHECK_THROWS_AS(induced_map_on_C(f, m.web, Coords<Complex>{1.0, 1.0, 1.0}), Error);
}

TEST_CASE("invariance") {
  const auto f2 = make_nodal(2, 1);
  const auto rep = check_invariance(AnyMap(f2.map), f2.web, 1000, 1e-8, 7);
  CHECK(rep.pass);
  CHECK(rep.max_residual == 0.0);
  const auto t = make_three_lines(2);
  CHECK(check_invariance(AnyMap(t.map), t.web, 300).pass);
  // Floating path on the same map.
  CHECK(check_invariance(AnyMap(f2.map.to_complex()), f2.web, 200, 1e-9).pass);
  // Wrong web.
  const auto wrong = check_invariance(AnyMap(f2.map), make_web("conic"), 50);
  CHECK_FALSE(wrong.pass);
  for (int d : {2, 3})
    for (const auto& m : members(d)) CHECK_MESSAGE(check_invariance(AnyMap(m.map), m.web, 200).pass, m.info.params.family);
}

TEST_CASE("pushforward degree") {
  std::mt19937_64 rng(2);
  for (int d : {2, 3})
    for (const auto& m : members(d))
      for (const auto& comp : m.web.components) {
        const auto c = sample_on_component(comp, rng);
        CHECK(pushforward_degree(AnyMap(m.map), m.web, c) == d);
      }
  const NumericEndo s = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  for (int i = 0; i < 3; ++i) {
    const auto c = sample_on_component(s.web().components[0], rng);
    CHECK(pushforward_degree(AnyMap(s), s.web(), c) == 4);
  }
}

TEST_CASE("ramification split") {
  const auto f2 = make_nodal(2, 1);
  const auto split = ramification_split(AnyMap(f2.map), f2.web, f2.info);
  CHECK(jacobian_determinant(f2.map) == 8 * Z * (X * Y - Z * Z));
  REQUIRE(split.web_lines.size() == 1);
  CHECK(ProjLine<Rational>(*split.web_lines[0].exact_line) == ProjLine<Rational>(q(0), q(0), q(1)));
  CHECK(split.web_lines[0].multiplicity == 1);
  CHECK(proportional(*split.exact_sectional, X * Y - Z * Z));

  const auto u = make_ueda(power_map(2));
  const auto us = ramification_split(AnyMap(u.map), u.web, u.info);
  CHECK(us.deg_rc == 2);
  CHECK(us.deg_rsigma == 1);
  CHECK(proportional(*us.exact_sectional, Y));

  for (int d : {2, 3})
    for (const auto& m : members(d)) {
      const auto s = ramification_split(AnyMap(m.map), m.web, m.info);
      CHECK_MESSAGE(s.deg_rc == m.info.expected_rc, m.info.params.family);
      CHECK_MESSAGE(s.deg_rsigma == m.info.expected_rsigma, m.info.params.family);
      CHECK(s.deg_rc + s.deg_rsigma == 3 * (d - 1));
    }

  // A lift that does not belong to the map.
  FamilyDescriptor bad = f2.info;
  bad.lifts[0].phi = polynomial_map({q(1), q(1), q(1)});
  CHECK_THROWS_AS(ramification_split(AnyMap(f2.map), f2.web, bad), Error);
}

TEST_CASE("irrational critical points fall back to floating") {
  // phi(t) = t^3 - 3t/2... has critical points at +-1/sqrt(2).
  const auto m = make_ueda(polynomial_map({q(0), q(-3, 2), q(0), q(1)}));
  const auto s = ramification_split(AnyMap(m.map), m.web, m.info);
  CHECK_FALSE(s.exact_sectional);
  CHECK(s.deg_rc == 4);
  CHECK(s.deg_rsigma == 2);
}

TEST_CASE("sectional identity") {
  const auto u = make_ueda(power_map(2));
  const P Cv = Y * Y - 4 * X * Z;
  CHECK(Cv.compose(u.map.components()) == Y * Y * Cv);
  for (const auto& m : {u, make_nodal(2, 1), make_nodal(3, -1), make_conic_line(q(1), 3)}) {
    const AnyMap f(m.map);
    const auto rep = check_sectional_identity(f, m.web, ramification_split(f, m.web, m.info));
    CHECK_MESSAGE(rep.pass, m.info.params.family);
    CHECK(rep.max_residual == 0.0);
  }
}

TEST_CASE("critical finiteness") {
  for (const auto& m : {make_nodal(2, 1), make_nodal(3, 1), make_three_lines(2)}) {
    const AnyMap f(m.map);
    const auto rep = check_crit_finite(f, m.web, ramification_split(f, m.web, m.info));
    CHECK_MESSAGE(rep.pass, m.info.params.family);
  }
  const auto t = make_three_lines(2);
  const auto rep = check_crit_finite(AnyMap(t.map), t.web, ramification_split(AnyMap(t.map), t.web, t.info));
  CHECK(rep.cases.back().detail == "closed: 0->0, 1->1, 2->2");
}

TEST_CASE("totally invariant points") {
  for (int d = 2; d <= 5; ++d) {
    const auto pts = totally_invariant_points(power_map(d));
    REQUIRE(pts.size() == 2);
    CHECK(std::abs(pts[0][0] * pts[1][0]) < 1e-12);
    CHECK(std::abs(pts[0][1] * pts[1][1]) < 1e-12);
    const auto inv = totally_invariant_points(power_map(-d));
    CHECK(inv.size() == 2);
  }
  const auto one = totally_invariant_points(polynomial_map({q(-1), q(0), q(1)}));
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0][0]) < 1e-12);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> c(-9, 9);
  for (int s = 0; s < 100; ++s) {
    const int d = 2 + s % 4;
    std::vector<Rational> n(static_cast<std::size_t>(d + 1)), m(static_cast<std::size_t>(d + 1));
    for (auto& x : n) x = q(c(rng));
    for (auto& x : m) x = q(c(rng));
    n.back() = q(1 + std::abs(c(rng)));
    try {
      const RatMapP1<Rational> phi{BinForm<Rational>(n), BinForm<Rational>(m)};
      CHECK(totally_invariant_points(phi).size() <= 2);
    } catch (const Error&) {
    }
  }
}

TEST_CASE("singular locus") {
  const auto f2 = make_nodal(3, -1);
  const auto rep = check_sing_totinv(AnyMap(f2.map), f2.web, f2.info);
  CHECK(rep.pass);
  CHECK(rep.cases.size() == 3);
  for (int d : {2, 3})
    for (const auto& m : members(d)) CHECK_MESSAGE(check_sing_totinv(AnyMap(m.map), m.web, m.info).pass, m.info.params.family);
  CHECK(web_singular_points(make_web("three-lines")).size() == 3);
  CHECK(web_singular_points(make_web("conic-line")).size() == 2);
  CHECK(web_singular_points(make_web("smooth-cubic")).empty());
}

TEST_CASE("all checks") {
  for (const auto& m : members(2)) {
    CheckOptions opts;
    opts.samples = 100;
    for (const auto& rep : run_checks(AnyMap(m.map), m.web, m.info, opts)) CHECK_MESSAGE(rep.pass, (m.info.params.family + " " + rep.check));
  }
  CheckOptions bad;
  bad.checks = {"nonsense"};
  const auto f2 = make_nodal(2, 1);
  CHECK_THROWS_AS(run_checks(AnyMap(f2.map), f2.web, f2.info, bad), Error);
}

TEST_CASE("smooth cubic checks") {
  const NumericEndo s = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  CHECK(check_invariance(AnyMap(s), s.web(), 100).pass);
  const auto fit = realize(s);
  const AnyMap f(fit.map);
  CHECK_THROWS_AS(ramification_split(AnyMap(make_nodal(2, 1).map), s.web(), s.info()), Error);
  const auto split = ramification_split(f, s.web(), s.info());
  CHECK(split.deg_rc == 0);
  CHECK(split.deg_rsigma == 9);
  const auto sect = check_sectional_identity(f, s.web(), split);
  CHECK(sect.pass);
  const auto crit = check_crit_finite(f, s.web(), split);
  CHECK(crit.pass);
  MESSAGE("sectional residual " << sect.max_residual << ", crit residual " << crit.max_residual);
}

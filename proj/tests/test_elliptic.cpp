#include "doctest.h"

#include <random>

#include "webendo/elliptic.hpp"
#include "webendo/polyalg.hpp"

using namespace webendo;

static Complex random_z(std::mt19937_64& rng, const Lattice& l) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  return u(rng) + u(rng) * l.tau();
}

TEST_CASE("square lattice invariants") {
  const Lattice l(Complex(0, 1));
  CHECK(l.g2().real() == doctest::Approx(189.07272012923386).epsilon(1e-13));
  CHECK(std::abs(l.g3()) < 1e-9);
  const auto disk = eisenstein_disk_sum(Complex(0, 1));
  CHECK(std::abs(disk[0] - l.g2()) / std::abs(l.g2()) < 1e-4);
  CHECK(std::abs(disk[1]) < 1e-6);
  CHECK_THROWS(Lattice(Complex(0.3, -1)));
}

TEST_CASE("wp parity, half periods and the differential equation") {
  for (const Complex tau : {Complex(0, 1), Complex(0.31, 1.17), Complex(-0.5, 0.8660254037844386)}) {
    const Lattice l(tau);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Complex z = random_z(rng, l);
      const WpValue v = l.wp(z), w = l.wp(-z);
      CHECK(std::abs(v.p - w.p) < 1e-9 * std::max(1.0, std::abs(v.p)));
      CHECK(std::abs(v.dp + w.dp) < 1e-9 * std::max(1.0, std::abs(v.dp)));
      const Complex lhs = v.dp * v.dp, rhs = 4.0 * v.p * v.p * v.p - l.g2() * v.p - l.g3();
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    CHECK(worst < 1e-8);
    for (const Complex h : {Complex(0.5), tau / 2.0, (1.0 + tau) / 2.0}) CHECK(std::abs(l.wp(h).dp) < 1e-8);
  }
  const Lattice l(Complex(0, 1));
  CHECK_THROWS_AS(l.wp(Complex(1, 1)), Error);
}

TEST_CASE("embedding and its inverse") {
  const Lattice l(Complex(0.2, 1.1));
  CHECK(proportional(l.embed(0.0), Coords<Complex>{0.0, 1.0, 0.0}));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const Complex z = random_z(rng, l);
    const auto e = l.embed(z);
    CHECK(relative_value(l.cubic(), e) < 1e-8);
    const auto em = l.embed(-z);
    CHECK(std::abs(e[0] / e[2] - em[0] / em[2]) < 1e-8 * std::abs(e[0] / e[2]));
    const Complex back = l.log(e).z;
    CHECK(l.in_lattice(back - z, 1e-9));
  }
  CHECK(l.log(Coords<Complex>{0.0, 1.0, 0.0}).z == 0.0);
  CHECK_THROWS_AS(l.log(Coords<Complex>{1.0, 2.0, 3.0}), Error);
}

TEST_CASE("group law and collinearity") {
  const Lattice l(Complex(0, 1));
  std::mt19937_64 rng(13);
  int agree = 0, total = 0;
  for (int i = 0; i < 10000; ++i) {
    const Complex z1 = random_z(rng, l), z2 = random_z(rng, l);
    const Complex z3 = (i % 2 == 0) ? -z1 - z2 : random_z(rng, l);
    try {
      const auto r = collinear_sum_check(l, z1, z2, z3);
      ++total;
      if (r.flag == (r.residual < 1e-6)) ++agree;
    } catch (const Error&) {
    }
  }
  CHECK(agree == total);
  CHECK(total > 9900);
  const Complex z(0.3, 0.4);
  CHECK(collinear_sum_check(l, z, -z, 0.0).flag);
  CHECK_THROWS_AS(collinear_sum_check(l, z, z, -2.0 * z), Error);
}

TEST_CASE("flexes") {
  const Lattice l(Complex(0, 1));
  const auto f = l.flexes();
  CHECK(f.size() == 9);
  CHECK(f[0].z == 0.0);
  for (const auto& p : f) {
    CHECK(l.in_lattice(3.0 * p.z));
    if (p.z == 0.0) continue;
    // The tangent meets the cubic only at the flex.
    const auto t = l.tangent_dual(p.z);
    const auto r = restrict_to_line(l.cubic(), ProjLine<Complex>(t));
    const auto roots = binary_roots(r.form, 1e-3);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].multiplicity == 3);
    const auto pt = r.point(roots[0].point[0], roots[0].point[1]);
    CHECK(chordal_distance(pt, l.embed(p.z)) < 1e-6);
  }
}

TEST_CASE("affine endomorphisms") {
  const Lattice l(Complex(0, 1));
  const auto g = make_elliptic_endo(l, 2, 0);
  std::mt19937_64 rng(17);
  const Complex w = random_z(rng, l);
  const auto pre = endo_preimages(l, g, w);
  CHECK(pre.size() == 4);
  for (const auto& p : pre) CHECK(l.in_lattice(endo_apply(l, g, p.z).z - w));

  for (int flex = 0; flex < 9; ++flex) {
    const auto h = make_elliptic_endo(l, 2, flex);
    for (int i = 0; i < 1000; ++i) {
      const Complex z1 = random_z(rng, l), z2 = random_z(rng, l);
      const Complex a = endo_apply(l, h, z1).z, b = endo_apply(l, h, z2).z, c = endo_apply(l, h, -z1 - z2).z;
      try {
        CHECK(collinear_sum_check(l, a, b, c).residual < 1e-6);
      } catch (const Error&) {
      }
      if (flex != 4) break;
    }
  }

  const EllipticEndo bad{2, Complex(0.17, 0.29), -1};
  int broken = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z1 = random_z(rng, l), z2 = random_z(rng, l);
    const auto r = collinear_sum_check(l, endo_apply(l, bad, z1).z, endo_apply(l, bad, z2).z, endo_apply(l, bad, -z1 - z2).z);
    if (r.residual > 1e-6) ++broken;
  }
  CHECK(broken > 500);
  CHECK_THROWS(make_elliptic_endo(l, 1, 0));
}

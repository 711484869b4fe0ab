#include "doctest.h"

#include <random>

#include "webendo/projgeom.hpp"

using namespace webendo;

using QP = ProjPoint<Rational>;
using QL = ProjLine<Rational>;

static Rational q(long n, long d = 1) { return make_rational(n, d); }

TEST_CASE("dualize reinterprets coordinates") {
  const QL l = dualize(QP(q(0), q(0), q(1)));
  CHECK(l == QL(q(0), q(0), q(5)));
  const QP p(q(2), q(-3), q(5));
  CHECK(dualize(dualize(p)) == p);
  CHECK(dualize(dualize(p)).canonical().coords() == p.canonical().coords());
}

TEST_CASE("join and meet") {
  const QL z = join(QP(q(1), q(0), q(0)), QP(q(0), q(1), q(0)));
  CHECK(z == QL(q(0), q(0), q(1)));
  const QL l = join(QP(q(1), q(0), q(1)), QP(q(0), q(1), q(1)));
  CHECK(l == QL(q(-1), q(-1), q(1)));
  const QP p(q(1), q(2), q(3));
  CHECK_THROWS_AS(join(p, QP(q(2), q(4), q(6))), Error);
  try {
    join(p, p);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoincidentPoints);
  }

  CHECK(meet(QL(q(1), q(0), q(0)), QL(q(0), q(1), q(0))) == QP(q(0), q(0), q(1)));
  const QP a(q(1), q(2), q(3)), b(q(-1), q(0), q(4)), c(q(2), q(7), q(-1));
  CHECK(meet(join(a, b), join(a, c)) == a);
  try {
    meet(QL(q(1), q(1), q(1)), QL(q(2), q(2), q(2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CoincidentLines);
  }
}

TEST_CASE("collinearity") {
  auto r = collinear(QP(q(1), q(0), q(0)), QP(q(0), q(1), q(0)), QP(q(1), q(1), q(0)));
  CHECK(r.flag);
  r = collinear(QP(q(1), q(0), q(0)), QP(q(0), q(1), q(0)), QP(q(0), q(0), q(1)));
  CHECK_FALSE(r.flag);
  CHECK(r.residual == doctest::Approx(1.0));

  // Nodal cubic psi(a) = [-a^2 : a : a^3 - 1]; psi(a), psi(b), psi(1/(ab)) are collinear.
  auto psi = [](const Rational& a) { return QP(Rational(-a * a), a, Rational(a * a * a - 1)); };
  for (long an = 1; an < 6; ++an)
    for (long bn = 2; bn < 6; ++bn) {
      const Rational a = q(an, 3), b = q(-bn, 5);
      CHECK(collinear(psi(a), psi(b), psi(1 / (a * b))).flag);
    }
}

TEST_CASE("floating invariants") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  auto rnd = [&] { return ProjPoint<Complex>(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)), Complex(g(rng), g(rng))); };
  for (int i = 0; i < 200; ++i) {
    const auto p = rnd(), s = rnd();
    const auto l = join(p, s);
    CHECK(incident(p, l).residual < 1e-12);
    CHECK(incident(s, l).residual < 1e-12);
    CHECK(dualize(join(p, s)) == meet(dualize(p), dualize(s)));
    const auto r = rnd();
    const double c1 = collinear(p, s, r).residual;
    const double c2 = collinear(s, r, p).residual;
    const auto scaled = ProjPoint<Complex>(Complex(0, 3) * r[0], Complex(0, 3) * r[1], Complex(0, 3) * r[2]);
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-12));
    CHECK(collinear(p, s, scaled).residual == doctest::Approx(c1).epsilon(1e-12));
  }
  CHECK_THROWS(ProjPoint<Complex>(Complex(0), Complex(0), Complex(0)));
  CHECK_THROWS(ProjPoint<Complex>(Complex(NAN), Complex(0), Complex(1)));
}

TEST_CASE("canonical forms") {
  const QP p(q(0), q(3), q(6));
  CHECK(p.canonical().coords() == Coords<Rational>{q(0), q(1), q(2)});
  const auto c = ProjPoint<Complex>(Complex(0, 2), Complex(1), Complex(0)).canonical();
  CHECK(c[0].imag() == doctest::Approx(0.0));
  CHECK(c[0].real() > 0);
  CHECK(norm(c.coords()) == doctest::Approx(1.0));
}

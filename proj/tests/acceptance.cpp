// Runs the twelve acceptance criteria and prints one line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "webendo/families.hpp"
#include "webendo/render.hpp"
#include "webendo/verify.hpp"

using namespace webendo;
using P = HomPoly3<Rational>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Rational q(long n, long d = 1) { return make_rational(n, d); }
const P X = P::variable(0), Y = P::variable(1), Z = P::variable(2);

std::string g(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct Member {
  std::string name;
  FamilyMember m;
};

std::vector<Member> members(int d) {
  const auto t_d = [d] {
    std::vector<Rational> v(static_cast<std::size_t>(d + 1), q(0));
    v.back() = 1;
    return v;
  };
  std::vector<Rational> t2m2 = t_d();
  t2m2[0] = -2;
  std::vector<Rational> p = t_d(), qq = t_d();
  p[0] = -1;
  qq[1] = 1;
  return {{"pencil", make_pencil(X.pow(d), Y.pow(d), Z.pow(d) + X.pow(d - 1) * Y)},
          {"ueda t^d", make_ueda(polynomial_map(t_d()))},
          {"ueda t^d-2", make_ueda(polynomial_map(t2m2))},
          {"nodal +", make_nodal(d, +1)},
          {"nodal -", make_nodal(d, -1)},
          {"two-lines", make_two_lines(p, qq)},
          {"three-lines", make_three_lines(d)},
          {"conic-line +", make_conic_line(q(1), d)},
          {"conic-line -", make_conic_line(q(3, 2), -d)}};
}

Coords<Complex> random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {Complex(n(rng), n(rng)), Complex(n(rng), n(rng)), Complex(n(rng), n(rng))};
}

Outcome ac1() {
  const auto f = make_nodal(2, +1).map;
  const bool ok = f[0] == X * X - 2 * Y * Z && f[1] == Y * Y - 2 * X * Z && f[2] == Z * Z;
  return {ok, "f = [" + f[0].to_string() + " : " + f[1].to_string() + " : " + f[2].to_string() + "]"};
}

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  for (int d = 1; d <= 10; ++d)
    if (!(expand_elementary(newton_power_sum(d), d) - power_sum(d)).is_zero()) {
      o.pass = false;
      o.detail += "d=" + std::to_string(d) + " nonzero; ";
    }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (sec >= 1.0) o.pass = false;
  o.detail += "d = 1..10 exact, " + g(sec) + " s";
  return o;
}

Outcome ac3() {
  Outcome o;
  int n = 0;
  for (int d : {2, 3})
    for (const auto& [name, m] : members(d)) {
      const int degJ = jacobian_determinant(m.map).degree();
      bool ok = degJ == 3 * (d - 1);
      std::string got;
      try {
        const auto s = ramification_split(AnyMap(m.map), m.web, m.info);
        ok = ok && s.deg_rc == m.info.expected_rc && s.deg_rsigma == m.info.expected_rsigma &&
             std::make_pair(s.deg_rc, s.deg_rsigma) == expected_split(m.info.params.family, d);
        got = "(" + std::to_string(s.deg_rc) + "," + std::to_string(s.deg_rsigma) + ")";
      } catch (const Error& e) {
        ok = false;
        got = e.what();
      }
      ++n;
      if (!ok) {
        o.pass = false;
        o.detail += name + " d=" + std::to_string(d) + " got " + got + "; ";
      }
    }
  if (o.pass) {
    const auto [c2, s2] = expected_split("nodal", 2);
    const auto [u2, v2] = expected_split("conic", 2);
    o.detail = std::to_string(n) + " members; e.g. d=2 conic (" + std::to_string(u2) + "," + std::to_string(v2) + "), nodal (" +
               std::to_string(c2) + "," + std::to_string(s2) + ")";
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  for (const auto& [name, m] : std::vector<Member>{{"ueda t^2", make_ueda(power_map(2))}, {"nodal f_2", make_nodal(2, +1)}}) {
    const AnyMap f(m.map);
    const auto split = ramification_split(f, m.web, m.info);
    const auto rep = check_sectional_identity(f, m.web, split);
    bool exact_case = false;
    for (const auto& c : rep.cases)
      if (c.name.find("identity") != std::string::npos) {
        exact_case = c.detail.rfind("C^ o f = ", 0) == 0 && c.residual == 0.0;
        o.detail += name + ": " + c.detail + "; ";
      }
    o.pass = o.pass && rep.pass && exact_case && rep.max_residual == 0.0;
  }
  return o;
}

Outcome ac5() {
  const auto conic = dual_curve(conic_component());
  const auto nodal = dual_curve(nodal_component());
  const auto smooth = dual_curve(smooth_component(Complex(0.0, 1.0)));
  Outcome o;
  o.pass = conic.degree == 2 && nodal.degree == 4 && smooth.degree == 6 && smooth.heldout_residual < 1e-6;
  o.detail = "degrees " + std::to_string(conic.degree) + ", " + std::to_string(nodal.degree) + ", " + std::to_string(smooth.degree) +
             "; sextic held-out residual " + g(smooth.heldout_residual);
  return o;
}

Outcome ac6() {
  const auto nc = nodal_component();
  const auto sc = smooth_component(Complex(0.0, 1.0));
  const EulerData n = euler_data(nc, dual_curve(nc));
  const EulerData s = euler_data(sc, dual_curve(sc));
  const auto same = [](const EulerData& a, const EulerData& b) {
    return a.degB == b.degB && a.degBdual == b.degBdual && a.degRpsi == b.degRpsi && a.degRpsidual == b.degRpsidual && a.chi == b.chi;
  };
  Outcome o;
  o.pass = same(n, {3, 4, 0, 3, 2}) && same(s, {3, 6, 0, 9, 0}) && plucker_verify(n) && plucker_verify(s);
  o.detail = plucker_line(n) + "; " + plucker_line(s);
  return o;
}

Outcome ac7() {
  Outcome o;
  double worst = 0.0;
  int n = 0;
  for (int d : {2, 3})
    for (const auto& [name, m] : members(d)) {
      const auto rep = check_invariance(AnyMap(m.map), m.web, 1000, kInvarianceTol, 0);
      worst = std::max(worst, rep.max_residual);
      ++n;
      if (!(rep.pass && rep.max_residual < 1e-8)) {
        o.pass = false;
        o.detail += name + " d=" + std::to_string(d) + " fails; ";
      }
    }
  const NumericEndo s = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  const auto rs = check_invariance(AnyMap(s), s.web(), 1000, kInvarianceTol, 0);
  const auto fit = realize(s);
  const auto rf = check_invariance(AnyMap(fit.map), s.web(), 1000, kInvarianceTol, 0);
  for (const auto* r : {&rs, &rf}) {
    worst = std::max(worst, r->max_residual);
    if (!(r->pass && r->max_residual < 1e-8)) {
      o.pass = false;
      o.detail += "smooth-cubic fails (" + g(r->max_residual) + "); ";
    }
  }
  n += 2;
  const auto f2 = make_nodal(2, +1);
  const bool negative = !check_invariance(AnyMap(f2.map), make_web("conic"), 1000, kInvarianceTol, 0).pass;
  o.pass = o.pass && negative;
  o.detail += std::to_string(n) + " maps x 1000 samples, max residual " + g(worst) +
              (negative ? "; f_2 on the conic web fails as it should" : "; negative control unexpectedly passed");
  return o;
}

Outcome ac8() {
  Outcome o;
  int n = 0;
  for (int d : {2, 3})
    for (const auto& [name, m] : members(d)) {
      const auto rep = check_pushforward(AnyMap(m.map), m.web, 20, 0);
      ++n;
      if (!rep.pass) {
        o.pass = false;
        o.detail += name + " d=" + std::to_string(d) + "; ";
      }
    }
  const NumericEndo s = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  if (!check_pushforward(AnyMap(s), s.web(), 20, 0).pass) {
    o.pass = false;
    o.detail += "smooth-cubic; ";
  }
  ++n;
  o.detail += std::to_string(n) + " maps, degree d at 20 points each";
  return o;
}

Outcome ac9() {
  const NumericEndo f = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  std::mt19937_64 rng(9);
  double spread = 0.0;
  for (int n = 0; n < 100;) {
    try {
      spread = std::max(spread, f.eval(random_point(rng)).spread);
      ++n;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NearCriticalPoint) throw;
    }
  }
  const auto fit = realize(f);

  const Lattice& l = f.lattice();
  const EllipticEndo bad{2, Complex(0.17, 0.29), -1};
  std::uniform_real_distribution<double> u(0.02, 0.98);
  int broken = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z1 = u(rng) + u(rng) * l.tau(), z2 = u(rng) + u(rng) * l.tau();
    try {
      const auto r = collinear_sum_check(l, endo_apply(l, bad, z1).z, endo_apply(l, bad, z2).z, endo_apply(l, bad, -z1 - z2).z);
      if (r.residual > 1e-6) ++broken;
    } catch (const Error&) {
      // an image point at the flex at infinity; counts as not broken
    }
  }
  Outcome o;
  o.pass = spread < 1e-6 && fit.map.degree() == 4 && fit.residual < 1e-6 && broken > 500;
  o.detail = "spread " + g(spread) + ", fit residual " + g(fit.residual) + ", non-flex translation breaks " + std::to_string(broken) +
             "/1000";
  return o;
}

Outcome ac10() {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<long> c(-9, 9);
  int maps = 0, worst = 0;
  while (maps < 100) {
    const int d = 2 + maps % 4;
    std::vector<Rational> n(static_cast<std::size_t>(d + 1)), m(static_cast<std::size_t>(d + 1));
    for (auto& x : n) x = q(c(rng));
    for (auto& x : m) x = q(c(rng));
    n.back() = q(1 + std::abs(c(rng)));
    try {
      const RatMapP1<Rational> phi{BinForm<Rational>(n), BinForm<Rational>(m)};
      if (phi.degree() != d) continue;
      worst = std::max(worst, static_cast<int>(totally_invariant_points(phi).size()));
      ++maps;
    } catch (const Error&) {
      // numerator and denominator share a root
    }
  }
  bool power = true;
  for (int d = 2; d <= 5; ++d) {
    const auto pts = totally_invariant_points(power_map(d));
    bool zero = false, inf = false;
    for (const auto& p : pts) {
      zero = zero || (std::abs(p[1]) < 1e-12 && std::abs(p[0]) > 0.0);
      inf = inf || (std::abs(p[0]) < 1e-12 && std::abs(p[1]) > 0.0);
    }
    power = power && pts.size() == 2 && zero && inf;
  }
  Outcome o;
  o.pass = worst <= 2 && power;
  o.detail = "100 random maps, largest set " + std::to_string(worst) + "; t^d gives {0, inf} for d = 2..5";
  return o;
}

Outcome ac11() {
  Outcome o;
  const auto run = [&o](const std::string& name, const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info) {
    const auto split = ramification_split(f, web, info);
    const auto rep = check_crit_finite(f, web, split, 10, 0);
    bool closed = false;
    for (const auto& c : rep.cases)
      if (c.detail.rfind("closed", 0) == 0) closed = c.pass;
    // no web lines in the critical set: the orbit graph is empty and closed
    if (split.web_lines.empty()) closed = true;
    const bool ok = rep.pass && rep.max_residual < 1e-5 && closed;
    o.pass = o.pass && ok;
    o.detail += name + " " + g(rep.max_residual) + (ok ? "" : " FAIL") + "; ";
  };
  for (int d : {2, 3}) {
    const auto m = make_nodal(d, +1);
    run("f_" + std::to_string(d), AnyMap(m.map), m.web, m.info);
  }
  const NumericEndo s = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  run("smooth m=2", AnyMap(realize(s).map), s.web(), s.info());
  return o;
}

Outcome ac12() {
  RenderSpec spec;
  spec.family = "conic";
  spec.leaves = 60;
  const auto svg = render_web(spec).svg;
  const auto segs = svg_segments(svg);
  const auto dual = dual_curve(conic_component());
  double worst = 0.0;
  for (const auto& s : segs) worst = std::max(worst, tangency_residual(dual.equation, s));
  Outcome o;
  o.pass = segs.size() == 60 && worst < 1e-6;
  o.detail = std::to_string(segs.size()) + " lines, max double-root residual " + g(worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"nodal f_2 coefficients", ac1},
      {"Newton identity d = 1..10", ac2},
      {"ramification table", ac3},
      {"sectional-critical identity", ac4},
      {"dual curve degrees", ac5},
      {"Pluecker formula", ac6},
      {"invariance suite", ac7},
      {"pushforward degree", ac8},
      {"smooth cubic consistency", ac9},
      {"totally invariant sets", ac10},
      {"critical finiteness", ac11},
      {"render tangency", ac12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("AC%02zu %s  %-28s %s [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.c_str(), sec);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

#include "webendo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "webendo/error.hpp"

namespace webendo {

AnyMap::AnyMap(EndoP2<Rational> f) : exact_(f), poly_(f.to_complex()) {}
AnyMap::AnyMap(EndoP2<Complex> f) : poly_(std::move(f)) {}
AnyMap::AnyMap(NumericEndo f) : numeric_(std::move(f)) {}

int AnyMap::degree() const { return poly_ ? poly_->degree() : numeric_->degree(); }

Coords<Complex> AnyMap::operator()(const Coords<Complex>& p) const {
  if (poly_) return (*poly_)(p);
  return numeric_->eval(p).point;
}

void VerificationReport::add(CaseReport c) {
  if (!std::isfinite(c.residual)) c.residual = std::numeric_limits<double>::infinity();
  max_residual = std::max(max_residual, c.residual);
  pass = pass && c.pass && max_residual <= tolerance;
  cases.push_back(std::move(c));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

Coords<Complex> unit(const Coords<Complex>& a) {
  const double n = norm(a);
  return {a[0] / n, a[1] / n, a[2] / n};
}

std::array<Coords<Complex>, 2> unit_basis(const Coords<Complex>& c) {
  auto b = line_basis(c);
  return {unit(b[0]), unit(b[1])};
}

Coords<Complex> on_line(const std::array<Coords<Complex>, 2>& b, Complex t) {
  return {b[0][0] + t * b[1][0], b[0][1] + t * b[1][1], b[0][2] + t * b[1][2]};
}

// Image of a point, or nullopt where the numeric evaluator declines.
std::optional<Coords<Complex>> try_image(const AnyMap& f, const Coords<Complex>& p) {
  try {
    const Coords<Complex> q = f(p);
    if (norm(q) == 0.0) return std::nullopt;
    return unit(q);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NearCriticalPoint) return std::nullopt;
    throw;
  }
}

// Best-conditioned join of a set of unit points.
std::optional<Coords<Complex>> best_join(const std::vector<Coords<Complex>>& q) {
  double best = 0.0;
  Coords<Complex> out{};
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const Coords<Complex> l = cross(q[i], q[j]);
      if (norm(l) > best) {
        best = norm(l);
        out = l;
      }
    }
  if (best < 1e-10) return std::nullopt;
  return unit(out);
}

P1Point<Rational> random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 30);
  return {make_rational(den(rng), 1), make_rational(num(rng), 1)};
}

double distance_to_set(const Coords<Complex>& p, const std::vector<Coords<Complex>>& set) {
  double best = kInf;
  for (const auto& s : set) best = std::min(best, chordal_distance(p, s));
  return best;
}

// Points of a (possibly reducible) curve on a random line.
std::vector<Coords<Complex>> curve_points(const HomPoly3<Complex>& curve, std::mt19937_64& rng) {
  const auto r = restrict_to_line(curve, ProjLine<Complex>(random_point(rng)));
  std::vector<Coords<Complex>> out;
  for (const auto& root : binary_roots(r.form)) out.push_back(unit(r.point(root.point[0], root.point[1])));
  return out;
}

}  // namespace

Coords<Complex> sample_on_component(const WebComponent& comp, std::mt19937_64& rng) {
  if (comp.param || comp.lattice) return unit(comp.point_at(comp.random_parameter(rng)));
  for (;;) {
    const auto pts = curve_points(comp.equation, rng);
    if (!pts.empty()) return pts.front();
  }
}

InducedImage induced_map_on_C(const AnyMap& f, const WebSpec& web, const Coords<Complex>& c, double tol) {
  const double on = web.residual(c).first;
  if (on > 1e-7) throw Error(ErrorKind::NotOnCurve, "dual point is not on the web curve (residual " + fmt(on) + ")");
  const auto b = unit_basis(c);
  static const Complex ts[] = {{0.31, 0.47}, {-0.83, 0.29}, {0.57, -0.91}, {1.3, 0.2}, {-0.4, -1.1}, {0.9, 0.75}, {-1.4, 0.6}, {0.2, 1.6}};
  std::vector<Coords<Complex>> q;
  for (const Complex t : ts) {
    if (auto img = try_image(f, on_line(b, t))) q.push_back(*img);
    if (q.size() == 4) break;
  }
  if (q.size() < 4) throw Error(ErrorKind::NearCriticalPoint, "could not sample the web line");
  const auto l1 = best_join({q[0], q[1]}), l2 = best_join({q[2], q[3]});
  if (!l1 || !l2) throw Error(ErrorKind::InconsistentImage, "web line collapses under the map");
  InducedImage out;
  out.point = unit_canonical(*l1);
  out.consistency = chordal_distance(*l1, *l2);
  if (out.consistency > tol)
    throw Error(ErrorKind::InconsistentImage, "image of the web line is not a line (spread " + fmt(out.consistency) + ")");
  out.curve_residual = web.residual(out.point).first;
  return out;
}

// ---------------------------------------------------------------------------
// Invariance

namespace {

// Exact sample: 0 if the image of D psi(a) is a web line, 1 otherwise.
double exact_invariance_sample(const EndoP2<Rational>& f, const WebComponent& comp, const HomPoly3<Rational>& curve,
                               std::mt19937_64& rng) {
  const Coords<Rational> c = (*comp.param)(random_rational(rng));
  if (is_zero_vector(c)) return 0.0;
  const auto b = line_basis(c);
  std::vector<Coords<Rational>> q;
  for (int j = -3; j <= 3; ++j) {
    const Rational t(j);
    q.push_back(f(Coords<Rational>{Rational(b[0][0] + t * b[1][0]), Rational(b[0][1] + t * b[1][1]), Rational(b[0][2] + t * b[1][2])}));
  }
  std::optional<Coords<Rational>> l;
  for (std::size_t i = 0; i < q.size() && !l; ++i)
    for (std::size_t j = i + 1; j < q.size() && !l; ++j) {
      const Coords<Rational> x = cross(q[i], q[j]);
      if (!is_zero_vector(x)) l = x;
    }
  if (!l) return 1.0;
  for (const auto& p : q)
    if (sgn(dot(*l, p)) != 0) return 1.0;
  return sgn(curve.eval(*l)) == 0 ? 0.0 : 1.0;
}

double floating_invariance_sample(const AnyMap& f, const WebSpec& web, const WebComponent& comp, std::mt19937_64& rng) {
  const Coords<Complex> c = sample_on_component(comp, rng);
  const auto b = unit_basis(c);
  std::vector<Coords<Complex>> q;
  for (int tries = 0; q.size() < 7 && tries < 40; ++tries)
    if (auto img = try_image(f, on_line(b, random_parameter(rng)))) q.push_back(*img);
  if (q.size() < 7) return kInf;
  const auto l = best_join({q[0], q[1], q[2]});
  if (!l) return kInf;
  double r = web.residual(*l).first;
  for (const auto& p : q) r = std::max(r, std::abs(dot(*l, p)));
  return r;
}

}  // namespace

VerificationReport check_invariance(const AnyMap& f, const WebSpec& web, int samples, double tol, std::uint64_t seed) {
  VerificationReport rep;
  rep.check = "invariance";
  rep.family = web.name;
  rep.d = f.degree();
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance = tol;
  std::mt19937_64 rng(seed);
  const auto exact_eq = web.exact_equation();
  const std::size_t n = web.components.size();
  std::vector<double> worst(n, 0.0);
  std::vector<int> count(n, 0);
  std::vector<bool> exact(n, false);
  for (int s = 0; s < samples; ++s) {
    const std::size_t k = static_cast<std::size_t>(s) % n;
    const auto& comp = web.components[k];
    double r;
    try {
      if (f.exact() && comp.param && exact_eq) {
        exact[k] = true;
        r = exact_invariance_sample(f.exact_map(), comp, *exact_eq, rng);
      } else {
        r = floating_invariance_sample(f, web, comp, rng);
      }
    } catch (const Error&) {
      r = kInf;
    }
    worst[k] = std::max(worst[k], r);
    ++count[k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    CaseReport c;
    c.name = "component " + std::to_string(k) + " (" + to_string(web.components[k].family) + ")";
    c.residual = worst[k];
    c.pass = worst[k] <= tol;
    c.detail = std::to_string(count[k]) + (exact[k] ? " exact samples" : " samples") + ", max residual " + fmt(worst[k]);
    rep.add(std::move(c));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pushforward degree

namespace {

int common_root_count(const BinForm<Complex>& a, const BinForm<Complex>& b) {
  const auto ra = binary_roots(a), rb = binary_roots(b);
  int common = 0;
  std::vector<bool> used(rb.size(), false);
  for (const auto& x : ra)
    for (std::size_t j = 0; j < rb.size(); ++j)
      if (!used[j] && chordal_distance(x.point, rb[j].point) < 1e-6) {
        used[j] = true;
        common += std::min(x.multiplicity, rb[j].multiplicity);
        break;
      }
  return common;
}

int symbolic_pushforward(const EndoP2<Complex>& f, const Coords<Complex>& c) {
  const auto b = unit_basis(c);
  std::array<BinForm<Complex>, 3> param;
  for (std::size_t v = 0; v < 3; ++v) param[v] = BinForm<Complex>({b[0][v], b[1][v]});
  std::array<BinForm<Complex>, 3> img;
  for (int v = 0; v < 3; ++v) img[static_cast<std::size_t>(v)] = substitute(f[v], param);
  const int d = f.degree();
  std::vector<Coords<Complex>> q;
  for (const Complex t : {Complex(0.3, 0.7), Complex(-1.1, 0.2), Complex(0.5, -0.9)}) {
    const Coords<Complex> x{img[0].eval(1.0, t), img[1].eval(1.0, t), img[2].eval(1.0, t)};
    if (norm(x) > 0) q.push_back(unit(x));
  }
  const auto l = best_join(q);
  if (!l) throw Error(ErrorKind::DegenerateRestriction, "web line collapses to a point");
  const auto bi = unit_basis(*l);
  Matrix<Complex> m(3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    m(r, 0) = bi[0][r];
    m(r, 1) = bi[1][r];
  }
  std::vector<Complex> l0(static_cast<std::size_t>(d + 1)), l1(static_cast<std::size_t>(d + 1));
  double scale = 0.0, off = 0.0;
  for (int i = 0; i <= d; ++i) {
    const std::vector<Complex> w{img[0][i], img[1][i], img[2][i]};
    const auto x = least_squares(m, w);
    l0[static_cast<std::size_t>(i)] = x[0];
    l1[static_cast<std::size_t>(i)] = x[1];
    scale = std::max(scale, norm(Coords<Complex>{w[0], w[1], w[2]}));
    off = std::max(off, std::abs(dot(*l, Coords<Complex>{w[0], w[1], w[2]})));
  }
  if (off > 1e-8 * scale) throw Error(ErrorKind::DegenerateRestriction, "image of the web line is not a line");
  double top = 0.0;
  for (std::size_t i = 0; i < l0.size(); ++i) top = std::max({top, std::abs(l0[i]), std::abs(l1[i])});
  for (std::size_t i = 0; i < l0.size(); ++i) {
    if (std::abs(l0[i]) < 1e-12 * top) l0[i] = 0.0;
    if (std::abs(l1[i]) < 1e-12 * top) l1[i] = 0.0;
  }
  const BinForm<Complex> a(l0), bb(l1);
  if (a.is_zero(1e-12 * scale) || bb.is_zero(1e-12 * scale)) return 0;
  return d - common_root_count(a, bb);
}

// Smallest k such that the chart coordinate of the image is N(t)/D(t) with
// deg N, D <= k.
int fitted_pushforward(const AnyMap& f, const Coords<Complex>& c, int dmax) {
  const auto b = unit_basis(c);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  const int need = 2 * dmax + 8;
  std::vector<Complex> ts;
  std::vector<Coords<Complex>> qs;
  // points on the unit circle keep the Vandermonde columns well conditioned
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int tries = 0; static_cast<int>(ts.size()) < need && tries < 10 * need; ++tries) {
    const Complex t = std::polar(1.0, angle(rng));
    if (auto q = try_image(f, on_line(b, t))) {
      ts.push_back(t);
      qs.push_back(*q);
    }
  }
  if (static_cast<int>(ts.size()) < need) throw Error(ErrorKind::DegenerateRestriction, "too few regular samples on the web line");
  const auto l = best_join({qs[0], qs[1], qs[2]});
  if (!l) throw Error(ErrorKind::DegenerateRestriction, "web line collapses to a point");
  const auto bi = unit_basis(*l);
  // homogeneous chart coordinates (u0, u1) of each image point, unit norm
  Matrix<Complex> basis(3, 2);
  for (std::size_t r = 0; r < 3; ++r) {
    basis(r, 0) = bi[0][r];
    basis(r, 1) = bi[1][r];
  }
  std::vector<std::array<Complex, 2>> uv;
  for (const auto& qi : qs) {
    const auto x = least_squares(basis, {qi[0], qi[1], qi[2]});
    const double n = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
    uv.push_back({x[0] / n, x[1] / n});
  }
  // N(t) u0 - D(t) u1 = 0 with deg N, D <= k
  for (int k = 1; k <= dmax; ++k) {
    Matrix<Complex> m(uv.size(), static_cast<std::size_t>(2 * (k + 1)));
    for (std::size_t r = 0; r < uv.size(); ++r) {
      Complex p = 1.0;
      for (int e = 0; e <= k; ++e) {
        m(r, static_cast<std::size_t>(e)) = uv[r][0] * p;
        m(r, static_cast<std::size_t>(k + 1 + e)) = -uv[r][1] * p;
        p *= ts[r];
      }
    }
    const auto ker = kernel(m, 2.0);
    const auto& sv = ker.singular_values;
    // lower degrees can fit to 1e-8 or so when a zero and a pole are close;
    // the true degree fits to rounding
    if (sv.front() > 0 && sv.back() / sv.front() < 1e-11) return k;
  }
  throw Error(ErrorKind::DegenerateRestriction, "no rational function of degree <= " + std::to_string(dmax) + " fits");
}

}  // namespace

int pushforward_degree(const AnyMap& f, const WebSpec& web, const Coords<Complex>& c) {
  const double on = web.residual(c).first;
  if (on > 1e-7) throw Error(ErrorKind::NotOnCurve, "dual point is not on the web curve");
  if (f.polynomial()) return symbolic_pushforward(f.poly_map(), c);
  return fitted_pushforward(f, c, 2 * f.degree());
}

VerificationReport check_pushforward(const AnyMap& f, const WebSpec& web, int samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.check = "pushforward";
  rep.family = web.name;
  rep.d = f.degree();
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance = 0.0;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const auto& comp = web.components[static_cast<std::size_t>(s) % web.components.size()];
    const Coords<Complex> c = sample_on_component(comp, rng);
    CaseReport cr;
    cr.name = "sample " + std::to_string(s);
    try {
      const int k = pushforward_degree(f, web, c);
      cr.residual = std::abs(k - rep.d);
      cr.pass = k == rep.d;
      cr.detail = "degree " + std::to_string(k);
    } catch (const Error& e) {
      cr.residual = kInf;
      cr.pass = false;
      cr.detail = e.what();
    }
    rep.add(std::move(cr));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ramification split

namespace {

template <Field F>
struct ExpectedLine {
  Coords<F> line;
  int mult;
  int component;
};

template <Field F>
void add_expected(std::vector<ExpectedLine<F>>& out, const Coords<F>& line, int mult, int comp) {
  for (auto& e : out)
    if (proportional(e.line, line, 1e-8)) {
      if (e.mult != mult)
        throw Error(ErrorKind::SplitMismatch, "lifts predict multiplicities " + std::to_string(e.mult) + " and " + std::to_string(mult) +
                                                  " for the same web line");
      return;
    }
  out.push_back({line, mult, comp});
}

// Exact expectations, or nullopt if some critical point is irrational.
std::optional<std::vector<ExpectedLine<Rational>>> exact_expectations(const WebSpec& web, const FamilyDescriptor& info, int d) {
  std::vector<ExpectedLine<Rational>> out;
  for (std::size_t k = 0; k < web.components.size(); ++k) {
    const auto& comp = web.components[k];
    const auto& lift = info.lifts[k];
    if (!comp.param || !lift.phi) continue;
    for (const auto& r : crit_divisor(*lift.phi)) {
      if (!r.exact) return std::nullopt;
      const Coords<Rational> c = (*comp.param)(r.exact_point);
      const bool singular = multiplicity_at(comp.exact_curve->equation, c) >= 2;
      add_expected(out, c, singular ? d - 1 : r.multiplicity, static_cast<int>(k));
    }
  }
  return out;
}

std::vector<ExpectedLine<Complex>> floating_expectations(const WebSpec& web, const FamilyDescriptor& info, int d) {
  std::vector<ExpectedLine<Complex>> out;
  for (std::size_t k = 0; k < web.components.size(); ++k) {
    const auto& comp = web.components[k];
    const auto& lift = info.lifts[k];
    if (!comp.param || !lift.phi) continue;
    const auto psi = comp.param->to_complex();
    for (const auto& r : crit_divisor(lift.phi->to_complex())) {
      const Coords<Complex> c = unit(psi(r.point));
      const bool singular = multiplicity_at(comp.equation, c) >= 2;
      add_expected(out, c, singular ? d - 1 : r.multiplicity, static_cast<int>(k));
    }
  }
  return out;
}

template <Field F>
HomPoly3<F> divide_out(HomPoly3<F> J, const std::vector<ExpectedLine<F>>& lines, RamificationSplit& split) {
  for (const auto& e : lines) {
    const auto lf = linear_factor_multiplicity(J, ProjLine<F>(e.line));
    if (lf.multiplicity != e.mult) {
      throw Error(ErrorKind::SplitMismatch, "web line " + ProjLine<F>(e.line).to_string() + " divides the Jacobian " +
                                                std::to_string(lf.multiplicity) + " times, expected " + std::to_string(e.mult));
    }
    J = lf.quotient;
    WebLine w;
    w.multiplicity = e.mult;
    w.component = e.component;
    if constexpr (is_exact_v<F>) {
      w.exact_line = e.line;
      w.line = unit(to_complex(ProjPoint<Rational>(e.line)).coords());
    } else {
      w.line = unit(e.line);
    }
    split.web_lines.push_back(std::move(w));
    split.deg_rc += e.mult;
  }
  return J;
}

}  // namespace

RamificationSplit ramification_split(const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info) {
  if (!f.polynomial()) throw Error(ErrorKind::RegimeMismatch, "the split needs a polynomial map");
  if (info.lifts.size() != web.components.size()) throw Error(ErrorKind::InvalidArgument, "one lift per web component is required");
  for (const auto& comp : web.components)
    if (comp.lattice && f.exact()) throw Error(ErrorKind::RegimeMismatch, "exact map on an elliptic web");
  const int d = f.degree();
  RamificationSplit split;
  if (f.exact()) {
    if (auto lines = exact_expectations(web, info, d)) {
      const HomPoly3<Rational> rest = divide_out(jacobian_determinant(f.exact_map()), *lines, split);
      split.exact_sectional = rest;
      split.sectional = rest.to_complex();
      split.deg_rsigma = rest.degree();
      return split;
    }
  }
  HomPoly3<Complex> J = jacobian_determinant(f.poly_map());
  J = J * Complex(1.0 / J.norm());
  split.sectional = divide_out(J, floating_expectations(web, info, d), split);
  split.deg_rsigma = split.sectional.degree();
  return split;
}

VerificationReport check_split(const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info) {
  VerificationReport rep;
  rep.check = "split";
  rep.family = web.name;
  rep.d = f.degree();
  rep.tolerance = 0.0;
  try {
    const auto split = ramification_split(f, web, info);
    std::ostringstream lines;
    for (const auto& w : split.web_lines)
      lines << (w.exact_line ? ProjLine<Rational>(*w.exact_line).to_string() : ProjLine<Complex>(w.line).to_string()) << "^" << w.multiplicity
            << " ";
    CaseReport total{"degree", split.deg_rc + split.deg_rsigma == 3 * (rep.d - 1) ? 0.0 : 1.0, false,
                     "deg R_f = " + std::to_string(split.deg_rc + split.deg_rsigma)};
    total.pass = total.residual == 0.0;
    rep.add(total);
    const bool ok = split.deg_rc == info.expected_rc && split.deg_rsigma == info.expected_rsigma;
    rep.add({"split", ok ? 0.0 : 1.0, ok,
             "(" + std::to_string(split.deg_rc) + ", " + std::to_string(split.deg_rsigma) + "), expected (" + std::to_string(info.expected_rc) +
                 ", " + std::to_string(info.expected_rsigma) + "); web lines: " + lines.str()});
  } catch (const Error& e) {
    rep.add({"split", kInf, false, e.what()});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Sectional identity and critical finiteness

VerificationReport check_sectional_identity(const AnyMap& f, const WebSpec& web, const RamificationSplit& split, std::uint64_t seed) {
  VerificationReport rep;
  rep.check = "sectional";
  rep.family = web.name;
  rep.d = f.degree();
  rep.seed = seed;
  rep.tolerance = 1e-6;
  const int d = rep.d;
  for (std::size_t k = 0; k < web.components.size(); ++k) {
    const auto& comp = web.components[k];
    if (comp.degree < 2) continue;
    const auto dual = dual_curve(comp, seed);
    const std::string name = "component " + std::to_string(k);
    const bool deg_ok = dual.degree * (d - 1) == 2 * split.deg_rsigma;
    rep.add({name + " degree", deg_ok ? 0.0 : 1.0, deg_ok,
             "deg C^ = " + std::to_string(dual.degree) + ", 2 deg R^sigma / (d-1) = " + fmt(2.0 * split.deg_rsigma / (d - 1))});
    if (f.exact() && dual.exact && split.exact_sectional) {
      const HomPoly3<Rational> S = radical(*split.exact_sectional);
      const auto q = divide(f.exact_map().pullback(*dual.exact), *dual.exact * S * S);
      const bool ok = q.divides && q.quotient.degree() == 0;
      rep.add({name + " identity", ok ? 0.0 : 1.0, ok, ok ? "C^ o f = " + q.quotient.to_string() + " * C^ * S^2, S = " + S.to_string()
                                                           : "C^ o f is not a constant times C^ * S^2"});
    } else if (f.polynomial()) {
      const HomPoly3<Complex> S = radical(split.sectional);
      // compare in coordinates where C^ has balanced coefficients
      const auto sc = balancing_scales({dual.equation});
      HomPoly3<Complex> lhs = scale_variables(f.poly_map().pullback(dual.equation), sc);
      HomPoly3<Complex> rhs = scale_variables(dual.equation * S * S, sc);
      lhs = lhs * Complex(1.0 / lhs.norm());
      rhs = rhs * Complex(1.0 / rhs.norm());
      const auto q = divide(lhs, rhs, 1.0);
      const bool ok = q.quotient.degree() == 0 && q.residual <= rep.tolerance;
      rep.add({name + " identity", q.residual, ok, "relative remainder " + fmt(q.residual)});
    } else {
      rep.add({name + " identity", kInf, false, "needs a polynomial map"});
    }
  }
  if (rep.cases.empty()) rep.add({"vacuous", 0.0, true, "no component of degree >= 2"});
  return rep;
}

VerificationReport check_crit_finite(const AnyMap& f, const WebSpec& web, const RamificationSplit& split, int iterations,
                                     std::uint64_t seed) {
  VerificationReport rep;
  rep.check = "critfinite";
  rep.family = web.name;
  rep.d = f.degree();
  rep.seed = seed;
  rep.tolerance = 1e-5;
  std::mt19937_64 rng(seed);

  std::vector<DualCurveResult> duals;
  std::vector<const WebComponent*> owners;
  for (const auto& comp : web.components)
    if (comp.degree >= 2) {
      duals.push_back(dual_curve(comp, seed));
      owners.push_back(&comp);
    }
  const auto on_dual = [&](const Coords<Complex>& p) {
    double best = kInf;
    for (const auto& dc : duals) best = std::min(best, balanced_value(dc.equation, p));
    return best;
  };

  if (!duals.empty()) {
    int n = 0;
    double worst = 0.0;
    if (split.deg_rsigma > 0)
      for (int s = 0; s < 10; ++s)
        for (const auto& p : curve_points(split.sectional, rng))
          if (auto q = try_image(f, p)) {
            worst = std::max(worst, on_dual(*q));
            ++n;
          }
    rep.add({"f(R^sigma) in C^", worst, worst <= rep.tolerance, std::to_string(n) + " points, max residual " + fmt(worst)});

    worst = 0.0;
    n = 0;
    for (std::size_t k = 0; k < duals.size(); ++k)
      for (int s = 0; s < 20; ++s) {
        Coords<Complex> p;
        const WebComponent& comp = *owners[k];
        if (comp.param) {
          RationalParam<Rational> dp;
          dp.components = dual_parameterization(*comp.param).components;
          p = unit(dp.to_complex()(P1Point<Complex>{1.0, random_parameter(rng)}));
        } else {
          std::uniform_real_distribution<double> u(0.02, 0.98);
          p = unit(comp.lattice->tangent_dual(u(rng) + u(rng) * comp.lattice->tau()));
        }
        if (auto q = try_image(f, p)) {
          worst = std::max(worst, on_dual(*q));
          ++n;
        }
      }
    rep.add({"f(C^) in C^", worst, worst <= rep.tolerance, std::to_string(n) + " points, max residual " + fmt(worst)});
  }

  // Forward orbits of the critical web lines under g.
  std::vector<Coords<Complex>> nodes;
  for (const auto& w : split.web_lines) nodes.push_back(unit_canonical(w.line));
  const std::size_t critical = nodes.size();
  std::vector<int> next;
  double worst = 0.0;
  bool closed = true;
  std::string failure;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i >= critical + static_cast<std::size_t>(iterations) * std::max<std::size_t>(critical, 1)) {
      closed = false;
      break;
    }
    try {
      const auto img = induced_map_on_C(f, web, nodes[i]);
      worst = std::max(worst, img.curve_residual);
      int target = -1;
      for (std::size_t j = 0; j < nodes.size(); ++j)
        if (chordal_distance(nodes[j], img.point) < 1e-6) {
          worst = std::max(worst, chordal_distance(nodes[j], img.point));
          target = static_cast<int>(j);
          break;
        }
      if (target < 0) {
        target = static_cast<int>(nodes.size());
        nodes.push_back(img.point);
      }
      next.push_back(target);
    } catch (const Error& e) {
      closed = false;
      failure = e.what();
      break;
    }
  }
  std::ostringstream graph;
  for (std::size_t i = 0; i < next.size(); ++i) graph << (i ? ", " : "") << i << "->" << next[i];
  if (critical == 0) graph << "no critical web lines";
  rep.add({"orbit graph", closed ? worst : kInf, closed,
           (closed ? "closed: " : "not closed within " + std::to_string(iterations) + " iterates: ") + graph.str() + (failure.empty() ? "" : " (" + failure + ")")});
  return rep;
}

// ---------------------------------------------------------------------------
// Totally invariant points

namespace {

std::vector<P1Point<Complex>> totally_invariant_from(const RatMapP1<Complex>& phi, const Divisor1& crit) {
  const int d = phi.degree();
  std::vector<P1Point<Complex>> full;
  for (const auto& r : crit)
    if (r.multiplicity == d - 1) full.push_back(r.point);
  const auto same = [](const P1Point<Complex>& a, const P1Point<Complex>& b) { return chordal_distance(a, b) < 1e-8; };
  std::vector<P1Point<Complex>> out;
  for (const auto& q : full) {
    const P1Point<Complex> q1 = phi(q);
    bool keep = same(q1, q);
    if (!keep)
      for (const auto& r : full)
        if (same(q1, r) && same(phi(r), q)) keep = true;
    if (keep) out.push_back(q);
  }
  return out;
}

}  // namespace

std::vector<P1Point<Complex>> totally_invariant_points(const RatMapP1<Rational>& phi) {
  if (phi.degree() < 2) throw Error(ErrorKind::InvalidArgument, "degree must be at least 2");
  return totally_invariant_from(phi.to_complex(), crit_divisor(phi));
}

std::vector<P1Point<Complex>> totally_invariant_points(const RatMapP1<Complex>& phi) {
  if (phi.degree() < 2) throw Error(ErrorKind::InvalidArgument, "degree must be at least 2");
  return totally_invariant_from(phi, crit_divisor(phi));
}

// ---------------------------------------------------------------------------
// Singular locus

std::vector<Coords<Complex>> web_singular_points(const WebSpec& web) {
  std::vector<Coords<Complex>> out;
  const auto add = [&out](const Coords<Complex>& p) {
    const Coords<Complex> u = unit_canonical(p);
    if (distance_to_set(u, out) > 1e-8) out.push_back(u);
  };
  for (const auto& comp : web.components)
    for (const auto& s : comp.singular_points()) add(s);
  for (std::size_t i = 0; i < web.components.size(); ++i)
    for (std::size_t j = 0; j < web.components.size(); ++j) {
      if (i == j) continue;
      const auto& a = web.components[i];
      const auto& b = web.components[j];
      if (b.degree != 1 || (a.degree == 1 && j < i)) continue;
      Coords<Complex> l{b.equation.coeff(1, 0, 0), b.equation.coeff(0, 1, 0), b.equation.coeff(0, 0, 1)};
      const auto r = restrict_to_line(a.equation, ProjLine<Complex>(l));
      for (const auto& root : binary_roots(r.form)) add(r.point(root.point[0], root.point[1]));
    }
  return out;
}

VerificationReport check_sing_totinv(const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info) {
  VerificationReport rep;
  rep.check = "singtotinv";
  rep.family = web.name;
  rep.d = f.degree();
  rep.tolerance = 1e-6;
  const auto sing = web_singular_points(web);
  if (sing.empty()) {
    rep.add({"vacuous", 0.0, true, "web curve is smooth"});
    return rep;
  }
  for (std::size_t i = 0; i < sing.size(); ++i) {
    const std::string name = "singular point " + std::to_string(i);
    try {
      const auto img = induced_map_on_C(f, web, sing[i]);
      const double r = distance_to_set(img.point, sing);
      rep.add({name + " image", r, r <= rep.tolerance, "g(s) at distance " + fmt(r) + " from sing C"});
    } catch (const Error& e) {
      rep.add({name + " image", kInf, false, e.what()});
    }
    // Preimages through the lifts.
    double worst = 0.0;
    int n = 0;
    for (std::size_t k = 0; k < web.components.size() && k < info.lifts.size(); ++k) {
      const auto& comp = web.components[k];
      if (!comp.param || !info.lifts[k].phi || relative_value(comp.equation, sing[i]) > 1e-9) continue;
      const auto psi = comp.param->to_complex();
      const auto phi = info.lifts[k].phi->to_complex();
      for (const auto& a : param_preimages(psi, sing[i])) {
        const BinForm<Complex> eq = phi.den() * a.point[1] - phi.num() * a.point[0];
        for (const auto& b : binary_roots(eq)) {
          worst = std::max(worst, distance_to_set(unit(psi(b.point)), sing));
          ++n;
        }
      }
    }
    if (n > 0) rep.add({name + " preimages", worst, worst <= rep.tolerance, std::to_string(n) + " preimage parameters"});
    if (web.components.size() == 1) {
      const int m = multiplicity_at(web.components[0].equation, sing[i]);
      const int delta = web.degree();
      rep.add({name + " multiplicity", m == delta - 1 ? 0.0 : 1.0, m == delta - 1,
               "m_c = " + std::to_string(m) + ", delta - 1 = " + std::to_string(delta - 1)});
    } else {
      int m = 0;
      for (const auto& comp : web.components) m += multiplicity_at(comp.equation, sing[i]);
      rep.add({name + " multiplicity", 0.0, true, "m_c = " + std::to_string(m) + " (reducible web, recorded only)"});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<std::string> all_checks() { return {"invariance", "pushforward", "split", "sectional", "critfinite", "singtotinv", "totinv"}; }

std::vector<VerificationReport> run_checks(const AnyMap& f, const WebSpec& web, const std::optional<FamilyDescriptor>& info,
                                           const CheckOptions& opts) {
  const bool all = opts.checks.empty();
  const auto wanted = [&](const std::string& c) { return all || std::find(opts.checks.begin(), opts.checks.end(), c) != opts.checks.end(); };
  const auto known = all_checks();
  for (const auto& c : opts.checks)
    if (std::find(known.begin(), known.end(), c) == known.end())
      throw Error(ErrorKind::InvalidArgument, "unknown check '" + c + "'");
  std::vector<VerificationReport> out;
  const auto not_applicable = [&](const std::string& check, const std::string& why) {
    if (all) return;
    VerificationReport rep;
    rep.check = check;
    rep.family = web.name;
    rep.d = f.degree();
    rep.seed = opts.seed;
    rep.add({"not applicable", kInf, false, why});
    out.push_back(rep);
  };

  if (wanted("invariance")) out.push_back(check_invariance(f, web, opts.samples, opts.tol, opts.seed));
  if (wanted("pushforward")) out.push_back(check_pushforward(f, web, 20, opts.seed));

  std::optional<RamificationSplit> split;
  std::string split_error;
  const bool need_split = wanted("split") || wanted("sectional") || wanted("critfinite");
  if (need_split) {
    if (!info) {
      split_error = "no family descriptor";
    } else if (!f.polynomial()) {
      split_error = "needs a polynomial map";
    } else {
      try {
        split = ramification_split(f, web, *info);
      } catch (const Error& e) {
        split_error = e.what();
      }
    }
  }
  if (wanted("split")) {
    if (info && f.polynomial()) {
      auto rep = check_split(f, web, *info);
      rep.seed = opts.seed;
      out.push_back(rep);
    } else {
      not_applicable("split", split_error);
    }
  }
  if (wanted("sectional")) {
    if (split) {
      out.push_back(check_sectional_identity(f, web, *split, opts.seed));
    } else if (info && f.polynomial()) {
      VerificationReport rep;
      rep.check = "sectional";
      rep.family = web.name;
      rep.d = f.degree();
      rep.add({"split", kInf, false, split_error});
      out.push_back(rep);
    } else {
      not_applicable("sectional", split_error);
    }
  }
  // Critical finiteness is a property of the cubic families only.
  const bool cubic = web.components.size() == 1 && web.components[0].degree == 3;
  if (wanted("critfinite") && (cubic || !all)) {
    if (split) {
      out.push_back(check_crit_finite(f, web, *split, 10, opts.seed));
    } else {
      not_applicable("critfinite", split_error);
    }
  }
  if (wanted("singtotinv")) {
    auto rep = check_sing_totinv(f, web, info.value_or(FamilyDescriptor{}));
    rep.seed = opts.seed;
    out.push_back(rep);
  }
  if (wanted("totinv")) {
    VerificationReport rep;
    rep.check = "totinv";
    rep.family = web.name;
    rep.d = f.degree();
    rep.seed = opts.seed;
    if (info)
      for (std::size_t k = 0; k < info->lifts.size(); ++k) {
        if (!info->lifts[k].phi) continue;
        const auto pts = totally_invariant_points(*info->lifts[k].phi);
        std::ostringstream os;
        for (const auto& p : pts) os << to_string(p) << " ";
        rep.add({"lift " + std::to_string(k), pts.size() <= 2 ? 0.0 : 1.0, pts.size() <= 2,
                 std::to_string(pts.size()) + " totally invariant points " + os.str()});
      }
    if (rep.cases.empty()) {
      if (all) rep.add({"vacuous", 0.0, true, "no rational lift"});
      else rep.add({"not applicable", kInf, false, "no rational lift"});
    }
    if (info || !all) out.push_back(rep);
  }
  return out;
}

}  // namespace webendo

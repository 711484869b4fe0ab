#include "webendo/curves.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace webendo {

std::string to_string(CurveFamily f) {
  switch (f) {
    case CurveFamily::Line: return "line";
    case CurveFamily::Conic: return "conic";
    case CurveFamily::NodalCubic: return "nodal-cubic";
    case CurveFamily::SmoothCubic: return "smooth-cubic";
    case CurveFamily::Union: return "union";
  }
  return "union";
}

CurveFamily parse_curve_family(const std::string& s) {
  for (auto f : {CurveFamily::Line, CurveFamily::Conic, CurveFamily::NodalCubic, CurveFamily::SmoothCubic, CurveFamily::Union})
    if (to_string(f) == s) return f;
  throw Error(ErrorKind::Parse, "unknown curve family '" + s + "'");
}

template <Field F>
RationalParam<Complex> RationalParam<F>::to_complex() const {
  RationalParam<Complex> out;
  for (int v = 0; v < 3; ++v) out.components[static_cast<std::size_t>(v)] = components[static_cast<std::size_t>(v)].to_complex();
  out.ramification = ramification;
  for (const auto& s : special) out.special.push_back(webendo::to_complex(s));
  return out;
}
template struct RationalParam<Rational>;
template struct RationalParam<Complex>;

namespace {

template <Field F>
std::array<BinForm<F>, 3> cross_forms(const std::array<BinForm<F>, 3>& a, const std::array<BinForm<F>, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <Field F>
std::array<BinForm<F>, 3> derivative_cross(const std::array<BinForm<F>, 3>& p) {
  return cross_forms<F>({p[0].d0(), p[1].d0(), p[2].d0()}, {p[0].d1(), p[1].d1(), p[2].d1()});
}

BinForm<Rational> gcd3(const std::array<BinForm<Rational>, 3>& c) {
  BinForm<Rational> g = BinForm<Rational>::zero(c[0].degree());
  for (const auto& x : c) {
    if (x.is_zero()) continue;
    g = g.is_zero() ? x : gcd(g, x);
  }
  return g;
}

// Scales a triple of forms to coprime integer coefficients, first nonzero positive.
void make_primitive(std::array<BinForm<Rational>, 3>& c) {
  mpz_class num = 0, den = 1;
  for (const auto& f : c)
    for (const auto& x : f.coeffs()) {
      if (sgn(x) == 0) continue;
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
  for (const auto& f : c)
    for (const auto& x : f.coeffs()) {
      if (sgn(x) == 0) continue;
      mpz_class v = x.get_num() * (den / x.get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
  if (sgn(num) == 0) return;
  Rational s(den, num);
  s.canonicalize();
  for (const auto& f : c) {
    bool done = false;
    for (const auto& x : f.coeffs())
      if (sgn(x) != 0) {
        if (sgn(x) < 0) s = -s;
        done = true;
        break;
      }
    if (done) break;
  }
  for (auto& f : c) f *= s;
}

}  // namespace

DualParameterization dual_parameterization(const RationalParam<Rational>& psi) {
  auto c = derivative_cross(psi.components);
  bool all_zero = true;
  for (const auto& x : c) all_zero = all_zero && x.is_zero();
  if (all_zero) throw Error(ErrorKind::DegenerateTangent, "parameterization has no tangent lines");
  DualParameterization out;
  out.removed = gcd3(c);
  for (int v = 0; v < 3; ++v) out.components[static_cast<std::size_t>(v)] = divide_exact(c[static_cast<std::size_t>(v)], out.removed);
  make_primitive(out.components);
  return out;
}

int ramification_degree(const RationalParam<Rational>& psi) { return dual_parameterization(psi).removed.degree(); }

NodalCubicData nodal_cubic_data() {
  using P = HomPoly3<Rational>;
  using B = BinForm<Rational>;
  NodalCubicData d;
  d.curve.equation = P::monomial(3, 0, 0) + P::monomial(0, 3, 0) - P::monomial(1, 1, 1);
  d.curve.family = CurveFamily::NodalCubic;
  d.curve.singular.emplace_back(Rational(0), Rational(0), Rational(1));
  d.psi.components = {B({0, 0, -1, 0}), B({0, 1, 0, 0}), B({-1, 0, 0, 1})};
  d.psi.special = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  d.dual_param = {B({1, 0, 0, 2, 0}), B({0, 2, 0, 0, 1}), B({0, 0, 1, 0, 0})};
  return d;
}

ProjPoint<Rational> nodal_pi_closed(const P1Point<Rational>& a, const P1Point<Rational>& b) {
  const Rational s0 = a[0] * b[0], s1 = a[0] * b[1] + a[1] * b[0], s2 = a[1] * b[1];
  return ProjPoint<Rational>(Rational(s2 * s1 + s0 * s0), Rational(s1 * s0 + s2 * s2), Rational(s2 * s0));
}

namespace {

template <Field F>
bool same_p1(const P1Point<F>& a, const P1Point<F>& b, double tol) {
  if constexpr (is_exact_v<F>) {
    return sgn(a[0] * b[1] - a[1] * b[0]) == 0;
  } else {
    return chordal_distance(a, b) <= tol;
  }
}

}  // namespace

template <Field F>
ProjPoint<F> tangent_dual(const RationalParam<F>& psi, const P1Point<F>& a) {
  const auto c = derivative_cross(psi.components);
  Coords<F> t{c[0].eval(a), c[1].eval(a), c[2].eval(a)};
  if constexpr (is_exact_v<F>) {
    if (is_zero_vector(t)) {
      const auto dp = dual_parameterization(psi);
      t = {dp.components[0].eval(a), dp.components[1].eval(a), dp.components[2].eval(a)};
    }
    if (is_zero_vector(t)) throw Error(ErrorKind::DegenerateTangent, "no tangent line at this parameter");
  } else {
    double scale = 0.0;
    for (const auto& f : c) scale = std::max(scale, f.norm());
    const double an = std::hypot(std::abs(a[0]), std::abs(a[1]));
    if (!(norm(t) > 1e-12 * scale * std::pow(an, c[0].degree()))) throw Error(ErrorKind::DegenerateTangent, "no tangent line at this parameter");
  }
  return ProjPoint<F>(t);
}

template <Field F>
ProjPoint<F> pi_map(const RationalParam<F>& psi, const P1Point<F>& a, const P1Point<F>& b, double tol) {
  if (same_p1(a, b, tol)) {
    for (const auto& r : psi.ramification)
      if (chordal_distance(r.point, to_complex(a)) <= std::max(tol, 1e-12))
        throw IndeterminateError(Indeterminacy::RamifiedDiagonal, "diagonal pair at a ramified parameter");
    return tangent_dual(psi, a);
  }
  const Coords<F> pa = psi(a), pb = psi(b);
  if (proportional(pa, pb, tol)) throw IndeterminateError(Indeterminacy::SingularPair, "distinct parameters over the same point");
  return ProjPoint<F>(cross(pa, pb));
}

template ProjPoint<Rational> tangent_dual(const RationalParam<Rational>&, const P1Point<Rational>&);
template ProjPoint<Complex> tangent_dual(const RationalParam<Complex>&, const P1Point<Complex>&);
template ProjPoint<Rational> pi_map(const RationalParam<Rational>&, const P1Point<Rational>&, const P1Point<Rational>&, double);
template ProjPoint<Complex> pi_map(const RationalParam<Complex>&, const P1Point<Complex>&, const P1Point<Complex>&, double);

std::vector<P1Root> param_preimages(const RationalParam<Rational>& psi, const Coords<Rational>& c) {
  std::array<BinForm<Rational>, 3> g;
  for (int r = 0; r < 3; ++r) {
    const auto i = static_cast<std::size_t>((r + 1) % 3), j = static_cast<std::size_t>((r + 2) % 3);
    g[static_cast<std::size_t>(r)] = c[i] * psi.components[j] - c[j] * psi.components[i];
  }
  const BinForm<Rational> h = gcd3(g);
  if (h.is_zero()) throw Error(ErrorKind::InvalidArgument, "degenerate parameterization");
  if (h.degree() == 0) return {};
  return binary_roots(h);
}

std::vector<P1Root> param_preimages(const RationalParam<Complex>& psi, const Coords<Complex>& c, double tol) {
  std::array<BinForm<Complex>, 3> g;
  int best = 0;
  for (int r = 0; r < 3; ++r) {
    const auto i = static_cast<std::size_t>((r + 1) % 3), j = static_cast<std::size_t>((r + 2) % 3);
    g[static_cast<std::size_t>(r)] = c[i] * psi.components[j] - c[j] * psi.components[i];
    if (g[static_cast<std::size_t>(r)].norm() > g[static_cast<std::size_t>(best)].norm()) best = r;
  }
  std::vector<P1Root> out;
  for (const auto& r : binary_roots(g[static_cast<std::size_t>(best)])) {
    const Coords<Complex> p = psi(r.point);
    if (norm(p) == 0.0) continue;
    if (chordal_distance(p, c) <= tol) out.push_back(r);
  }
  return out;
}

template <Field F>
int multiplicity_at(const HomPoly3<F>& curve, const Coords<F>& c, double tol) {
  // Order of the first non-vanishing layer of partial derivatives.
  std::vector<HomPoly3<F>> layer{curve};
  Coords<Complex> cu{to_complex(c[0]), to_complex(c[1]), to_complex(c[2])};
  for (int k = 0; k <= curve.degree(); ++k) {
    for (const auto& p : layer) {
      if constexpr (is_exact_v<F>) {
        if (sgn(p.eval(c)) != 0) return k;
      } else {
        if (relative_value(p, cu) > tol) return k;
      }
    }
    std::vector<HomPoly3<F>> next;
    for (const auto& p : layer)
      for (int v = 0; v < 3; ++v) {
        HomPoly3<F> d = p.derivative(v);
        if (d.is_zero()) continue;
        bool dup = false;
        for (const auto& q : next) dup = dup || q == d;
        if (!dup) next.push_back(std::move(d));
      }
    layer = std::move(next);
  }
  return curve.degree();
}

template int multiplicity_at(const HomPoly3<Rational>&, const Coords<Rational>&, double);
template int multiplicity_at(const HomPoly3<Complex>&, const Coords<Complex>&, double);

// ---------------------------------------------------------------------------
// Webs

Coords<Complex> WebComponent::point_at(Complex t) const {
  if (lattice) return lattice->embed(t);
  const auto& p = param->components;
  return {p[0].to_complex().eval(1.0, t), p[1].to_complex().eval(1.0, t), p[2].to_complex().eval(1.0, t)};
}

Complex WebComponent::random_parameter(std::mt19937_64& rng) const {
  if (lattice) {
    std::uniform_real_distribution<double> u(0.02, 0.98);
    return u(rng) + u(rng) * lattice->tau();
  }
  return webendo::random_parameter(rng);
}

std::vector<Coords<Complex>> WebComponent::singular_points() const {
  std::vector<Coords<Complex>> out;
  if (exact_curve)
    for (const auto& s : exact_curve->singular) out.push_back(to_complex(s).coords());
  return out;
}

namespace {

WebComponent rational_component(CurveFamily family, DualCurve<Rational> curve, RationalParam<Rational> psi) {
  WebComponent w;
  w.family = family;
  w.degree = curve.degree();
  w.equation = curve.equation.to_complex();
  w.exact_curve = std::move(curve);
  w.param = std::move(psi);
  return w;
}

}  // namespace

WebComponent line_component(const Coords<Rational>& center) {
  using B = BinForm<Rational>;
  DualCurve<Rational> curve{HomPoly3<Rational>::linear(center), CurveFamily::Line, {}};
  const auto basis = line_basis(center);
  RationalParam<Rational> psi;
  for (int v = 0; v < 3; ++v)
    psi.components[static_cast<std::size_t>(v)] = B({basis[0][static_cast<std::size_t>(v)], basis[1][static_cast<std::size_t>(v)]});
  WebComponent w = rational_component(CurveFamily::Line, std::move(curve), std::move(psi));
  w.center = center;
  return w;
}

WebComponent conic_component() {
  using P = HomPoly3<Rational>;
  using B = BinForm<Rational>;
  DualCurve<Rational> curve{P::monomial(0, 2, 0) - P::monomial(1, 0, 1), CurveFamily::Conic, {}};
  RationalParam<Rational> psi;
  psi.components = {B({0, 0, 1}), B({0, -1, 0}), B({1, 0, 0})};
  return rational_component(CurveFamily::Conic, std::move(curve), std::move(psi));
}

WebComponent nodal_component() {
  NodalCubicData d = nodal_cubic_data();
  return rational_component(CurveFamily::NodalCubic, std::move(d.curve), std::move(d.psi));
}

WebComponent smooth_component(Complex tau) {
  WebComponent w;
  w.family = CurveFamily::SmoothCubic;
  w.degree = 3;
  w.lattice = std::make_shared<const Lattice>(tau);
  w.equation = w.lattice->cubic();
  return w;
}

int WebSpec::degree() const {
  int d = 0;
  for (const auto& c : components) d += c.degree;
  return d;
}

HomPoly3<Complex> WebSpec::equation() const {
  HomPoly3<Complex> e = HomPoly3<Complex>::constant(1.0);
  for (const auto& c : components) e = e * c.equation;
  return e;
}

bool WebSpec::exact() const {
  for (const auto& c : components)
    if (!c.exact_curve) return false;
  return true;
}

std::optional<HomPoly3<Rational>> WebSpec::exact_equation() const {
  if (!exact()) return std::nullopt;
  HomPoly3<Rational> e = HomPoly3<Rational>::constant(Rational(1));
  for (const auto& c : components) e = e * c.exact_curve->equation;
  return e;
}

std::pair<double, int> WebSpec::residual(const Coords<Complex>& c) const {
  double best = 1e300;
  int which = -1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const double r = relative_value(components[i].equation, c);
    if (r < best) {
      best = r;
      which = static_cast<int>(i);
    }
  }
  return {best, which};
}

WebSpec make_web(const std::string& family, Complex tau) {
  const Rational o(0), l(1);
  WebSpec w;
  w.name = family;
  if (family == "pencil") {
    w.components.push_back(line_component({o, o, l}));
  } else if (family == "conic") {
    w.components.push_back(conic_component());
  } else if (family == "nodal") {
    w.components.push_back(nodal_component());
  } else if (family == "smooth-cubic") {
    w.components.push_back(smooth_component(tau));
  } else if (family == "two-lines") {
    w.components.push_back(line_component({o, l, o}));
    w.components.push_back(line_component({l, o, o}));
  } else if (family == "three-lines") {
    w.components.push_back(line_component({o, l, o}));
    w.components.push_back(line_component({l, o, o}));
    w.components.push_back(line_component({o, o, l}));
  } else if (family == "conic-line") {
    w.components.push_back(conic_component());
    w.components.push_back(line_component({o, l, o}));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown web family '" + family + "'");
  }
  return w;
}

std::vector<Leaf> leaves_through(const WebSpec& web, const Coords<Complex>& p, double cluster_tol) {
  std::vector<Leaf> out;
  const ProjLine<Complex> l(p);
  for (std::size_t k = 0; k < web.components.size(); ++k) {
    const auto& comp = web.components[k];
    const auto r = restrict_to_line(comp.equation, l);
    if (r.form.is_zero(1e-12 * comp.equation.norm() * std::pow(norm(r.basis[0]) + norm(r.basis[1]), comp.degree)))
      throw Error(ErrorKind::WholePencil, "the dual line of the point lies in the web curve");
    for (const auto& root : binary_roots(r.form, cluster_tol)) {
      Coords<Complex> c = r.point(root.point[0], root.point[1]);
      c = unit_canonical(c);
      out.push_back({c, root.multiplicity, static_cast<int>(k)});
    }
  }
  std::sort(out.begin(), out.end(), [](const Leaf& a, const Leaf& b) {
    for (int i = 0; i < 3; ++i) {
      const Complex x = a.dual_point[static_cast<std::size_t>(i)], y = b.dual_point[static_cast<std::size_t>(i)];
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return a.component < b.component;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Dual curves

DualCurveResult dual_curve(const WebComponent& component, std::uint64_t seed) {
  if (component.degree < 2) throw Error(ErrorKind::InvalidArgument, "a line has no dual curve");
  DualCurveResult out;
  if (component.param) {
    const auto dp = dual_parameterization(*component.param);
    const auto imp = implicitize(dp.components, 6, seed);
    out.exact = imp.equation;
    out.equation = imp.equation.to_complex();
    out.degree = imp.equation.degree();
    out.heldout_residual = imp.heldout_residual;
    // Cusps of the dual: where the dual parameterization ramifies.
    RationalParam<Rational> dual;
    dual.components = dp.components;
    const auto ram = dual_parameterization(dual).removed;
    if (ram.degree() > 0)
      for (const auto& r : binary_roots(ram)) {
        const auto dc = dual.to_complex();
        Coords<Complex> c = dc(r.point);
        out.singular.push_back(unit_canonical(c));
      }
    return out;
  }
  const auto lattice = component.lattice;
  const CurveSampler sampler = [lattice](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.02, 0.98);
    return lattice->tangent_dual(u(rng) + u(rng) * lattice->tau());
  };
  const auto imp = implicitize_sampled(sampler, 6, seed);
  out.equation = imp.equation;
  out.degree = imp.equation.degree();
  out.heldout_residual = imp.heldout_residual;
  out.sigma_ratio = imp.sigma_ratio;
  out.previous_ratio = imp.previous_ratio;
  for (const auto& f : lattice->flexes()) out.singular.push_back(lattice->tangent_dual(f.z));
  return out;
}

bool plucker_verify(const EulerData& e) {
  return 2 * e.degB - e.degBdual - e.degRpsi == e.chi && 2 * e.degBdual - e.degB - e.degRpsidual == e.chi;
}

std::string plucker_line(const EulerData& e) {
  std::ostringstream os;
  os << "2*" << e.degB << "-" << e.degBdual << "-" << e.degRpsi << " = " << (2 * e.degB - e.degBdual - e.degRpsi) << " = 2*" << e.degBdual
     << "-" << e.degB << "-" << e.degRpsidual << "  (chi = " << e.chi << ")";
  return os.str();
}

EulerData euler_data(const WebComponent& component, const DualCurveResult& dual) {
  EulerData e;
  e.degB = component.degree;
  e.degBdual = dual.degree;
  if (component.param) {
    e.chi = 2;
    e.degRpsi = ramification_degree(*component.param);
    RationalParam<Rational> d;
    d.components = dual_parameterization(*component.param).components;
    e.degRpsidual = ramification_degree(d);
    return e;
  }
  // Elliptic normalization: an immersion, and its dual map ramifies exactly
  // at the flexes (triple contact of the tangent).
  e.chi = 0;
  e.degRpsi = 0;
  const auto& lat = *component.lattice;
  for (const auto& f : lat.flexes()) {
    const auto r = restrict_to_line(lat.cubic(), ProjLine<Complex>(lat.tangent_dual(f.z)));
    const auto roots = binary_roots(r.form, 1e-3);
    if (roots.size() == 1 && roots[0].multiplicity == 3) ++e.degRpsidual;
  }
  return e;
}

}  // namespace webendo

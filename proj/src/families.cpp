#include "webendo/families.hpp"

#include <cmath>
#include <tuple>

#include "webendo/error.hpp"

namespace webendo {

namespace {

using P = HomPoly3<Rational>;

void require_degree(int d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "degree must be at least 2 (degree-1 maps are invertible)");
}

Rational sign_power(int e) { return (std::abs(e) % 2 == 0) ? Rational(1) : Rational(-1); }

std::vector<Rational> trimmed(std::vector<Rational> p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

// t -> -p(-t): the lift of x -> p(x) to the pencil of lines x = -t z.
RatMapP1<Rational> reflected(const std::vector<Rational>& p) {
  std::vector<Rational> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = -p[i] * sign_power(static_cast<int>(i));
  return polynomial_map(q);
}

// x^i z^(d-i) homogenization of a univariate polynomial in variable v.
P homogenize_univariate(const std::vector<Rational>& p, int v) {
  const int d = static_cast<int>(p.size()) - 1;
  P out(d);
  for (int i = 0; i <= d; ++i) {
    if (sgn(p[static_cast<std::size_t>(i)]) == 0) continue;
    out = out + (v == 0 ? P::monomial(i, 0, d - i, p[static_cast<std::size_t>(i)]) : P::monomial(0, i, d - i, p[static_cast<std::size_t>(i)]));
  }
  return out;
}

FamilyDescriptor descriptor(FamilyParams params, int d) {
  FamilyDescriptor info;
  params.degree = d;
  info.params = std::move(params);
  info.degree = d;
  std::tie(info.expected_rc, info.expected_rsigma) = expected_split(info.params.family, d);
  return info;
}

ComponentLift rational_lift(RatMapP1<Rational> phi) { return ComponentLift{std::move(phi), std::nullopt}; }

}  // namespace

std::pair<int, int> expected_split(const std::string& family, int d) {
  const int k = d - 1;
  if (family == "pencil" || family == "conic" || family == "conic-line") return {2 * k, k};
  if (family == "nodal") return {k, 2 * k};
  if (family == "smooth-cubic") return {0, 3 * k};
  if (family == "two-lines" || family == "three-lines") return {3 * k, 0};
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
}

FamilyMember make_pencil(const P& Pp, const P& Q, const P& R) {
  const int d = Pp.degree();
  if (Q.degree() != d || R.degree() != d) throw Error(ErrorKind::DegreeMismatch, "pencil components must share one degree");
  require_degree(d);
  for (const P* f : {&Pp, &Q})
    for (int t = 0; t < f->size(); ++t)
      if (monomial_exponent(d, t).k > 0 && sgn((*f)[t]) != 0)
        throw Error(ErrorKind::InvalidArgument, "the first two pencil components must not involve z");
  EndoP2<Rational> f({Pp, Q, R});

  // Line a0 x + a1 y = 0 contains (a1, -a0); its image joins [0:0:1] and [P:Q:*].
  std::vector<Rational> num(static_cast<std::size_t>(d + 1)), den(static_cast<std::size_t>(d + 1));
  for (int i = 0; i <= d; ++i) {
    const Rational s = sign_power(d - i);
    num[static_cast<std::size_t>(i)] = Pp.coeff(i, d - i, 0) * s;
    den[static_cast<std::size_t>(i)] = -Q.coeff(i, d - i, 0) * s;
  }
  FamilyParams params;
  params.family = "pencil";
  FamilyDescriptor info = descriptor(params, d);
  info.lifts.push_back(rational_lift(RatMapP1<Rational>(BinForm<Rational>(num), BinForm<Rational>(den))));
  return {std::move(f), make_web("pencil"), std::move(info)};
}

namespace {

EndoP2<Rational> ueda_map(const RatMapP1<Rational>& phi) {
  const auto& N = phi.num();
  const auto& D = phi.den();
  return EndoP2<Rational>({symmetric_reduce(BiForm<Rational>::product(D, D)), symmetric_reduce(BiForm<Rational>::symmetric_product(D, N)),
                           symmetric_reduce(BiForm<Rational>::product(N, N))});
}

}  // namespace

FamilyMember make_ueda(const RatMapP1<Rational>& phi) {
  const int d = phi.degree();
  require_degree(d);
  FamilyParams params;
  params.family = "conic";
  FamilyDescriptor info = descriptor(params, d);
  info.lifts.push_back(rational_lift(phi));
  return {ueda_map(phi), make_web("conic"), std::move(info)};
}

FamilyMember make_nodal(int d, int orientation) {
  require_degree(d);
  if (orientation != 1 && orientation != -1) throw Error(ErrorKind::InvalidArgument, "orientation must be + or -");
  // A_d(x, y, 1) homogenized: e1^a e2^b e3^c -> x^a y^b z^(d-a-b).
  P A(d), B(d);
  for (const auto& [e, c] : newton_power_sum(d)) {
    A = A + P::monomial(e[0], e[1], d - e[0] - e[1], c);
    B = B + P::monomial(e[1], e[0], d - e[0] - e[1], c);
  }
  const P Z = P::monomial(0, 0, d);
  EndoP2<Rational> f = orientation > 0 ? EndoP2<Rational>({A, B, Z}) : EndoP2<Rational>({B, A, Z});
  FamilyParams params;
  params.family = "nodal";
  params.orientation = orientation;
  FamilyDescriptor info = descriptor(params, d);
  info.lifts.push_back(rational_lift(power_map(orientation * d)));
  return {std::move(f), make_web("nodal"), std::move(info)};
}

FamilyMember make_two_lines(const std::vector<Rational>& p_in, const std::vector<Rational>& q_in) {
  const auto p = trimmed(p_in), q = trimmed(q_in);
  if (p.size() != q.size()) throw Error(ErrorKind::DegreeMismatch, "p and q must have the same degree");
  const int d = static_cast<int>(p.size()) - 1;
  require_degree(d);
  EndoP2<Rational> f({homogenize_univariate(p, 0), homogenize_univariate(q, 1), P::monomial(0, 0, d)});
  FamilyParams params;
  params.family = "two-lines";
  params.phi = p;
  params.psi = q;
  FamilyDescriptor info = descriptor(params, d);
  info.lifts.push_back(rational_lift(reflected(p)));
  info.lifts.push_back(rational_lift(reflected(q)));
  return {std::move(f), make_web("two-lines"), std::move(info)};
}

FamilyMember make_three_lines(int d) {
  require_degree(d);
  EndoP2<Rational> f({P::monomial(d, 0, 0), P::monomial(0, d, 0), P::monomial(0, 0, d)});
  FamilyParams params;
  params.family = "three-lines";
  FamilyDescriptor info = descriptor(params, d);
  for (int k = 0; k < 3; ++k) info.lifts.push_back(rational_lift(power_map(d, -sign_power(d))));
  return {std::move(f), make_web("three-lines"), std::move(info)};
}

FamilyMember make_conic_line(const Rational& c, int exponent) {
  if (sgn(c) == 0) throw Error(ErrorKind::InvalidArgument, "scale must be nonzero");
  const int d = std::abs(exponent);
  require_degree(d);
  const RatMapP1<Rational> phi = power_map(exponent, c);
  FamilyParams params;
  params.family = "conic-line";
  params.scale = c;
  params.orientation = exponent > 0 ? 1 : -1;
  FamilyDescriptor info = descriptor(params, d);
  info.lifts.push_back(rational_lift(phi));
  // On the pencil through pi(0, oo) the product of the two conic parameters
  // is the coordinate: t -> -(-t)^e / c^2.
  info.lifts.push_back(rational_lift(power_map(exponent, Rational(-sign_power(exponent) / (c * c)))));
  return {ueda_map(phi), make_web("conic-line"), std::move(info)};
}

// ---------------------------------------------------------------------------
// Smooth cubic

NumericEndo::NumericEndo(Complex tau, int m, int flex, double margin)
    : web_(make_web("smooth-cubic", tau)), g_(make_elliptic_endo(*web_.components[0].lattice, m, flex)), margin_(margin) {
  FamilyParams params;
  params.family = "smooth-cubic";
  params.tau = tau;
  params.mult = m;
  params.flex = flex;
  info_ = descriptor(params, m * m);
  info_.lifts.push_back(ComponentLift{std::nullopt, g_});
}

Coords<Complex> NumericEndo::induced(const Coords<Complex>& c) const {
  const Lattice& lat = lattice();
  return lat.embed(endo_apply(lat, g_, lat.log(c).z).z);
}

NumericImage NumericEndo::eval(const Coords<Complex>& p) const {
  const auto leaves = leaves_through(web_, p);
  if (leaves.size() != 3) throw Error(ErrorKind::NearCriticalPoint, "point lies on a tangent of the cubic");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (chordal_distance(leaves[i].dual_point, leaves[j].dual_point) < margin_)
        throw Error(ErrorKind::NearCriticalPoint, "web leaves through the point are not separated");
  std::array<Coords<Complex>, 3> img;
  for (std::size_t i = 0; i < 3; ++i) img[i] = induced(leaves[i].dual_point);
  std::array<Coords<Complex>, 3> meets;
  for (std::size_t i = 0; i < 3; ++i) {
    const Coords<Complex> m = cross(img[i], img[(i + 1) % 3]);
    if (norm(m) < 1e-12) throw Error(ErrorKind::NearCriticalPoint, "image leaves coincide");
    meets[i] = unit_canonical(m);
  }
  NumericImage out;
  out.point = meets[0];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) out.spread = std::max(out.spread, chordal_distance(meets[i], meets[j]));
  return out;
}

NumericEndo make_smooth_cubic(Complex tau, int m, int flex) { return NumericEndo(tau, m, flex); }

Interpolation realize(const NumericEndo& f, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Coords<Complex>, Coords<Complex>>> pairs;
  for (int attempt = 0; static_cast<int>(pairs.size()) < samples && attempt < 20 * samples; ++attempt) {
    const Coords<Complex> p = random_point(rng);
    try {
      pairs.emplace_back(p, f(p));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NearCriticalPoint) throw;
    }
  }
  return interpolate_endo(pairs, f.degree());
}

// ---------------------------------------------------------------------------

Construction construct(const FamilyParams& in) {
  const auto& name = in.family;
  const int d = in.degree;
  FamilyParams eff = in;  // with the defaults filled in
  Construction out;
  if (name == "smooth-cubic") {
    if (d != in.mult * in.mult) throw Error(ErrorKind::DegreeMismatch, "smooth-cubic degree must equal mult^2");
    out.numeric = make_smooth_cubic(in.tau, in.mult, in.flex);
    return out;
  }
  if (name == "pencil") {
    require_degree(d);
    out.exact = make_pencil(P::monomial(d, 0, 0), P::monomial(0, d, 0), P::monomial(0, 0, d) + P::monomial(d - 1, 1, 0));
  } else if (name == "conic") {
    std::vector<Rational> phi = trimmed(in.phi);
    if (phi.empty()) {
      require_degree(d);
      phi.assign(static_cast<std::size_t>(d + 1), Rational(0));
      phi.back() = 1;
    }
    if (static_cast<int>(phi.size()) - 1 != d) throw Error(ErrorKind::DegreeMismatch, "phi has degree " + std::to_string(phi.size() - 1));
    out.exact = make_ueda(polynomial_map(phi));
    eff.phi = phi;
  } else if (name == "nodal") {
    out.exact = make_nodal(d, in.orientation);
  } else if (name == "two-lines") {
    require_degree(d);
    std::vector<Rational> p = trimmed(in.phi), q = trimmed(in.psi);
    if (p.empty()) {
      p.assign(static_cast<std::size_t>(d + 1), Rational(0));
      p.front() = -1;
      p.back() = 1;
    }
    if (q.empty()) {
      q.assign(static_cast<std::size_t>(d + 1), Rational(0));
      q[1] = 1;
      q.back() = 1;
    }
    if (static_cast<int>(p.size()) - 1 != d) throw Error(ErrorKind::DegreeMismatch, "p has degree " + std::to_string(p.size() - 1));
    out.exact = make_two_lines(p, q);
    eff.phi = p;
    eff.psi = q;
  } else if (name == "three-lines") {
    out.exact = make_three_lines(d);
  } else if (name == "conic-line") {
    out.exact = make_conic_line(in.scale, in.orientation * d);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown family '" + name + "'");
  }
  out.exact->info.params = eff;
  return out;
}

}  // namespace webendo

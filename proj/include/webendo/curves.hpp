#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "webendo/binform.hpp"
#include "webendo/elliptic.hpp"
#include "webendo/hompoly.hpp"
#include "webendo/polyalg.hpp"

namespace webendo {

enum class CurveFamily { Line, Conic, NodalCubic, SmoothCubic, Union };

std::string to_string(CurveFamily f);
CurveFamily parse_curve_family(const std::string& s);

template <Field F>
struct RationalParam {
  std::array<BinForm<F>, 3> components;
  Divisor1 ramification;                // R_psi
  std::vector<P1Point<F>> special;      // parameters over singular points

  int degree() const { return components[0].degree(); }
  Coords<F> operator()(const F& a0, const F& a1) const {
    return {components[0].eval(a0, a1), components[1].eval(a0, a1), components[2].eval(a0, a1)};
  }
  Coords<F> operator()(const P1Point<F>& a) const { return (*this)(a[0], a[1]); }
  RationalParam<Complex> to_complex() const;
};

template <Field F>
struct DualCurve {
  HomPoly3<F> equation;
  CurveFamily family = CurveFamily::Union;
  std::vector<ProjPoint<F>> singular;

  int degree() const { return equation.degree(); }
};

// psi_{a0} x psi_{a1} with common factors removed: the parameterization of
// tangent lines. The degree of the removed factor is deg R_psi.
struct DualParameterization {
  std::array<BinForm<Rational>, 3> components;
  BinForm<Rational> removed;  // gcd of the raw cross product
};
DualParameterization dual_parameterization(const RationalParam<Rational>& psi);
int ramification_degree(const RationalParam<Rational>& psi);

struct NodalCubicData {
  DualCurve<Rational> curve;                     // u^3 + v^3 = u v w
  RationalParam<Rational> psi;                   // [-a^2 : a : a^3 - 1]
  std::array<BinForm<Rational>, 3> dual_param;   // [2a^3 + 1 : 2a + a^4 : a^2]
};
NodalCubicData nodal_cubic_data();

// [ab(a+b)+1 : a+b+a^2b^2 : ab], homogenized.
ProjPoint<Rational> nodal_pi_closed(const P1Point<Rational>& a, const P1Point<Rational>& b);

// Dual point of the tangent at psi(a).
template <Field F>
ProjPoint<F> tangent_dual(const RationalParam<F>& psi, const P1Point<F>& a);

// Dual of the line through psi(a) and psi(b); on the diagonal the tangent.
template <Field F>
ProjPoint<F> pi_map(const RationalParam<F>& psi, const P1Point<F>& a, const P1Point<F>& b, double tol = kDefaultTol);

// Parameters a with psi(a) = c.
std::vector<P1Root> param_preimages(const RationalParam<Rational>& psi, const Coords<Rational>& c);
std::vector<P1Root> param_preimages(const RationalParam<Complex>& psi, const Coords<Complex>& c, double tol = 1e-7);

template <Field F>
int multiplicity_at(const HomPoly3<F>& curve, const Coords<F>& c, double tol = 1e-8);

// ---------------------------------------------------------------------------
// Webs

struct WebComponent {
  CurveFamily family = CurveFamily::Line;
  int degree = 1;
  HomPoly3<Complex> equation;                       // always present
  std::optional<DualCurve<Rational>> exact_curve;   // rational components
  std::optional<RationalParam<Rational>> param;     // rational components
  std::shared_ptr<const Lattice> lattice;           // smooth cubic
  std::optional<Coords<Rational>> center;           // line components: the pencil's base point

  bool rational() const { return param.has_value(); }
  // Affine parameter t (rational) or torus coordinate z (smooth cubic).
  Coords<Complex> point_at(Complex t) const;
  Complex random_parameter(std::mt19937_64& rng) const;
  std::vector<Coords<Complex>> singular_points() const;
};

WebComponent line_component(const Coords<Rational>& center);
WebComponent conic_component();
WebComponent nodal_component();
WebComponent smooth_component(Complex tau);

struct WebSpec {
  std::string name;
  std::vector<WebComponent> components;

  int degree() const;
  HomPoly3<Complex> equation() const;
  std::optional<HomPoly3<Rational>> exact_equation() const;
  bool exact() const;
  // Minimum relative residual of c over the components, and which one.
  std::pair<double, int> residual(const Coords<Complex>& c) const;
};

// Web families by name: pencil, conic, nodal, smooth-cubic, two-lines,
// three-lines, conic-line.
WebSpec make_web(const std::string& family, Complex tau = Complex(0.0, 1.0));

struct Leaf {
  Coords<Complex> dual_point;  // c on C, unit norm
  int multiplicity = 1;
  int component = 0;
};

// The web lines through p: restricts each component to the dual line of p.
// Throws WholePencil if a component contains the whole dual line.
std::vector<Leaf> leaves_through(const WebSpec& web, const Coords<Complex>& p, double cluster_tol = kRootClusterTol);

// ---------------------------------------------------------------------------
// Dual curves and the Pluecker formula

struct DualCurveResult {
  HomPoly3<Complex> equation;
  std::optional<HomPoly3<Rational>> exact;
  int degree = 0;
  double heldout_residual = 0.0;
  double sigma_ratio = 0.0;
  double previous_ratio = 1.0;
  std::vector<Coords<Complex>> singular;  // cusps: images of the ramification of the dual parameterization
};

DualCurveResult dual_curve(const WebComponent& component, std::uint64_t seed = 0);

struct EulerData {
  int degB = 0, degBdual = 0, degRpsi = 0, degRpsidual = 0, chi = 0;
};

bool plucker_verify(const EulerData& e);
std::string plucker_line(const EulerData& e);
EulerData euler_data(const WebComponent& component, const DualCurveResult& dual);

}  // namespace webendo

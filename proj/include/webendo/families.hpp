#pragma once

#include <optional>
#include <string>
#include <vector>

#include "webendo/binform.hpp"
#include "webendo/curves.hpp"
#include "webendo/elliptic.hpp"
#include "webendo/polyalg.hpp"

namespace webendo {

// Construction parameters, as given on the command line and stored in map files.
struct FamilyParams {
  std::string family = "nodal";  // pencil|conic|smooth-cubic|nodal|two-lines|three-lines|conic-line
  int degree = 2;
  std::vector<Rational> phi;      // conic: phi(t) ascending; two-lines: p(t)
  std::vector<Rational> psi;      // two-lines: q(t)
  Rational scale = Rational(1);   // conic-line: t -> c t^(+-d)
  Complex tau = Complex(0.0, 1.0);
  int mult = 2;
  int flex = 0;
  int orientation = +1;
};

// Lift of f to the normalization of one web component.
struct ComponentLift {
  std::optional<RatMapP1<Rational>> phi;  // rational components
  std::optional<EllipticEndo> torus;      // smooth cubic
};

struct FamilyDescriptor {
  FamilyParams params;
  int degree = 2;
  int expected_rc = 0;      // deg R_f^C
  int expected_rsigma = 0;  // deg R_f^sigma
  std::vector<ComponentLift> lifts;  // parallel to the web components
};

struct FamilyMember {
  EndoP2<Rational> map;
  WebSpec web;
  FamilyDescriptor info;
};

FamilyMember make_pencil(const HomPoly3<Rational>& P, const HomPoly3<Rational>& Q, const HomPoly3<Rational>& R);
FamilyMember make_ueda(const RatMapP1<Rational>& phi);
FamilyMember make_nodal(int d, int orientation);
FamilyMember make_two_lines(const std::vector<Rational>& p, const std::vector<Rational>& q);
FamilyMember make_three_lines(int d);
FamilyMember make_conic_line(const Rational& c, int exponent);

struct NumericImage {
  Coords<Complex> point;
  double spread = 0.0;  // max chordal distance between pairwise meets of image leaves
};

inline constexpr double kLeafSeparation = 1e-4;

// Pointwise evaluator of the map induced by z -> m z + t on the smooth-cubic web.
class NumericEndo {
 public:
  NumericEndo(Complex tau, int m, int flex, double margin = kLeafSeparation);

  const WebSpec& web() const { return web_; }
  const Lattice& lattice() const { return *web_.components[0].lattice; }
  const EllipticEndo& endo() const { return g_; }
  const FamilyDescriptor& info() const { return info_; }
  int degree() const { return g_.m * g_.m; }
  double margin() const { return margin_; }

  // Throws NearCriticalPoint if two leaves through p are closer than the margin.
  NumericImage eval(const Coords<Complex>& p) const;
  Coords<Complex> operator()(const Coords<Complex>& p) const { return eval(p).point; }
  // g on the dual curve.
  Coords<Complex> induced(const Coords<Complex>& c) const;

 private:
  WebSpec web_;
  EllipticEndo g_;
  FamilyDescriptor info_;
  double margin_;
};

NumericEndo make_smooth_cubic(Complex tau, int m, int flex);

// Polynomial reconstruction of the smooth-cubic map from generic samples.
Interpolation realize(const NumericEndo& f, std::uint64_t seed = 0, int samples = 60);

// Builds the member described by params. Smooth cubic members come back
// as a NumericEndo; everything else as an exact FamilyMember.
struct Construction {
  std::optional<FamilyMember> exact;
  std::optional<NumericEndo> numeric;
  const WebSpec& web() const { return exact ? exact->web : numeric->web(); }
  const FamilyDescriptor& info() const { return exact ? exact->info : numeric->info(); }
};
Construction construct(const FamilyParams& params);

// Expected (deg R_f^C, deg R_f^sigma) for a family name and degree.
std::pair<int, int> expected_split(const std::string& family, int d);

}  // namespace webendo

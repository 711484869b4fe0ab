#pragma once

// Weierstrass model of C / (Z + tau Z) as the plane cubic
//   v^2 w = 4 u^3 - g2 u w^2 - g3 w^3
// in the dual plane, with z -> [wp(z) : wp'(z) : 1].

#include <array>
#include <vector>

#include "webendo/hompoly.hpp"
#include "webendo/projgeom.hpp"

namespace webendo {

struct WpValue {
  Complex p;   // wp(z)
  Complex dp;  // wp'(z)
};

// Lattice-normalized point of C / Lambda, reduced so that both coordinates
// in the (1, tau) basis lie in [0, 1).
struct TorusPoint {
  Complex z;
};

class Lattice {
 public:
  explicit Lattice(Complex tau);

  Complex tau() const { return tau_; }
  Complex g2() const { return g2_; }
  Complex g3() const { return g3_; }

  // Coordinates (a, b) with z = a + b tau.
  std::array<double, 2> coords(Complex z) const;
  TorusPoint reduce(Complex z) const;
  // Distance from z to the nearest lattice point, measured in lattice
  // coordinates (max norm).
  double lattice_distance(Complex z) const;
  bool in_lattice(Complex z, double tol = 1e-9) const { return lattice_distance(z) <= tol; }

  WpValue wp(Complex z) const;
  Complex wp2(Complex z) const;  // wp'' = 6 wp^2 - g2/2

  // Unit-norm representative of the embedded point; [0:1:0] at the origin.
  Coords<Complex> embed(Complex z) const;
  // Inverse of embed up to the lattice; throws NotOnCurve if c is not on the cubic.
  TorusPoint log(const Coords<Complex>& c) const;

  // v^2 w - 4 u^3 + g2 u w^2 + g3 w^3
  const HomPoly3<Complex>& cubic() const { return cubic_; }
  // Dual point of the tangent line at embed(z).
  Coords<Complex> tangent_dual(Complex z) const;

  // The nine 3-torsion points (j + k tau) / 3, index 3j + k.
  std::vector<TorusPoint> flexes() const;

  int row_terms() const { return rows_; }

 private:
  Complex tau_;
  Complex g2_, g3_;
  int rows_;
  Complex g2_row_constant_;
  HomPoly3<Complex> cubic_;
  std::vector<std::pair<Complex, Coords<Complex>>> grid_;
};

// Direct Eisenstein summation over lattice points with |w| <= radius; kept
// as an independent cross-check of the q-series.
std::array<Complex, 2> eisenstein_disk_sum(Complex tau, double radius = 30.0);

struct CollinearSum {
  bool flag = false;      // z1 + z2 + z3 in Lambda
  double residual = 0.0;  // |det| of the embedded unit points
};

CollinearSum collinear_sum_check(const Lattice& lattice, Complex z1, Complex z2, Complex z3);

// z -> m z + t.
struct EllipticEndo {
  int m = 2;
  Complex t = 0.0;
  int flex_index = 0;  // -1 when t is not one of the flexes
};

// Validated constructor: |m| >= 2 and t the flex with the given index.
EllipticEndo make_elliptic_endo(const Lattice& lattice, int m, int flex_index);

TorusPoint endo_apply(const Lattice& lattice, const EllipticEndo& g, Complex z);
// The m^2 solutions of m z + t = w.
std::vector<TorusPoint> endo_preimages(const Lattice& lattice, const EllipticEndo& g, Complex w);

}  // namespace webendo

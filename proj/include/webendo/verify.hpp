#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "webendo/curves.hpp"
#include "webendo/families.hpp"
#include "webendo/polyalg.hpp"

namespace webendo {

// A selfmap of P^2 that can at least be evaluated pointwise.
class AnyMap {
 public:
  AnyMap(EndoP2<Rational> f);
  AnyMap(EndoP2<Complex> f);
  AnyMap(NumericEndo f);

  int degree() const;
  bool exact() const { return exact_.has_value(); }
  bool polynomial() const { return poly_.has_value(); }
  const EndoP2<Rational>& exact_map() const { return *exact_; }
  const EndoP2<Complex>& poly_map() const { return *poly_; }
  const NumericEndo* numeric() const { return numeric_ ? &*numeric_ : nullptr; }

  Coords<Complex> operator()(const Coords<Complex>& p) const;

 private:
  std::optional<EndoP2<Rational>> exact_;
  std::optional<EndoP2<Complex>> poly_;
  std::optional<NumericEndo> numeric_;
};

struct CaseReport {
  std::string name;
  double residual = 0.0;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::string check;
  std::string family;
  int d = 0;
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = true;
  std::vector<CaseReport> cases;

  void add(CaseReport c);
};

inline constexpr double kInvarianceTol = 1e-8;

// A point of the component: through its parameterization when there is one,
// otherwise as a root of the equation on a random line.
Coords<Complex> sample_on_component(const WebComponent& comp, std::mt19937_64& rng);

struct InducedImage {
  Coords<Complex> point;
  double curve_residual = 0.0;   // relative value of the web equation at the image
  double consistency = 0.0;      // disagreement between two sample pairs
};

// g(c) = D f D (c). Throws NotOnCurve and InconsistentImage.
InducedImage induced_map_on_C(const AnyMap& f, const WebSpec& web, const Coords<Complex>& c, double tol = 1e-6);

VerificationReport check_invariance(const AnyMap& f, const WebSpec& web, int samples = 1000, double tol = kInvarianceTol,
                                    std::uint64_t seed = 0);

// Degree of f restricted to the web line D c onto its image line.
int pushforward_degree(const AnyMap& f, const WebSpec& web, const Coords<Complex>& c);
VerificationReport check_pushforward(const AnyMap& f, const WebSpec& web, int samples = 20, std::uint64_t seed = 0);

struct WebLine {
  Coords<Complex> line;
  std::optional<Coords<Rational>> exact_line;
  int multiplicity = 0;
  int component = 0;
};

struct RamificationSplit {
  std::vector<WebLine> web_lines;               // R_f^C
  HomPoly3<Complex> sectional;                   // R_f^sigma, repeated factors kept
  std::optional<HomPoly3<Rational>> exact_sectional;
  int deg_rc = 0;
  int deg_rsigma = 0;
};

// Throws SplitMismatch when a web line does not divide the Jacobian with the
// multiplicity predicted by the lift, RegimeMismatch for an exact map on an
// elliptic web.
RamificationSplit ramification_split(const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info);

VerificationReport check_split(const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info);
VerificationReport check_sectional_identity(const AnyMap& f, const WebSpec& web, const RamificationSplit& split,
                                            std::uint64_t seed = 0);
VerificationReport check_crit_finite(const AnyMap& f, const WebSpec& web, const RamificationSplit& split, int iterations = 10,
                                     std::uint64_t seed = 0);

// Points q with phi^{-1}(q) = {q} or lying on a totally invariant 2-cycle.
std::vector<P1Point<Complex>> totally_invariant_points(const RatMapP1<Rational>& phi);
std::vector<P1Point<Complex>> totally_invariant_points(const RatMapP1<Complex>& phi);

VerificationReport check_sing_totinv(const AnyMap& f, const WebSpec& web, const FamilyDescriptor& info);

// Singular points of the web curve: those of the components and their
// pairwise intersections.
std::vector<Coords<Complex>> web_singular_points(const WebSpec& web);

struct CheckOptions {
  std::vector<std::string> checks;  // empty: all applicable
  int samples = 1000;
  double tol = kInvarianceTol;
  std::uint64_t seed = 0;
};

std::vector<std::string> all_checks();
std::vector<VerificationReport> run_checks(const AnyMap& f, const WebSpec& web, const std::optional<FamilyDescriptor>& info,
                                           const CheckOptions& opts);

}  // namespace webendo

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "webendo/families.hpp"
#include "webendo/polyalg.hpp"
#include "webendo/verify.hpp"

namespace webendo {

using Json = nlohmann::ordered_json;

inline constexpr int kFileVersion = 1;

struct MapFile {
  std::optional<FamilyParams> family;
  std::optional<EndoP2<Rational>> exact;
  std::optional<EndoP2<Complex>> floating;
  double fit_residual = 0.0;  // interpolated maps only

  int degree() const { return exact ? exact->degree() : floating->degree(); }
  std::string regime() const { return exact ? "exact" : "floating"; }
};

Json to_json(const FamilyParams& p);
FamilyParams family_from_json(const Json& j);

// Nonzero terms only, keyed by exponent triple.
Json to_json(const HomPoly3<Rational>& p);
Json to_json(const HomPoly3<Complex>& p);
HomPoly3<Rational> exact_poly_from_json(const Json& terms, int degree);
HomPoly3<Complex> floating_poly_from_json(const Json& terms, int degree);

Json to_json(const MapFile& m);
// Throws Parse on schema violations and the EndoP2 errors on invalid maps.
MapFile map_from_json(const Json& j);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

// Web curve plus dual curve of every component of degree >= 2.
Json curve_file(const std::string& family, Complex tau, std::uint64_t seed = 0);
// The web named by a curve file.
WebSpec web_from_curve_file(const Json& j);

// Throws Io / Parse.
Json read_json(const std::string& path);
// Writes path.tmp and renames it over path.
void write_text_atomic(const std::string& path, const std::string& text);
void write_json_atomic(const std::string& path, const Json& j);

}  // namespace webendo

#include "webendo/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace webendo {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("field '") + key + "': " + e.what());
  }
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) {
    if (!x.is_string()) bad("rationals are stored as strings");
    out.push_back(parse_rational(x.get<std::string>()));
  }
  return out;
}

Exponent exponent_from(const Json& t, int degree) {
  const Json& e = field(t, "e");
  if (!e.is_array() || e.size() != 3) bad("exponent must be a triple");
  Exponent x{};
  try {
    x = {e[0].get<int>(), e[1].get<int>(), e[2].get<int>()};
  } catch (const nlohmann::json::exception&) {
    bad("exponent entries must be integers");
  }
  if (x.i < 0 || x.j < 0 || x.k < 0 || x.i + x.j + x.k != degree)
    bad("exponent [" + std::to_string(x.i) + "," + std::to_string(x.j) + "," + std::to_string(x.k) + "] not of degree " +
        std::to_string(degree));
  return x;
}

}  // namespace

Json to_json(const FamilyParams& p) {
  Json j;
  j["name"] = p.family;
  j["degree"] = p.degree;
  j["phi"] = rationals(p.phi);
  j["psi"] = rationals(p.psi);
  j["scale"] = to_string(p.scale);
  j["tau"] = {p.tau.real(), p.tau.imag()};
  j["mult"] = p.mult;
  j["flex"] = p.flex;
  j["orientation"] = p.orientation > 0 ? "+" : "-";
  return j;
}

FamilyParams family_from_json(const Json& j) {
  FamilyParams p;
  p.family = get<std::string>(j, "name");
  p.degree = get<int>(j, "degree");
  p.phi = rationals_from(field(j, "phi"));
  p.psi = rationals_from(field(j, "psi"));
  p.scale = parse_rational(get<std::string>(j, "scale"));
  const auto tau = get<std::vector<double>>(j, "tau");
  if (tau.size() != 2) bad("tau must be [re, im]");
  p.tau = Complex(tau[0], tau[1]);
  p.mult = get<int>(j, "mult");
  p.flex = get<int>(j, "flex");
  const auto o = get<std::string>(j, "orientation");
  if (o != "+" && o != "-") bad("orientation must be + or -");
  p.orientation = o == "+" ? 1 : -1;
  return p;
}

Json to_json(const HomPoly3<Rational>& p) {
  Json out = Json::array();
  for (int t = 0; t < p.size(); ++t) {
    if (sgn(p[t]) == 0) continue;
    const Exponent e = monomial_exponent(p.degree(), t);
    out.push_back({{"e", {e.i, e.j, e.k}}, {"num", p[t].get_num().get_str()}, {"den", p[t].get_den().get_str()}});
  }
  return out;
}

Json to_json(const HomPoly3<Complex>& p) {
  Json out = Json::array();
  for (int t = 0; t < p.size(); ++t) {
    if (p[t] == Complex(0.0)) continue;
    const Exponent e = monomial_exponent(p.degree(), t);
    out.push_back({{"e", {e.i, e.j, e.k}}, {"re", p[t].real()}, {"im", p[t].imag()}});
  }
  return out;
}

HomPoly3<Rational> exact_poly_from_json(const Json& terms, int degree) {
  if (!terms.is_array()) bad("coefficient list must be an array");
  HomPoly3<Rational> p(degree);
  for (const auto& t : terms) {
    const Exponent e = exponent_from(t, degree);
    Rational c;
    try {
      mpz_class num(get<std::string>(t, "num")), den(get<std::string>(t, "den"));
      if (den == 0) bad("zero denominator");
      c = Rational(num, den);
    } catch (const std::invalid_argument&) {
      bad("num/den must be decimal integers");
    }
    c.canonicalize();
    p.at(e.i, e.j) = c;
  }
  return p;
}

HomPoly3<Complex> floating_poly_from_json(const Json& terms, int degree) {
  if (!terms.is_array()) bad("coefficient list must be an array");
  HomPoly3<Complex> p(degree);
  for (const auto& t : terms) {
    const Exponent e = exponent_from(t, degree);
    p.at(e.i, e.j) = Complex(get<double>(t, "re"), get<double>(t, "im"));
  }
  return p;
}

Json to_json(const MapFile& m) {
  Json j;
  j["format"] = "webendo-map";
  j["version"] = kFileVersion;
  j["family"] = m.family ? to_json(*m.family) : Json(nullptr);
  j["regime"] = m.regime();
  j["degree"] = m.degree();
  Json comps = Json::array();
  for (int v = 0; v < 3; ++v) comps.push_back(m.exact ? to_json((*m.exact)[v]) : to_json((*m.floating)[v]));
  j["components"] = comps;
  if (m.floating) j["fitResidual"] = m.fit_residual;
  return j;
}

MapFile map_from_json(const Json& j) {
  if (get<std::string>(j, "format") != "webendo-map") bad("not a map file");
  if (get<int>(j, "version") != kFileVersion) bad("unsupported map file version");
  MapFile m;
  if (!field(j, "family").is_null()) m.family = family_from_json(j.at("family"));
  const int d = get<int>(j, "degree");
  if (d < 1) bad("degree must be positive");
  const Json& comps = field(j, "components");
  if (!comps.is_array() || comps.size() != 3) bad("a map has three components");
  const auto regime = get<std::string>(j, "regime");
  if (regime == "exact") {
    m.exact = EndoP2<Rational>({exact_poly_from_json(comps[0], d), exact_poly_from_json(comps[1], d),
                                exact_poly_from_json(comps[2], d)});
  } else if (regime == "floating") {
    m.floating = EndoP2<Complex>({floating_poly_from_json(comps[0], d), floating_poly_from_json(comps[1], d),
                                  floating_poly_from_json(comps[2], d)});
    if (j.contains("fitResidual")) m.fit_residual = get<double>(j, "fitResidual");
  } else {
    bad("regime must be exact or floating");
  }
  return m;
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  j["family"] = r.family;
  j["d"] = r.d;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["tolerance"] = r.tolerance;
  // JSON has no infinity
  j["maxResidual"] = std::isfinite(r.max_residual) ? Json(r.max_residual) : Json(nullptr);
  j["pass"] = r.pass;
  Json cases = Json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"name", c.name},
                     {"residual", std::isfinite(c.residual) ? Json(c.residual) : Json(nullptr)},
                     {"pass", c.pass},
                     {"detail", c.detail}});
  j["cases"] = cases;
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.check = get<std::string>(j, "check");
  r.family = get<std::string>(j, "family");
  r.d = get<int>(j, "d");
  r.seed = get<std::uint64_t>(j, "seed");
  r.samples = get<int>(j, "samples");
  r.tolerance = get<double>(j, "tolerance");
  const auto residual = [](const Json& x) { return x.is_null() ? std::numeric_limits<double>::infinity() : x.get<double>(); };
  r.max_residual = residual(field(j, "maxResidual"));
  r.pass = get<bool>(j, "pass");
  const Json& cases = field(j, "cases");
  if (!cases.is_array()) bad("cases must be an array");
  for (const auto& c : cases)
    r.cases.push_back({get<std::string>(c, "name"), residual(field(c, "residual")), get<bool>(c, "pass"),
                       get<std::string>(c, "detail")});
  return r;
}

Json curve_file(const std::string& family, Complex tau, std::uint64_t seed) {
  const WebSpec web = make_web(family, tau);
  Json j;
  j["format"] = "webendo-curve";
  j["version"] = kFileVersion;
  j["family"] = family;
  j["tau"] = {tau.real(), tau.imag()};
  j["seed"] = seed;
  j["degree"] = web.degree();
  Json comps = Json::array();
  for (const auto& comp : web.components) {
    Json c;
    c["kind"] = to_string(comp.family);
    c["degree"] = comp.degree;
    c["curve"] = comp.exact_curve ? to_json(comp.exact_curve->equation) : to_json(comp.equation);
    if (comp.degree >= 2) {
      const auto dual = dual_curve(comp, seed);
      const auto e = euler_data(comp, dual);
      Json dj;
      dj["regime"] = dual.exact ? "exact" : "floating";
      dj["degree"] = dual.degree;
      dj["terms"] = dual.exact ? to_json(*dual.exact) : to_json(dual.equation);
      if (!dual.exact) dj["heldoutResidual"] = dual.heldout_residual;
      dj["cusps"] = static_cast<int>(dual.singular.size());
      c["dual"] = dj;
      c["plucker"] = plucker_line(e);
      c["pluckerHolds"] = plucker_verify(e);
    } else {
      c["dual"] = nullptr;
    }
    comps.push_back(c);
  }
  j["components"] = comps;
  return j;
}

WebSpec web_from_curve_file(const Json& j) {
  if (get<std::string>(j, "format") != "webendo-curve") bad("not a curve file");
  const auto tau = get<std::vector<double>>(j, "tau");
  if (tau.size() != 2) bad("tau must be [re, im]");
  try {
    return make_web(get<std::string>(j, "family"), Complex(tau[0], tau[1]));
  } catch (const Error& e) {
    bad(e.what());
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(path + ": " + e.what());
  }
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp);
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot rename onto " + path);
  }
}

void write_json_atomic(const std::string& path, const Json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

}  // namespace webendo

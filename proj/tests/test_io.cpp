#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "webendo/io.hpp"

using namespace webendo;

static std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("webendo_io_" + name)).string();
}

TEST_CASE("exact map round trip") {
  FamilyParams p;
  p.family = "conic";
  p.degree = 3;
  p.phi = {make_rational(-1, 3), make_rational(0), make_rational(7, 2), make_rational(1)};
  const FamilyMember m = make_ueda(polynomial_map(p.phi));
  MapFile f{p, m.map, std::nullopt};
  const std::string path = tmp_path("exact.json");
  write_json_atomic(path, to_json(f));
  const MapFile g = map_from_json(read_json(path));
  CHECK(g.regime() == "exact");
  CHECK(*g.exact == m.map);
  CHECK(g.family->family == "conic");
  CHECK(g.family->phi == p.phi);
  // same bytes again
  CHECK(to_json(g).dump() == to_json(f).dump());
  std::filesystem::remove(path);
}

TEST_CASE("floating map round trip is bit exact") {
  const auto s = make_smooth_cubic(Complex(0.0, 1.0), 2, 0);
  const auto fit = realize(s);
  FamilyParams p;
  p.family = "smooth-cubic";
  p.degree = 4;
  MapFile f{p, std::nullopt, fit.map, fit.residual};
  const MapFile g = map_from_json(Json::parse(to_json(f).dump()));
  for (int v = 0; v < 3; ++v)
    for (int t = 0; t < (*g.floating)[v].size(); ++t) CHECK((*g.floating)[v][t] == (*f.floating)[v][t]);
  CHECK(g.fit_residual == fit.residual);
}

TEST_CASE("map file errors") {
  Json j = to_json(MapFile{std::nullopt, make_nodal(2, 1).map, std::nullopt});
  CHECK_NOTHROW(map_from_json(j));
  Json bad = j;
  bad["components"][0][0]["e"] = {1, 1, 1};
  CHECK_THROWS_AS(map_from_json(bad), Error);
  bad = j;
  bad["regime"] = "symbolic";
  CHECK_THROWS_AS(map_from_json(bad), Error);
  bad = j;
  bad.erase("components");
  CHECK_THROWS_AS(map_from_json(bad), Error);
  bad = j;
  bad["components"][2] = Json::array();  // z^2 gone: [0:0:1] becomes a base point
  try {
    map_from_json(bad);
    FAIL("accepted a map with a base point");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CommonZero);
  }
  CHECK_THROWS_AS(read_json(tmp_path("does_not_exist.json")), Error);
}

TEST_CASE("report json") {
  VerificationReport r;
  r.check = "invariance";
  r.family = "nodal";
  r.d = 2;
  r.seed = 7;
  r.samples = 10;
  r.tolerance = 1e-8;
  r.add({"a", 1e-12, true, "fine"});
  r.add({"b", std::numeric_limits<double>::infinity(), false, "broken"});
  const Json j = to_json(r);
  CHECK(j["maxResidual"].is_null());
  CHECK(j["pass"] == false);
  const auto back = report_from_json(Json::parse(j.dump()));
  CHECK(back.cases.size() == 2);
  CHECK(std::isinf(back.max_residual));
  CHECK(to_json(back).dump() == j.dump());
  // key order is part of the schema
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"check", "family", "d", "seed", "samples", "tolerance", "maxResidual", "pass", "cases"});
}

TEST_CASE("curve files") {
  const Json c = curve_file("nodal", Complex(0.0, 1.0));
  CHECK(c["components"][0]["dual"]["degree"] == 4);
  CHECK(c["components"][0]["dual"]["regime"] == "exact");
  CHECK(c["components"][0]["pluckerHolds"] == true);
  CHECK(web_from_curve_file(c).name == "nodal");
  const Json l = curve_file("three-lines", Complex(0.0, 1.0));
  CHECK(l["components"].size() == 3);
  CHECK(l["components"][1]["dual"].is_null());
  Json bad = c;
  bad["family"] = "quartic";
  CHECK_THROWS_AS(web_from_curve_file(bad), Error);
}

TEST_CASE("atomic write leaves no temp file") {
  const std::string path = tmp_path("atomic.txt");
  write_text_atomic(path, "one\n");
  write_text_atomic(path, "two\n");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "two");
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::temp_directory_path()))
    CHECK(e.path().filename().string().find("webendo_io_atomic.txt.tmp") == std::string::npos);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_text_atomic("/nonexistent-dir/x.json", "x"), Error);
}

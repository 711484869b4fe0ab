#include "webendo/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "webendo/io.hpp"
#include "webendo/render.hpp"

namespace webendo {

namespace {

const std::vector<std::string> kFamilies = {"pencil", "conic", "smooth-cubic", "nodal", "two-lines", "three-lines", "conic-line"};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::vector<double> parse_doubles(const std::string& s, std::size_t n, const char* what) {
  const auto items = split_commas(s);
  if (items.size() != n) throw Error(ErrorKind::Parse, std::string(what) + " needs " + std::to_string(n) + " comma separated numbers");
  std::vector<double> out;
  for (const auto& x : items) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(x, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != x.size() || !std::isfinite(v)) throw Error(ErrorKind::Parse, std::string(what) + ": bad number '" + x + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& x : split_commas(s)) out.push_back(parse_rational(x));
  return out;
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

struct ConstructArgs {
  std::string family, phi, psi, scale = "1", tau = "0,1", orientation = "+", out;
  int degree = 0;
  int mult = 2, flex = 0;
  std::uint64_t seed = 0;
};

FamilyParams family_params(const ConstructArgs& a) {
  FamilyParams p;
  p.family = a.family;
  p.mult = a.mult;
  p.flex = a.flex;
  // smooth cubic members have algebraic degree mult^2
  p.degree = a.degree != 0 ? a.degree : (a.family == "smooth-cubic" ? a.mult * a.mult : 2);
  if (!a.phi.empty()) p.phi = parse_rationals(a.phi);
  if (!a.psi.empty()) p.psi = parse_rationals(a.psi);
  p.scale = parse_rational(a.scale);
  if (p.scale == 0) throw Error(ErrorKind::InvalidArgument, "--c must be nonzero");
  const auto t = parse_doubles(a.tau, 2, "--tau");
  p.tau = Complex(t[0], t[1]);
  if (a.orientation != "+" && a.orientation != "-") throw Error(ErrorKind::InvalidArgument, "--orientation is + or -");
  p.orientation = a.orientation == "+" ? 1 : -1;
  return p;
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  const FamilyParams p = family_params(a);
  const Construction c = construct(p);
  MapFile m;
  if (c.exact) {
    m.exact = c.exact->map;
    m.family = c.exact->info.params;
  } else {
    const auto fit = realize(*c.numeric, a.seed);
    if (fit.residual > kInterpolationTol)
      throw Error(ErrorKind::ResidualTooLarge, "interpolation residual " + fmt(fit.residual));
    m.floating = fit.map;
    m.fit_residual = fit.residual;
    m.family = p;
  }
  write_json_atomic(a.out, to_json(m));
  const auto& info = c.info();
  out << "family " << p.family << ", degree " << m.degree() << ", regime " << m.regime() << "\n";
  out << "expected split: deg R^C = " << info.expected_rc << ", deg R^sigma = " << info.expected_rsigma
      << " (total " << info.expected_rc + info.expected_rsigma << ")\n";
  if (m.floating) out << "interpolation residual " << fmt(m.fit_residual) << ", seed " << a.seed << "\n";
  if (m.exact && m.degree() <= 3)
    for (int v = 0; v < 3; ++v) out << "  f" << v << " = " << (*m.exact)[v].to_string() << "\n";
  out << "wrote " << a.out << "\n";
  return kExitPass;
}

struct VerifyArgs {
  std::string map, web = "auto", checks, report;
  int samples = 1000;
  double tol = kInvarianceTol;
  std::uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const MapFile m = map_from_json(read_json(a.map));
  const Complex tau = m.family ? m.family->tau : Complex(0.0, 1.0);

  WebSpec web;
  if (a.web == "auto") {
    if (!m.family) throw Error(ErrorKind::InvalidArgument, "map file has no family; pass --web");
    web = make_web(m.family->family, tau);
  } else if (std::find(kFamilies.begin(), kFamilies.end(), a.web) != kFamilies.end()) {
    web = make_web(a.web, tau);
  } else {
    web = web_from_curve_file(read_json(a.web));
  }

  // the lifts are only known for the map the family builds
  std::optional<FamilyDescriptor> info;
  if (m.family && m.family->family == web.name) {
    const Construction c = construct(*m.family);
    if (c.numeric || (m.exact && c.exact->map == *m.exact)) info = c.info();
  }
  if (!info) out << "note: no family lift for this map and web; lift-based checks are skipped\n";

  CheckOptions opts;
  if (!a.checks.empty()) opts.checks = split_commas(a.checks);
  opts.samples = a.samples;
  opts.tol = a.tol;
  opts.seed = a.seed;
  const AnyMap f = m.exact ? AnyMap(*m.exact) : AnyMap(*m.floating);
  const auto reports = run_checks(f, web, info, opts);

  bool pass = true;
  Json j;
  j["format"] = "webendo-report";
  j["version"] = kFileVersion;
  j["web"] = web.name;
  j["regime"] = m.regime();
  j["d"] = m.degree();
  j["seed"] = a.seed;
  Json list = Json::array();
  out << "web " << web.name << ", d = " << m.degree() << ", seed " << a.seed << "\n";
  for (const auto& r : reports) {
    pass = pass && r.pass;
    list.push_back(to_json(r));
    out << "  " << std::left << std::setw(12) << r.check << (r.pass ? "pass" : "FAIL") << "  max residual " << fmt(r.max_residual);
    for (const auto& c : r.cases)
      if (!c.pass) {
        out << "  [" << c.name << ": " << c.detail << "]";
        break;
      }
    out << "\n";
  }
  j["pass"] = pass;
  j["reports"] = list;
  write_json_atomic(a.report, j);
  out << (pass ? "all checks passed" : "verification failed") << "; report in " << a.report << "\n";
  return pass ? kExitPass : kExitFail;
}

int cmd_dual(const std::string& family, const std::string& tau_text, std::uint64_t seed, const std::string& path,
             std::ostream& out) {
  const auto t = parse_doubles(tau_text, 2, "--tau");
  const Json j = curve_file(family, Complex(t[0], t[1]), seed);
  bool ok = true;
  for (std::size_t k = 0; k < j["components"].size(); ++k) {
    const Json& c = j["components"][k];
    out << "component " << k << " (" << c["kind"].get<std::string>() << ", degree " << c["degree"].get<int>() << "): ";
    if (c["dual"].is_null()) {
      out << "dual is a point\n";
      continue;
    }
    const Json& d = c["dual"];
    out << "dual degree " << d["degree"].get<int>() << " (" << d["regime"].get<std::string>() << ")";
    if (d.contains("heldoutResidual")) out << ", held-out residual " << fmt(d["heldoutResidual"].get<double>());
    out << "\n  Pluecker: " << c["plucker"].get<std::string>() << (c["pluckerHolds"].get<bool>() ? "" : "  FAILS") << "\n";
    ok = ok && c["pluckerHolds"].get<bool>();
  }
  write_json_atomic(path, j);
  out << "wrote " << path << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_render(RenderSpec spec, const std::string& viewport, const std::string& tau, const std::string& path, std::ostream& out) {
  const auto v = parse_doubles(viewport, 4, "--viewport");
  spec.viewport = {v[0], v[1], v[2], v[3]};
  const auto t = parse_doubles(tau, 2, "--tau");
  spec.tau = Complex(t[0], t[1]);
  const Rendering r = render_web(spec);
  write_text_atomic(path, r.svg);
  out << r.leaves.size() << " leaves of the " << spec.family << " web, wrote " << path << "\n";
  return kExitPass;
}

int cmd_report(const std::vector<std::string>& files, const std::string& path, std::ostream& out) {
  std::vector<VerificationReport> all;
  for (const auto& f : files) {
    const Json j = read_json(f);
    if (j.is_object() && j.contains("reports")) {
      if (!j["reports"].is_array()) throw Error(ErrorKind::Parse, f + ": reports must be an array");
      for (const auto& r : j["reports"]) all.push_back(report_from_json(r));
    } else {
      all.push_back(report_from_json(j));
    }
  }
  int failed = 0;
  out << std::left << std::setw(12) << "check" << std::setw(14) << "family" << std::setw(4) << "d" << std::setw(8) << "seed"
      << std::setw(9) << "samples" << std::setw(14) << "maxResidual"
      << "pass\n";
  Json list = Json::array();
  for (const auto& r : all) {
    if (!r.pass) ++failed;
    list.push_back(to_json(r));
    out << std::left << std::setw(12) << r.check << std::setw(14) << r.family << std::setw(4) << r.d << std::setw(8) << r.seed
        << std::setw(9) << r.samples << std::setw(14) << fmt(r.max_residual) << (r.pass ? "yes" : "NO") << "\n";
  }
  out << all.size() << " reports, " << failed << " failed\n";
  if (!path.empty()) {
    Json j;
    j["format"] = "webendo-summary";
    j["version"] = kFileVersion;
    j["count"] = all.size();
    j["failed"] = failed;
    j["pass"] = failed == 0;
    j["reports"] = list;
    write_json_atomic(path, j);
  }
  return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane endomorphisms preserving algebraic webs", "webendo"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct_cmd = app.add_subcommand("construct", "build a family member and write its map file");
  construct_cmd->add_option("--family", ca.family, "web family")->required()->check(CLI::IsMember(kFamilies));
  construct_cmd->add_option("--degree", ca.degree, "algebraic degree (smooth-cubic: mult^2)");
  construct_cmd->add_option("--phi", ca.phi, "conic: phi(t); two-lines: p(t); ascending coefficients, comma separated");
  construct_cmd->add_option("--psi,--q", ca.psi, "two-lines: q(t), ascending coefficients");
  construct_cmd->add_option("--c", ca.scale, "conic-line: t -> c t^(+-d)");
  construct_cmd->add_option("--tau", ca.tau, "smooth-cubic lattice parameter RE,IM");
  construct_cmd->add_option("--mult", ca.mult, "smooth-cubic multiplier m");
  construct_cmd->add_option("--flex", ca.flex, "smooth-cubic translation flex index 0..8");
  construct_cmd->add_option("--orientation", ca.orientation, "nodal and conic-line: + or -");
  construct_cmd->add_option("--seed", ca.seed, "sampling seed for interpolated maps");
  construct_cmd->add_option("--out", ca.out, "map file")->required();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run verification checks on a map file");
  verify_cmd->add_option("--map", va.map, "map file")->required();
  verify_cmd->add_option("--web", va.web, "auto, a family name, or a curve file");
  verify_cmd->add_option("--checks", va.checks, "comma separated subset of: " + [] {
    std::string s;
    for (const auto& c : all_checks()) s += (s.empty() ? "" : ",") + c;
    return s;
  }());
  verify_cmd->add_option("--samples", va.samples, "invariance samples")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tol", va.tol, "invariance tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", va.seed, "random seed");
  verify_cmd->add_option("--report", va.report, "report file")->required();

  std::string dual_family, dual_tau = "0,1", dual_out;
  std::uint64_t dual_seed = 0;
  auto* dual_cmd = app.add_subcommand("dual", "dual curves of the web components, with the Pluecker check");
  dual_cmd->add_option("--family", dual_family, "web family")->required()->check(CLI::IsMember(kFamilies));
  dual_cmd->add_option("--tau", dual_tau, "smooth-cubic lattice parameter RE,IM");
  dual_cmd->add_option("--seed", dual_seed, "sampling seed for numeric fits");
  dual_cmd->add_option("--out", dual_out, "curve file")->required();

  RenderSpec rs;
  std::string viewport = "-3,-3,3,3", render_tau = "0,1", render_out;
  auto* render_cmd = app.add_subcommand("render", "draw web leaves as SVG");
  render_cmd->add_option("--family", rs.family, "web family")->required()->check(CLI::IsMember(kFamilies));
  render_cmd->add_option("--lines", rs.leaves, "number of leaves");
  render_cmd->add_option("--viewport", viewport, "X0,Y0,X1,Y1 in the chart z = 1");
  render_cmd->add_option("--tau", render_tau, "smooth-cubic lattice parameter RE,IM");
  render_cmd->add_option("--stroke", rs.stroke, "stroke color");
  render_cmd->add_option("--stroke-width", rs.stroke_width, "stroke width in pixels");
  render_cmd->add_option("--width", rs.width_px, "image width in pixels");
  render_cmd->add_option("--out", render_out, "SVG file")->required();

  std::vector<std::string> report_files;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "merge report files into a summary table");
  report_cmd->add_option("files", report_files, "report files")->required();
  report_cmd->add_option("--out", report_out, "merged JSON summary");

  std::vector<std::string> argv_store{"webendo"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*construct_cmd) return cmd_construct(ca, out);
    if (*verify_cmd) return cmd_verify(va, out);
    if (*dual_cmd) return cmd_dual(dual_family, dual_tau, dual_seed, dual_out, out);
    if (*render_cmd) return cmd_render(rs, viewport, render_tau, render_out, out);
    if (*report_cmd) return cmd_report(report_files, report_out, out);
  } catch (const Error& e) {
    err << "webendo: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "webendo: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace webendo

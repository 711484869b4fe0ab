#include "webendo/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>

namespace webendo {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Real dual point at curve parameter s in [0, 1); nullopt when not real.
std::optional<Coords<Complex>> real_point(const WebComponent& comp, double s) {
  Coords<Complex> c;
  if (comp.lattice) {
    // the two real ovals of a rectangular lattice: Im z = 0 and Im z = Im tau / 2
    const Complex tau = comp.lattice->tau();
    const Complex z = s < 0.5 ? Complex(2.0 * s, 0.0) : Complex(2.0 * s - 1.0, 0.0) + 0.5 * tau;
    if (comp.lattice->lattice_distance(z) < 1e-9) return std::nullopt;  // the flex at infinity
    c = comp.lattice->embed(z);
  } else {
    const double th = std::numbers::pi * s;
    c = comp.param->to_complex()(Complex(std::cos(th)), Complex(std::sin(th)));
  }
  const double n = norm(c);
  if (n == 0.0) return std::nullopt;
  for (auto& x : c) {
    x /= n;
    if (std::abs(x.imag()) > 1e-9) return std::nullopt;
    x = x.real();
  }
  return c;
}

// Clip a u + b v + w = 0 to the rectangle.
std::optional<Segment> clip(const Coords<Complex>& c, const Viewport& vp) {
  const double a = c[0].real(), b = c[1].real(), w = c[2].real();
  std::vector<std::array<double, 2>> hits;
  const double eps = 1e-12 * std::max(vp.x1 - vp.x0, vp.y1 - vp.y0);
  if (std::abs(b) > 0.0)
    for (double x : {vp.x0, vp.x1}) {
      const double y = -(a * x + w) / b;
      if (y >= vp.y0 - eps && y <= vp.y1 + eps) hits.push_back({x, y});
    }
  if (std::abs(a) > 0.0)
    for (double y : {vp.y0, vp.y1}) {
      const double x = -(b * y + w) / a;
      if (x >= vp.x0 - eps && x <= vp.x1 + eps) hits.push_back({x, y});
    }
  if (hits.size() < 2) return std::nullopt;
  // the two hits farthest apart
  double best = 0.0;
  Segment s{};
  for (std::size_t i = 0; i < hits.size(); ++i)
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const double dd = std::hypot(hits[i][0] - hits[j][0], hits[i][1] - hits[j][1]);
      if (dd > best) {
        best = dd;
        s = {hits[i][0], hits[i][1], hits[j][0], hits[j][1]};
      }
    }
  if (best <= eps) return std::nullopt;
  return s;
}

}  // namespace

Rendering render_web(const RenderSpec& spec) {
  const Viewport& vp = spec.viewport;
  if (spec.leaves < 1) throw Error(ErrorKind::InvalidArgument, "leaf count must be at least 1");
  if (!(vp.x1 > vp.x0) || !(vp.y1 > vp.y0) || !std::isfinite(vp.x1 - vp.x0) || !std::isfinite(vp.y1 - vp.y0))
    throw Error(ErrorKind::InvalidArgument, "degenerate viewport");
  if (spec.width_px < 1 || !(spec.stroke_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "bad stroke or size");
  const WebSpec web = make_web(spec.family, spec.tau);

  const int grid = std::max(4096, 64 * spec.leaves);
  std::vector<std::vector<RenderedLeaf>> visible(web.components.size());
  for (std::size_t k = 0; k < web.components.size(); ++k)
    for (int i = 0; i < grid; ++i) {
      const auto c = real_point(web.components[k], (i + 0.5) / grid);
      if (!c) continue;
      if (const auto seg = clip(*c, vp)) visible[k].push_back({*c, *seg, static_cast<int>(k)});
    }

  // even split over the components that show anything
  std::vector<std::size_t> shown;
  for (std::size_t k = 0; k < visible.size(); ++k)
    if (!visible[k].empty()) shown.push_back(k);
  if (shown.empty()) throw Error(ErrorKind::InvalidArgument, "no leaf meets the viewport");
  Rendering out;
  for (std::size_t r = 0; r < shown.size(); ++r) {
    const auto& v = visible[shown[r]];
    const int n = spec.leaves / static_cast<int>(shown.size()) + (static_cast<int>(r) < spec.leaves % static_cast<int>(shown.size()) ? 1 : 0);
    for (int i = 0; i < n; ++i) out.leaves.push_back(v[static_cast<std::size_t>((i + 0.5) * v.size() / n)]);
  }

  const double w = vp.x1 - vp.x0, h = vp.y1 - vp.y0;
  const int height_px = std::max(1, static_cast<int>(std::lround(spec.width_px * h / w)));
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width_px << "\" height=\"" << height_px
      << "\" viewBox=\"" << num(vp.x0) << " " << num(-vp.y1) << " " << num(w) << " " << num(h) << "\">\n"
      << "<title>" << web.name << " web, " << out.leaves.size() << " leaves</title>\n"
      << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"" << spec.stroke << "\" stroke-width=\"" << num(spec.stroke_width)
      << "\" vector-effect=\"non-scaling-stroke\">\n";
  for (const auto& leaf : out.leaves) {
    const Segment& s = leaf.segment;
    svg << "<line x1=\"" << num(s.x1) << "\" y1=\"" << num(s.y1) << "\" x2=\"" << num(s.x2) << "\" y2=\"" << num(s.y2)
        << "\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  out.svg = svg.str();
  return out;
}

std::vector<Segment> svg_segments(const std::string& svg) {
  static const std::regex line_re(
      R"re(<line x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)")re");
  std::vector<Segment> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line_re); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.push_back({std::stod(m[1]), std::stod(m[2]), std::stod(m[3]), std::stod(m[4])});
  }
  return out;
}

double tangency_residual(const HomPoly3<Complex>& conic, const Segment& s) {
  if (conic.degree() != 2) throw Error(ErrorKind::InvalidArgument, "tangency residual is for conics");
  // p(t) = P + t (Q - P) in homogeneous coordinates
  const std::array<BinForm<Complex>, 3> line{BinForm<Complex>({s.x1, s.x2 - s.x1}), BinForm<Complex>({s.y1, s.y2 - s.y1}),
                                             BinForm<Complex>({1.0, 0.0})};
  const BinForm<Complex> r = substitute(conic, line);
  const Complex a = r.coeffs()[0], b = r.coeffs()[1], c = r.coeffs()[2];
  const double scale = std::norm(b) + 4.0 * std::abs(a) * std::abs(c);
  if (scale == 0.0) return 0.0;
  return std::abs(b * b - 4.0 * a * c) / scale;
}

}  // namespace webendo

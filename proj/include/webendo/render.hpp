#pragma once

#include <string>
#include <vector>

#include "webendo/curves.hpp"

namespace webendo {

struct Viewport {
  double x0 = -3.0, y0 = -3.0, x1 = 3.0, y1 = 3.0;
};

struct RenderSpec {
  std::string family = "conic";
  Complex tau = Complex(0.0, 1.0);
  int leaves = 60;
  Viewport viewport;
  std::string stroke = "#1b3b6f";
  double stroke_width = 1.0;  // pixels
  int width_px = 600;
};

struct Segment {
  double x1, y1, x2, y2;
};

struct RenderedLeaf {
  Coords<Complex> dual_point;  // real, unit norm
  Segment segment;             // affine chart z = 1, clipped to the viewport
  int component = 0;
};

struct Rendering {
  std::vector<RenderedLeaf> leaves;
  std::string svg;
};

// Real leaves of the web drawn in the chart z = 1. Leaves are taken uniformly
// in the curve parameter among those that meet the viewport, and split evenly
// over the components. Throws InvalidArgument for a bad spec or when no leaf
// is visible.
Rendering render_web(const RenderSpec& spec);

// The <line> elements of an SVG written by render_web, in world coordinates.
std::vector<Segment> svg_segments(const std::string& svg);

// Normalized discriminant of the restriction of a conic to the line through
// the segment: zero iff the line is tangent.
double tangency_residual(const HomPoly3<Complex>& conic, const Segment& s);

}  // namespace webendo

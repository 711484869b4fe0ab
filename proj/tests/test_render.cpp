#include "doctest.h"

#include "webendo/render.hpp"

using namespace webendo;

TEST_CASE("conic web leaves are tangent to the dual conic") {
  RenderSpec spec;
  spec.leaves = 60;
  const auto r = render_web(spec);
  const auto segs = svg_segments(r.svg);
  REQUIRE(segs.size() == 60);
  const auto dual = dual_curve(make_web("conic").components[0]);
  REQUIRE(dual.exact);
  double worst = 0.0;
  for (const auto& s : segs) worst = std::max(worst, tangency_residual(dual.exact->to_complex(), s));
  CHECK(worst < 1e-6);
  // a chord of the dual conic is not tangent
  CHECK(tangency_residual(dual.exact->to_complex(), Segment{0.0, 1.0, 4.0, 1.0}) > 0.1);
}

TEST_CASE("segments stay in the viewport") {
  RenderSpec spec;
  spec.family = "nodal";
  spec.leaves = 80;
  spec.viewport = {-2.0, -1.0, 3.0, 2.0};
  const auto r = render_web(spec);
  CHECK(svg_segments(r.svg).size() == 80);
  for (const auto& l : r.leaves) {
    for (double x : {l.segment.x1, l.segment.x2}) CHECK((x >= -2.0 - 1e-9 && x <= 3.0 + 1e-9));
    for (double y : {l.segment.y1, l.segment.y2}) CHECK((y >= -1.0 - 1e-9 && y <= 2.0 + 1e-9));
    // the segment lies on the leaf
    const auto& c = l.dual_point;
    CHECK(std::abs(c[0].real() * l.segment.x1 + c[1].real() * l.segment.y1 + c[2].real()) < 1e-9);
  }
  CHECK(r.svg.find("viewBox=\"-2 -2 5 3\"") != std::string::npos);
}

TEST_CASE("render specs") {
  RenderSpec one;
  one.leaves = 1;
  CHECK(svg_segments(render_web(one).svg).size() == 1);
  RenderSpec bad;
  bad.leaves = 0;
  CHECK_THROWS_AS(render_web(bad), Error);
  bad.leaves = 5;
  bad.viewport = {1.0, 0.0, 1.0, 2.0};
  CHECK_THROWS_AS(render_web(bad), Error);
  RenderSpec far;
  far.family = "pencil";
  far.viewport = {10.0, 10.0, 11.0, 11.0};
  CHECK(svg_segments(render_web(far).svg).size() == 60);
  RenderSpec lines;
  lines.family = "three-lines";
  lines.leaves = 10;
  const auto r = render_web(lines);
  CHECK(r.leaves.size() == 10);
  int per[3] = {0, 0, 0};
  for (const auto& l : r.leaves) ++per[l.component];
  CHECK(per[0] == 4);
  CHECK(per[1] == 3);
  CHECK(per[2] == 3);
  RenderSpec smooth;
  smooth.family = "smooth-cubic";
  smooth.leaves = 30;
  CHECK(render_web(smooth).leaves.size() == 30);
  const auto a = render_web(RenderSpec{});
  CHECK(a.svg == render_web(RenderSpec{}).svg);
}

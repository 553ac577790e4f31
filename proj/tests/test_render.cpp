#include <catch2/catch_amalgamated.hpp>

#include "weylpoly/render.hpp"

using namespace weylpoly;
using namespace weylpoly::render;

namespace {
RatVec rv(std::initializer_list<Rational> xs) { return RatVec(xs); }
}  // namespace

TEST_CASE("decimal serialization: terminating rationals print exactly") {
  CHECK(decimal({Rational(1, 2), Rational(1)}) == "0.5");
  CHECK(decimal({Rational(-3, 8), Rational(1)}) == "-0.375");
  CHECK(decimal({Rational(7), Rational(1)}) == "7");
  CHECK(decimal({Rational(0), Rational(3)}) == "0");
  CHECK(decimal({Rational(1, 20), Rational(1)}) == "0.05");
  // q / sqrt(r) with r a perfect rational square reduces to a rational.
  CHECK(decimal({Rational(3, 2), Rational(9, 4)}) == "1");
  CHECK(decimal({Rational(1), Rational(4)}) == "0.5");
}

TEST_CASE("decimal serialization: repeating rationals get 12 significant digits") {
  CHECK(decimal({Rational(1, 3), Rational(1)}) == "0.333333333333");
  CHECK(decimal({Rational(2, 3), Rational(1)}) == "0.666666666667");
  CHECK(decimal({Rational(-1, 7), Rational(1)}) == "-0.142857142857");
  // Round-half-even on an exact tie: 1/3 + tie at the 12th digit.
  // 0.0000000000005 = 5/10^13: twelve significant digits of 5e-13 are exact.
  CHECK(decimal({Rational(mpz_class(5), mpz_class("10000000000000")), Rational(1)}) ==
        "0.0000000000005");
}

TEST_CASE("decimal serialization: square roots get 12 significant digits") {
  CHECK(decimal({Rational(1), Rational(2)}) == "0.707106781187");   // 1/sqrt(2)
  CHECK(decimal({Rational(2), Rational(2)}) == "1.41421356237");    // sqrt(2)
  CHECK(decimal({Rational(-1), Rational(3)}) == "-0.577350269190");  // -1/sqrt(3)
  CHECK(decimal({Rational(10), Rational(2)}) == "7.07106781187");
}

TEST_CASE("drawing basis maps the A2 alcove to an equilateral triangle") {
  auto ap = Apartment(RootSystem::from_name("A2"));
  DrawingBasis basis(ap.roots().gram());
  const auto verts = ap.face_vertices(ap.fundamental_alcove());
  REQUIRE(verts.size() == 3);
  // Squared Euclidean edge lengths in drawing coordinates all agree; compute
  // them from the Gram form directly (the basis is Gram-orthonormal).
  const auto& g = ap.roots().gram();
  std::set<Rational> lengths;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const RatVec d = verts[i] - verts[j];
      lengths.insert(gram_dot(g, d, d));
    }
  CHECK(lengths.size() == 1);
}

TEST_CASE("polygon order walks the hexagon boundary") {
  auto ap = Apartment(RootSystem::from_name("A2"));
  Tessellator tess(ap);
  const auto& p = tess.polytope_at(RatVec::zero(2));
  const auto ordered = polygon_order(p.extreme_points(), RatVec::zero(2));
  REQUIRE(ordered.size() == 6);
  // Consecutive triples turn consistently (convex traversal).
  for (std::size_t i = 0; i < 6; ++i) {
    const RatVec& a = ordered[i];
    const RatVec& b = ordered[(i + 1) % 6];
    const RatVec& c = ordered[(i + 2) % 6];
    const Rational cross =
        (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    CHECK(cross > Rational(0));  // counterclockwise in coroot coordinates
  }
}

TEST_CASE("convex hull of a Minkowski cell") {
  const auto hull = convex_hull_2d({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1}),
                                    rv({Rational(1, 2), Rational(1, 2)})});
  CHECK(hull.size() == 4);
}

TEST_CASE("render_arrangement: A2 produces three wall families") {
  auto ap = Apartment(RootSystem::from_name("A2"));
  const auto svg = render_arrangement(ap, rv({-2, -2}), rv({2, 2}));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // Lines for three positive-root families over levels in [-6, 6]-ish.
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = svg.find("<line", pos)) != std::string::npos; ++pos) ++lines;
  CHECK(lines >= 20);
}

TEST_CASE("render_arrangement rejects rank != 2 and empty windows render validly") {
  auto a1 = Apartment(RootSystem::from_name("A1"));
  CHECK_THROWS_AS(render_arrangement(a1, rv({0}), rv({1})), UsageError);
  auto ap = Apartment(RootSystem::from_name("A2"));
  // Degenerate window: a single point strictly inside an alcove -> no walls.
  const auto svg = render_arrangement(ap, ap.base(), ap.base(), false);
  CHECK(svg.find("<line") == std::string::npos);
  CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("renders are byte-identical across repeated invocations") {
  for (const char* name : {"A2", "B2"}) {
    auto run = [&name]() {
      auto ap = Apartment(RootSystem::from_name(name));
      Tessellator tess(ap);
      const RatVec lo = rv({-1, -1}), hi = rv({1, 1});
      return render_arrangement(ap, lo, hi) + render_tessellation(tess, lo, hi) +
             render_thickened(tess, Rational(1, 2), lo, hi);
    };
    CHECK(run() == run());
  }
}

TEST_CASE("render_tessellation fills one polygon per window vertex") {
  auto ap = Apartment(RootSystem::from_name("A2"));
  Tessellator tess(ap);
  const auto svg = render_tessellation(tess, rv({-1, -1}), rv({1, 1}));
  const auto vertices = ap.enumerate_vertices_in_window(rv({-1, -1}), rv({1, 1}));
  std::size_t polys = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polygon", pos)) != std::string::npos; ++pos)
    ++polys;
  CHECK(polys == vertices.size());
}

TEST_CASE("render_thickened rejects eta outside (0,1)") {
  auto ap = Apartment(RootSystem::from_name("A2"));
  Tessellator tess(ap);
  CHECK_THROWS_AS(render_thickened(tess, Rational(1), rv({-1, -1}), rv({1, 1})), UsageError);
  CHECK_THROWS_AS(render_thickened(tess, Rational(0), rv({-1, -1}), rv({1, 1})), UsageError);
}

TEST_CASE("render_thickened: cells collapse toward points as eta -> 1") {
  auto ap = Apartment(RootSystem::from_name("A2"));
  Tessellator tess(ap);
  // Compare the white alcove-cell size at eta = 1/2 vs eta = 9/10 by checking
  // the scaled cell geometry directly.
  const RatVec b = ap.base();
  const auto cell_half = tess.thick_cell(b, Rational(1, 2));
  const auto cell_near1 = tess.thick_cell(b, Rational(9, 10));
  const auto& g = ap.roots().gram();
  auto diam2 = [&](const std::vector<RatVec>& vs) {
    Rational best;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) {
        const RatVec d = vs[i] - vs[j];
        best = max(best, gram_dot(g, d, d));
      }
    return best;
  };
  CHECK(diam2(cell_near1.closed_cell_vertices) < diam2(cell_half.closed_cell_vertices));
}

#include "doctest.h"
#include "helpers.hpp"
#include "polyembed/regions.hpp"
#include "polyembed/rng.hpp"
#include "polyembed/svg.hpp"

#include <cmath>
#include <set>

using namespace polyembed;

TEST_SUITE_BEGIN("regions");

namespace {

Embedding square() { return make_embedding(build_cube(2), default_labels(4)); }

std::vector<Point> random_hull_points(const Polytope& poly, int count,
                                      std::uint64_t seed) {
  std::vector<Point> pts;
  pts.reserve(count);
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const auto w = testutil::random_simplex(rng, poly.size());
    Point u(poly.dim, 0.0);
    for (std::size_t y = 0; y < poly.size(); ++y)
      for (std::size_t k = 0; k < poly.dim; ++k)
        u[k] += w[y] * poly.vertex(y)[k];
    pts.push_back(std::move(u));
  }
  return pts;
}

}  // namespace

TEST_CASE("classify_point: frozen square cases") {
  const auto e = square();

  // vertices are strict with every rival gap at -1
  for (std::size_t y = 0; y < 4; ++y) {
    const auto c = classify_point(e, e.poly.vertex(y));
    CHECK(c.category == RegionCategory::Strict);
    CHECK(c.linked_outcome == y);
    for (std::size_t z = 0; z < 4; ++z) {
      if (z == y)
        CHECK(c.gaps[z] == -std::numeric_limits<double>::infinity());
      else
        CHECK(c.gaps[z] == doctest::Approx(-1.0).epsilon(1e-9));
    }
  }

  // the center is the hallucination point, and severity beats the positive
  // gaps that also hold there
  const auto center = classify_point(e, {0.0, 0.0});
  CHECK(center.category == RegionCategory::Hallucination);
  CHECK(center.linked_outcome == 0);
  bool some_positive = false;
  for (std::size_t z = 1; z < 4; ++z) some_positive |= center.gaps[z] > 1e-7;
  CHECK(some_positive);

  // near-vertex edge mixtures stay strict
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t j : neighbors(e.poly, y)) {
      Point u(2);
      for (std::size_t k = 0; k < 2; ++k)
        u[k] = 0.9 * e.poly.vertex(y)[k] + 0.1 * e.poly.vertex(j)[k];
      const auto c = classify_point(e, u);
      CHECK(c.category == RegionCategory::Strict);
      CHECK(c.linked_outcome == y);
    }
  }

  // frozen gap arithmetic at (0.5, 0.5), linked to the (1,1) outcome
  const auto mid = classify_point(e, {0.5, 0.5});
  CHECK(mid.category == RegionCategory::Strict);
  CHECK(mid.linked_outcome == 3);
  CHECK(mid.gaps[0] == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(mid.gaps[1] == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(mid.gaps[2] == doctest::Approx(-0.25).epsilon(1e-9));

  // one positive rival gap without hallucination membership
  const auto inc = classify_point(e, {0.1, 0.7});
  CHECK(inc.category == RegionCategory::Inconsistent);
  CHECK(inc.linked_outcome == 3);
  CHECK(inc.gaps[2] == doctest::Approx(0.05).epsilon(1e-9));

  // (0.15, 0.7) sits exactly on the 2x + y = 1 level set
  const auto bd = classify_point(e, {0.15, 0.7});
  CHECK(bd.category == RegionCategory::Boundary);

  CHECK_THROWS_AS(classify_point(e, {1.5, 0.0}), std::invalid_argument);
}

TEST_CASE("hallucination characterization agrees with direct membership") {
  for (const auto& poly : {build_cube(2), build_cube(3),
                           build_cross_polytope(2), build_cross_polytope(3),
                           build_permutahedron(3)}) {
    const auto e = make_embedding(poly, default_labels(poly.size()));
    auto pts = random_hull_points(poly, 10000, 611 + poly.size());
    // the joint witness point guarantees coverage of the hallucination
    // branch even where that set has measure zero
    pts.push_back(hallucination_witness(e).point);
    const auto cls = classify_points(e, pts, ExecPolicy::Parallel);
    int halluc = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<Point> others;
      for (std::size_t y = 0; y < poly.size(); ++y)
        if (y != cls[i].linked_outcome) others.push_back(poly.vertex(y));
      const bool member = hull_membership(pts[i], others).inside;
      CHECK(member == (cls[i].category == RegionCategory::Hallucination));
      halluc += member;
    }
    CHECK(halluc > 0);
  }
}

TEST_CASE("strict points keep the linked outcome as unique fiber mode under a permuted re-solve") {
  const auto poly = build_cube(3);
  const auto e = make_embedding(poly, default_labels(8));
  // near-vertex mixtures, where strict classification is the typical case
  std::vector<Point> pts = random_hull_points(poly, 400, 77);
  Rng rng(78);
  for (int i = 0; i < 400; ++i) {
    const std::size_t y = i % 8;
    const double lam = 0.3 * rng.uniform01();
    const auto w = testutil::random_simplex(rng, 8);
    Point u(3, 0.0);
    for (std::size_t z = 0; z < 8; ++z) {
      const double wz = lam * w[z] + (z == y ? 1.0 - lam : 0.0);
      for (std::size_t k = 0; k < 3; ++k) u[k] += wz * poly.vertex(z)[k];
    }
    pts.push_back(std::move(u));
  }
  const auto cls = classify_points(e, pts, ExecPolicy::Parallel);

  // same hull, vertices listed in a different order: the gap programs pivot
  // through a different basis sequence
  std::vector<Point> shuffled;
  std::vector<std::string> shuffled_labels;
  const std::size_t perm[] = {5, 2, 7, 0, 3, 6, 1, 4};
  for (std::size_t k : perm) {
    shuffled.push_back(poly.vertex(k));
    shuffled_labels.push_back(default_labels(8)[k]);
  }
  const auto e2 =
      make_embedding(from_vertices(make_vertex_set(3, shuffled)), shuffled_labels);

  int strict_seen = 0;
  for (std::size_t i = 0; i < pts.size() && strict_seen < 200; ++i) {
    if (cls[i].category != RegionCategory::Strict) continue;
    ++strict_seen;
    const std::size_t y = cls[i].linked_outcome;
    std::size_t y2 = 9;
    for (std::size_t k = 0; k < 8; ++k)
      if (perm[k] == y) y2 = k;
    for (std::size_t z2 = 0; z2 < 8; ++z2) {
      if (z2 == y2) continue;
      const double g = preimage_gap(e2, pts[i], z2, y2).value;
      CHECK(g < 0.0);
      CHECK(g == doctest::Approx(cls[i].gaps[perm[z2]]).epsilon(1e-8));
    }
  }
  CHECK(strict_seen == 200);
}

TEST_CASE("hallucination_witness: joint fiber program on every eligible polytope") {
  for (const auto& poly : {build_cube(2), build_cube(3),
                           build_cross_polytope(2), build_cross_polytope(3),
                           build_permutahedron(3)}) {
    const auto e = make_embedding(poly, default_labels(poly.size()));
    const auto w = hallucination_witness(e);
    REQUIRE(w.fibers.size() == poly.size());
    for (std::size_t y = 0; y < poly.size(); ++y) {
      CHECK(w.fibers[y].p[y] == 0.0);
      CHECK(max_abs_diff(embed(e, w.fibers[y]), w.point) <= 1e-8);
    }
    const auto cls = classify_point(e, w.point);
    CHECK(cls.category == RegionCategory::Hallucination);
  }
}

TEST_CASE("hallucination_witness: frozen points and preconditions") {
  const auto e2 = square();
  const auto w2 = hallucination_witness(e2);
  CHECK(std::fabs(w2.point[0]) <= 1e-9);
  CHECK(std::fabs(w2.point[1]) <= 1e-9);

  const auto ex = make_embedding(build_cross_polytope(2), default_labels(4));
  const auto wx = hallucination_witness(ex);
  CHECK(std::fabs(wx.point[0]) <= 1e-9);
  CHECK(std::fabs(wx.point[1]) <= 1e-9);

  // two outcomes in one dimension leave no room for a joint fiber
  const auto e1 = make_embedding(build_cube(1), default_labels(2));
  CHECK_THROWS_AS(hallucination_witness(e1), std::invalid_argument);
}

TEST_CASE("vertex_calibration_radius: frozen square and cross values") {
  const auto e = square();
  for (std::size_t y = 0; y < 4; ++y) {
    const double r = vertex_calibration_radius(e, y, 0.01);
    // strict region of a corner is cut by the lines x + 2y = 1 and
    // 2x + y = 1 (up to symmetry) at distance 2/sqrt(5)
    CHECK(std::fabs(r - 2.0 / std::sqrt(5.0)) <= 0.02);
    CHECK(r > 0.0);
    CHECK(r <= std::sqrt(2.0));
  }

  const auto ex = make_embedding(build_cross_polytope(2), default_labels(4));
  const double rx = vertex_calibration_radius(ex, 0, 0.01);
  // boundary line 3x - y = 1 at distance 2/sqrt(10) from (1, 0)
  CHECK(std::fabs(rx - 2.0 / std::sqrt(10.0)) <= 0.02);
}

TEST_CASE("vertex_calibration_radius: positive, bounded, policy independent") {
  for (const auto& poly :
       {build_cube(2), build_cross_polytope(2), build_permutahedron(3)}) {
    const auto e = make_embedding(poly, default_labels(poly.size()));
    double reach = 0.0;
    for (const auto& v : poly.verts.vertices)
      reach = std::max(reach, dist(v, poly.vertex(0)));
    const double rs =
        vertex_calibration_radius(e, 0, 0.02, ExecPolicy::Serial);
    const double rp =
        vertex_calibration_radius(e, 0, 0.02, ExecPolicy::Parallel);
    CHECK(rs == rp);
    CHECK(rs > 0.0);
    CHECK(rs <= reach);
  }
  CHECK_THROWS_AS(vertex_calibration_radius(square(), 9, 0.01),
                  std::invalid_argument);
  CHECK_THROWS_AS(vertex_calibration_radius(square(), 0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("map_regions: square grid reproduces the known region layout") {
  const auto e = square();
  const auto t = map_regions(e, {101, 101});
  REQUIRE(t.nx == 101);
  REQUIRE(t.ny == 101);
  CHECK(max_abs_diff(t.origin, {-1.0, -1.0}) <= 1e-12);
  CHECK(t.dx == doctest::Approx(0.02).epsilon(1e-12));

  int halluc = 0, strict = 0, inconsistent = 0, boundary = 0, outside = 0;
  std::size_t halluc_idx = 0;
  for (std::size_t idx = 0; idx < t.category.size(); ++idx) {
    switch (t.category[idx]) {
      case -1: ++outside; break;
      case static_cast<int>(RegionCategory::Strict): ++strict; break;
      case static_cast<int>(RegionCategory::Inconsistent): ++inconsistent; break;
      case static_cast<int>(RegionCategory::Boundary): ++boundary; break;
      case static_cast<int>(RegionCategory::Hallucination):
        ++halluc;
        halluc_idx = idx;
        break;
    }
  }
  // the whole lattice lies inside the square, and the hallucination set is
  // the single center cell
  CHECK(outside == 0);
  CHECK(halluc == 1);
  CHECK(max_abs_diff(t.coords[halluc_idx], {0.0, 0.0}) <= 1e-12);
  CHECK(strict > 0);
  CHECK(inconsistent > 0);
  CHECK(boundary > 0);

  // each corner cell is strict and linked to its own outcome
  const std::size_t corners[] = {0, 100, 100 * 101, 100 * 101 + 100};
  const std::size_t outcomes[] = {0, 1, 2, 3};
  for (int c = 0; c < 4; ++c) {
    CHECK(t.category[corners[c]] == static_cast<int>(RegionCategory::Strict));
    CHECK(t.linked[corners[c]] == static_cast<int>(outcomes[c]));
  }
}

TEST_CASE("map_regions: permutahedron plane carries all three main categories") {
  const auto e = make_embedding(build_permutahedron(3), default_labels(6));
  const auto t = map_regions(e, {41, 41});
  std::set<int> seen;
  int inside = 0;
  for (std::size_t idx = 0; idx < t.category.size(); ++idx) {
    if (t.category[idx] < 0) continue;
    ++inside;
    seen.insert(t.category[idx]);
    // lattice points classified must sit in the ambient plane sum(u) = 1
    double s = 0.0;
    for (double x : t.coords[idx]) s += x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(inside > 0);
  CHECK(seen.count(static_cast<int>(RegionCategory::Strict)) == 1);
  CHECK(seen.count(static_cast<int>(RegionCategory::Inconsistent)) == 1);
  CHECK(seen.count(static_cast<int>(RegionCategory::Hallucination)) == 1);
}

TEST_CASE("map_regions: serial equals parallel, bad inputs rejected") {
  const auto e = square();
  const auto a = map_regions(e, {31, 31}, ExecPolicy::Serial);
  const auto b = map_regions(e, {31, 31}, ExecPolicy::Parallel);
  CHECK(a.category == b.category);
  CHECK(a.linked == b.linked);

  const auto e3 = make_embedding(build_cube(3), default_labels(8));
  CHECK_THROWS_AS(map_regions(e3, {11, 11}), std::invalid_argument);
  CHECK_THROWS_AS(map_regions(e, {1, 5}), std::invalid_argument);
}

TEST_CASE("region table exports: csv and svg") {
  const auto e = square();
  const auto t = map_regions(e, {21, 21});
  const auto csv = region_table_csv(t);
  CHECK(csv.rfind("x1,x2,category,outcome\n", 0) == 0);
  // every lattice cell of the square grid yields one row plus the header
  const auto rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == 21 * 21 + 1);
  CHECK(csv.find("hallucination") != std::string::npos);
  CHECK(csv.find("strict") != std::string::npos);

  const auto svg = svg_region_map(t);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("#f5f5dc") != std::string::npos);
  CHECK(svg.find("#a52a2a") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_SUITE_END();

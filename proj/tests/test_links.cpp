#include "doctest.h"
#include "helpers.hpp"
#include "polyembed/links.hpp"
#include "polyembed/rng.hpp"

#include <cmath>

using namespace polyembed;

TEST_SUITE_BEGIN("links");

TEST_CASE("map_link recovers every vertex on every builtin polytope") {
  for (const auto& poly : {build_cube(1), build_cube(2), build_cube(3),
                           build_cross_polytope(2), build_cross_polytope(3),
                           build_permutahedron(3)}) {
    const auto e = make_embedding(poly, default_labels(poly.size()));
    for (std::size_t y = 0; y < poly.size(); ++y) {
      const auto dec = map_link(e, poly.vertex(y));
      CHECK(dec.outcome == y);
      CHECK(dec.distance <= 1e-9);
      CHECK_FALSE(dec.tie);
    }
  }
}

TEST_CASE("map_link: ties, nearest corners, exterior points") {
  const auto e = make_embedding(build_cube(2), default_labels(4));
  const auto center = map_link(e, {0.0, 0.0});
  CHECK(center.outcome == 0);  // lowest index wins the four-way tie
  CHECK(center.tie);
  CHECK(center.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  const auto corner = map_link(e, {0.9, -0.8});
  CHECK(corner.outcome == 1);  // vertex (1, -1)
  CHECK_FALSE(corner.tie);

  // exterior points are projected first; (2,2) lands on (1,1)
  const auto outside = map_link(e, {2.0, 2.0});
  CHECK(outside.outcome == 3);
  CHECK(outside.distance <= 1e-7);

  CHECK_THROWS_AS(map_link(e, {0.0, 0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("scaled_family: frozen member vertices and containment") {
  const auto e = make_embedding(build_cube(2), default_labels(4));
  const auto f = scaled_family(e, 0.25);
  REQUIRE(f.members.size() == 4);
  // member of the (1,1) outcome: (1-a) v_y + a v_yhat, yhat in builder order
  const auto& m3 = f.members[3].vertices;
  CHECK(max_abs_diff(m3[0], {0.5, 0.5}) <= 1e-15);
  CHECK(max_abs_diff(m3[1], {1.0, 0.5}) <= 1e-15);
  CHECK(max_abs_diff(m3[2], {0.5, 1.0}) <= 1e-15);
  CHECK(max_abs_diff(m3[3], {1.0, 1.0}) <= 1e-15);

  const auto f0 = scaled_family(e, 0.0);
  const auto f1 = scaled_family(e, 1.0);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t yh = 0; yh < 4; ++yh) {
      CHECK(max_abs_diff(f0.members[y].vertices[yh], e.poly.vertex(y)) == 0.0);
      CHECK(max_abs_diff(f1.members[y].vertices[yh], e.poly.vertex(yh)) == 0.0);
      // members stay inside the ambient polytope
      CHECK(contains(e.poly, f.members[y].vertices[yh]));
    }
  }
  CHECK_THROWS_AS(scaled_family(e, -0.01), std::invalid_argument);
  CHECK_THROWS_AS(scaled_family(e, 1.01), std::invalid_argument);
}

TEST_CASE("scaled_family members nest as alpha grows") {
  for (const auto& poly : {build_cube(2), build_permutahedron(3)}) {
    const auto e = make_embedding(poly, default_labels(poly.size()));
    const auto small = scaled_family(e, 0.2);
    const auto big = scaled_family(e, 0.35);
    for (std::size_t y = 0; y < poly.size(); ++y)
      for (const auto& v : small.members[y].vertices)
        CHECK(hull_membership(v, big.members[y].vertices).inside);
  }
}

TEST_CASE("low_noise_link: frozen nearest-member arithmetic") {
  const auto e = make_embedding(build_cube(2), default_labels(4));
  const auto f = scaled_family(e, 0.25);

  // each member is an axis box of half-width 0.25 at 0.75 v_y; from
  // (0.1, 0.05) the nearest is the (1,1) box at distance sqrt(0.4^2+0.45^2)
  const auto dec = low_noise_link(f, {0.1, 0.05});
  CHECK(dec.outcome == 3);
  CHECK(dec.distance == doctest::Approx(std::sqrt(0.3625)).epsilon(1e-7));
  CHECK_FALSE(dec.tie);

  for (std::size_t y = 0; y < 4; ++y) {
    const auto at_vertex = low_noise_link(f, e.poly.vertex(y));
    CHECK(at_vertex.outcome == y);
    CHECK(at_vertex.distance <= 1e-9);
  }

  // center is equidistant from all four boxes
  const auto center = low_noise_link(f, {0.0, 0.0});
  CHECK(center.outcome == 0);
  CHECK(center.tie);
}

TEST_CASE("pairwise_disjointness: frozen gaps on the square family") {
  const auto e = make_embedding(build_cube(2), default_labels(4));
  // adjacent boxes sit 2 - 4 alpha apart along one axis
  CHECK(pairwise_disjointness(scaled_family(e, 0.25)).min_distance ==
        doctest::Approx(1.0).epsilon(1e-7));
  CHECK(pairwise_disjointness(scaled_family(e, 0.4)).min_distance ==
        doctest::Approx(0.4).epsilon(1e-6));
  CHECK(pairwise_disjointness(scaled_family(e, 0.5)).min_distance <= 1e-7);
  CHECK(pairwise_disjointness(scaled_family(e, 0.75)).min_distance <= 1e-7);

  const auto close = pairwise_disjointness(scaled_family(e, 0.45));
  CHECK(close.min_distance == doctest::Approx(0.2).epsilon(1e-6));
  CHECK(close.first < close.second);

  const auto ep = make_embedding(build_permutahedron(3), default_labels(6));
  CHECK(pairwise_disjointness(scaled_family(ep, 0.30)).min_distance > 1e-4);
  CHECK(pairwise_disjointness(scaled_family(ep, 1.0 / 3 + 0.02)).min_distance <=
        1e-6);
}

TEST_CASE("pairwise_disjointness: serial and parallel agree") {
  for (const auto& poly : {build_cube(3), build_permutahedron(3)}) {
    const auto e = make_embedding(poly, default_labels(poly.size()));
    for (double alpha : {0.2, 0.45, 0.6}) {
      const auto f = scaled_family(e, alpha);
      const auto s = pairwise_disjointness(f, ExecPolicy::Serial);
      const auto p = pairwise_disjointness(f, ExecPolicy::Parallel);
      CHECK(s.min_distance == p.min_distance);
      CHECK(s.first == p.first);
      CHECK(s.second == p.second);
    }
  }
}

TEST_CASE("alpha_threshold: cube at one half, permutahedron at one third") {
  const double tol = 1e-4;
  const auto e2 = make_embedding(build_cube(2), default_labels(4));
  const double a2 = alpha_threshold(e2, tol);
  CHECK(std::fabs(a2 - 0.5) <= 5 * tol);

  const auto e3 = make_embedding(build_cube(3), default_labels(8));
  CHECK(std::fabs(alpha_threshold(e3, tol) - 0.5) <= 5 * tol);

  const auto ep = make_embedding(build_permutahedron(3), default_labels(6));
  CHECK(std::fabs(alpha_threshold(ep, tol) - 1.0 / 3) <= 5 * tol);

  // bracketing postcondition around the returned threshold
  CHECK(pairwise_disjointness(scaled_family(e2, a2 - 2 * tol)).min_distance >
        1e-6);
  CHECK(pairwise_disjointness(scaled_family(e2, a2 + 2 * tol)).min_distance <=
        1e-6);
}

TEST_CASE("low-noise draws always link to the mode") {
  struct Setup {
    Polytope poly;
    double alpha;
  };
  const Setup setups[] = {{build_cube(2), 0.45},
                          {build_cube(3), 0.45},
                          {build_permutahedron(3), 0.30}};
  for (const auto& s : setups) {
    const auto e = make_embedding(s.poly, default_labels(s.poly.size()));
    const auto rep = calibration_trials(e, s.alpha, 10000, 424242);
    CHECK(rep.trials == 10000);
    CHECK(rep.checked >= 9995);  // ties and split modes are measure-zero
    CHECK(rep.violations == 0);
  }
}

TEST_CASE("calibration_trials: serial equals parallel") {
  const auto e = make_embedding(build_cube(2), default_labels(4));
  const auto s = calibration_trials(e, 0.4, 500, 7, ExecPolicy::Serial);
  const auto p = calibration_trials(e, 0.4, 500, 7, ExecPolicy::Parallel);
  CHECK(s.trials == p.trials);
  CHECK(s.checked == p.checked);
  CHECK(s.violations == p.violations);
}

TEST_SUITE_END();

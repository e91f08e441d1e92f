#include "doctest.h"
#include "helpers.hpp"
#include "polyembed/rng.hpp"
#include "polyembed/surrogate.hpp"

#include <cmath>

using namespace polyembed;

TEST_SUITE_BEGIN("surrogate");

namespace {

// strictly convex generator with no hess_vec, to exercise the
// finite-difference Hessian path
BregmanGenerator cosh_perturbed() {
  BregmanGenerator g;
  g.name = "coshq";
  g.value = [](const Point& u) {
    double s = 0.0;
    for (double x : u) s += 0.5 * x * x + 0.1 * std::cosh(x);
    return s;
  };
  g.gradient = [](const Point& u) {
    Point out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
      out[k] = u[k] + 0.1 * std::sinh(u[k]);
    return out;
  };
  return g;
}

Point fd_loss_gradient(const InducedLoss& L, const Point& u, std::size_t y) {
  const double h = 1e-5;
  Point out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    Point up = u, um = u;
    up[k] += h;
    um[k] -= h;
    out[k] = (loss(L, up, y) - loss(L, um, y)) / (2 * h);
  }
  return out;
}

}  // namespace

TEST_CASE("bregman divergence: frozen values and axioms") {
  const auto sq = squared_euclidean();
  CHECK(bregman(sq, {1, 1}, {0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bregman(sq, {0.3, -0.2}, {0.3, -0.2}) == 0.0);

  const auto dq = diagonal_quadratic({2, 1});
  CHECK(bregman(dq, {1, 0}, {0, 0}) == doctest::Approx(1.0).epsilon(1e-12));

  // nonnegativity and identity of indiscernibles on random pairs
  Rng rng(3);
  for (const auto* gen : {&sq, &dq}) {
    for (int it = 0; it < 1000; ++it) {
      Point x = testutil::random_point(rng, 2, -2.0, 2.0);
      Point u = testutil::random_point(rng, 2, -2.0, 2.0);
      const double d = bregman(*gen, x, u);
      if (max_abs_diff(x, u) > 1e-9)
        CHECK(d > 0.0);
      else
        CHECK(std::fabs(d) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(bregman(dq, {1, 0, 0}, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(diagonal_quadratic({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("generator validation accepts the builtins and rejects fakes") {
  validate_generator(squared_euclidean(), 3);
  validate_generator(diagonal_quadratic({1, 2, 3}), 3);
  validate_generator(cosh_perturbed(), 2);

  BregmanGenerator concave;
  concave.name = "bad";
  concave.value = [](const Point& u) { return -0.5 * norm2(u); };
  concave.gradient = [](const Point& u) { return scale(u, -1.0); };
  CHECK_THROWS_AS(validate_generator(concave, 2), std::invalid_argument);

  BregmanGenerator wrong_grad;
  wrong_grad.name = "skewed";
  wrong_grad.value = [](const Point& u) { return 0.5 * norm2(u); };
  wrong_grad.gradient = [](const Point& u) { return scale(u, 1.01); };
  CHECK_THROWS_AS(validate_generator(wrong_grad, 2), std::invalid_argument);
}

TEST_CASE("induced loss: frozen values") {
  const auto L = make_induced_loss(
      squared_euclidean(), make_embedding(build_cube(2), default_labels(4)));
  CHECK(loss(L, {1, 1}, std::size_t{3}) == 0.0);
  CHECK(loss(L, {0, 0}, std::size_t{3}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(loss(L, {0, 0}, "d") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(loss(L, {0, 0}, "zz"), std::invalid_argument);

  const auto Lx = make_induced_loss(
      squared_euclidean(),
      make_embedding(build_cross_polytope(2), default_labels(4)));
  // vertex 1 is -e_1; half of 1.5^2
  CHECK(loss(Lx, {0.5, 0}, std::size_t{1}) ==
        doctest::Approx(1.125).epsilon(1e-12));

  CHECK_THROWS_AS(
      make_induced_loss(diagonal_quadratic({1, 2, 3}),
                        make_embedding(build_cube(2), default_labels(4))),
      std::invalid_argument);
}

TEST_CASE("loss gradient: frozen values and finite differences") {
  const auto e = make_embedding(build_cube(2), default_labels(4));
  const auto L = make_induced_loss(squared_euclidean(), e);
  CHECK(norm(loss_gradient(L, {1, 1}, std::size_t{3})) == 0.0);
  const Point g = loss_gradient(L, {1, 1}, std::size_t{0});
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(17);
  for (const auto& gen :
       {squared_euclidean(), diagonal_quadratic({1.5, 0.5}), cosh_perturbed()}) {
    const auto Lg = make_induced_loss(gen, e);
    for (int it = 0; it < 50; ++it) {
      const Point u = testutil::random_point(rng, 2, -2.0, 2.0);
      const std::size_t y = rng.uniform_index(4);
      const Point an = loss_gradient(Lg, u, y);
      const Point fd = fd_loss_gradient(Lg, u, y);
      for (std::size_t k = 0; k < 2; ++k) {
        const double s = std::max({1.0, std::fabs(an[k]), std::fabs(fd[k])});
        CHECK(std::fabs(an[k] - fd[k]) <= 1e-5 * s);
      }
    }
  }
}

TEST_CASE("expected loss: frozen values and label matching") {
  const auto L = make_induced_loss(
      squared_euclidean(), make_embedding(build_cube(2), default_labels(4)));
  const auto uniform = make_distribution(default_labels(4), {.25, .25, .25, .25});
  CHECK(expected_loss(L, {0, 0}, uniform) == doctest::Approx(1.0).epsilon(1e-12));

  // point mass reduces to the plain loss
  const auto delta = make_distribution(default_labels(4), {0, 0, 1, 0});
  CHECK(expected_loss(L, {0.2, -0.4}, delta) ==
        doctest::Approx(loss(L, {0.2, -0.4}, std::size_t{2})).epsilon(1e-12));

  // permuting the label order leaves the expectation unchanged
  const auto p1 = make_distribution({"a", "b", "c", "d"}, {0.1, 0.2, 0.3, 0.4});
  const auto p2 = make_distribution({"d", "c", "b", "a"}, {0.4, 0.3, 0.2, 0.1});
  CHECK(expected_loss(L, {0.3, 0.1}, p1) ==
        doctest::Approx(expected_loss(L, {0.3, 0.1}, p2)).epsilon(1e-12));
}

TEST_CASE("minimizer equals the embedded distribution") {
  const auto L = make_induced_loss(
      squared_euclidean(), make_embedding(build_cube(2), default_labels(4)));
  const auto uniform = make_distribution(default_labels(4), {.25, .25, .25, .25});
  const Point c = minimizer(L, uniform);
  CHECK(std::fabs(c[0]) <= 1e-15);
  CHECK(std::fabs(c[1]) <= 1e-15);
  const auto delta = make_distribution(default_labels(4), {0, 1, 0, 0});
  CHECK(max_abs_diff(minimizer(L, delta), L.embedding.poly.vertex(1)) == 0.0);
}

TEST_CASE("gradient descent from random starts recovers the minimizer") {
  const auto poly = build_permutahedron(3);
  const auto e = make_embedding(poly, default_labels(6));
  Rng rng(23);
  for (const auto& gen : {squared_euclidean(), diagonal_quadratic({1, 2, 3})}) {
    const auto L = make_induced_loss(gen, e);
    const auto p = make_distribution(default_labels(6), testutil::random_simplex(rng, 6));
    const Point target = minimizer(L, p);
    for (int start = 0; start < 10; ++start) {
      Point u = testutil::random_point(rng, 3, -2.0, 2.0);
      for (int t = 0; t < 4000; ++t) {
        const Point g = expected_gradient(L, u, p);
        for (std::size_t k = 0; k < 3; ++k) u[k] -= 0.2 * g[k];
      }
      CHECK(max_abs_diff(u, target) <= 1e-5);
    }
  }
}

TEST_CASE("expected gradient vanishes exactly at the minimizer") {
  Rng rng(29);
  const auto e = make_embedding(build_cross_polytope(3), default_labels(6));
  int done = 0;
  for (int it = 0; it < 1000; ++it) {
    const auto gen = (it % 2 == 0)
                         ? squared_euclidean()
                         : diagonal_quadratic({0.5 + rng.uniform01(),
                                               0.5 + rng.uniform01(),
                                               0.5 + rng.uniform01()});
    const auto L = make_induced_loss(gen, e);
    const auto p = make_distribution(default_labels(6), testutil::random_simplex(rng, 6));
    const Point u = minimizer(L, p);
    CHECK(norm(expected_gradient(L, u, p)) <= 1e-8);
    ++done;
  }
  CHECK(done == 1000);
}

TEST_CASE("minimizer is a strict local minimum and stays in the hull") {
  Rng rng(41);
  const auto poly = build_cube(3);
  const auto e = make_embedding(poly, default_labels(8));
  const auto L = make_induced_loss(squared_euclidean(), e);
  for (int rep = 0; rep < 5; ++rep) {
    const auto p = make_distribution(default_labels(8), testutil::random_simplex(rng, 8));
    const Point u = minimizer(L, p);
    CHECK(hull_membership(u, poly.verts.vertices).inside);
    const double base = expected_loss(L, u, p);
    for (int it = 0; it < 100; ++it) {
      Point d = testutil::random_point(rng, 3, -1.0, 1.0);
      const double dn = norm(d);
      Point v = u;
      for (std::size_t k = 0; k < 3; ++k) v[k] += 1e-2 * d[k] / dn;
      CHECK(expected_loss(L, v, p) > base);
    }
  }
}

TEST_SUITE_END();

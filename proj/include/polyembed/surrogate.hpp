#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polyembed/embedding.hpp"
#include "polyembed/geometry.hpp"

namespace polyembed {

// Strictly convex generator G with value and gradient callables. hess_vec,
// when present, returns the Hessian-vector product H(u) w; otherwise it is
// approximated by central differences of the gradient. dim == 0 means the
// generator accepts any dimension.
struct BregmanGenerator {
  std::string name;
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;
  std::function<Point(const Point&, const Point&)> hess_vec;
  std::size_t dim = 0;
};

// G(u) = 1/2 ||u||^2, the generator whose divergence is half squared distance.
BregmanGenerator squared_euclidean();

// G(u) = 1/2 sum_k a_k u_k^2 with every a_k > 0.
BregmanGenerator diagonal_quadratic(std::vector<double> a);

// D_G(x || u) = G(x) - G(u) - <grad G(u), x - u>.
double bregman(const BregmanGenerator& gen, const Point& x, const Point& u);

// H(u) w, exact when the generator carries hess_vec, finite differences of
// the gradient otherwise.
Point hessian_vec(const BregmanGenerator& gen, const Point& u, const Point& w);

// Desk-scale witness of the generator contract: gradient matches central
// finite differences of value within 1e-5 relative error, and the divergence
// is strictly positive on random distinct pairs. Throws on violation.
void validate_generator(const BregmanGenerator& gen, std::size_t dim,
                        std::uint64_t seed = 1, int pairs = 1000);

// The loss induced on an embedded outcome space: L(u, y) = D_G(v_y || u).
// Evaluating the gradient of G at the report u (not at the vertex) is what
// makes the expected loss convex in u with minimizer embed(p).
struct InducedLoss {
  BregmanGenerator generator;
  Embedding embedding;
};

InducedLoss make_induced_loss(BregmanGenerator gen, Embedding e);

double loss(const InducedLoss& L, const Point& u, std::size_t y);
double loss(const InducedLoss& L, const Point& u, const std::string& y);

// d/du L(u, y) = -H(u) (v_y - u).
Point loss_gradient(const InducedLoss& L, const Point& u, std::size_t y);
Point loss_gradient(const InducedLoss& L, const Point& u,
                    const std::string& y);

double expected_loss(const InducedLoss& L, const Point& u,
                     const Distribution& p);
Point expected_gradient(const InducedLoss& L, const Point& u,
                        const Distribution& p);

// The unique expected-loss minimizer, which is the embedded distribution.
Point minimizer(const InducedLoss& L, const Distribution& p);

}  // namespace polyembed

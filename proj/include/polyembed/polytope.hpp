#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "polyembed/geometry.hpp"

namespace polyembed {

enum class PolytopeKind { Cube, Permutahedron, CrossPolytope, Generic };

// Immutable after construction; safe to share across threads. Named kinds
// answer neighbor/projection/membership queries in closed form; Generic
// instances fall back to the LP/QP paths and carry an edge cache computed at
// construction.
struct Polytope {
  PolytopeKind kind = PolytopeKind::Generic;
  std::size_t dim = 0;
  VertexSet verts;
  std::vector<std::vector<std::size_t>> edges;  // Generic only

  std::size_t size() const { return verts.size(); }
  const Point& vertex(std::size_t i) const { return verts.vertices[i]; }
};

// Vertex i has coordinate k equal to +1 iff bit k of i is set. d in [1, 16].
Polytope build_cube(std::size_t d);

// Convex hull of all permutations of w, w_k = 2k / (d (d-1)) for k = 0..d-1
// (the weight vector whose low-noise threshold is 1/d). Vertices are listed
// in lexicographic order of the permuted vectors. d in [2, 7].
Polytope build_permutahedron(std::size_t d);

// Vertex 2i = +e_i, vertex 2i+1 = -e_i. d >= 1.
Polytope build_cross_polytope(std::size_t d);

// Generic polytope from explicit vertices. Every point must be extreme
// (validated by hull membership against the others); the edge cache is
// filled with LP certificates.
Polytope from_vertices(VertexSet vs);

// The weight vector of build_permutahedron.
Point permutahedron_weights(std::size_t d);

// Indices of vertices sharing an edge with vertex i. Closed forms: cube =
// single bit flips; cross-polytope = every non-antipodal vertex (for d = 1
// the single other endpoint); permutahedron = exchanges of two values
// adjacent in the sorted weight order.
std::vector<std::size_t> neighbors(const Polytope& p, std::size_t i);

// Euclidean projection onto the polytope. Cube: coordinate clamp.
// Cross-polytope: l1-ball soft thresholding. Permutahedron: sort plus
// pool-adjacent-violators isotonic fit. Generic: Wolfe min-norm point.
Point project(const Polytope& p, const Point& u, double tol = 1e-8);

// Membership test; closed-form for named kinds, LP for Generic.
bool contains(const Polytope& p, const Point& u, double tol = 1e-9);

// Per-coordinate [min, max] over the vertices.
std::vector<std::pair<double, double>> bounding_box(const Polytope& p);

// Nonincreasing least-squares fit (pool-adjacent-violators). Exposed for
// testing against brute-force quadratic programs.
std::vector<double> isotonic_nonincreasing(const std::vector<double>& c);

}  // namespace polyembed

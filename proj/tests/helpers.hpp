#pragma once

// Shared test utilities: deterministic sampling and brute-force oracles that
// re-derive expected values through independent formulations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "polyembed/geometry.hpp"
#include "polyembed/polytope.hpp"
#include "polyembed/rng.hpp"

namespace testutil {

using polyembed::Point;
using polyembed::VertexSet;

inline Point random_point(polyembed::Rng& rng, std::size_t d, double lo,
                          double hi) {
  Point p(d);
  for (auto& x : p) x = lo + (hi - lo) * rng.uniform01();
  return p;
}

inline std::vector<double> random_simplex(polyembed::Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) {
    x = rng.exponential();
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

// All nonzero integer directions with entries in {-2..2}. For the small
// polytopes under test this grid contains an exact outer normal of every
// edge, so "some direction whose argmax set is exactly {i, j}" certifies
// edges without tolerance gymnastics.
inline std::vector<Point> integer_directions(std::size_t d) {
  std::vector<Point> dirs;
  std::vector<int> v(d, -2);
  while (true) {
    bool all_zero = true;
    for (int x : v)
      if (x != 0) all_zero = false;
    if (!all_zero) {
      Point p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = v[k];
      dirs.push_back(p);
    }
    std::size_t k = 0;
    while (k < d && v[k] == 2) v[k++] = -2;
    if (k == d) break;
    ++v[k];
  }
  return dirs;
}

// Direction-scan edge oracle: true iff some scanned direction is maximized
// exactly on {i, j}.
inline bool edge_by_direction_scan(const VertexSet& vs, std::size_t i,
                                   std::size_t j) {
  const auto dirs = integer_directions(vs.dim);
  for (const auto& a : dirs) {
    double best = -1e300;
    for (const auto& v : vs.vertices)
      best = std::max(best, polyembed::dot(a, v));
    std::vector<std::size_t> argmax;
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (polyembed::dot(a, vs.vertices[k]) >= best - 1e-9) argmax.push_back(k);
    if (argmax.size() == 2 &&
        ((argmax[0] == i && argmax[1] == j) ||
         (argmax[0] == j && argmax[1] == i)))
      return true;
  }
  return false;
}

// Variational-inequality check: x is the Euclidean projection of u onto
// conv(verts) iff x lies in the hull and <u - x, v - x> <= 0 for every
// vertex v. Exact up to the stated slack.
inline bool is_projection(const Point& u, const Point& x,
                          const std::vector<Point>& verts, double slack) {
  if (!polyembed::hull_membership(x, verts, 1e-7).inside) return false;
  for (const auto& v : verts) {
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
      s += (u[k] - x[k]) * (v[k] - x[k]);
    if (s > slack) return false;
  }
  return true;
}

// LP oracle for hull intersection, formulated directly on a shared point
// rather than through distances.
inline bool hulls_intersect_lp(const std::vector<Point>& v1,
                               const std::vector<Point>& v2, double tol) {
  const std::size_t d = v1[0].size(), n1 = v1.size(), n2 = v2.size();
  polyembed::LpProblem p;
  p.rows = d + 2;
  p.cols = n1 + n2;
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < n1; ++c) p.at(r, c) = v1[c][r];
    for (std::size_t c = 0; c < n2; ++c) p.at(r, n1 + c) = -v2[c][r];
  }
  for (std::size_t c = 0; c < n1; ++c) p.at(d, c) = 1.0;
  p.b[d] = 1.0;
  for (std::size_t c = 0; c < n2; ++c) p.at(d + 1, n1 + c) = 1.0;
  p.b[d + 1] = 1.0;
  return polyembed::solve_lp(p, tol).status == polyembed::LpStatus::Optimal;
}

// Two-stage barycentric grid search for the hull point nearest to u:
// coarse sweep over integer-weight combinations, then refinement around the
// best cell. Accuracy is limited but independent of the solver under test.
inline double grid_projection_distance(const Point& u,
                                       const std::vector<Point>& verts,
                                       int denom) {
  const std::size_t n = verts.size(), d = u.size();
  std::vector<int> w(n, 0);
  std::vector<double> best_w;
  double best = 1e300;
  // enumerate compositions of denom into n parts
  std::vector<int> comp(n, 0);
  comp[0] = denom;
  while (true) {
    Point x(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k)
        x[k] += (static_cast<double>(comp[i]) / denom) * verts[i][k];
    const double dd = polyembed::dist(u, x);
    if (dd < best) {
      best = dd;
      best_w.assign(comp.begin(), comp.end());
    }
    // next composition in colex order
    std::size_t i = 0;
    while (i + 1 < n && comp[i] == 0) ++i;
    if (i + 1 == n) break;
    const int head = comp[i];
    comp[i] = 0;
    comp[0] = head - 1;
    comp[i + 1] += 1;
  }
  // local refinement: random convex perturbations around the best weights
  polyembed::Rng rng(7);
  std::vector<double> lam(best_w.begin(), best_w.end());
  for (auto& l : lam) l /= denom;
  for (int it = 0; it < 20000; ++it) {
    std::vector<double> cand = lam;
    const std::size_t a = rng.uniform_index(n), b = rng.uniform_index(n);
    const double step = cand[a] * rng.uniform01() * 0.5;
    cand[a] -= step;
    cand[b] += step;
    Point x(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) x[k] += cand[i] * verts[i][k];
    const double dd = polyembed::dist(u, x);
    if (dd < best) {
      best = dd;
      lam = cand;
    }
  }
  return best;
}

}  // namespace testutil

#include "polyembed/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace polyembed {

namespace {

// factorials up to 7! fit comfortably in size_t
std::size_t factorial(std::size_t k) {
  std::size_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// Rank of a permutation vector among all lexicographically ordered
// arrangements of its (distinct) sorted values.
std::size_t lex_rank(const Point& arrangement, const Point& sorted_vals) {
  const std::size_t d = arrangement.size();
  std::vector<std::size_t> idx(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t t = 0;
    while (sorted_vals[t] != arrangement[k]) ++t;
    idx[k] = t;
  }
  std::size_t rank = 0;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t smaller = 0;
    for (std::size_t j = k + 1; j < d; ++j)
      if (idx[j] < idx[k]) ++smaller;
    rank += smaller * factorial(d - 1 - k);
  }
  return rank;
}

}  // namespace

Polytope build_cube(std::size_t d) {
  if (d < 1 || d > 16)
    throw std::invalid_argument("cube: dimension must be in [1, 16]");
  std::vector<Point> pts;
  const std::size_t n = std::size_t{1} << d;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point v(d);
    for (std::size_t k = 0; k < d; ++k)
      v[k] = (i >> k) & 1 ? 1.0 : -1.0;
    pts.push_back(std::move(v));
  }
  return Polytope{PolytopeKind::Cube, d, make_vertex_set(d, std::move(pts)), {}};
}

Point permutahedron_weights(std::size_t d) {
  Point w(d);
  for (std::size_t k = 0; k < d; ++k)
    w[k] = 2.0 * static_cast<double>(k) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
  return w;
}

Polytope build_permutahedron(std::size_t d) {
  if (d < 2 || d > 7)
    throw std::invalid_argument("permutahedron: dimension must be in [2, 7]");
  Point w = permutahedron_weights(d);  // already ascending
  std::vector<Point> pts;
  pts.reserve(factorial(d));
  Point cur = w;
  do {
    pts.push_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  return Polytope{PolytopeKind::Permutahedron, d,
                  make_vertex_set(d, std::move(pts)), {}};
}

Polytope build_cross_polytope(std::size_t d) {
  if (d < 1)
    throw std::invalid_argument("cross-polytope: dimension must be >= 1");
  std::vector<Point> pts;
  pts.reserve(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    Point plus(d, 0.0), minus(d, 0.0);
    plus[i] = 1.0;
    minus[i] = -1.0;
    pts.push_back(std::move(plus));
    pts.push_back(std::move(minus));
  }
  return Polytope{PolytopeKind::CrossPolytope, d,
                  make_vertex_set(d, std::move(pts)), {}};
}

Polytope from_vertices(VertexSet vs) {
  const std::size_t n = vs.size();
  if (n < 2)
    throw std::invalid_argument("from_vertices: needs at least two vertices");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Point> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(vs.vertices[j]);
    if (hull_membership(vs.vertices[i], others).inside)
      throw std::invalid_argument("from_vertices: point " + std::to_string(i) +
                                  " is not extreme");
  }
  Polytope p{PolytopeKind::Generic, vs.dim, std::move(vs), {}};
  p.edges.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (is_edge(i, j, p.verts)) {
        p.edges[i].push_back(j);
        p.edges[j].push_back(i);
      }
    }
  }
  return p;
}

std::vector<std::size_t> neighbors(const Polytope& p, std::size_t i) {
  const std::size_t n = p.size();
  if (i >= n) throw std::invalid_argument("neighbors: vertex index out of range");
  std::vector<std::size_t> out;
  switch (p.kind) {
    case PolytopeKind::Cube:
      for (std::size_t k = 0; k < p.dim; ++k)
        out.push_back(i ^ (std::size_t{1} << k));
      std::sort(out.begin(), out.end());
      break;
    case PolytopeKind::CrossPolytope: {
      if (p.dim == 1) {
        out.push_back(1 - i);
        break;
      }
      const std::size_t antipode = i ^ 1u;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != antipode) out.push_back(k);
      break;
    }
    case PolytopeKind::Permutahedron: {
      const Point w = permutahedron_weights(p.dim);
      const Point& v = p.vertex(i);
      for (std::size_t t = 0; t + 1 < p.dim; ++t) {
        // swap the positions holding the t-th and (t+1)-th smallest weights
        std::size_t pa = 0, pb = 0;
        for (std::size_t k = 0; k < p.dim; ++k) {
          if (v[k] == w[t]) pa = k;
          if (v[k] == w[t + 1]) pb = k;
        }
        Point nb = v;
        std::swap(nb[pa], nb[pb]);
        out.push_back(lex_rank(nb, w));
      }
      std::sort(out.begin(), out.end());
      break;
    }
    case PolytopeKind::Generic:
      out = p.edges[i];
      break;
  }
  return out;
}

std::vector<double> isotonic_nonincreasing(const std::vector<double>& c) {
  // PAV on the reversed sequence: a nondecreasing fit of reverse(c) reversed
  // back is the nonincreasing fit of c. Blocks carry (sum, count).
  const std::size_t n = c.size();
  std::vector<double> sum;
  std::vector<std::size_t> cnt;
  for (std::size_t i = n; i-- > 0;) {
    sum.push_back(c[i]);
    cnt.push_back(1);
    while (sum.size() > 1) {
      const std::size_t s = sum.size();
      if (sum[s - 2] / static_cast<double>(cnt[s - 2]) <=
          sum[s - 1] / static_cast<double>(cnt[s - 1]))
        break;
      sum[s - 2] += sum[s - 1];
      cnt[s - 2] += cnt[s - 1];
      sum.pop_back();
      cnt.pop_back();
    }
  }
  std::vector<double> fit;
  fit.reserve(n);
  for (std::size_t b = 0; b < sum.size(); ++b) {
    const double v = sum[b] / static_cast<double>(cnt[b]);
    for (std::size_t k = 0; k < cnt[b]; ++k) fit.push_back(v);
  }
  std::reverse(fit.begin(), fit.end());
  return fit;
}

namespace {

Point project_cube(const Point& u) {
  Point x = u;
  for (auto& v : x) v = std::clamp(v, -1.0, 1.0);
  return x;
}

Point project_cross(const Point& u) {
  double l1 = 0.0;
  for (const auto& v : u) l1 += std::fabs(v);
  if (l1 <= 1.0) return u;
  // soft threshold: largest theta with sum(max(|u|-theta,0)) = 1
  std::vector<double> mag(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) mag[i] = std::fabs(u[i]);
  std::sort(mag.begin(), mag.end(), std::greater<double>());
  double csum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    csum += mag[k];
    const double t = (csum - 1.0) / static_cast<double>(k + 1);
    if (k + 1 == mag.size() || mag[k + 1] <= t) {
      theta = t;
      break;
    }
  }
  Point x(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double m = std::max(std::fabs(u[i]) - theta, 0.0);
    x[i] = u[i] < 0.0 ? -m : m;
  }
  return x;
}

Point project_permutahedron(const Point& u, const Point& w) {
  const std::size_t d = u.size();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  Point wdesc = w;
  std::sort(wdesc.begin(), wdesc.end(), std::greater<double>());
  std::vector<double> c(d);
  for (std::size_t k = 0; k < d; ++k) c[k] = u[order[k]] - wdesc[k];
  const std::vector<double> t = isotonic_nonincreasing(c);
  Point x(d);
  for (std::size_t k = 0; k < d; ++k) x[order[k]] = u[order[k]] - t[k];
  return x;
}

}  // namespace

Point project(const Polytope& p, const Point& u, double tol) {
  if (u.size() != p.dim)
    throw std::invalid_argument("project: point dimension mismatch");
  switch (p.kind) {
    case PolytopeKind::Cube:
      return project_cube(u);
    case PolytopeKind::CrossPolytope:
      return project_cross(u);
    case PolytopeKind::Permutahedron:
      return project_permutahedron(u, permutahedron_weights(p.dim));
    case PolytopeKind::Generic:
      return project_onto_hull(u, p.verts.vertices, tol).point;
  }
  throw std::logic_error("project: unknown polytope kind");
}

bool contains(const Polytope& p, const Point& u, double tol) {
  if (u.size() != p.dim)
    throw std::invalid_argument("contains: point dimension mismatch");
  switch (p.kind) {
    case PolytopeKind::Cube:
      for (const auto& v : u)
        if (std::fabs(v) > 1.0 + tol) return false;
      return true;
    case PolytopeKind::CrossPolytope: {
      double l1 = 0.0;
      for (const auto& v : u) l1 += std::fabs(v);
      return l1 <= 1.0 + tol;
    }
    case PolytopeKind::Permutahedron: {
      // majorization by the weight vector: descending prefix sums bounded by
      // those of w, total sum equal
      Point s = u;
      std::sort(s.begin(), s.end(), std::greater<double>());
      Point wdesc = permutahedron_weights(p.dim);
      std::sort(wdesc.begin(), wdesc.end(), std::greater<double>());
      double pu = 0.0, pw = 0.0;
      for (std::size_t k = 0; k < p.dim; ++k) {
        pu += s[k];
        pw += wdesc[k];
        if (k + 1 < p.dim && pu > pw + tol) return false;
      }
      return std::fabs(pu - pw) <= tol;
    }
    case PolytopeKind::Generic:
      return hull_membership(u, p.verts.vertices, tol).inside;
  }
  throw std::logic_error("contains: unknown polytope kind");
}

std::vector<std::pair<double, double>> bounding_box(const Polytope& p) {
  std::vector<std::pair<double, double>> box(
      p.dim, {std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity()});
  for (const auto& v : p.verts.vertices) {
    for (std::size_t k = 0; k < p.dim; ++k) {
      box[k].first = std::min(box[k].first, v[k]);
      box[k].second = std::max(box[k].second, v[k]);
    }
  }
  return box;
}

}  // namespace polyembed

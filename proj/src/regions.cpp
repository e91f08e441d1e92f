#include "polyembed/regions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polyembed/links.hpp"
#include "polyembed/rng.hpp"

namespace polyembed {

namespace {

// orthonormal basis of the affine hull of the vertex set, deterministic
std::vector<Point> affine_basis(const std::vector<Point>& verts) {
  const std::size_t d = verts[0].size();
  std::vector<Point> basis;
  for (std::size_t i = 1; i < verts.size() && basis.size() < d; ++i) {
    Point r = sub(verts[i], verts[0]);
    for (const auto& b : basis) {
      const double c = dot(r, b);
      for (std::size_t k = 0; k < d; ++k) r[k] -= c * b[k];
    }
    const double rn = norm(r);
    if (rn > 1e-9) basis.push_back(scale(r, 1.0 / rn));
  }
  return basis;
}

// deterministic unit directions in R^r, canonical per rank
std::vector<Point> canonical_directions(std::size_t r) {
  std::vector<Point> dirs;
  if (r == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  if (r == 2) {
    for (int k = 0; k < 96; ++k) {
      const double a = 2.0 * M_PI * k / 96.0;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else if (r == 3) {
    // Fibonacci sphere
    const int m = 192;
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int k = 0; k < m; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / m;
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = 2.0 * M_PI * k / golden;
      dirs.push_back({rad * std::cos(a), rad * std::sin(a), z});
    }
  } else {
    Rng rng(12345);
    for (int k = 0; k < 256; ++k) {
      Point v(r);
      for (std::size_t j = 0; j < r; ++j) v[j] = rng.gaussian();
      const double vn = norm(v);
      if (vn > 1e-12) dirs.push_back(scale(v, 1.0 / vn));
    }
  }
  // small integer lattice directions carry the facet normals of the builtins
  if (r <= 4) {
    std::vector<int> c(r, -2);
    while (true) {
      Point v(r);
      double n2 = 0.0;
      for (std::size_t j = 0; j < r; ++j) {
        v[j] = c[j];
        n2 += v[j] * v[j];
      }
      if (n2 > 0) dirs.push_back(scale(v, 1.0 / std::sqrt(n2)));
      std::size_t j = 0;
      while (j < r && c[j] == 2) c[j++] = -2;
      if (j == r) break;
      ++c[j];
    }
  } else {
    for (std::size_t j = 0; j < r; ++j) {
      Point v(r, 0.0);
      v[j] = 1.0;
      dirs.push_back(v);
      v[j] = -1.0;
      dirs.push_back(v);
    }
  }
  // drop near-duplicates
  std::vector<Point> uniq;
  for (const auto& v : dirs) {
    bool dup = false;
    for (const auto& u : uniq)
      if (max_abs_diff(u, v) < 1e-9) {
        dup = true;
        break;
      }
    if (!dup) uniq.push_back(v);
  }
  return uniq;
}

}  // namespace

const char* to_string(RegionCategory c) {
  switch (c) {
    case RegionCategory::Strict: return "strict";
    case RegionCategory::Inconsistent: return "inconsistent";
    case RegionCategory::Hallucination: return "hallucination";
    case RegionCategory::Boundary: return "boundary";
  }
  return "?";
}

RegionClass classify_point(const Embedding& e, const Point& u, double tol) {
  const std::size_t n = e.poly.size();
  if (!contains(e.poly, u))
    throw std::invalid_argument("classify_point: point outside the polytope");
  RegionClass out;
  out.linked_outcome = map_link(e, u).outcome;
  out.gaps.assign(n, -std::numeric_limits<double>::infinity());
  for (std::size_t z = 0; z < n; ++z) {
    if (z == out.linked_outcome) continue;
    out.gaps[z] = preimage_gap(e, u, z, out.linked_outcome).value;
  }
  std::vector<Point> others;
  others.reserve(n - 1);
  for (std::size_t y = 0; y < n; ++y)
    if (y != out.linked_outcome) others.push_back(e.poly.vertex(y));
  if (hull_membership(u, others).inside) {
    out.category = RegionCategory::Hallucination;
    return out;
  }
  bool positive = false, near_zero = false;
  for (std::size_t z = 0; z < n; ++z) {
    if (z == out.linked_outcome) continue;
    if (out.gaps[z] > tol) positive = true;
    if (std::fabs(out.gaps[z]) <= tol) near_zero = true;
  }
  out.category = positive    ? RegionCategory::Inconsistent
                 : near_zero ? RegionCategory::Boundary
                             : RegionCategory::Strict;
  return out;
}

std::vector<RegionClass> classify_points(const Embedding& e,
                                         const std::vector<Point>& pts,
                                         ExecPolicy pol, double tol) {
  std::vector<RegionClass> out(pts.size());
  if (pol == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(pts.size()); ++i)
      out[i] = classify_point(e, pts[i], tol);
  } else {
    for (std::size_t i = 0; i < pts.size(); ++i)
      out[i] = classify_point(e, pts[i], tol);
  }
  return out;
}

HallucinationWitness hallucination_witness(const Embedding& e) {
  const std::size_t n = e.poly.size();
  const std::size_t d = e.poly.dim;
  if (n < 2 || n - 1 <= d)
    throw std::invalid_argument(
        "hallucination_witness: needs more outcomes than dimensions plus one");
  // variables: n blocks of n fiber weights; block y explains the common
  // report while placing zero mass on outcome y
  const std::size_t cols = n * n;
  const std::size_t rows = (n - 1) * d + n + n;
  LpProblem lp;
  lp.rows = rows;
  lp.cols = cols;
  lp.a.assign(rows * cols, 0.0);
  lp.b.assign(rows, 0.0);
  lp.c.assign(cols, 0.0);
  std::size_t r = 0;
  for (std::size_t y = 1; y < n; ++y) {
    for (std::size_t k = 0; k < d; ++k, ++r) {
      for (std::size_t z = 0; z < n; ++z) {
        lp.at(r, y * n + z) = e.poly.vertex(z)[k];
        lp.at(r, z) -= e.poly.vertex(z)[k];
      }
    }
  }
  for (std::size_t y = 0; y < n; ++y, ++r) {
    for (std::size_t z = 0; z < n; ++z) lp.at(r, y * n + z) = 1.0;
    lp.b[r] = 1.0;
  }
  for (std::size_t y = 0; y < n; ++y, ++r) lp.at(r, y * n + y) = 1.0;
  const auto sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw SolverError("hallucination_witness: joint fiber program failed");
  HallucinationWitness w;
  w.fibers.reserve(n);
  const auto labels = e.labels;
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<double> p(n);
    double s = 0.0;
    for (std::size_t z = 0; z < n; ++z) {
      p[z] = (z == y) ? 0.0 : std::max(0.0, sol.x[y * n + z]);
      s += p[z];
    }
    for (double& x : p) x /= s;
    w.fibers.push_back(make_distribution(labels, p));
  }
  w.point = embed(e, w.fibers[0]);
  return w;
}

double vertex_calibration_radius(const Embedding& e, std::size_t y,
                                 double resolution, ExecPolicy pol,
                                 double tol) {
  if (!(resolution > 0))
    throw std::invalid_argument("vertex_calibration_radius: resolution <= 0");
  if (y >= e.poly.size())
    throw std::invalid_argument("vertex_calibration_radius: bad outcome");
  const Point& v = e.poly.vertex(y);
  const auto basis = affine_basis(e.poly.verts.vertices);
  double reach = 0.0;
  for (const auto& w : e.poly.verts.vertices)
    reach = std::max(reach, dist(v, w));
  std::vector<Point> dirs;
  for (const auto& c : canonical_directions(basis.size())) {
    Point dir(e.poly.dim, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t k = 0; k < e.poly.dim; ++k) dir[k] += c[j] * basis[j][k];
    dirs.push_back(std::move(dir));
  }
  // directions toward the other vertices always constrain the radius
  for (std::size_t z = 0; z < e.poly.size(); ++z) {
    if (z == y) continue;
    const Point dv = sub(e.poly.vertex(z), v);
    dirs.push_back(scale(dv, 1.0 / norm(dv)));
  }

  std::atomic<double> best(reach);
  const auto walk = [&](const Point& dir) {
    double limit = reach;
    for (double r = resolution; r <= reach + resolution; r += resolution) {
      if (r >= best.load(std::memory_order_relaxed) + resolution)
        return;  // cannot lower the running minimum any further
      Point x(v.size());
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = v[k] + r * dir[k];
      if (!contains(e.poly, x)) break;  // ray left the polytope, no constraint
      const auto cls = classify_point(e, x, tol);
      if (cls.category != RegionCategory::Strict || cls.linked_outcome != y) {
        limit = r - resolution;
        break;
      }
    }
    double cur = best.load(std::memory_order_relaxed);
    while (limit < cur &&
           !best.compare_exchange_weak(cur, limit, std::memory_order_relaxed)) {
    }
  };
  if (pol == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(dirs.size()); ++i)
      walk(dirs[i]);
  } else {
    for (const auto& dir : dirs) walk(dir);
  }
  return std::max(0.0, best.load());
}

RegionTable map_regions(const Embedding& e, const GridSpec& grid,
                        ExecPolicy pol, double tol) {
  if (grid.nx < 2 || grid.ny < 2)
    throw std::invalid_argument("map_regions: grid needs at least 2x2 cells");
  const std::size_t d = e.poly.dim;
  if (d != 2 && d != 3)
    throw std::invalid_argument("map_regions: only 2d and 3d supported");
  const auto basis = affine_basis(e.poly.verts.vertices);
  if (basis.size() != 2)
    throw std::invalid_argument(
        "map_regions: polytope must span a two-dimensional plane");

  RegionTable t;
  t.nx = grid.nx;
  t.ny = grid.ny;
  t.axis1 = basis[0];
  t.axis2 = basis[1];

  Point centroid(d, 0.0);
  for (const auto& v : e.poly.verts.vertices)
    for (std::size_t k = 0; k < d; ++k) centroid[k] += v[k];
  for (std::size_t k = 0; k < d; ++k) centroid[k] /= e.poly.size();
  double smin = 0, smax = 0, tmin = 0, tmax = 0;
  bool first = true;
  for (const auto& v : e.poly.verts.vertices) {
    const Point r = sub(v, centroid);
    const double s = dot(r, t.axis1), tt = dot(r, t.axis2);
    if (first) {
      smin = smax = s;
      tmin = tmax = tt;
      first = false;
    } else {
      smin = std::min(smin, s);
      smax = std::max(smax, s);
      tmin = std::min(tmin, tt);
      tmax = std::max(tmax, tt);
    }
  }
  t.dx = (smax - smin) / static_cast<double>(grid.nx - 1);
  t.dy = (tmax - tmin) / static_cast<double>(grid.ny - 1);
  t.origin = centroid;
  for (std::size_t k = 0; k < d; ++k)
    t.origin[k] += smin * t.axis1[k] + tmin * t.axis2[k];

  const std::size_t cells = grid.nx * grid.ny;
  t.coords.assign(cells, Point(d, 0.0));
  t.category.assign(cells, -1);
  t.linked.assign(cells, -1);
  const auto body = [&](std::size_t idx) {
    const std::size_t ix = idx % grid.nx;
    const std::size_t iy = idx / grid.nx;
    Point x(d);
    for (std::size_t k = 0; k < d; ++k)
      x[k] = t.origin[k] + ix * t.dx * t.axis1[k] + iy * t.dy * t.axis2[k];
    t.coords[idx] = x;
    if (!contains(e.poly, x)) return;
    const auto cls = classify_point(e, x, tol);
    t.category[idx] = static_cast<int>(cls.category);
    t.linked[idx] = static_cast<int>(cls.linked_outcome);
  };
  if (pol == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(cells); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < cells; ++i) body(i);
  }
  return t;
}

std::string region_table_csv(const RegionTable& table) {
  std::ostringstream os;
  os.precision(12);
  const std::size_t d = table.origin.size();
  for (std::size_t k = 0; k < d; ++k) os << "x" << (k + 1) << ",";
  os << "category,outcome\n";
  for (std::size_t idx = 0; idx < table.coords.size(); ++idx) {
    if (table.category[idx] < 0) continue;
    for (std::size_t k = 0; k < d; ++k) os << table.coords[idx][k] << ",";
    os << to_string(static_cast<RegionCategory>(table.category[idx])) << ","
       << table.linked[idx] << "\n";
  }
  return os.str();
}

}  // namespace polyembed

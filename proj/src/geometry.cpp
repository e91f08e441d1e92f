#include "polyembed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyembed {

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Point& a) { return dot(a, a); }

double norm(const Point& a) { return std::sqrt(norm2(a)); }

double dist2(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dist(const Point& a, const Point& b) { return std::sqrt(dist2(a, b)); }

double max_abs_diff(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

Point sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point add(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point scale(const Point& a, double s) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

VertexSet make_vertex_set(std::size_t dim, std::vector<Point> pts) {
  if (dim == 0) throw std::invalid_argument("vertex set: dimension must be >= 1");
  if (pts.empty()) throw std::invalid_argument("vertex set: needs at least one point");
  for (const auto& p : pts) {
    if (p.size() != dim)
      throw std::invalid_argument("vertex set: inconsistent point dimension");
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (max_abs_diff(pts[i], pts[j]) <= 1e-12)
        throw std::invalid_argument("vertex set: duplicate vertices " +
                                    std::to_string(i) + " and " +
                                    std::to_string(j));
    }
  }
  return VertexSet{dim, std::move(pts)};
}

// ---------------------------------------------------------------------------
// two-phase dense simplex
// ---------------------------------------------------------------------------

namespace {

constexpr double kPivotTol = 1e-10;
constexpr std::size_t kMaxPivots = 200000;

struct Tableau {
  std::size_t m, n;               // rows, structural columns
  std::vector<double> t;          // m x (n + m + 1); artificials then rhs
  std::vector<std::size_t> basis; // basis[r] = column index basic in row r

  std::size_t width() const { return n + m + 1; }
  double& at(std::size_t r, std::size_t c) { return t[r * width() + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * width() + c]; }
  std::size_t rhs() const { return n + m; }

  void pivot(std::size_t lr, std::size_t je, std::vector<double>& z,
             double& zr) {
    const double piv = at(lr, je);
    const std::size_t w = width();
    for (std::size_t c = 0; c < w; ++c) at(lr, c) /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == lr) continue;
      const double f = at(r, je);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < w; ++c) at(r, c) -= f * at(lr, c);
      at(r, je) = 0.0;
    }
    const double fz = z[je];
    if (fz != 0.0) {
      for (std::size_t c = 0; c < n + m; ++c) z[c] -= fz * at(lr, c);
      zr -= fz * at(lr, rhs());
      z[je] = 0.0;
    }
    basis[lr] = je;
  }
};

// Bland's rule: smallest improving column enters; ratio ties are broken by
// the smallest basic column index, so cycling is impossible.
bool simplex_iterate(Tableau& tb, std::vector<double>& z, double& zr,
                     const std::vector<bool>& banned, std::size_t& pivots) {
  const std::size_t ncols = tb.n + tb.m;
  while (true) {
    std::size_t je = ncols;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (banned[c]) continue;
      if (z[c] < -kPivotTol) {
        je = c;
        break;
      }
    }
    if (je == ncols) return true;  // optimal

    std::size_t lr = tb.m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < tb.m; ++r) {
      const double a = tb.at(r, je);
      if (a > kPivotTol) {
        const double ratio = tb.at(r, tb.rhs()) / a;
        if (ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && (lr == tb.m || tb.basis[r] < tb.basis[lr]))) {
          best = ratio;
          lr = r;
        }
      }
    }
    if (lr == tb.m) return false;  // unbounded direction

    tb.pivot(lr, je, z, zr);
    if (++pivots > kMaxPivots)
      throw SolverError("simplex: pivot limit exceeded");
  }
}

}  // namespace

LpSolution solve_lp(const LpProblem& p, double tol) {
  const std::size_t m = p.rows, n = p.cols;
  if (p.a.size() != m * n || p.b.size() != m)
    throw std::invalid_argument("lp: inconsistent problem dimensions");
  if (!p.c.empty() && p.c.size() != n)
    throw std::invalid_argument("lp: objective length mismatch");

  Tableau tb;
  tb.m = m;
  tb.n = n;
  tb.t.assign(m * (n + m + 1), 0.0);
  tb.basis.resize(m);

  double b_scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) b_scale += std::fabs(p.b[r]);

  for (std::size_t r = 0; r < m; ++r) {
    const double sgn = p.b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) tb.at(r, c) = sgn * p.at(r, c);
    tb.at(r, n + r) = 1.0;
    tb.at(r, tb.rhs()) = sgn * p.b[r];
    tb.basis[r] = n + r;
  }

  // Phase 1: minimize the artificial mass.
  std::vector<double> z(n + m, 0.0);
  double zr = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += tb.at(r, c);
    z[c] = -s;
  }
  for (std::size_t r = 0; r < m; ++r) zr -= tb.at(r, tb.rhs());

  std::size_t pivots = 0;
  std::vector<bool> banned(n + m, false);
  simplex_iterate(tb, z, zr, banned, pivots);

  double art_mass = 0.0;
  for (std::size_t r = 0; r < m; ++r)
    if (tb.basis[r] >= n) art_mass += std::fabs(tb.at(r, tb.rhs()));

  LpSolution sol;
  if (art_mass > tol * b_scale) {
    sol.status = LpStatus::Infeasible;
    sol.infeasibility = art_mass;
    return sol;
  }

  // Pivot lingering artificials out where a structural column allows it;
  // rows that offer none are redundant and stay parked at level zero.
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] < n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (std::fabs(tb.at(r, c)) > kPivotTol) {
        tb.pivot(r, c, z, zr);
        break;
      }
    }
  }
  for (std::size_t c = n; c < n + m; ++c) banned[c] = true;

  // Phase 2 with the real objective (skipped for pure feasibility).
  if (!p.c.empty()) {
    std::fill(z.begin(), z.end(), 0.0);
    zr = 0.0;
    for (std::size_t c = 0; c < n; ++c) z[c] = p.c[c];
    for (std::size_t r = 0; r < m; ++r) {
      if (tb.basis[r] >= n) continue;
      const double cb = p.c[tb.basis[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c < n + m; ++c) z[c] -= cb * tb.at(r, c);
      zr -= cb * tb.at(r, tb.rhs());
      z[tb.basis[r]] = 0.0;
    }
    if (!simplex_iterate(tb, z, zr, banned, pivots)) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tb.basis[r] < n) sol.x[tb.basis[r]] = std::max(0.0, tb.at(r, tb.rhs()));
  }
  if (!p.c.empty()) {
    sol.objective = 0.0;
    for (std::size_t c = 0; c < n; ++c) sol.objective += p.c[c] * sol.x[c];
  }
  for (std::size_t r = 0; r < m; ++r) {
    double ax = 0.0;
    for (std::size_t c = 0; c < n; ++c) ax += p.at(r, c) * sol.x[c];
    sol.infeasibility = std::max(sol.infeasibility, std::fabs(ax - p.b[r]));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// hull queries
// ---------------------------------------------------------------------------

HullMembership hull_membership(const Point& u, const std::vector<Point>& verts,
                               double tol) {
  if (verts.empty())
    throw std::invalid_argument("hull_membership: empty vertex list");
  const std::size_t d = u.size(), nv = verts.size();
  for (const auto& v : verts)
    if (v.size() != d)
      throw std::invalid_argument("hull_membership: dimension mismatch");

  LpProblem p;
  p.rows = d + 1;
  p.cols = nv;
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < nv; ++c) p.at(r, c) = verts[c][r];
    p.b[r] = u[r];
  }
  for (std::size_t c = 0; c < nv; ++c) p.at(d, c) = 1.0;
  p.b[d] = 1.0;

  const LpSolution sol = solve_lp(p, tol);
  HullMembership res;
  res.inside = sol.status == LpStatus::Optimal;
  if (res.inside) {
    res.weights = sol.x;
    Point recon(d, 0.0);
    for (std::size_t c = 0; c < nv; ++c)
      for (std::size_t r = 0; r < d; ++r) recon[r] += sol.x[c] * verts[c][r];
    res.residual = max_abs_diff(recon, u);
  }
  return res;
}

namespace {

// Affine min-norm step of Wolfe's algorithm: solve
//   [0 1^T; 1 Q] [nu; alpha] = [1; 0],  Q_ik = <a_i, a_k>,
// by Gaussian elimination with partial pivoting. Returns the smallest pivot
// magnitude so the caller can detect affine dependence.
double affine_minimizer(const std::vector<Point>& pts,
                        const std::vector<std::size_t>& corral,
                        std::vector<double>& alpha) {
  const std::size_t s = corral.size();
  const std::size_t w = s + 2;
  std::vector<double> m(w * (s + 1), 0.0);  // (s+1) rows, (s+2) cols augmented
  auto at = [&](std::size_t r, std::size_t c) -> double& { return m[r * w + c]; };
  for (std::size_t j = 0; j < s; ++j) at(0, j + 1) = 1.0;
  at(0, s + 1) = 1.0;
  for (std::size_t i = 0; i < s; ++i) {
    at(i + 1, 0) = 1.0;
    for (std::size_t j = 0; j < s; ++j)
      at(i + 1, j + 1) = dot(pts[corral[i]], pts[corral[j]]);
  }

  double min_pivot = std::numeric_limits<double>::infinity();
  const std::size_t rows = s + 1;
  std::vector<std::size_t> perm(rows);
  for (std::size_t i = 0; i < rows; ++i) perm[i] = i;
  for (std::size_t col = 0; col < rows; ++col) {
    std::size_t best = col;
    for (std::size_t r = col + 1; r < rows; ++r)
      if (std::fabs(at(perm[r], col)) > std::fabs(at(perm[best], col)))
        best = r;
    std::swap(perm[col], perm[best]);
    const double piv = at(perm[col], col);
    min_pivot = std::min(min_pivot, std::fabs(piv));
    if (piv == 0.0) return 0.0;
    for (std::size_t r = col + 1; r < rows; ++r) {
      const double f = at(perm[r], col) / piv;
      if (f == 0.0) continue;
      for (std::size_t c = col; c <= s + 1; ++c)
        at(perm[r], c) -= f * at(perm[col], c);
    }
  }
  std::vector<double> sol(rows, 0.0);
  for (std::size_t ri = rows; ri-- > 0;) {
    double v = at(perm[ri], s + 1);
    for (std::size_t c = ri + 1; c < rows; ++c) v -= at(perm[ri], c) * sol[c];
    sol[ri] = v / at(perm[ri], ri);
  }
  alpha.assign(sol.begin() + 1, sol.end());
  return min_pivot;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Point>& pts, double tol) {
  if (pts.empty())
    throw std::invalid_argument("min_norm_point: empty point list");
  const std::size_t d = pts[0].size();
  for (const auto& p : pts)
    if (p.size() != d)
      throw std::invalid_argument("min_norm_point: dimension mismatch");

  // Collapse duplicates; weight goes to the first occurrence.
  std::vector<std::size_t> uniq;
  std::vector<std::size_t> rep(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::size_t found = uniq.size();
    for (std::size_t k = 0; k < uniq.size(); ++k) {
      if (max_abs_diff(pts[i], pts[uniq[k]]) <= 1e-12) {
        found = k;
        break;
      }
    }
    if (found == uniq.size()) uniq.push_back(i);
    rep[i] = found;
  }

  double scale2 = 1.0;
  for (const auto& i : uniq) scale2 = std::max(scale2, norm2(pts[i]));
  const double eps_stop =
      std::max(std::min(tol, 1e-12) * scale2, 1e-15 * scale2);

  std::size_t start = 0;
  for (std::size_t k = 1; k < uniq.size(); ++k)
    if (norm2(pts[uniq[k]]) < norm2(pts[uniq[start]])) start = k;

  std::vector<std::size_t> corral{uniq[start]};
  std::vector<double> lambda{1.0};
  Point x = pts[uniq[start]];

  auto rebuild_x = [&]() {
    x.assign(d, 0.0);
    for (std::size_t i = 0; i < corral.size(); ++i)
      for (std::size_t c = 0; c < d; ++c) x[c] += lambda[i] * pts[corral[i]][c];
  };

  MinNormResult res;
  const int max_major = static_cast<int>(64 * uniq.size() + 512);
  int iter = 0;
  double gap = 0.0;
  std::vector<bool> blocked(pts.size(), false);

  for (; iter < max_major; ++iter) {
    std::fill(blocked.begin(), blocked.end(), false);
    const double xx = norm2(x);

    // best improving vertex, skipping any that proved affinely dependent
    bool done = false;
    while (true) {
      std::size_t jmin = pts.size();
      double best = std::numeric_limits<double>::infinity();
      for (const auto& j : uniq) {
        if (blocked[j]) continue;
        const double v = dot(x, pts[j]);
        if (v < best) {
          best = v;
          jmin = j;
        }
      }
      gap = xx - best;
      if (jmin == pts.size() || gap <= eps_stop) {
        done = true;
        break;
      }
      if (std::find(corral.begin(), corral.end(), jmin) != corral.end()) {
        done = true;  // corral-exact point; remaining gap is numerical noise
        break;
      }

      auto saved_corral = corral;
      auto saved_lambda = lambda;
      corral.push_back(jmin);
      lambda.push_back(0.0);

      bool dependent = false;
      while (true) {  // minor cycle
        std::vector<double> alpha;
        const double piv = affine_minimizer(pts, corral, alpha);
        if (piv < 1e-12 * scale2) {
          dependent = true;
          break;
        }
        double amin = std::numeric_limits<double>::infinity();
        for (const auto& a : alpha) amin = std::min(amin, a);
        if (amin >= -1e-12) {
          lambda = alpha;
          for (auto& l : lambda) l = std::max(0.0, l);
          break;
        }
        double theta = 1.0;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
          if (alpha[i] < 0.0) {
            const double t = lambda[i] / (lambda[i] - alpha[i]);
            theta = std::min(theta, t);
          }
        }
        for (std::size_t i = 0; i < lambda.size(); ++i)
          lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
        for (std::size_t i = lambda.size(); i-- > 0;) {
          if (lambda[i] <= 1e-12) {
            lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
            corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
          }
        }
      }
      if (dependent) {
        corral = std::move(saved_corral);
        lambda = std::move(saved_lambda);
        blocked[jmin] = true;
        continue;  // try the next-best vertex against the same x
      }
      double lsum = 0.0;
      for (const auto& l : lambda) lsum += l;
      for (auto& l : lambda) l /= lsum;
      rebuild_x();
      break;
    }
    if (done) break;
  }

  {
    const double xx = norm2(x);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& j : uniq) best = std::min(best, dot(x, pts[j]));
    gap = xx - best;
  }
  if (gap > std::max(tol, eps_stop) * std::max(1.0, scale2) && iter >= max_major)
    throw SolverError("min_norm_point: dual gap " + std::to_string(gap) +
                      " above tolerance after iteration limit");

  res.point = x;
  res.gap = gap;
  res.iterations = iter;
  res.weights.assign(pts.size(), 0.0);
  for (std::size_t i = 0; i < corral.size(); ++i) {
    // weight lands on the first original index mapping to this unique point
    for (std::size_t orig = 0; orig < pts.size(); ++orig) {
      if (uniq[rep[orig]] == corral[i]) {
        res.weights[orig] += lambda[i];
        break;
      }
    }
  }
  return res;
}

Projection project_onto_hull(const Point& u, const std::vector<Point>& verts,
                             double tol) {
  std::vector<Point> shifted;
  shifted.reserve(verts.size());
  for (const auto& v : verts) shifted.push_back(sub(v, u));
  MinNormResult mn = min_norm_point(shifted, tol);
  Projection pr;
  pr.point = add(u, mn.point);
  pr.distance = norm(mn.point);
  pr.weights = std::move(mn.weights);
  pr.gap = mn.gap;
  return pr;
}

double hull_distance(const std::vector<Point>& v1, const std::vector<Point>& v2,
                     double tol) {
  if (v1.empty() || v2.empty())
    throw std::invalid_argument("hull_distance: empty vertex list");
  std::vector<Point> diffs;
  diffs.reserve(v1.size() * v2.size());
  for (const auto& a : v1)
    for (const auto& b : v2) diffs.push_back(sub(a, b));
  return norm(min_norm_point(diffs, tol).point);
}

bool is_edge(std::size_t i, std::size_t j, const VertexSet& v, double tol) {
  const std::size_t n = v.size(), d = v.dim;
  if (i >= n || j >= n || i == j)
    throw std::invalid_argument("is_edge: bad vertex indices");
  if (n == 2) return true;  // the segment itself

  // Find a (free) functional with a.v_i = a.v_j >= a.v_k + 1 for the rest.
  // Free variables split as a = ap - am; slack turns >= into equality.
  const std::size_t nk = n - 2;
  LpProblem p;
  p.rows = 1 + nk;
  p.cols = 2 * d + nk;
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 0.0);

  const Point& vi = v.vertices[i];
  const Point& vj = v.vertices[j];
  for (std::size_t c = 0; c < d; ++c) {
    p.at(0, c) = vi[c] - vj[c];
    p.at(0, d + c) = -(vi[c] - vj[c]);
  }
  p.b[0] = 0.0;

  std::size_t row = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    const Point& vk = v.vertices[k];
    for (std::size_t c = 0; c < d; ++c) {
      p.at(row, c) = vi[c] - vk[c];
      p.at(row, d + c) = -(vi[c] - vk[c]);
    }
    p.at(row, 2 * d + (row - 1)) = -1.0;
    p.b[row] = 1.0;
    ++row;
  }
  return solve_lp(p, tol).status == LpStatus::Optimal;
}

}  // namespace polyembed

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyembed {

using Point = std::vector<double>;

// Thrown when an iterative solver fails to meet its tolerance.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// ---- small dense vector helpers ----

double dot(const Point& a, const Point& b);
double norm2(const Point& a);         // squared euclidean norm
double norm(const Point& a);          // euclidean norm
double dist(const Point& a, const Point& b);
double dist2(const Point& a, const Point& b);
double max_abs_diff(const Point& a, const Point& b);
Point sub(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);
Point scale(const Point& a, double s);

// Ordered list of points, all of the same dimension. Distinctness is
// enforced at 1e-12 max-norm; callers that need raw point lists (possibly
// degenerate) pass std::vector<Point> instead.
struct VertexSet {
  std::size_t dim = 0;
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
};

// Validates dimensions and pairwise distinctness.
VertexSet make_vertex_set(std::size_t dim, std::vector<Point> pts);

// ---- linear programming ----
//
// Standard form: minimize c.x subject to A x = b, x >= 0. Solved by a dense
// two-phase simplex with Bland's rule (finite termination, no cycling).
// Problem sizes in this project stay below ~100 variables.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // row-major, rows x cols
  std::vector<double> b;  // rows
  std::vector<double> c;  // cols; empty means feasibility only

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
  double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;  // primal solution when Optimal
  double objective = 0.0;
  double infeasibility = 0.0;  // max |Ax - b| recomputed on the input data
};

LpSolution solve_lp(const LpProblem& p, double tol = 1e-9);

// ---- convex hull queries ----

struct HullMembership {
  bool inside = false;
  std::vector<double> weights;  // convex weights when inside
  double residual = 0.0;        // max |V w - u| of the returned weights
};

// Feasibility of { V w = u, sum w = 1, w >= 0 } at the given tolerance.
HullMembership hull_membership(const Point& u, const std::vector<Point>& verts,
                               double tol = 1e-9);

struct MinNormResult {
  Point point;                  // nearest point to the origin in conv(pts)
  std::vector<double> weights;  // convex weights over the input points
  double gap = 0.0;             // Wolfe dual gap at termination
  int iterations = 0;
};

// Wolfe's min-norm-point algorithm over conv(pts). Terminates when the dual
// gap <x, x - a_j> over all points drops to the numerical floor; tol is the
// certification threshold (the realized gap is normally far below it because
// every major iteration ends on an exact corral solve).
MinNormResult min_norm_point(const std::vector<Point>& pts,
                             double tol = 1e-8);

struct Projection {
  Point point;
  double distance = 0.0;
  std::vector<double> weights;
  double gap = 0.0;
};

// Euclidean projection of u onto conv(verts), via min_norm_point on the
// translated set. This is the generic path; polytopes with closed-form
// projections dispatch before reaching it.
Projection project_onto_hull(const Point& u, const std::vector<Point>& verts,
                             double tol = 1e-8);

// Distance between conv(v1) and conv(v2): min-norm point of the pairwise
// difference set. Zero (up to tolerance) iff the hulls intersect.
double hull_distance(const std::vector<Point>& v1,
                     const std::vector<Point>& v2, double tol = 1e-8);

// LP certificate that conv(v_i, v_j) is an edge: a linear functional that is
// maximized exactly on {v_i, v_j} with unit slack over every other vertex
// (the slack is scale-free because the functional is unconstrained). A
// two-vertex set counts its segment as an edge.
bool is_edge(std::size_t i, std::size_t j, const VertexSet& v,
             double tol = 1e-9);

}  // namespace polyembed

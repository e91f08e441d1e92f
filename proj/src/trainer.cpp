#include "polyembed/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "polyembed/embedding.hpp"

namespace polyembed {

namespace {

double step_size(const TrainConfig& cfg, int t) {
  switch (cfg.schedule) {
    case Schedule::InvSqrt:
      return cfg.learning_rate / std::sqrt(static_cast<double>(t));
    case Schedule::InvT:
      return cfg.learning_rate / static_cast<double>(t);
    case Schedule::Constant:
      return cfg.learning_rate;
  }
  return cfg.learning_rate;
}

struct ClipBox {
  Point lo, hi;
};

// Box twice the size of the vertex bounding box, centered the same way.
// Degenerate coordinates (all vertices equal) get unit halfwidth so the
// iterate can still move freely; the minimizer is unaffected because every
// expected-loss minimizer lies in the hull.
ClipBox clip_box(const Polytope& poly) {
  const std::size_t d = poly.dim;
  ClipBox box;
  box.lo.assign(d, 0.0);
  box.hi.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    double mn = poly.vertex(0)[k], mx = mn;
    for (std::size_t i = 1; i < poly.size(); ++i) {
      mn = std::min(mn, poly.vertex(i)[k]);
      mx = std::max(mx, poly.vertex(i)[k]);
    }
    const double c = 0.5 * (mn + mx);
    const double h = mx > mn ? (mx - mn) : 1.0;
    box.lo[k] = c - h;
    box.hi[k] = c + h;
  }
  return box;
}

void clamp_to(const ClipBox& box, Point& u) {
  for (std::size_t k = 0; k < u.size(); ++k)
    u[k] = std::clamp(u[k], box.lo[k], box.hi[k]);
}

Point vertex_centroid(const Polytope& poly) {
  Point c(poly.dim, 0.0);
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t k = 0; k < poly.dim; ++k)
      c[k] += poly.vertex(i)[k] / static_cast<double>(poly.size());
  return c;
}

// Shared descent loop. loss_at/grad_at see the current iterate; grad_at may
// be stochastic. Divergence aborts with the partial trace attached.
TrainTrace descend(const InducedLoss& L, const TrainConfig& cfg,
                   const std::function<double(const Point&)>& loss_at,
                   const std::function<Point(const Point&, int)>& grad_at,
                   bool average_iterates) {
  validate_config(cfg);
  const ClipBox box = clip_box(L.embedding.poly);
  Point u = vertex_centroid(L.embedding.poly);
  Point mean = u;
  const std::size_t d = u.size();

  TrainTrace trace;
  trace.loss_curve.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  trace.grad_norm_curve.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  trace.loss_curve.push_back(loss_at(u));
  const double limit = 1e6 * trace.loss_curve.front() + 1e-9;

  for (int t = 1; t <= cfg.steps; ++t) {
    const Point g = grad_at(u, t);
    trace.grad_norm_curve.push_back(norm(g));
    const double eta = step_size(cfg, t);
    for (std::size_t k = 0; k < d; ++k) u[k] -= eta * g[k];
    clamp_to(box, u);
    // Running average of post-step iterates; becomes final_report for
    // stochastic runs.
    for (std::size_t k = 0; k < d; ++k)
      mean[k] += (u[k] - mean[k]) / static_cast<double>(t + 1);
    const double cur = loss_at(u);
    trace.loss_curve.push_back(cur);
    if (!(cur <= limit)) {
      trace.final_report = average_iterates ? mean : u;
      trace.grad_norm_curve.push_back(norm(grad_at(u, t)));
      throw TrainingError("training diverged: loss exceeded 1e6x initial",
                          std::move(trace));
    }
  }
  trace.final_report = average_iterates ? mean : u;
  return trace;
}

}  // namespace

void validate_config(const TrainConfig& cfg) {
  if (cfg.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(cfg.learning_rate > 0.0))
    throw std::invalid_argument("learning_rate must be > 0");
  if (cfg.batch < 1) throw std::invalid_argument("batch must be >= 1");
}

std::size_t draw_outcome(Rng& rng, const Distribution& p) {
  const double r = rng.uniform01();
  double acc = 0.0;
  for (std::size_t y = 0; y + 1 < p.size(); ++y) {
    acc += p.p[y];
    if (r < acc) return y;
  }
  return p.size() - 1;
}

Distribution empirical_distribution(const std::vector<std::size_t>& samples,
                                    const Embedding& e) {
  if (samples.empty())
    throw std::invalid_argument("empirical_distribution: no samples");
  const std::size_t n = e.outcomes();
  std::vector<double> counts(n, 0.0);
  for (std::size_t y : samples) {
    if (y >= n)
      throw std::invalid_argument("empirical_distribution: id out of range");
    counts[y] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(samples.size());
  return make_distribution(e.labels, counts);
}

TrainTrace sgd_minimize(const InducedLoss& L, const Distribution& p,
                        const TrainConfig& cfg) {
  validate_config(cfg);
  if (p.size() != L.embedding.outcomes())
    throw std::invalid_argument("sgd_minimize: distribution size mismatch");
  Rng rng(cfg.seed);
  const std::size_t d = L.embedding.poly.dim;
  auto loss_at = [&](const Point& u) { return expected_loss(L, u, p); };
  auto grad_at = [&](const Point& u, int) {
    Point g(d, 0.0);
    for (int b = 0; b < cfg.batch; ++b) {
      const std::size_t y = draw_outcome(rng, p);
      const Point gy = loss_gradient(L, u, y);
      for (std::size_t k = 0; k < d; ++k)
        g[k] += gy[k] / static_cast<double>(cfg.batch);
    }
    return g;
  };
  TrainTrace trace = descend(L, cfg, loss_at, grad_at, true);
  trace.grad_norm_curve.push_back(
      norm(expected_gradient(L, trace.final_report, p)));
  return trace;
}

TrainTrace full_batch_minimize(const InducedLoss& L,
                               const std::vector<std::size_t>& samples,
                               const TrainConfig& cfg) {
  validate_config(cfg);
  // The empirical loss is the expected loss under the empirical
  // distribution, so both callbacks reuse the exact expectation paths.
  const Distribution hat = empirical_distribution(samples, L.embedding);
  auto loss_at = [&](const Point& u) { return expected_loss(L, u, hat); };
  auto grad_at = [&](const Point& u, int) {
    return expected_gradient(L, u, hat);
  };
  TrainTrace trace = descend(L, cfg, loss_at, grad_at, false);
  trace.grad_norm_curve.push_back(
      norm(expected_gradient(L, trace.final_report, hat)));
  return trace;
}

}  // namespace polyembed

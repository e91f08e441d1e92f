#include "polyembed/surrogate.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "polyembed/rng.hpp"

namespace polyembed {

namespace {

void check_dim(const BregmanGenerator& gen, const Point& u) {
  if (gen.dim != 0 && u.size() != gen.dim)
    throw std::invalid_argument("generator dimension mismatch");
}

}  // namespace

BregmanGenerator squared_euclidean() {
  BregmanGenerator g;
  g.name = "sqeuclid";
  g.value = [](const Point& u) { return 0.5 * norm2(u); };
  g.gradient = [](const Point& u) { return u; };
  g.hess_vec = [](const Point&, const Point& w) { return w; };
  return g;
}

BregmanGenerator diagonal_quadratic(std::vector<double> a) {
  if (a.empty()) throw std::invalid_argument("empty diagonal");
  for (double ak : a)
    if (!(ak > 0.0)) throw std::invalid_argument("diagonal must be positive");
  BregmanGenerator g;
  g.name = "diagquad";
  g.dim = a.size();
  auto diag = std::make_shared<std::vector<double>>(std::move(a));
  g.value = [diag](const Point& u) {
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) s += (*diag)[k] * u[k] * u[k];
    return 0.5 * s;
  };
  g.gradient = [diag](const Point& u) {
    Point out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = (*diag)[k] * u[k];
    return out;
  };
  g.hess_vec = [diag](const Point&, const Point& w) {
    Point out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) out[k] = (*diag)[k] * w[k];
    return out;
  };
  return g;
}

double bregman(const BregmanGenerator& gen, const Point& x, const Point& u) {
  if (x.size() != u.size())
    throw std::invalid_argument("bregman: dimension mismatch");
  check_dim(gen, u);
  const Point g = gen.gradient(u);
  double s = gen.value(x) - gen.value(u);
  for (std::size_t k = 0; k < x.size(); ++k) s -= g[k] * (x[k] - u[k]);
  return s;
}

Point hessian_vec(const BregmanGenerator& gen, const Point& u,
                  const Point& w) {
  check_dim(gen, u);
  if (gen.hess_vec) return gen.hess_vec(u, w);
  const double wn = norm(w);
  if (wn == 0.0) return Point(u.size(), 0.0);
  const double h = 1e-6 * std::max(1.0, norm(u)) / wn;
  Point up = u, um = u;
  for (std::size_t k = 0; k < u.size(); ++k) {
    up[k] += h * w[k];
    um[k] -= h * w[k];
  }
  const Point gp = gen.gradient(up);
  const Point gm = gen.gradient(um);
  Point out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = (gp[k] - gm[k]) / (2 * h);
  return out;
}

void validate_generator(const BregmanGenerator& gen, std::size_t dim,
                        std::uint64_t seed, int pairs) {
  if (gen.dim != 0 && gen.dim != dim)
    throw std::invalid_argument("generator dimension mismatch");
  Rng rng(seed);
  const double h = 1e-5;
  for (int it = 0; it < pairs; ++it) {
    Point u(dim), v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      u[k] = 4.0 * rng.uniform01() - 2.0;
      v[k] = 4.0 * rng.uniform01() - 2.0;
    }
    if (max_abs_diff(u, v) < 1e-9) v[0] += 0.5;
    if (!(bregman(gen, v, u) > 0.0))
      throw std::invalid_argument("generator is not strictly convex at " +
                                  gen.name);
    const Point g = gen.gradient(u);
    for (std::size_t k = 0; k < dim; ++k) {
      Point up = u, um = u;
      up[k] += h;
      um[k] -= h;
      const double fd = (gen.value(up) - gen.value(um)) / (2 * h);
      const double scale = std::max({1.0, std::fabs(fd), std::fabs(g[k])});
      if (std::fabs(fd - g[k]) > 1e-5 * scale)
        throw std::invalid_argument("gradient disagrees with differences of " +
                                    gen.name);
    }
  }
}

InducedLoss make_induced_loss(BregmanGenerator gen, Embedding e) {
  if (gen.dim != 0 && gen.dim != e.poly.dim)
    throw std::invalid_argument("generator dimension does not match polytope");
  return InducedLoss{std::move(gen), std::move(e)};
}

double loss(const InducedLoss& L, const Point& u, std::size_t y) {
  if (y >= L.embedding.poly.size())
    throw std::invalid_argument("loss: outcome index out of range");
  return bregman(L.generator, L.embedding.poly.vertex(y), u);
}

double loss(const InducedLoss& L, const Point& u, const std::string& y) {
  return loss(L, u, outcome_index(L.embedding, y));
}

Point loss_gradient(const InducedLoss& L, const Point& u, std::size_t y) {
  if (y >= L.embedding.poly.size())
    throw std::invalid_argument("loss_gradient: outcome index out of range");
  const Point& v = L.embedding.poly.vertex(y);
  Point w(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) w[k] = v[k] - u[k];
  Point hv = hessian_vec(L.generator, u, w);
  for (double& x : hv) x = -x;
  return hv;
}

Point loss_gradient(const InducedLoss& L, const Point& u,
                    const std::string& y) {
  return loss_gradient(L, u, outcome_index(L.embedding, y));
}

double expected_loss(const InducedLoss& L, const Point& u,
                     const Distribution& p) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    s += p.p[k] * loss(L, u, outcome_index(L.embedding, p.labels[k]));
  return s;
}

Point expected_gradient(const InducedLoss& L, const Point& u,
                        const Distribution& p) {
  Point s(u.size(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Point g = loss_gradient(L, u, outcome_index(L.embedding, p.labels[k]));
    for (std::size_t j = 0; j < u.size(); ++j) s[j] += p.p[k] * g[j];
  }
  return s;
}

Point minimizer(const InducedLoss& L, const Distribution& p) {
  return embed(L.embedding, p);
}

}  // namespace polyembed

#include "polyembed/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyembed/rng.hpp"

namespace polyembed {

Distribution make_distribution(std::vector<std::string> labels,
                               std::vector<double> p) {
  if (labels.size() != p.size())
    throw std::invalid_argument("distribution: labels and weights differ in length");
  if (p.empty()) throw std::invalid_argument("distribution: empty");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw std::invalid_argument("distribution: duplicate label '" +
                                    labels[i] + "'");
  double sum = 0.0;
  for (auto& x : p) {
    if (x < -1e-12)
      throw std::invalid_argument("distribution: negative probability");
    if (x < 0.0) x = 0.0;
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("distribution: mass sums to " +
                                std::to_string(sum) + ", expected 1");
  return Distribution{std::move(labels), std::move(p)};
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < 26)
      out.push_back(std::string(1, static_cast<char>('a' + i)));
    else
      out.push_back("y" + std::to_string(i));
  }
  return out;
}

Embedding make_embedding(Polytope poly, std::vector<std::string> labels) {
  if (labels.size() != poly.size())
    throw std::invalid_argument(
        "embedding: outcome count must equal vertex count");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw std::invalid_argument("embedding: duplicate label '" +
                                    labels[i] + "'");
  return Embedding{std::move(poly), std::move(labels)};
}

std::size_t outcome_index(const Embedding& e, const std::string& label) {
  for (std::size_t i = 0; i < e.labels.size(); ++i)
    if (e.labels[i] == label) return i;
  throw std::invalid_argument("embedding: unknown outcome '" + label + "'");
}

Point embed(const Embedding& e, const Distribution& p) {
  if (p.size() != e.outcomes())
    throw std::invalid_argument("embed: outcome count mismatch");
  Point u(e.poly.dim, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t v = outcome_index(e, p.labels[i]);
    for (std::size_t k = 0; k < e.poly.dim; ++k)
      u[k] += p.p[i] * e.poly.vertex(v)[k];
  }
  return u;
}

std::vector<std::size_t> mode(const Distribution& p, double tau) {
  double best = -1.0;
  for (double x : p.p) best = std::max(best, x);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.p[i] >= best - tau) out.push_back(i);
  return out;
}

bool in_low_noise(const Distribution& p, double alpha) {
  double best = 0.0;
  for (double x : p.p) best = std::max(best, x);
  return best >= 1.0 - alpha;
}

GapResult preimage_gap(const Embedding& e, const Point& u, std::size_t z,
                       std::size_t y, double tol) {
  const std::size_t n = e.outcomes(), d = e.poly.dim;
  if (z >= n || y >= n || z == y)
    throw std::invalid_argument("preimage_gap: bad outcome indices");
  if (u.size() != d)
    throw std::invalid_argument("preimage_gap: point dimension mismatch");

  // fiber polytope { q >= 0, sum q = 1, V q = u }; maximize q_z - q_y
  LpProblem lp;
  lp.rows = d + 1;
  lp.cols = n;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < n; ++c) lp.a[r * n + c] = e.poly.vertex(c)[r];
    lp.b[r] = u[r];
  }
  for (std::size_t c = 0; c < n; ++c) lp.a[d * n + c] = 1.0;
  lp.b[d] = 1.0;
  lp.c.assign(n, 0.0);
  lp.c[z] = -1.0;  // minimize -(q_z - q_y)
  lp.c[y] = 1.0;

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal)
    throw std::invalid_argument(
        "preimage_gap: point is outside the embedded hull");

  GapResult res;
  res.value = -sol.objective;
  std::vector<double> q = sol.x;
  double mass = 0.0;
  for (auto& x : q) {
    x = std::max(0.0, x);
    mass += x;
  }
  for (auto& x : q) x /= mass;  // absorb LP roundoff before validation
  res.witness = make_distribution(e.labels, std::move(q));
  return res;
}

Distribution sample_simplex(std::vector<std::string> labels,
                            std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> p(labels.size());
  double s = 0.0;
  for (auto& x : p) {
    x = rng.exponential();
    s += x;
  }
  for (auto& x : p) x /= s;
  return make_distribution(std::move(labels), std::move(p));
}

Distribution sample_simplex(std::size_t n, std::uint64_t seed) {
  return sample_simplex(default_labels(n), seed);
}

Distribution sample_low_noise(std::size_t n, double alpha, std::size_t y,
                              std::uint64_t seed) {
  if (y >= n) throw std::invalid_argument("sample_low_noise: bad outcome");
  if (alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("sample_low_noise: alpha must be in [0, 1]");
  Distribution q = sample_simplex(n, seed);
  for (auto& x : q.p) x *= alpha;
  q.p[y] += 1.0 - alpha;
  return q;
}

}  // namespace polyembed

#include "polyembed/links.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyembed/rng.hpp"

namespace polyembed {

namespace {

// below this, two hulls are treated as touching
constexpr double kDisjointCutoff = 1e-6;

LinkDecision pick_min(const std::vector<double>& dist, double tau) {
  LinkDecision out;
  out.outcome = 0;
  out.distance = dist[0];
  for (std::size_t y = 1; y < dist.size(); ++y) {
    if (dist[y] < out.distance) {
      out.distance = dist[y];
      out.outcome = y;
    }
  }
  for (std::size_t y = 0; y < dist.size(); ++y) {
    if (y != out.outcome && dist[y] <= out.distance + tau) {
      out.tie = true;
      break;
    }
  }
  return out;
}

}  // namespace

LinkDecision map_link(const Embedding& e, const Point& u, double tau) {
  if (tau < 0) throw std::invalid_argument("map_link: negative tie tolerance");
  if (u.size() != e.poly.dim)
    throw std::invalid_argument("map_link: dimension mismatch");
  const Point inside = project(e.poly, u);
  std::vector<double> dist(e.poly.size());
  for (std::size_t y = 0; y < e.poly.size(); ++y)
    dist[y] = polyembed::dist(inside, e.poly.vertex(y));
  return pick_min(dist, tau);
}

ScaledFamily scaled_family(const Embedding& e, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("scaled_family: alpha outside [0,1]");
  ScaledFamily f;
  f.alpha = alpha;
  const std::size_t n = e.poly.size();
  f.members.reserve(n);
  for (std::size_t y = 0; y < n; ++y) {
    VertexSet vs;
    vs.dim = e.poly.dim;
    vs.vertices.reserve(n);
    for (std::size_t yh = 0; yh < n; ++yh) {
      Point v(e.poly.dim);
      for (std::size_t k = 0; k < e.poly.dim; ++k)
        v[k] = (1 - alpha) * e.poly.vertex(y)[k] + alpha * e.poly.vertex(yh)[k];
      vs.vertices.push_back(std::move(v));
    }
    f.members.push_back(std::move(vs));
  }
  return f;
}

LinkDecision low_noise_link(const ScaledFamily& f, const Point& u,
                            double tau) {
  if (tau < 0)
    throw std::invalid_argument("low_noise_link: negative tie tolerance");
  if (f.members.empty())
    throw std::invalid_argument("low_noise_link: empty family");
  std::vector<double> dist(f.members.size());
  for (std::size_t y = 0; y < f.members.size(); ++y)
    dist[y] = project_onto_hull(u, f.members[y].vertices).distance;
  return pick_min(dist, tau);
}

DisjointnessResult pairwise_disjointness(const ScaledFamily& f,
                                         ExecPolicy pol) {
  const std::size_t n = f.members.size();
  if (n < 2)
    throw std::invalid_argument("pairwise_disjointness: need two members");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::vector<double> d(pairs.size());
  const auto body = [&](std::size_t i) {
    d[i] = hull_distance(f.members[pairs[i].first].vertices,
                         f.members[pairs[i].second].vertices);
  };
  if (pol == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(pairs.size()); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < pairs.size(); ++i) body(i);
  }
  DisjointnessResult out;
  out.min_distance = d[0];
  out.first = pairs[0].first;
  out.second = pairs[0].second;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (d[i] < out.min_distance) {
      out.min_distance = d[i];
      out.first = pairs[i].first;
      out.second = pairs[i].second;
    }
  }
  return out;
}

double alpha_threshold(const Embedding& e, double tol, ExecPolicy pol) {
  if (!(tol > 0)) throw std::invalid_argument("alpha_threshold: tol <= 0");
  const auto disjoint = [&](double alpha) {
    const auto f = scaled_family(e, alpha);
    return pairwise_disjointness(f, pol).min_distance > kDisjointCutoff;
  };
  double lo = 0.0, hi = 1.0;
  if (!disjoint(lo)) return 0.0;  // coincident vertices, nothing to scale
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (disjoint(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

CalibrationReport calibration_trials(const Embedding& e, double alpha,
                                     int trials, std::uint64_t seed,
                                     ExecPolicy pol, double tau) {
  if (trials < 0) throw std::invalid_argument("calibration_trials: trials < 0");
  const auto f = scaled_family(e, alpha);
  const std::size_t n = e.poly.size();
  std::vector<unsigned char> usable(trials, 0), missed(trials, 0);
  const auto body = [&](int t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    const std::size_t y = rng.uniform_index(n);
    const auto p = sample_low_noise(n, alpha, y, rng.next_raw());
    const auto m = mode(p);
    const auto dec = low_noise_link(f, embed(e, p), tau);
    if (m.size() != 1 || dec.tie) return;
    usable[t] = 1;
    if (std::find(m.begin(), m.end(), dec.outcome) == m.end()) missed[t] = 1;
  };
  if (pol == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (int t = 0; t < trials; ++t) body(t);
  } else {
    for (int t = 0; t < trials; ++t) body(t);
  }
  CalibrationReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    rep.checked += usable[t];
    rep.violations += missed[t];
  }
  return rep;
}

}  // namespace polyembed

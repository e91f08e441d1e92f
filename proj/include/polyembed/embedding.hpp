#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyembed/polytope.hpp"

namespace polyembed {

// Probability distribution over named outcomes. Construction clamps entries
// in [-1e-12, 0) to zero and rejects anything more negative; the total mass
// must be 1 within 1e-9.
struct Distribution {
  std::vector<std::string> labels;
  std::vector<double> p;

  std::size_t size() const { return p.size(); }
};

Distribution make_distribution(std::vector<std::string> labels,
                               std::vector<double> p);

// "a", "b", ... for the first 26 outcomes, then "y26", "y27", ...
std::vector<std::string> default_labels(std::size_t n);

// A bijection between outcomes and polytope vertices: labels[i] names the
// outcome embedded at vertex i.
struct Embedding {
  Polytope poly;
  std::vector<std::string> labels;

  std::size_t outcomes() const { return labels.size(); }
};

Embedding make_embedding(Polytope poly, std::vector<std::string> labels);

// Index of an outcome label within the embedding; throws if absent.
std::size_t outcome_index(const Embedding& e, const std::string& label);

// phi(p) = sum_y p_y v_y, matching outcomes to vertices by label.
Point embed(const Embedding& e, const Distribution& p);

// Argmax outcome indices; all entries within tau of the maximum are modes.
std::vector<std::size_t> mode(const Distribution& p, double tau = 1e-12);

// Whether max_y p_y >= 1 - alpha.
bool in_low_noise(const Distribution& p, double alpha);

struct GapResult {
  double value = 0.0;      // max over the fiber of p_z - p_y
  Distribution witness;    // a maximizing fiber distribution
};

// Over all distributions q with embed(q) = u, maximize q_z - q_y. Solved as
// an LP over the fiber polytope. u must lie in the hull (input error
// otherwise); z and y are outcome indices of the embedding.
GapResult preimage_gap(const Embedding& e, const Point& u, std::size_t z,
                       std::size_t y, double tol = 1e-9);

// Uniform (Dirichlet(1,...,1)) sample from the n-simplex via exponential
// spacings; deterministic in the seed.
Distribution sample_simplex(std::size_t n, std::uint64_t seed);
Distribution sample_simplex(std::vector<std::string> labels,
                            std::uint64_t seed);

// (1 - alpha) * delta_y + alpha * q with q uniform on the simplex: a random
// member of the low-noise ball around outcome y.
Distribution sample_low_noise(std::size_t n, double alpha, std::size_t y,
                              std::uint64_t seed);

}  // namespace polyembed

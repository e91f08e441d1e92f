#pragma once

#include <cstdint>
#include <vector>

#include "polyembed/embedding.hpp"
#include "polyembed/exec.hpp"
#include "polyembed/geometry.hpp"

namespace polyembed {

struct LinkDecision {
  std::size_t outcome = 0;
  double distance = 0.0;
  // another outcome was within the tie tolerance of the minimum
  bool tie = false;
};

// Shrunken copies of the polytope, one per outcome: member y has vertices
// (1-alpha) v_y + alpha v_yhat over all yhat. At alpha == 0 the n vertices
// of a member coincide, so members bypass the distinct-vertex factory.
struct ScaledFamily {
  double alpha = 0.0;
  std::vector<VertexSet> members;  // indexed by outcome id
};

// Project u onto the polytope, then pick the nearest vertex's outcome.
// Ties within tau go to the lowest outcome index.
LinkDecision map_link(const Embedding& e, const Point& u, double tau = 1e-9);

ScaledFamily scaled_family(const Embedding& e, double alpha);

// Pick the outcome whose member hull is nearest to u (projecting onto each
// member); ties within tau go to the lowest index. distance is that hull
// distance.
LinkDecision low_noise_link(const ScaledFamily& f, const Point& u,
                            double tau = 1e-9);

struct DisjointnessResult {
  double min_distance = 0.0;
  std::size_t first = 0;
  std::size_t second = 0;
};

// Minimum hull distance over outcome pairs; strictly positive distances
// certify that the family separates outcomes.
DisjointnessResult pairwise_disjointness(const ScaledFamily& f,
                                         ExecPolicy pol = ExecPolicy::Serial);

// Largest alpha keeping the family pairwise disjoint, located by bisection
// on [0, 1] to within tol. Disjointness is monotone in alpha because the
// members grow with it.
double alpha_threshold(const Embedding& e, double tol,
                       ExecPolicy pol = ExecPolicy::Parallel);

struct CalibrationReport {
  int trials = 0;      // draws attempted
  int checked = 0;     // draws with a unique mode and an untied link
  int violations = 0;  // checked draws where the link missed the mode
};

// Monte Carlo check that the scaled-family link recovers the mode on
// distributions whose off-mode mass is at most alpha.
CalibrationReport calibration_trials(const Embedding& e, double alpha,
                                     int trials, std::uint64_t seed,
                                     ExecPolicy pol = ExecPolicy::Parallel,
                                     double tau = 1e-9);

}  // namespace polyembed

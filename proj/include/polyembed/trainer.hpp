#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyembed/rng.hpp"
#include "polyembed/surrogate.hpp"

namespace polyembed {

// Step-size schedules: the step at iteration t (1-based) is
//   InvSqrt:  learning_rate / sqrt(t)
//   InvT:     learning_rate / t
//   Constant: learning_rate
enum class Schedule { InvSqrt, InvT, Constant };

struct TrainConfig {
  int steps = 10000;
  double learning_rate = 0.5;
  Schedule schedule = Schedule::InvSqrt;
  std::uint64_t seed = 0;
  int batch = 1;
};

// Throws std::invalid_argument unless steps >= 1, learning_rate > 0 and
// batch >= 1.
void validate_config(const TrainConfig& cfg);

// Training record. Both curves have steps + 1 entries:
//   loss_curve[t]      loss at the iterate before step t+1 (entry 0 is the
//                      starting point, entry steps is the final iterate)
//   grad_norm_curve[t] norm of the gradient used to leave iterate t; the
//                      last entry is the norm of the deterministic gradient
//                      at the final iterate (expected gradient for
//                      stochastic runs, batch gradient otherwise).
struct TrainTrace {
  Point final_report;
  std::vector<double> loss_curve;
  std::vector<double> grad_norm_curve;
};

// Raised when the recorded loss exceeds 1e6 times the starting loss. The
// partial trace up to the offending step is attached for post-mortem.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& msg, TrainTrace t)
      : std::runtime_error(msg), trace(std::move(t)) {}
  TrainTrace trace;
};

// One categorical draw from p by inverse cdf on a single uniform. Exposed so
// callers can replay the exact sample stream a training run consumed.
std::size_t draw_outcome(Rng& rng, const Distribution& p);

// Normalized outcome counts over n categories; labels are taken from e.
// Throws on an empty sample list or an id outside [0, n).
Distribution empirical_distribution(const std::vector<std::size_t>& samples,
                                    const Embedding& e);

// Stochastic minimization of u -> E_{y~p} L(u, y). Each step draws
// cfg.batch outcomes from a single Rng(cfg.seed) stream (nothing else
// consumes it), averages their loss gradients at the current iterate and
// moves by the scheduled step, clamping coordinates to a box twice the size
// of the polytope's vertex bounding box. The starting point is the vertex
// centroid.
//
// final_report is the average of the post-step iterates. For Bregman losses
// the averaged iterate tracks the embedded empirical distribution of the
// consumed sample stream at the statistical rate, which is what the
// convergence tests pin down.
//
// loss_curve records the exact expected loss under p (not the minibatch
// loss), so the divergence guard and the reported curve are noise-free.
TrainTrace sgd_minimize(const InducedLoss& L, const Distribution& p,
                        const TrainConfig& cfg);

// Deterministic gradient descent on the empirical loss of a fixed sample
// set (outcome indices into L.embedding). Uses cfg.steps, cfg.learning_rate
// and cfg.schedule; cfg.seed and cfg.batch are ignored. final_report is the
// last iterate. For any valid generator the unique minimizer is the vertex
// average of the samples, which the default schedule reaches to well below
// solver tolerance.
TrainTrace full_batch_minimize(const InducedLoss& L,
                               const std::vector<std::size_t>& samples,
                               const TrainConfig& cfg);

}  // namespace polyembed

// Command-line driver: region maps, hallucination witnesses, low-noise
// calibration checks, scale-threshold search, multi-instance mode
// elicitation, SGD training and the three-bit Hamming walkthrough.
//
// Exit codes: 0 success, 2 flag or input error, 3 numerical-solver failure,
// 4 property violation.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polyembed/embedding.hpp"
#include "polyembed/geometry.hpp"
#include "polyembed/io.hpp"
#include "polyembed/links.hpp"
#include "polyembed/multi_instance.hpp"
#include "polyembed/polytope.hpp"
#include "polyembed/regions.hpp"
#include "polyembed/surrogate.hpp"
#include "polyembed/svg.hpp"
#include "polyembed/trainer.hpp"

using namespace polyembed;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitProperty = 4;

// Members closer than this count as touching, matching the disjointness
// cutoff used by the threshold search.
constexpr double kDisjointCutoff = 1e-6;

std::string g_invocation;

std::string provenance() { return "# cmd: " + g_invocation + "\n"; }

// Output goes to the path when given, stdout otherwise; either way it opens
// with the invocation header so identical runs are byte-identical and
// self-describing.
void emit(const std::string& path, const std::string& body) {
  const std::string text = provenance() + body;
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

Polytope build_polytope(const std::string& spec, std::size_t dim) {
  if (spec.rfind("file:", 0) == 0)
    return load_polytope_json(read_text_file(spec.substr(5)));
  if (spec == "cube") return build_cube(dim);
  if (spec == "permutahedron") return build_permutahedron(dim);
  if (spec == "cross") return build_cross_polytope(dim);
  throw std::invalid_argument(
      "--polytope must be cube, permutahedron, cross or file:PATH (got '" +
      spec + "')");
}

Embedding default_embedding(const std::string& spec, std::size_t dim) {
  Polytope poly = build_polytope(spec, dim);
  const std::size_t n = poly.size();
  return make_embedding(std::move(poly), default_labels(n));
}

BregmanGenerator parse_generator(const std::string& spec, std::size_t dim) {
  if (spec == "sqeuclid") return squared_euclidean();
  if (spec.rfind("diagquad:", 0) == 0) {
    std::vector<double> a;
    std::stringstream ss(spec.substr(9));
    std::string item;
    while (std::getline(ss, item, ',')) a.push_back(std::stod(item));
    if (a.size() != dim)
      throw std::invalid_argument(
          "diagquad needs one coefficient per dimension");
    return diagonal_quadratic(a);
  }
  throw std::invalid_argument(
      "--generator must be sqeuclid or diagquad:a1,a2,... (got '" + spec +
      "')");
}

std::string format_point(const Point& u) {
  std::ostringstream out;
  out.precision(12);
  out << '(';
  for (std::size_t k = 0; k < u.size(); ++k) out << (k ? "," : "") << u[k];
  out << ')';
  return out.str();
}

// ---- regions ----

struct RegionsArgs {
  std::string polytope = "cube";
  std::size_t dim = 2;
  std::size_t grid = 101;
  std::string out, svg;
};

int run_regions(const RegionsArgs& a) {
  const Polytope poly = build_polytope(a.polytope, a.dim);
  if (!a.svg.empty() && poly.dim != 2)
    throw std::invalid_argument("--svg requires a 2-d polytope");
  const Embedding e = make_embedding(poly, default_labels(poly.size()));
  const RegionTable table = map_regions(e, {a.grid, a.grid});
  emit(a.out, region_table_csv(table));
  if (!a.svg.empty())
    write_text_file(a.svg, "<!-- cmd: " + g_invocation + " -->\n" +
                               svg_region_map(table));

  std::size_t counts[4] = {0, 0, 0, 0};
  std::size_t inside = 0;
  for (int c : table.category)
    if (c >= 0) {
      ++inside;
      ++counts[c];
    }
  std::ostringstream s;
  s << "cells inside hull: " << inside << " of " << table.category.size()
    << '\n';
  for (int c = 0; c < 4; ++c)
    s << to_string(static_cast<RegionCategory>(c)) << " cells: " << counts[c]
      << '\n';
  std::cerr << s.str();
  return kExitOk;
}

// ---- hallucination-witness ----

struct WitnessArgs {
  std::string polytope = "cube";
  std::size_t dim = 2;
  std::string out;
};

int run_witness(const WitnessArgs& a) {
  const Embedding e = default_embedding(a.polytope, a.dim);
  const HallucinationWitness w = hallucination_witness(e);
  const RegionClass cls = classify_point(e, w.point);

  nlohmann::json j;
  j["point"] = w.point;
  j["category"] = to_string(cls.category);
  j["linked_outcome"] = e.labels[cls.linked_outcome];
  auto& fibers = j["fibers"];
  for (std::size_t y = 0; y < w.fibers.size(); ++y) {
    nlohmann::json f;
    f["zero_outcome"] = e.labels[y];
    f["labels"] = w.fibers[y].labels;
    f["p"] = w.fibers[y].p;
    fibers.push_back(f);
  }
  emit(a.out, j.dump(2) + "\n");

  if (cls.category != RegionCategory::Hallucination) {
    std::cerr << "witness point failed to classify as a hallucination\n";
    return kExitProperty;
  }
  return kExitOk;
}

// ---- low-noise / alpha-search ----

struct LowNoiseArgs {
  std::string polytope = "cube";
  std::size_t dim = 2;
  double alpha = 0.25;
  int trials = 10000;
  std::uint64_t seed = 0;
  std::string out;
};

std::string pair_distance_csv(const ScaledFamily& f) {
  std::ostringstream out;
  out.precision(12);
  out << "y,yhat,distance\n";
  for (std::size_t y = 0; y < f.members.size(); ++y)
    for (std::size_t z = y + 1; z < f.members.size(); ++z)
      out << y << ',' << z << ','
          << hull_distance(f.members[y].vertices, f.members[z].vertices)
          << '\n';
  return out.str();
}

int run_low_noise(const LowNoiseArgs& a) {
  if (a.alpha < 0.0 || a.alpha > 1.0)
    throw std::invalid_argument("--alpha must lie in [0, 1]");
  if (a.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  const Embedding e = default_embedding(a.polytope, a.dim);
  const ScaledFamily family = scaled_family(e, a.alpha);
  emit(a.out, pair_distance_csv(family));

  const DisjointnessResult dis = pairwise_disjointness(family);
  std::ostringstream s;
  s.precision(12);
  s << "alpha: " << a.alpha << '\n'
    << "min pair distance: " << dis.min_distance << " (members "
    << dis.first << ", " << dis.second << ")\n";
  if (dis.min_distance <= kDisjointCutoff) {
    s << "hypothesis violated (no calibration claim): members touch at "
         "this alpha\n";
    std::cerr << s.str();
    return kExitOk;
  }

  const CalibrationReport rep =
      calibration_trials(e, a.alpha, a.trials, a.seed);
  s << "trials: " << rep.trials << '\n'
    << "unique-mode draws checked: " << rep.checked << '\n'
    << "mislinks: " << rep.violations << '\n';
  std::cerr << s.str();
  if (rep.violations > 0) {
    std::cerr << "calibration check failed\n";
    return kExitProperty;
  }
  return kExitOk;
}

struct AlphaSearchArgs {
  std::string polytope = "cube";
  std::size_t dim = 2;
  double tol = 1e-4;
  std::string out;
};

int run_alpha_search(const AlphaSearchArgs& a) {
  if (!(a.tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
  const Embedding e = default_embedding(a.polytope, a.dim);
  const double astar = alpha_threshold(e, a.tol);
  const double below = std::max(0.0, astar - a.tol);
  emit(a.out, pair_distance_csv(scaled_family(e, below)));

  std::ostringstream s;
  s.precision(12);
  s << "alpha threshold: " << astar << " (tol " << a.tol << ")\n"
    << "min pair distance at alpha - tol: "
    << pairwise_disjointness(scaled_family(e, below)).min_distance << '\n'
    << "min pair distance at alpha + tol: "
    << pairwise_disjointness(scaled_family(e, std::min(1.0, astar + a.tol)))
           .min_distance
    << '\n';
  std::cerr << s.str();
  return kExitOk;
}

// ---- multi-instance ----

struct MultiArgs {
  std::string dist;
  double noise = 0.0;
  double tau = 1e-9;
  std::uint64_t seed = 0;
  std::string out;
};

int run_multi_instance(const MultiArgs& a) {
  if (a.dist.empty()) throw std::invalid_argument("--dist is required");
  if (a.noise < 0.0) throw std::invalid_argument("--noise must be >= 0");
  const Distribution p = load_distribution_json(read_text_file(a.dist));
  const InstancePlan plan = round_robin_plan(p.size());

  std::optional<NoiseSpec> noise;
  if (a.noise > 0.0) noise = NoiseSpec{a.noise, a.seed};
  ElicitDiagnostics diag;
  const std::vector<std::size_t> modes =
      elicit_mode_end_to_end(p, plan, noise, a.tau, &diag);

  emit(a.out, reports_jsonl(diag.reports));

  std::ostringstream s;
  s << "outcomes: " << plan.n << ", instances: " << plan.pairings.size()
    << '\n';
  for (std::size_t j = 0; j < plan.pairings.size(); ++j) {
    s << "instance " << j << ":";
    for (const auto& pr : plan.pairings[j])
      s << " (" << p.labels[pr.first] << "," << p.labels[pr.second] << ")";
    s << '\n';
  }
  s << "aggregation path: "
    << (diag.used_fallback ? "relation-table subset" : "direct max scan")
    << '\n';
  if (diag.used_fallback) {
    s << "total-order subset size: " << diag.subset.size()
      << (diag.heuristic_subset ? " (greedy)" : " (exact)") << '\n';
  }
  s << "mode set:";
  for (std::size_t y : modes) s << ' ' << p.labels[y];
  s << '\n';
  std::cerr << s.str();
  return kExitOk;
}

// ---- train ----

struct TrainArgs {
  std::string polytope = "cube";
  std::size_t dim = 2;
  std::string dist;
  std::string generator = "sqeuclid";
  std::string schedule = "invsqrt";
  int steps = 10000;
  double lr = 0.5;
  int batch = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_train(const TrainArgs& a) {
  if (a.dist.empty()) throw std::invalid_argument("--dist is required");
  Polytope poly = build_polytope(a.polytope, a.dim);
  const Distribution p = load_distribution_json(read_text_file(a.dist));
  if (p.size() != poly.size())
    throw std::invalid_argument(
        "distribution size does not match the vertex count");
  const Embedding e = make_embedding(std::move(poly), p.labels);
  const InducedLoss L =
      make_induced_loss(parse_generator(a.generator, e.poly.dim), e);

  TrainConfig cfg;
  cfg.steps = a.steps;
  cfg.learning_rate = a.lr;
  cfg.batch = a.batch;
  cfg.seed = a.seed;
  if (a.schedule == "invsqrt")
    cfg.schedule = Schedule::InvSqrt;
  else if (a.schedule == "invt")
    cfg.schedule = Schedule::InvT;
  else if (a.schedule == "constant")
    cfg.schedule = Schedule::Constant;
  else
    throw std::invalid_argument(
        "--schedule must be invsqrt, invt or constant");
  validate_config(cfg);

  const TrainTrace trace = sgd_minimize(L, p, cfg);
  emit(a.out, trace_csv(trace));

  const LinkDecision link = map_link(e, trace.final_report);
  nlohmann::json j;
  j["final_report"] = trace.final_report;
  j["final_loss"] = trace.loss_curve.back();
  j["final_grad_norm"] = trace.grad_norm_curve.back();
  j["linked_outcome"] = e.labels[link.outcome];
  std::cerr << j.dump(2) << '\n';
  return kExitOk;
}

// ---- hamming-example ----

// Expected Hamming loss table for p = (0, 1/3-e, 1/3-e, 1/3-e, 0, 0, 0, 3e)
// over the corners of {-1,1}^3, outcomes ordered by sign count then binary
// index: y1 = (-1,-1,-1), y2..y4 flip one coordinate, y5..y7 flip two,
// y8 = (1,1,1). Direct arithmetic over the 8x8 distance table; the minimizer
// is the first outcome, whose probability is zero.
int run_hamming(double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0 / 12.0)) {
    std::cerr << "epsilon must lie in [0, 1/12): the minimizer switches "
                 "away from y1 at 1/12\n";
    return kExitInput;
  }

  std::vector<std::size_t> order = {0, 1, 2, 4, 3, 5, 6, 7};
  std::vector<std::vector<int>> corners;
  for (std::size_t idx : order) {
    std::vector<int> c(3);
    for (int k = 0; k < 3; ++k) c[k] = (idx >> k) & 1 ? 1 : -1;
    corners.push_back(c);
  }
  std::vector<double> p = {0.0,
                           1.0 / 3.0 - epsilon,
                           1.0 / 3.0 - epsilon,
                           1.0 / 3.0 - epsilon,
                           0.0,
                           0.0,
                           0.0,
                           3.0 * epsilon};

  std::vector<double> expected(8, 0.0);
  for (int k = 0; k < 8; ++k)
    for (int y = 0; y < 8; ++y) {
      int d = 0;
      for (int c = 0; c < 3; ++c)
        if (corners[k][c] != corners[y][c]) ++d;
      expected[k] += p[y] * d;
    }

  std::size_t best = 0;
  for (std::size_t k = 1; k < 8; ++k)
    if (expected[k] < expected[best]) best = k;

  std::ostringstream s;
  s.precision(12);
  s << "p = (0, 1/3-e, 1/3-e, 1/3-e, 0, 0, 0, 3e) with e = " << epsilon
    << '\n';
  for (int k = 0; k < 8; ++k) {
    s << 'y' << (k + 1) << " (" << corners[k][0] << ',' << corners[k][1]
      << ',' << corners[k][2] << ")  p=" << p[k]
      << "  expected_loss=" << expected[k] << (k == (int)best ? "  <- min" : "")
      << '\n';
  }
  s << "minimizer: y" << (best + 1) << " at expected loss " << expected[best]
    << '\n';
  std::cout << provenance() << s.str();

  if (best != 0 || p[best] != 0.0) {
    std::cerr << "expected the minimizer to be y1 with zero probability\n";
    return kExitProperty;
  }
  std::cout << "hallucination: the loss minimizer has probability 0\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::ostringstream inv;
  for (int i = 0; i < argc; ++i) inv << (i ? " " : "") << argv[i];
  g_invocation = inv.str();

  CLI::App app{"polytope-embedded surrogate loss toolkit"};
  app.require_subcommand(1);

  RegionsArgs regions;
  auto* c_regions =
      app.add_subcommand("regions", "classify a grid over the polytope");
  c_regions->add_option("--polytope", regions.polytope,
                        "cube|permutahedron|cross|file:PATH");
  c_regions->add_option("--dim", regions.dim, "polytope dimension");
  c_regions->add_option("--grid", regions.grid, "cells per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  c_regions->add_option("--out", regions.out, "CSV output path");
  c_regions->add_option("--svg", regions.svg, "SVG output path (2-d only)");

  WitnessArgs witness;
  auto* c_witness = app.add_subcommand(
      "hallucination-witness",
      "a report every outcome can explain away, with its fibers");
  c_witness->add_option("--polytope", witness.polytope,
                        "cube|permutahedron|cross|file:PATH");
  c_witness->add_option("--dim", witness.dim, "polytope dimension");
  c_witness->add_option("--out", witness.out, "JSON output path");

  LowNoiseArgs lownoise;
  auto* c_lownoise = app.add_subcommand(
      "low-noise", "scaled-family disjointness and calibration trials");
  c_lownoise->add_option("--polytope", lownoise.polytope,
                         "cube|permutahedron|cross|file:PATH");
  c_lownoise->add_option("--dim", lownoise.dim, "polytope dimension");
  c_lownoise->add_option("--alpha", lownoise.alpha, "family scale")
      ->required();
  c_lownoise->add_option("--trials", lownoise.trials, "Monte Carlo draws");
  c_lownoise->add_option("--seed", lownoise.seed, "rng seed");
  c_lownoise->add_option("--out", lownoise.out, "pair-distance CSV path");

  AlphaSearchArgs alphasearch;
  auto* c_alpha = app.add_subcommand(
      "alpha-search", "largest scale keeping the family disjoint");
  c_alpha->add_option("--polytope", alphasearch.polytope,
                      "cube|permutahedron|cross|file:PATH");
  c_alpha->add_option("--dim", alphasearch.dim, "polytope dimension");
  c_alpha->add_option("--tol", alphasearch.tol, "bisection tolerance");
  c_alpha->add_option("--out", alphasearch.out, "pair-distance CSV path");

  MultiArgs multi;
  auto* c_multi = app.add_subcommand(
      "multi-instance", "elicit the mode from pairwise comparisons");
  c_multi->add_option("--dist", multi.dist, "distribution JSON path")
      ->required();
  c_multi->add_option("--noise", multi.noise, "report perturbation radius");
  c_multi->add_option("--tau", multi.tau, "equality tolerance");
  c_multi->add_option("--seed", multi.seed, "rng seed");
  c_multi->add_option("--out", multi.out, "reports JSONL path");

  TrainArgs train;
  auto* c_train =
      app.add_subcommand("train", "stochastic surrogate-loss minimization");
  c_train->add_option("--polytope", train.polytope,
                      "cube|permutahedron|cross|file:PATH");
  c_train->add_option("--dim", train.dim, "polytope dimension");
  c_train->add_option("--dist", train.dist, "distribution JSON path")
      ->required();
  c_train->add_option("--generator", train.generator,
                      "sqeuclid|diagquad:a1,a2,...");
  c_train->add_option("--schedule", train.schedule,
                      "invsqrt|invt|constant");
  c_train->add_option("--steps", train.steps, "gradient steps");
  c_train->add_option("--lr", train.lr, "initial learning rate");
  c_train->add_option("--batch", train.batch, "draws per step");
  c_train->add_option("--seed", train.seed, "rng seed");
  c_train->add_option("--out", train.out, "trace CSV path");

  double epsilon = 0.05;
  auto* c_hamming = app.add_subcommand(
      "hamming-example",
      "expected Hamming losses for the zero-mass minimizer distribution");
  c_hamming->add_option("--epsilon", epsilon, "distribution parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInput;
  }

  try {
    if (c_regions->parsed()) return run_regions(regions);
    if (c_witness->parsed()) return run_witness(witness);
    if (c_lownoise->parsed()) return run_low_noise(lownoise);
    if (c_alpha->parsed()) return run_alpha_search(alphasearch);
    if (c_multi->parsed()) return run_multi_instance(multi);
    if (c_train->parsed()) return run_train(train);
    if (c_hamming->parsed()) return run_hamming(epsilon);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const TrainingError& e) {
    std::cerr << "training failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitInput;
}

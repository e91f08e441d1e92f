#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyembed/embedding.hpp"

namespace polyembed {

enum class Relation { Less, Greater, Equal };

const char* to_string(Relation r);

// Pairwise verdict about outcome probabilities: relation compares p_a
// against p_b with a < b canonically.
struct ComparisonReport {
  Relation relation = Relation::Equal;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t source_instance = 0;
};

// A set of cross-polytope instances that jointly compare every outcome pair.
// Matching j places its pair i on the +-e_i diagonal of instance j, the
// lower outcome id on +e_i. labels[id] names outcome id.
struct InstancePlan {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairings;
  std::vector<Embedding> embeddings;
  std::vector<std::string> labels;
};

// Round-robin 1-factorization: n-1 matchings of n/2 disjoint pairs, every
// unordered pair covered exactly once. n must be even and at least 4.
InstancePlan round_robin_plan(std::size_t n_outcomes);

// One report per diagonal pair of the instance: the sign of coordinate i
// decides the pair at +-e_i, with |u_i| <= tau reported Equal. universe maps
// outcome labels to ids; source_instance is stamped on the reports.
std::vector<ComparisonReport> extract_comparisons(
    const Embedding& e, const Point& u, double tau,
    const std::vector<std::string>& universe, std::size_t source_instance = 0);

struct ContradictionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Outcomes never reported below another outcome. Requires every unordered
// pair covered; duplicate reports with differing relations raise
// ContradictionError, pointing the caller at the relation-table path.
std::vector<std::size_t> find_maxes(const std::vector<ComparisonReport>& reports,
                                    std::size_t n);

struct RelationTable {
  std::vector<std::size_t> labels;  // outcome ids, row/column order
  std::vector<unsigned char> m;     // n*n, m[i*n+j] = 1 iff p_i <= p_j recorded
  std::size_t n = 0;
  unsigned char at(std::size_t i, std::size_t j) const { return m[i * n + j]; }
};

RelationTable relation_table(const std::vector<ComparisonReport>& reports,
                             std::size_t n);

struct SubsetResult {
  std::vector<std::size_t> members;
  bool heuristic = false;  // greedy fallback used (n > 12)
};

// Largest S whose restricted table is reflexive, antisymmetric, transitive,
// and total. Exact search up to n = 12, greedy vertex deletion above.
SubsetResult largest_total_order_subset(const RelationTable& table);

// Top elements of the table restricted to S: outcomes weakly above every
// member of S.
std::vector<std::size_t> subset_maxes(const RelationTable& table,
                                      const std::vector<std::size_t>& s);

struct NoiseSpec {
  double radius = 0.0;  // each embedded report is perturbed inside this ball
  std::uint64_t seed = 0;
};

struct ElicitDiagnostics {
  std::vector<ComparisonReport> reports;
  bool used_fallback = false;   // relation-table path taken
  bool heuristic_subset = false;
  std::vector<std::size_t> subset;  // S when the fallback ran
};

// Embeds p under every instance, extracts comparisons, aggregates with
// find_maxes; on contradiction or an empty max set (cycles from noise) falls
// back to the relation-table path. Outcome ids are positions in p.
std::vector<std::size_t> elicit_mode_end_to_end(
    const Distribution& p, const InstancePlan& plan,
    const std::optional<NoiseSpec>& noise = std::nullopt, double tau = 1e-9,
    ElicitDiagnostics* diag = nullptr);

}  // namespace polyembed

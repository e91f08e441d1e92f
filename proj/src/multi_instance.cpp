#include "polyembed/multi_instance.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "polyembed/polytope.hpp"
#include "polyembed/rng.hpp"

namespace polyembed {

namespace {

bool table_valid(const RelationTable& t, const std::vector<std::size_t>& s) {
  for (std::size_t i : s)
    if (!t.at(i, i)) return false;
  for (std::size_t i : s)
    for (std::size_t j : s) {
      if (i == j) continue;
      if (t.at(i, j) && t.at(j, i)) return false;   // antisymmetry
      if (!t.at(i, j) && !t.at(j, i)) return false; // totality
    }
  for (std::size_t i : s)
    for (std::size_t j : s)
      for (std::size_t k : s)
        if (t.at(i, j) && t.at(j, k) && !t.at(i, k)) return false;
  return true;
}

}  // namespace

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::Greater: return ">";
    case Relation::Equal: return "=";
  }
  return "?";
}

InstancePlan round_robin_plan(std::size_t n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("round_robin_plan: need an even count >= 4");
  InstancePlan plan;
  plan.n = n;
  plan.labels = default_labels(n);
  const std::size_t d = n / 2;
  const std::size_t m = n - 1;
  const auto poly = build_cross_polytope(d);
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.emplace_back(0, 1 + r);
    for (std::size_t i = 1; i < d; ++i) {
      std::size_t a = 1 + (r + i) % m;
      std::size_t b = 1 + (r + m - i) % m;
      if (a > b) std::swap(a, b);
      pairs.emplace_back(a, b);
    }
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < d; ++i) {
      labels[2 * i] = plan.labels[pairs[i].first];
      labels[2 * i + 1] = plan.labels[pairs[i].second];
    }
    plan.embeddings.push_back(make_embedding(poly, labels));
    plan.pairings.push_back(std::move(pairs));
  }
  return plan;
}

std::vector<ComparisonReport> extract_comparisons(
    const Embedding& e, const Point& u, double tau,
    const std::vector<std::string>& universe, std::size_t source_instance) {
  if (tau < 0) throw std::invalid_argument("extract_comparisons: tau < 0");
  if (e.poly.kind != PolytopeKind::CrossPolytope)
    throw std::invalid_argument(
        "extract_comparisons: instance must be a cross polytope");
  if (u.size() != e.poly.dim)
    throw std::invalid_argument("extract_comparisons: dimension mismatch");
  const auto id_of = [&](const std::string& label) {
    const auto it = std::find(universe.begin(), universe.end(), label);
    if (it == universe.end())
      throw std::invalid_argument("extract_comparisons: label not in universe");
    return static_cast<std::size_t>(it - universe.begin());
  };
  std::vector<ComparisonReport> out;
  out.reserve(e.poly.dim);
  for (std::size_t i = 0; i < e.poly.dim; ++i) {
    const std::size_t plus = id_of(e.labels[2 * i]);
    const std::size_t minus = id_of(e.labels[2 * i + 1]);
    // coordinate i of the embedding is p_plus - p_minus
    double signed_gap = u[i];
    ComparisonReport rep;
    rep.a = std::min(plus, minus);
    rep.b = std::max(plus, minus);
    rep.source_instance = source_instance;
    if (rep.a == minus) signed_gap = -signed_gap;  // reorient to p_a - p_b
    rep.relation = signed_gap > tau    ? Relation::Greater
                   : signed_gap < -tau ? Relation::Less
                                       : Relation::Equal;
    out.push_back(rep);
  }
  return out;
}

std::vector<std::size_t> find_maxes(const std::vector<ComparisonReport>& reports,
                                    std::size_t n) {
  if (n < 2) throw std::invalid_argument("find_maxes: need two outcomes");
  std::map<std::pair<std::size_t, std::size_t>, Relation> seen;
  for (const auto& r : reports) {
    if (r.a >= r.b || r.b >= n)
      throw std::invalid_argument("find_maxes: malformed report pair");
    const auto key = std::make_pair(r.a, r.b);
    const auto it = seen.find(key);
    if (it == seen.end())
      seen.emplace(key, r.relation);
    else if (it->second != r.relation)
      throw ContradictionError("find_maxes: conflicting reports for a pair");
  }
  if (seen.size() != n * (n - 1) / 2)
    throw std::invalid_argument("find_maxes: reports must cover every pair");
  std::vector<bool> beaten(n, false);
  for (const auto& [pair, rel] : seen) {
    if (rel == Relation::Less) beaten[pair.first] = true;
    if (rel == Relation::Greater) beaten[pair.second] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < n; ++y)
    if (!beaten[y]) out.push_back(y);
  return out;
}

RelationTable relation_table(const std::vector<ComparisonReport>& reports,
                             std::size_t n) {
  if (reports.empty())
    throw std::invalid_argument("relation_table: no reports");
  RelationTable t;
  t.n = n;
  t.labels.resize(n);
  std::iota(t.labels.begin(), t.labels.end(), 0);
  t.m.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) t.m[i * n + i] = 1;
  for (const auto& r : reports) {
    if (r.a >= r.b || r.b >= n)
      throw std::invalid_argument("relation_table: malformed report pair");
    switch (r.relation) {
      case Relation::Less: t.m[r.a * n + r.b] = 1; break;
      case Relation::Greater: t.m[r.b * n + r.a] = 1; break;
      case Relation::Equal:
        t.m[r.a * n + r.b] = 1;
        t.m[r.b * n + r.a] = 1;
        break;
    }
  }
  return t;
}

SubsetResult largest_total_order_subset(const RelationTable& table) {
  const std::size_t n = table.n;
  if (n == 0)
    throw std::invalid_argument("largest_total_order_subset: empty table");
  SubsetResult res;
  if (n <= 12) {
    // exact: scan masks grouped by descending population count
    std::vector<std::uint32_t> masks;
    masks.reserve(1u << n);
    for (std::uint32_t m = 1; m < (1u << n); ++m) masks.push_back(m);
    std::stable_sort(masks.begin(), masks.end(),
                     [](std::uint32_t x, std::uint32_t y) {
                       return __builtin_popcount(x) > __builtin_popcount(y);
                     });
    for (std::uint32_t m : masks) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (m & (1u << i)) s.push_back(i);
      if (table_valid(table, s)) {
        res.members = std::move(s);
        return res;
      }
    }
    return res;  // unreachable: singletons are always valid
  }
  // greedy: drop the outcome involved in the most violations until valid
  res.heuristic = true;
  std::vector<std::size_t> s(n);
  std::iota(s.begin(), s.end(), 0);
  while (!table_valid(table, s) && s.size() > 1) {
    std::vector<std::size_t> faults(n, 0);
    for (std::size_t x : s)
      if (!table.at(x, x)) ++faults[x];
    for (std::size_t i : s)
      for (std::size_t j : s) {
        if (i == j) continue;
        const bool anti = table.at(i, j) && table.at(j, i);
        const bool gap = !table.at(i, j) && !table.at(j, i);
        if (anti || gap) {
          ++faults[i];
          ++faults[j];
        }
      }
    for (std::size_t i : s)
      for (std::size_t j : s)
        for (std::size_t k : s)
          if (table.at(i, j) && table.at(j, k) && !table.at(i, k)) {
            ++faults[i];
            ++faults[j];
            ++faults[k];
          }
    std::size_t worst = s[0];
    for (std::size_t x : s)
      if (faults[x] > faults[worst]) worst = x;
    s.erase(std::remove(s.begin(), s.end(), worst), s.end());
  }
  res.members = std::move(s);
  return res;
}

std::vector<std::size_t> subset_maxes(const RelationTable& table,
                                      const std::vector<std::size_t>& s) {
  std::vector<std::size_t> out;
  for (std::size_t y : s) {
    bool top = true;
    for (std::size_t z : s)
      if (!table.at(z, y)) {
        top = false;
        break;
      }
    if (top) out.push_back(y);
  }
  return out;
}

std::vector<std::size_t> elicit_mode_end_to_end(
    const Distribution& p, const InstancePlan& plan,
    const std::optional<NoiseSpec>& noise, double tau,
    ElicitDiagnostics* diag) {
  if (p.size() != plan.n)
    throw std::invalid_argument("elicit_mode_end_to_end: size mismatch");
  const auto dist = make_distribution(plan.labels, p.p);
  std::vector<ComparisonReport> reports;
  for (std::size_t j = 0; j < plan.embeddings.size(); ++j) {
    Point u = embed(plan.embeddings[j], dist);
    if (noise && noise->radius > 0) {
      Rng rng(derive_seed(noise->seed, j));
      const Point delta = rng.ball(u.size());
      for (std::size_t k = 0; k < u.size(); ++k)
        u[k] += noise->radius * delta[k];
    }
    const auto reps =
        extract_comparisons(plan.embeddings[j], u, tau, plan.labels, j);
    reports.insert(reports.end(), reps.begin(), reps.end());
  }
  if (diag) {
    diag->reports = reports;
    diag->used_fallback = false;
    diag->heuristic_subset = false;
    diag->subset.clear();
  }
  try {
    auto maxes = find_maxes(reports, plan.n);
    if (!maxes.empty()) return maxes;
  } catch (const ContradictionError&) {
  }
  // cycles or conflicting duplicates: rank what can still be ranked
  const auto table = relation_table(reports, plan.n);
  const auto sub = largest_total_order_subset(table);
  if (diag) {
    diag->used_fallback = true;
    diag->heuristic_subset = sub.heuristic;
    diag->subset = sub.members;
  }
  return subset_maxes(table, sub.members);
}

}  // namespace polyembed

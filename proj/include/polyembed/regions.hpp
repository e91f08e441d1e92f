#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyembed/embedding.hpp"
#include "polyembed/exec.hpp"
#include "polyembed/polytope.hpp"

namespace polyembed {

enum class RegionCategory { Strict, Inconsistent, Hallucination, Boundary };

const char* to_string(RegionCategory c);

// Classification of a report u: linked_outcome is the MAP-link target, and
// gaps[z] is the largest p_z - p_linked over the fiber of u. The linked
// outcome's own slot is -infinity since it never competes with itself.
struct RegionClass {
  RegionCategory category = RegionCategory::Strict;
  std::size_t linked_outcome = 0;
  std::vector<double> gaps;
};

// Severity order when several conditions hold: Hallucination (u lies in the
// hull of the non-linked vertices), then Inconsistent (some gap > tol), then
// Boundary (some |gap| <= tol), else Strict.
RegionClass classify_point(const Embedding& e, const Point& u,
                           double tol = 1e-7);

std::vector<RegionClass> classify_points(const Embedding& e,
                                         const std::vector<Point>& pts,
                                         ExecPolicy pol = ExecPolicy::Serial,
                                         double tol = 1e-7);

struct HallucinationWitness {
  Point point;                      // common embedded report u
  std::vector<Distribution> fibers; // fibers[y] embeds to u with zero mass on y
};

// One joint feasibility LP produces a report that every outcome can explain
// away: for each y there is a fiber distribution placing no mass on y.
// Requires more outcomes than dimensions plus one.
HallucinationWitness hallucination_witness(const Embedding& e);

// Lower-bound estimate of the radius around vertex y within which every
// sampled point classifies Strict with linked outcome y. Deterministic
// direction set inside the polytope's affine hull, radial walk at the given
// resolution; the result does not depend on the execution policy.
double vertex_calibration_radius(const Embedding& e, std::size_t y,
                                 double resolution,
                                 ExecPolicy pol = ExecPolicy::Parallel,
                                 double tol = 1e-7);

struct GridSpec {
  std::size_t nx = 101;
  std::size_t ny = 101;
};

// Rectangular lattice over the polytope, classified cell by cell. For planar
// vertex sets in R^3 the lattice lives in the affine plane of the polytope;
// cells outside the hull carry category -1. Cell (ix, iy) sits at
// origin + ix*dx*axis1 + iy*dy*axis2 and index iy*nx + ix.
struct RegionTable {
  std::size_t nx = 0, ny = 0;
  Point origin;
  Point axis1, axis2;
  double dx = 0.0, dy = 0.0;
  std::vector<Point> coords;    // ambient coordinates per cell
  std::vector<int> category;    // RegionCategory as int, -1 outside
  std::vector<int> linked;      // linked outcome, -1 outside
};

RegionTable map_regions(const Embedding& e, const GridSpec& grid,
                        ExecPolicy pol = ExecPolicy::Parallel,
                        double tol = 1e-7);

// CSV rows "x1,...,xd,category,outcome" for the in-hull cells, in lattice
// order.
std::string region_table_csv(const RegionTable& table);

}  // namespace polyembed

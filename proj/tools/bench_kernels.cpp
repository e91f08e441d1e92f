// Timing harness for the data-parallel kernels: runs each one under the
// serial reference policy and the OpenMP policy, reports wall times and
// speedup, and fails if the two policies disagree on any result.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polyembed/embedding.hpp"
#include "polyembed/links.hpp"
#include "polyembed/regions.hpp"
#include "polyembed/rng.hpp"

using namespace polyembed;

namespace {

int g_mismatches = 0;

double time_once(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void report(const std::string& name, double serial, double parallel,
            bool identical) {
  std::printf("%-36s %9.3fs %9.3fs %7.2fx  %s\n", name.c_str(), serial,
              parallel, serial / parallel,
              identical ? "identical" : "RESULTS DIFFER");
  if (!identical) ++g_mismatches;
}

std::vector<Point> random_hull_points(const Embedding& e, int count) {
  std::vector<Point> pts;
  pts.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Distribution q = sample_simplex(e.poly.size(), derive_seed(7, i));
    Point u(e.poly.dim, 0.0);
    for (std::size_t y = 0; y < e.poly.size(); ++y)
      for (std::size_t k = 0; k < e.poly.dim; ++k)
        u[k] += q.p[y] * e.poly.vertex(y)[k];
    pts.push_back(std::move(u));
  }
  return pts;
}

void bench_classify() {
  const Embedding e = make_embedding(build_cube(3), default_labels(8));
  const auto pts = random_hull_points(e, 30000);
  std::vector<RegionClass> a, b;
  const double ts =
      time_once([&] { a = classify_points(e, pts, ExecPolicy::Serial); });
  const double tp =
      time_once([&] { b = classify_points(e, pts, ExecPolicy::Parallel); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i)
    same = a[i].category == b[i].category &&
           a[i].linked_outcome == b[i].linked_outcome &&
           a[i].gaps == b[i].gaps;
  report("classify_points cube3, 30k points", ts, tp, same);
}

void bench_regions() {
  const Embedding e = make_embedding(build_cube(2), default_labels(4));
  const GridSpec grid{512, 512};
  RegionTable a, b;
  const double ts =
      time_once([&] { a = map_regions(e, grid, ExecPolicy::Serial); });
  const double tp =
      time_once([&] { b = map_regions(e, grid, ExecPolicy::Parallel); });
  const bool same = a.category == b.category && a.linked == b.linked;
  report("map_regions cube2, 512x512", ts, tp, same);
}

void bench_disjointness() {
  const Embedding e = make_embedding(build_cube(5), default_labels(32));
  const ScaledFamily f = scaled_family(e, 0.3);
  DisjointnessResult a, b;
  const double ts =
      time_once([&] { a = pairwise_disjointness(f, ExecPolicy::Serial); });
  const double tp =
      time_once([&] { b = pairwise_disjointness(f, ExecPolicy::Parallel); });
  const bool same = a.min_distance == b.min_distance && a.first == b.first &&
                    a.second == b.second;
  report("pairwise_disjointness cube5 family", ts, tp, same);
}

void bench_calibration() {
  const Embedding e = make_embedding(build_cube(3), default_labels(8));
  CalibrationReport a, b;
  const double ts = time_once(
      [&] { a = calibration_trials(e, 0.45, 50000, 11, ExecPolicy::Serial); });
  const double tp = time_once([&] {
    b = calibration_trials(e, 0.45, 50000, 11, ExecPolicy::Parallel);
  });
  const bool same = a.trials == b.trials && a.checked == b.checked &&
                    a.violations == b.violations;
  report("calibration_trials cube3, 50k draws", ts, tp, same);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not compiled in; both columns run serial code\n");
#endif
  std::printf("%-36s %10s %10s %8s  %s\n", "kernel", "serial", "parallel",
              "speedup", "results");
  bench_classify();
  bench_regions();
  bench_disjointness();
  bench_calibration();
  if (g_mismatches > 0) {
    std::printf("%d kernel(s) returned different results across policies\n",
                g_mismatches);
    return 1;
  }
  return 0;
}

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "agrisim/error.hpp"
#include "agrisim/route.hpp"
#include "doctest.h"

using namespace agrisim;

namespace {

// Reference optimum by exhaustive recursion, written independently of the library.
double reference_optimum(LocalPoint start, const std::vector<LocalPoint>& pts, bool closed) {
  std::vector<char> used(pts.size(), 0);
  double best = 1e300;
  auto rec = [&](auto&& self, LocalPoint cur, std::size_t depth, double acc) -> void {
    if (acc >= best) return;
    if (depth == pts.size()) {
      best = std::min(best, acc + (closed ? std::hypot(cur.east_m - start.east_m, cur.north_m - start.north_m) : 0.0));
      return;
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      used[i] = 1;
      self(self, pts[i], depth + 1, acc + std::hypot(pts[i].east_m - cur.east_m, pts[i].north_m - cur.north_m));
      used[i] = 0;
    }
  };
  rec(rec, start, 0, 0.0);
  return best;
}

std::vector<LocalPoint> random_points(std::mt19937_64& rng, int n, double span) {
  std::uniform_real_distribution<double> u(0.0, span);
  std::vector<LocalPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
  return pts;
}

}  // namespace

TEST_CASE("nearest neighbour examples") {
  const Tour empty = nearest_neighbor({0, 0}, {});
  CHECK(empty.order.empty());
  CHECK(empty.length_m == 0.0);
  CHECK(tour_length(empty, {}) == 0.0);

  const std::vector<LocalPoint> line{{1, 0}, {2, 0}, {3, 0}};
  const Tour t = nearest_neighbor({0, 0}, line);
  CHECK(t.order == std::vector<int>{0, 1, 2});
  CHECK(t.length_m == doctest::Approx(3.0));

  const std::vector<LocalPoint> pts{{1, 0}, {-1.1, 0}, {2, 0}};
  const Tour g = nearest_neighbor({0, 0}, pts);
  CHECK(g.order == std::vector<int>{0, 2, 1});
  CHECK(g.length_m == doctest::Approx(5.1));

  const Tour tie = nearest_neighbor({0, 0}, {{1, 0}, {-1, 0}});
  CHECK(tie.order.front() == 0);

  const Tour single = nearest_neighbor({0, 0}, {{3, 4}});
  CHECK(single.length_m == doctest::Approx(5.0));
}

TEST_CASE("improve leaves an optimal line alone and uncrosses a crossing path") {
  const std::vector<LocalPoint> line{{1, 0}, {2, 0}, {3, 0}};
  const Tour t = improve(nearest_neighbor({0, 0}, line), line, {});
  CHECK(t.order == std::vector<int>{0, 1, 2});
  CHECK(t.length_m == doctest::Approx(3.0));

  const std::vector<LocalPoint> pts{{1, 1}, {1, 0}, {0, 1}};
  Tour crossing{{0, 0}, {0, 1, 2}, 0.0, false};
  crossing.length_m = tour_length(crossing, pts);
  CHECK(crossing.length_m == doctest::Approx(std::sqrt(2.0) + 1.0 + std::sqrt(2.0)));
  const Tour better = improve(crossing, pts, {});
  CHECK(better.length_m < crossing.length_m - 1e-9);
  CHECK(better.length_m == doctest::Approx(3.0));

  Tour bad{{0, 0}, {0, 0, 1}, 0.0, false};
  CHECK_THROWS_AS(improve(bad, pts, {}), ValidationError);
}

TEST_CASE("brute force oracle") {
  const Tour one = brute_force_optimal({0, 0}, {{3, 4}});
  CHECK(one.order == std::vector<int>{0});
  const std::vector<LocalPoint> line{{1, 0}, {2, 0}, {3, 0}};
  CHECK(brute_force_optimal({0, 0}, line).order == nearest_neighbor({0, 0}, line).order);
  CHECK_THROWS_AS(brute_force_optimal({0, 0}, std::vector<LocalPoint>(11)), TooManyTargets);
}

TEST_CASE("small instances: oracle <= improved <= nn") {
  std::mt19937_64 rng(77);
  int within = 0;
  for (int inst = 0; inst < 100; ++inst) {
    const auto pts = random_points(rng, 8, 50.0);
    for (bool closed : {false, true}) {
      const Tour nn = nearest_neighbor({0, 0}, pts, closed);
      const Tour lk = improve(nn, pts, {});
      const Tour opt = brute_force_optimal({0, 0}, pts, closed);
      const double ref = reference_optimum({0, 0}, pts, closed);
      CHECK(is_permutation_of_targets(lk, pts.size()));
      CHECK(is_permutation_of_targets(opt, pts.size()));
      CHECK(lk.length_m <= nn.length_m);
      CHECK(opt.length_m <= lk.length_m + 1e-9);
      CHECK(opt.length_m == doctest::Approx(ref).epsilon(1e-12));
      CHECK(std::abs(tour_length(lk, pts) - lk.length_m) < 1e-9);
      if (!closed && lk.length_m <= 1.05 * opt.length_m) ++within;
    }
  }
  CHECK(within >= 95);
}

TEST_CASE("improved tours are 2-opt stable") {
  std::mt19937_64 rng(8);
  for (int inst = 0; inst < 20; ++inst) {
    const auto pts = random_points(rng, 60, 100.0);
    const Tour lk = improve(nearest_neighbor({0, 0}, pts), pts, {});
    std::vector<LocalPoint> path{{0, 0}};
    for (int i : lk.order) path.push_back(pts[static_cast<std::size_t>(i)]);
    const std::size_t n = path.size();
    bool stable = true;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        const double before = distance(path[i], path[i + 1]) + (j + 1 < n ? distance(path[j], path[j + 1]) : 0.0);
        const double after = distance(path[i], path[j]) + (j + 1 < n ? distance(path[i + 1], path[j + 1]) : 0.0);
        if (after < before - 1e-9) stable = false;
      }
    }
    CHECK(stable);
  }
}

TEST_CASE("tour lengths are invariant under translation and rotation") {
  std::mt19937_64 rng(21);
  for (int inst = 0; inst < 20; ++inst) {
    const auto pts = random_points(rng, 9, 30.0);
    const double c = std::cos(0.7), s = std::sin(0.7);
    auto xf = [&](LocalPoint p) { return LocalPoint{c * p.east_m - s * p.north_m + 500.0, s * p.east_m + c * p.north_m - 80.0}; };
    std::vector<LocalPoint> moved;
    for (auto p : pts) moved.push_back(xf(p));
    const double a = brute_force_optimal({1, 2}, pts).length_m;
    const double b = brute_force_optimal(xf({1, 2}), moved).length_m;
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
    Tour t = nearest_neighbor({1, 2}, pts);
    Tour u = t;
    u.start = xf(t.start);
    CHECK(tour_length(t, pts) == doctest::Approx(tour_length(u, moved)).epsilon(1e-9));
  }
}

TEST_CASE("larger instances improve and stay permutations") {
  std::mt19937_64 rng(4);
  for (int n : {2, 3, 50, 400}) {
    const auto pts = random_points(rng, n, 100.0);
    const Tour nn = nearest_neighbor({0, 0}, pts);
    const Tour lk = improve(nn, pts, {});
    CHECK(is_permutation_of_targets(lk, pts.size()));
    CHECK(lk.length_m <= nn.length_m);
  }
}

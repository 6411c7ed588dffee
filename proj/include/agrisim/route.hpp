#pragma once

#include <vector>

#include "agrisim/geo.hpp"

namespace agrisim {

// Path from a fixed start through every target exactly once. Open tours end
// at the last target; closed tours return to the start.
struct Tour {
  LocalPoint start;
  std::vector<int> order;
  double length_m = 0.0;
  bool closed = false;
};

struct ImproveOptions {
  // 2 allows only 2-opt exchanges, 3 also segment insertions (or-3opt).
  int max_depth = 3;
  // Wall-clock budget in milliseconds; <= 0 means unlimited.
  double time_budget_ms = 0.0;
  int candidates = 8;
};

inline constexpr int kBruteForceLimit = 10;

double tour_length(const Tour& tour, const std::vector<LocalPoint>& targets);
bool is_permutation_of_targets(const Tour& tour, std::size_t target_count);

// Greedy construction; ties go to the lowest target index.
Tour nearest_neighbor(LocalPoint start, const std::vector<LocalPoint>& targets, bool closed = false);

// Sequential edge-exchange improvement with neighbour candidate lists and
// don't-look bits, followed by a full-neighbourhood sweep, so an unbudgeted
// result is 2-opt stable. Never returns a longer tour than its input.
Tour improve(const Tour& tour, const std::vector<LocalPoint>& targets, const ImproveOptions& opts = {});

// Exhaustive search over permutations; ties resolve to the lexicographically
// smallest order. Throws TooManyTargets above kBruteForceLimit targets.
Tour brute_force_optimal(LocalPoint start, const std::vector<LocalPoint>& targets, bool closed = false);

}  // namespace agrisim

#include "agrisim/route.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "agrisim/error.hpp"

namespace agrisim {

namespace {

constexpr double kImproveEps = 1e-10;

// Working state of the improvement search. Node ids: 0..n-1 targets, n the
// start, n+1 the end sentinel. The path always begins with the start and
// finishes with the sentinel; neither ever moves.
class PathOptimizer {
 public:
  PathOptimizer(const Tour& tour, const std::vector<LocalPoint>& targets, const ImproveOptions& opts)
      : n_(static_cast<int>(targets.size())), closed_(tour.closed), opts_(opts) {
    pts_ = targets;
    pts_.push_back(tour.start);
    path_.push_back(start_node());
    path_.insert(path_.end(), tour.order.begin(), tour.order.end());
    path_.push_back(end_node());
    pos_.assign(static_cast<std::size_t>(n_ + 2), 0);
    reindex();
    build_candidates();
    if (opts_.time_budget_ms > 0.0) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::microseconds(static_cast<long long>(opts_.time_budget_ms * 1000.0));
    }
  }

  bool run() {
    bool finished = false;
    std::vector<int> seed(path_.begin(), path_.end() - 1);
    while (!finished) {
      if (!local_search(seed)) return false;
      seed = polish();
      finished = seed.empty();
    }
    return true;
  }

  std::vector<int> order() const { return {path_.begin() + 1, path_.end() - 1}; }

 private:
  int start_node() const { return n_; }
  int end_node() const { return n_ + 1; }

  double dist(int a, int b) const {
    if (a == end_node()) std::swap(a, b);
    if (b == end_node()) {
      if (a == end_node() || !closed_) return 0.0;
      b = start_node();
    }
    return distance(pts_[static_cast<std::size_t>(a)], pts_[static_cast<std::size_t>(b)]);
  }

  double d_at(int i, int j) const { return dist(path_[static_cast<std::size_t>(i)], path_[static_cast<std::size_t>(j)]); }
  int node_at(int i) const { return path_[static_cast<std::size_t>(i)]; }

  void reindex() {
    for (std::size_t i = 0; i < path_.size(); ++i) pos_[static_cast<std::size_t>(path_[i])] = static_cast<int>(i);
  }

  void build_candidates() {
    const int real = n_ + 1;
    const int k = std::min(opts_.candidates, real - 1);
    cand_.assign(static_cast<std::size_t>(real), {});
    std::vector<int> others;
    for (int a = 0; a < real; ++a) {
      others.resize(static_cast<std::size_t>(real));
      std::iota(others.begin(), others.end(), 0);
      others.erase(others.begin() + a);
      std::partial_sort(others.begin(), others.begin() + std::max(k, 0), others.end(), [&](int x, int y) {
        const double dx = dist(a, x), dy = dist(a, y);
        return dx < dy || (dx == dy && x < y);
      });
      auto& c = cand_[static_cast<std::size_t>(a)];
      c.assign(others.begin(), others.begin() + std::max(k, 0));
      c.push_back(end_node());
    }
  }

  bool out_of_time() const {
    return opts_.time_budget_ms > 0.0 && std::chrono::steady_clock::now() >= deadline_;
  }

  // Gain-positive 2-opt: reverse path[i+1..j], 0 <= i, i + 2 <= j <= n.
  double two_opt_delta(int i, int j) const {
    return d_at(i, j) + d_at(i + 1, j + 1) - d_at(i, i + 1) - d_at(j, j + 1);
  }

  void apply_two_opt(int i, int j) {
    std::reverse(path_.begin() + i + 1, path_.begin() + j + 1);
    reindex();
  }

  // Moves path[s..e] between path[g] and path[g+1], optionally reversed.
  double insertion_delta(int s, int e, int g, bool reversed) const {
    const double removed = d_at(s - 1, s) + d_at(e, e + 1) + d_at(g, g + 1);
    const double added = d_at(s - 1, e + 1) + (reversed ? d_at(g, e) + d_at(s, g + 1) : d_at(g, s) + d_at(e, g + 1));
    return added - removed;
  }

  void apply_insertion(int s, int e, int g, bool reversed) {
    std::vector<int> seg(path_.begin() + s, path_.begin() + e + 1);
    if (reversed) std::reverse(seg.begin(), seg.end());
    std::vector<int> rest;
    rest.reserve(path_.size());
    int anchor = node_at(g);
    for (int i = 0; i < static_cast<int>(path_.size()); ++i) {
      if (i >= s && i <= e) continue;
      rest.push_back(node_at(i));
      if (node_at(i) == anchor) rest.insert(rest.end(), seg.begin(), seg.end());
    }
    path_ = std::move(rest);
    reindex();
  }

  bool valid_insertion(int s, int e, int g) const {
    return s >= 1 && e <= n_ && s <= e && g >= 0 && g <= n_ && (g < s - 1 || g > e);
  }

  // Tries improving moves that create an edge at node a; returns the nodes
  // whose neighbourhood changed, or nothing.
  std::vector<int> try_node(int a) {
    const int k = pos_[static_cast<std::size_t>(a)];
    for (int c : cand_[static_cast<std::size_t>(a)]) {
      const int m = pos_[static_cast<std::size_t>(c)];
      // New edge (a, c) as the first created edge.
      {
        const int i = std::min(k, m), j = std::max(k, m);
        if (j <= n_ && j >= i + 2 && two_opt_delta(i, j) < -kImproveEps) return commit_two_opt(i, j);
      }
      // New edge (a, c) as the second created edge.
      {
        const int i = std::min(k, m) - 1, j = std::max(k, m) - 1;
        if (i >= 0 && j <= n_ && j >= i + 2 && two_opt_delta(i, j) < -kImproveEps) return commit_two_opt(i, j);
      }
    }
    if (opts_.max_depth < 3 || a == start_node()) return {};
    for (int len = 1; len <= 3; ++len) {
      // Segments with a at their head or tail.
      for (int s : {k, k - len + 1}) {
        const int e = s + len - 1;
        if (s < 1 || e > n_) continue;
        for (int x : {node_at(s), node_at(e)}) {
          const bool head = x == node_at(s);
          for (int c : cand_[static_cast<std::size_t>(x)]) {
            const int m = pos_[static_cast<std::size_t>(c)];
            if (m >= s && m <= e) continue;
            // x adjacent to c, on either side of c.
            const int g_after = m;
            const int g_before = m - 1;
            const bool rev_after = !head;
            const bool rev_before = head;
            if (valid_insertion(s, e, g_after) && insertion_delta(s, e, g_after, rev_after) < -kImproveEps) {
              return commit_insertion(s, e, g_after, rev_after);
            }
            if (valid_insertion(s, e, g_before) && insertion_delta(s, e, g_before, rev_before) < -kImproveEps) {
              return commit_insertion(s, e, g_before, rev_before);
            }
          }
        }
        if (len == 1) break;
      }
    }
    return {};
  }

  std::vector<int> commit_two_opt(int i, int j) {
    std::vector<int> touched{node_at(i), node_at(i + 1), node_at(j), node_at(j + 1)};
    apply_two_opt(i, j);
    return touched;
  }

  std::vector<int> commit_insertion(int s, int e, int g, bool reversed) {
    std::vector<int> touched{node_at(s - 1), node_at(s), node_at(e), node_at(e + 1), node_at(g), node_at(g + 1)};
    apply_insertion(s, e, g, reversed);
    return touched;
  }

  bool local_search(const std::vector<int>& seed) {
    std::deque<int> queue;
    std::vector<char> queued(static_cast<std::size_t>(n_ + 2), 0);
    auto push = [&](int v) {
      if (v == end_node() || queued[static_cast<std::size_t>(v)]) return;
      queued[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    };
    for (int v : seed) push(v);
    while (!queue.empty()) {
      if (out_of_time()) return false;
      const int a = queue.front();
      queue.pop_front();
      queued[static_cast<std::size_t>(a)] = 0;
      const auto touched = try_node(a);
      if (!touched.empty()) {
        push(a);
        for (int v : touched) push(v);
      }
    }
    return true;
  }

  // Full scan of both move families; applies the first improving move found
  // and returns the touched nodes, or nothing if the path is locally optimal.
  std::vector<int> polish() {
    for (int i = 0; i <= n_ - 2; ++i) {
      for (int j = i + 2; j <= n_; ++j) {
        if (two_opt_delta(i, j) < -kImproveEps) return commit_two_opt(i, j);
      }
    }
    if (opts_.max_depth < 3) return {};
    for (int len = 1; len <= 3; ++len) {
      for (int s = 1; s + len - 1 <= n_; ++s) {
        const int e = s + len - 1;
        for (int g = 0; g <= n_; ++g) {
          if (!valid_insertion(s, e, g)) continue;
          for (bool rev : {false, true}) {
            if (len == 1 && rev) continue;
            if (insertion_delta(s, e, g, rev) < -kImproveEps) return commit_insertion(s, e, g, rev);
          }
        }
      }
    }
    return {};
  }

  int n_;
  bool closed_;
  ImproveOptions opts_;
  std::vector<LocalPoint> pts_;
  std::vector<int> path_;
  std::vector<int> pos_;
  std::vector<std::vector<int>> cand_;
  std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace

double tour_length(const Tour& tour, const std::vector<LocalPoint>& targets) {
  double total = 0.0;
  LocalPoint cur = tour.start;
  for (int idx : tour.order) {
    const LocalPoint& next = targets.at(static_cast<std::size_t>(idx));
    total += distance(cur, next);
    cur = next;
  }
  if (tour.closed) total += distance(cur, tour.start);
  return total;
}

bool is_permutation_of_targets(const Tour& tour, std::size_t target_count) {
  if (tour.order.size() != target_count) return false;
  std::vector<char> seen(target_count, 0);
  for (int idx : tour.order) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= target_count || seen[static_cast<std::size_t>(idx)]) return false;
    seen[static_cast<std::size_t>(idx)] = 1;
  }
  return true;
}

Tour nearest_neighbor(LocalPoint start, const std::vector<LocalPoint>& targets, bool closed) {
  Tour tour;
  tour.start = start;
  tour.closed = closed;
  std::vector<char> visited(targets.size(), 0);
  LocalPoint cur = start;
  for (std::size_t step = 0; step < targets.size(); ++step) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < targets.size(); ++j) {
      if (visited[j]) continue;
      const double d = distance(cur, targets[j]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    visited[static_cast<std::size_t>(best)] = 1;
    tour.order.push_back(best);
    cur = targets[static_cast<std::size_t>(best)];
  }
  tour.length_m = tour_length(tour, targets);
  return tour;
}

Tour improve(const Tour& tour, const std::vector<LocalPoint>& targets, const ImproveOptions& opts) {
  if (!is_permutation_of_targets(tour, targets.size())) throw ValidationError("tour is not a permutation of the targets");
  if (opts.max_depth < 2) throw ValidationError("improve max_depth must be >= 2");
  Tour out = tour;
  out.length_m = tour_length(tour, targets);
  if (targets.size() < 2) return out;
  PathOptimizer opt(tour, targets, opts);
  opt.run();
  Tour cand = tour;
  cand.order = opt.order();
  cand.length_m = tour_length(cand, targets);
  // Accumulated float error must never make the result longer than its input.
  return cand.length_m <= out.length_m ? cand : out;
}

Tour brute_force_optimal(LocalPoint start, const std::vector<LocalPoint>& targets, bool closed) {
  if (targets.size() > static_cast<std::size_t>(kBruteForceLimit)) {
    throw TooManyTargets("brute force is limited to " + std::to_string(kBruteForceLimit) + " targets, got " +
                         std::to_string(targets.size()));
  }
  Tour cur;
  cur.start = start;
  cur.closed = closed;
  cur.order.resize(targets.size());
  std::iota(cur.order.begin(), cur.order.end(), 0);
  Tour best = cur;
  best.length_m = tour_length(cur, targets);
  do {
    const double len = tour_length(cur, targets);
    if (len < best.length_m) {
      best.order = cur.order;
      best.length_m = len;
    }
  } while (std::next_permutation(cur.order.begin(), cur.order.end()));
  return best;
}

}  // namespace agrisim
